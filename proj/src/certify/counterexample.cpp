#include "certify/counterexample.hpp"

#include "certify/builtin_script.hpp"

namespace quadpois::cert {

PolyVectorField counterexample_bivector(const std::optional<Rational>& alpha) {
  auto params = alpha ? exact::Ring::scalars() : exact::Ring::make({"alpha"}, {"alpha"});
  auto ring = fields::coordinate_ring(3, params);
  PolyVectorField out(3, 2, ring);
  Poly a = alpha ? Poly(ring, *alpha) : Poly::variable(ring, "alpha");
  out.add_term({1, 2}, out.x(0) * out.x(0) + a * out.x(1) * out.x(2));
  return out;
}

const CounterexampleAnalysis& counterexample_analysis() {
  static const CounterexampleAnalysis analysis = [] {
    auto sys = j2_constraints(counterexample_bivector());
    auto reduced = reduce_cybe_on_subspace(3, sys);
    return CounterexampleAnalysis{std::move(sys), std::move(reduced)};
  }();
  return analysis;
}

Certificate counterexample_certificate(const std::optional<Rational>& alpha) {
  return counterexample_certificate(alpha, builtin_counterexample_script());
}

Certificate counterexample_certificate(const std::optional<Rational>& alpha, std::string_view script) {
  if (alpha && *alpha == 0) throw PreconditionError("the counterexample needs alpha invertible; alpha = 0 is excluded");
  auto parsed = CaseScript::parse(script);
  std::map<std::string, Rational> fixed;
  if (alpha) fixed.emplace("alpha", *alpha);
  return case_certify(counterexample_analysis().system, parsed, fixed);
}

}  // namespace quadpois::cert
