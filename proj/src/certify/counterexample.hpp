#pragma once

#include "certify/constraints.hpp"
#include "certify/script.hpp"

#include <optional>
#include <string_view>

namespace quadpois::cert {

// (x1^2 + alpha x2 x3) d2 ^ d3 on R^3. Without a value alpha is a symbolic
// invertible parameter.
PolyVectorField counterexample_bivector(const std::optional<Rational>& alpha = std::nullopt);

struct CounterexampleAnalysis {
  LinearConstraintSystem constraints;
  PolySystem system;
};

// J^2 constraints for the symbolic bivector and the reduced gl(3) CYBE
// system. Computed once.
const CounterexampleAnalysis& counterexample_analysis();

// Replays script (the built-in one by default) on the reduced system, with
// alpha symbolic or specialized. PreconditionError for alpha = 0.
Certificate counterexample_certificate(const std::optional<Rational>& alpha = std::nullopt);
Certificate counterexample_certificate(const std::optional<Rational>& alpha, std::string_view script);

}  // namespace quadpois::cert
