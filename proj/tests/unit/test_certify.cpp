#include <doctest.h>

#include "certify/builtin_script.hpp"
#include "certify/counterexample.hpp"
#include "common/text.hpp"
#include "exterior/cybe.hpp"
#include "polyfields/polyvector.hpp"
#include "support/random.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

using namespace quadpois;
using namespace quadpois::cert;
using exact::Ring;
using exterior::ExtElement;

namespace {

std::vector<std::string> fixture_lines(const std::string& name) {
  std::vector<std::string> out;
  const auto content = text::read_file(std::string(QUADPOIS_FIXTURES) + "/" + name);
  for (auto l : text::lines(content)) {
    auto t = text::trim(l);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

PolyVectorField dim2_target(const Rational& a, const Rational& b, const Rational& c) {
  PolyVectorField f(2, 2);
  f.add_term({0, 1}, f.x(0) * f.x(0) * a + f.x(0) * f.x(1) * (2 * b) + f.x(1) * f.x(1) * c);
  return f;
}

// Value of every symbolic gl(n) unknown for a concrete r-matrix.
std::vector<Poly> unknown_values(int n, const lie::RMatrix& r) {
  auto sym = exterior::symbolic_gl_rmatrix(n);
  std::vector<Poly> out;
  for (const auto& [pair, c] : sym.coefficients()) {
    auto it = r.coefficients().find(pair);
    out.push_back(it == r.coefficients().end() ? Poly(0) : it->second);
  }
  return out;
}

Rational evaluate(const Poly& p, const std::map<std::string, Rational>& point) {
  std::map<std::size_t, Poly> assign;
  for (std::size_t v = 0; v < p.ring()->size(); ++v) assign.emplace(v, Poly(p.ring(), point.at(p.ring()->name(v))));
  Poly q = p.substitute(assign);
  REQUIRE(q.is_constant());
  return q.constant_term();
}

// Rational r-matrix at a point of the parametrization of sys.
lie::RMatrix point_rmatrix(int n, const LinearConstraintSystem& sys, const std::map<std::string, Rational>& point) {
  std::map<std::string, Rational> by_unknown;
  for (std::size_t i = 0; i < sys.free_unknowns().size(); ++i) {
    by_unknown[sys.unknowns()[sys.free_unknowns()[i]]] = point.at(sys.free_names()[i]);
  }
  for (std::size_t v = 0; v < sys.params()->size(); ++v) by_unknown[sys.params()->name(v)] = point.at(sys.params()->name(v));
  std::map<std::string, Rational> full = by_unknown;
  for (const auto& [idx, expr] : sys.pivots()) {
    std::map<std::string, Rational> env = by_unknown;
    for (const auto& name : sys.unknowns()) env.emplace(name, 0);
    full[sys.unknowns()[idx]] = evaluate(expr, env);
  }
  auto sym = exterior::symbolic_gl_rmatrix(n);
  lie::RMatrix r(sym.algebra());
  std::size_t k = 0;
  for (const auto& [pair, c] : sym.coefficients()) {
    r.add(pair.first, pair.second, Poly(full.at(sys.unknowns()[k++])));
  }
  return r;
}

std::string text_join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

}  // namespace

TEST_CASE("linear constraint system reduces with lex-largest pivots") {
  auto params = Ring::make({"alpha"}, {"alpha"});
  auto alpha = Poly::variable(params, "alpha");
  // u0 + u2 = 1, u1 - u2 = alpha
  LinearConstraintSystem sys({"u0", "u1", "u2"}, params, {{1, 0, 1}, {0, 1, -1}}, {Poly(params, 1), alpha});
  CHECK(sys.consistent());
  CHECK(sys.free_unknowns() == std::vector<std::size_t>{0});
  CHECK(sys.canonical_relations() == std::vector<std::string>{"u1 = -u0 + alpha + 1", "u2 = -u0 + 1"});
  CHECK(sys.renaming() == std::vector<std::string>{"a = u0"});
  auto p = Poly::variable(params, "alpha");
  CHECK(sys.satisfied_by({Poly(params, 3), p - 2, Poly(params, -2)}));
  CHECK_FALSE(sys.satisfied_by({Poly(params, 3), p, Poly(params, -2)}));

  LinearConstraintSystem bad({"u0"}, params, {{1}, {2}}, {Poly(params, 1), Poly(params, 3)});
  CHECK_FALSE(bad.consistent());
  CHECK_THROWS_AS(reduce_cybe_on_subspace(2, bad), PreconditionError);
}

TEST_CASE("J^2 constraints of the zero bivector are homogeneous") {
  PolyVectorField zero(3, 2);
  auto sys = j2_constraints(zero);
  CHECK(sys.consistent());
  for (const auto& b : sys.rhs()) CHECK(b.is_zero());
  CHECK(sys.satisfied_by(std::vector<Poly>(sys.unknowns().size(), Poly(0))));
  CHECK(sys.unknowns().size() == 36);
}

TEST_CASE("J^2 constraints reject non-quadratic input") {
  PolyVectorField f(2, 2);
  f.add_term({0, 1}, f.x(0));
  CHECK_THROWS_AS(j2_constraints(f), PreconditionError);
  PolyVectorField v(2, 1);
  v.add_term({0}, v.x(0) * v.x(0));
  CHECK_THROWS_AS(j2_constraints(v), PreconditionError);
}

TEST_CASE("dim-2 construction satisfies J^2 and CYBE") {
  SUBCASE("examples") {
    auto r = dim2_r_matrix(1, 0, 0);
    auto img = fields::j_map(2, ExtElement::from_rmatrix(r));
    PolyVectorField expected(2, 2);
    expected.add_term({0, 1}, expected.x(0) * expected.x(0));
    CHECK(img == expected);
    auto z = dim2_r_matrix(0, 0, 0);
    CHECK(z.coefficients().empty());
    CHECK(fields::j_map(2, ExtElement::from_rmatrix(z)).is_zero());
  }
  SUBCASE("random rational parameters") {
    testing::Rng rng(2024);
    for (int t = 0; t < 100; ++t) {
      Rational a = rng.rational(9, 5), b = rng.rational(9, 5), c = rng.rational(9, 5);
      auto r = dim2_r_matrix(a, b, c);
      auto rep = exterior::cybe_check(r);
      CHECK(rep.holds);
      CHECK(rep.schouten.is_zero());
      CHECK(rep.formula.is_zero());
      CHECK(rep.cyclic.is_zero());
      for (const auto& eq : exterior::gln_cybe_equations(2, r)) CHECK(eq.poly.is_zero());
      auto target = dim2_target(a, b, c);
      CHECK(fields::j_map(2, ExtElement::from_rmatrix(r)) == target);
      auto sys = j2_constraints(target);
      CHECK(sys.consistent());
      CHECK(sys.satisfied_by(unknown_values(2, r)));
    }
  }
}

TEST_CASE("counterexample constraints") {
  const auto& an = counterexample_analysis();
  const auto& sys = an.constraints;
  CHECK(sys.consistent());
  CHECK(sys.unknowns().size() == 36);
  CHECK(sys.free_unknowns().size() == 18);
  auto relations = sys.canonical_relations();
  INFO(text_join(relations));
  auto printed = fixture_lines("counterexample_constraints.txt");
  std::sort(relations.begin(), relations.end());
  std::sort(printed.begin(), printed.end());
  CHECK(relations == printed);
  const std::vector<std::string> renaming{
      "a = r_12_11", "b = r_12_12", "c = r_12_13", "d = r_13_11", "e = r_13_12", "f = r_13_13",
      "g = r_12_22", "h = r_12_23", "i = r_13_22", "j = r_13_23", "k = r_12_33", "l = r_13_33",
      "m = r_23_11", "n = r_23_12", "p = r_23_13", "q = r_23_22", "r = r_23_23", "s = r_23_33"};
  CHECK(sys.renaming() == renaming);
}

TEST_CASE("reduced counterexample system agrees with [r, r] at random points") {
  const auto& an = counterexample_analysis();
  const auto& ps = an.system;
  REQUIRE(ps.equations.size() == 84);
  CHECK(ps.ring->is_invertible(*ps.ring->index_of("alpha")));
  testing::Rng rng(7);
  std::set<std::array<int, 3>> seen_nonzero;
  for (int t = 0; t < 4; ++t) {
    std::map<std::string, Rational> point;
    for (const auto& name : ps.ring->names()) point[name] = rng.nonzero_rational(5, 3);
    auto r = point_rmatrix(3, an.constraints, point);
    CHECK(fields::j_map(3, ExtElement::from_rmatrix(r)) == counterexample_bivector(point.at("alpha")));
    auto rr = exterior::rr_bracket_formula(r);
    for (const auto& eq : ps.equations) {
      Rational expected = rr.coefficient({eq.label[0] - 1, eq.label[1] - 1, eq.label[2] - 1}).constant_term() / 2;
      Rational got = evaluate(eq.poly, point);
      CHECK(got == expected);
      if (got != 0) seen_nonzero.insert(eq.label);
    }
  }
  // Every equation that is not identically zero is nonzero somewhere.
  CHECK(seen_nonzero.size() == ps.nontrivial());
  MESSAGE("identically zero after substitution: " << ps.identically_zero() << ", nontrivial: " << ps.nontrivial());
}

TEST_CASE("printed equations appear at their labels") {
  const auto& ps = counterexample_analysis().system;
  auto lines = fixture_lines("printed_equations.txt");
  REQUIRE(lines.size() == 20);
  std::optional<Rational> constant;
  for (const auto& l : lines) {
    auto colon = l.find(':');
    REQUIRE(colon != std::string::npos);
    std::array<int, 3> label{};
    REQUIRE(std::sscanf(l.c_str(), "(%d,%d,%d)", &label[0], &label[1], &label[2]) == 3);
    auto printed = exact::parse_poly(ps.ring, l.substr(colon + 1));
    const auto* eq = ps.find(label);
    REQUIRE(eq != nullptr);
    REQUIRE_FALSE(printed.is_zero());
    const auto& [m, c] = *printed.terms().begin();
    Rational k = eq->poly.coefficient(m) / c;
    if (!constant) constant = k;
    INFO(l, " generated: ", eq->poly.to_string());
    CHECK(eq->poly == printed * *constant);
  }
  CHECK(*constant == 1);
}

TEST_CASE("case_certify on the trivial infeasible system") {
  auto ring = Ring::make({"x"});
  auto x = Poly::variable(ring, "x");
  PolySystem sys{ring, {{{1, 2, 3}, x}, {{1, 2, 4}, x - 1}}};
  auto cert = case_certify(sys, CaseScript::parse("STEP combine Z = (1,2,4) - (1,2,3) expect -1\n"
                                                  "STEP contradiction Z\n"));
  CHECK(cert.valid);
  CHECK(cert.cases == 1);
  CHECK(cert.leaves == 1);
  CHECK(cert.summary == "VALID (1 case, all leaves contradiction)");

  CHECK_THROWS_AS(case_certify(sys, CaseScript::parse("STEP combine Z = [2]*(1,2,4) - (1,2,3) expect -1\n"
                                                      "STEP contradiction Z\n")),
                  InvalidStep);
  CHECK_THROWS_AS(case_certify(sys, CaseScript::parse("STEP contradiction (1,2,3)\n")), InvalidStep);
  CHECK_THROWS_AS(case_certify(sys, CaseScript::parse("STEP conclude (1,2,3) x = 0\n")), InvalidStep);
  // Conclusions feed later steps.
  auto c2 = case_certify(sys, CaseScript::parse("STEP conclude (1,2,3) x = 0\nSTEP contradiction (1,2,4)\n"));
  CHECK(c2.valid);
}

TEST_CASE("script parser errors") {
  CHECK_THROWS_AS(CaseScript::parse(""), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("STEP frobnicate x\n"), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("combine Z = (1,2,3) expect 0\n"), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("STEP combine Z = (1,2,3)\n"), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("STEP split x\n"), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("STEP split x\n  BRANCH zero\n    STEP contradiction (1,2,3)\n"), ParseError);
  CHECK_THROWS_AS(CaseScript::parse("STEP contradiction (1,2,3)\n    STEP contradiction (1,2,3)\n"), ParseError);
  auto s = CaseScript::parse(std::string(builtin_counterexample_script()));
  CHECK(s.steps.size() == 5);
  CHECK(s.steps.back().counts_case);
}

TEST_CASE("branch bookkeeping") {
  auto ring = Ring::make({"x", "y"});
  auto x = Poly::variable(ring, "x"), y = Poly::variable(ring, "y");
  // x*y = 1 and x = 0 or x != 0 with y = 0.
  PolySystem sys{ring, {{{1, 2, 3}, x * y - 1}, {{1, 2, 4}, x * y}}};
  auto script = "STEP split x\n"
                "  BRANCH zero\n"
                "    STEP contradiction (1,2,3)\n"
                "  BRANCH nonzero\n"
                "    STEP conclude (1,2,4) y = 0\n"
                "    STEP contradiction (1,2,3)\n";
  auto cert = case_certify(sys, CaseScript::parse(script));
  CHECK(cert.leaves == 2);
  CHECK(cert.cases == 1);
  // Without the nonzero assumption the factor x is not invertible.
  CHECK_THROWS_AS(case_certify(sys, CaseScript::parse("STEP conclude (1,2,4) y = 0\nSTEP contradiction (1,2,3)\n")),
                  InvalidStep);
  // A branch that stops early is rejected.
  CHECK_THROWS_AS(case_certify(sys, CaseScript::parse("STEP split x\n  BRANCH zero\n    STEP contradiction (1,2,3)\n"
                                                      "  BRANCH nonzero\n    STEP conclude (1,2,4) y = 0\n")),
                  InvalidStep);
}

TEST_CASE("built-in counterexample certificate") {
  auto sym = counterexample_certificate();
  CHECK(sym.valid);
  CHECK(sym.cases == 4);
  CHECK(sym.leaves == 7);
  CHECK(sym.summary == "VALID (4 cases, all leaves contradiction)");
  auto again = counterexample_certificate();
  CHECK(again.log == sym.log);
  for (const Rational& a : {Rational(1), Rational(2), Rational(-3, 7)}) {
    auto cert = counterexample_certificate(a);
    CHECK(cert.valid);
    CHECK(cert.summary == sym.summary);
  }
  CHECK_THROWS_AS(counterexample_certificate(Rational(0)), PreconditionError);
}

TEST_CASE("corrupting any single step of the built-in script is rejected") {
  auto text = std::string(builtin_counterexample_script());
  auto all = text::lines(text);
  std::vector<std::string> src(all.begin(), all.end());
  auto rebuild = [&](std::size_t i, const std::string& replacement) {
    std::string out;
    for (std::size_t k = 0; k < src.size(); ++k) out += (k == i ? replacement : src[k]) + "\n";
    return out;
  };
  auto rejected = [&](const std::string& script) {
    try {
      counterexample_certificate(std::nullopt, script);
      return false;
    } catch (const InvalidStep&) {
      return true;
    } catch (const ParseError&) {
      return true;
    }
  };
  int corrupted = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::string& l = src[i];
    if (l.find("STEP") == std::string::npos) continue;
    std::string bad;
    if (auto p = l.find("expect "); p != std::string::npos) {
      bad = l.substr(0, p) + "expect 2*(" + l.substr(p + 7) + ")";
    } else if (auto q = l.find(" from "); q != std::string::npos) {
      bad = l.substr(0, q) + " + 1" + l.substr(q);
    } else if (l.find("conclude") != std::string::npos) {
      bad = l + " + 1";
    } else if (l.find("contradiction") != std::string::npos) {
      bad = l.find("(2,3,9)") != std::string::npos ? l.substr(0, l.find('(')) + "(1,3,5)"
                                                   : l.substr(0, l.find("contradiction")) + "contradiction (2,3,9)";
    } else if (l.find("cases") != std::string::npos || l.find("split") != std::string::npos) {
      bad = l.substr(0, l.rfind(' ')) + " g";
    }
    REQUIRE_FALSE(bad.empty());
    INFO("corrupted line ", i + 1, ": ", bad);
    CHECK(rejected(rebuild(i, bad)));
    ++corrupted;
  }
  CHECK(corrupted == 41);
  // Changing one weight of the final combination.
  auto w = text.find("[e]*");
  REQUIRE(w != std::string::npos);
  auto weight = text;
  weight.replace(w, 4, "[2*e]*");
  CHECK(rejected(weight));
}

TEST_CASE("no script certifies the satisfiable dim-2 system") {
  auto sys = j2_constraints(dim2_target(1, 2, 3));
  auto ps = reduce_cybe_on_subspace(2, sys);
  CHECK(ps.equations.size() == 4);
  testing::Rng rng(11);
  std::vector<std::string> labels;
  for (const auto& e : ps.equations) labels.push_back(format_label(e.label));
  int rejected = 0, attempts = 0;
  for (const auto& l : labels) {
    ++attempts;
    try {
      case_certify(ps, CaseScript::parse("STEP contradiction " + l + "\n"));
    } catch (const InvalidStep&) {
      ++rejected;
    }
  }
  // Weighted combinations whose expected value is computed honestly.
  for (int t = 0; t < 50; ++t) {
    std::string combo;
    Poly sum(ps.ring);
    for (const auto& e : ps.equations) {
      Rational w = rng.rational(4, 3);
      combo += " + [" + w.get_str() + "]*" + format_label(e.label);
      sum += e.poly * w;
    }
    ++attempts;
    std::string script = "STEP combine Z =" + combo + " expect " + (sum.is_zero() ? "0" : sum.to_string()) +
                         "\nSTEP contradiction Z\n";
    try {
      case_certify(ps, CaseScript::parse(script));
    } catch (const InvalidStep&) {
      ++rejected;
    }
  }
  // Conclusions from each equation and each free unknown, then a contradiction.
  for (const auto& e : ps.equations) {
    for (const auto& name : sys.free_names()) {
      ++attempts;
      try {
        case_certify(ps, CaseScript::parse("STEP conclude " + format_label(e.label) + " " + name +
                                           " = 0\nSTEP contradiction " + format_label(e.label) + "\n"));
      } catch (const InvalidStep&) {
        ++rejected;
      }
    }
  }
  CHECK(rejected == attempts);
}
