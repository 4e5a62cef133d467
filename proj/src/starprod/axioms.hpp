#pragma once

#include "starprod/star.hpp"

#include <string>
#include <vector>

namespace quadpois::star {

struct AxiomFailure {
  std::string kind;                  // "unit", "C0", "C1" or "associativity"
  std::vector<std::string> witness;  // the monomials involved, in argument order
  int order = 0;                     // hbar order of the first discrepancy
};

struct StarAxiomsReport {
  std::string method;
  int order = 0;
  int degree_bound = 0;
  std::size_t monomials = 0;
  std::size_t triples = 0;
  bool unit = true;
  bool c0 = true;
  bool c1 = true;
  bool associative = true;
  // Up to kMaxFailuresPerKind entries per kind, in enumeration order.
  std::vector<AxiomFailure> failures;

  static constexpr std::size_t kMaxFailuresPerKind = 5;

  bool passed() const { return unit && c0 && c1 && associative; }
  std::string to_string() const;
};

// Exhaustive check over all coordinate monomials of degree <= D (ordered by
// degree, then lexicographically ascending in the exponents) and all triples
// of them: unit laws, C_0 = product, C_1(u,v) - C_1(v,u) = {u,v} (declared
// bracket, when N >= 1) and associativity mod hbar^{N+1}. Requires
// N <= star.order().
StarAxiomsReport star_axioms_check(const StarProduct& star, int order, int degree_bound);

// Coordinate monomials of degree <= D in n variables in the enumeration
// order above.
std::vector<Monomial> monomials_up_to(std::size_t n, int degree_bound);

}  // namespace quadpois::star
