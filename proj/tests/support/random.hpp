#pragma once

#include "exact/poly.hpp"

#include <random>

namespace quadpois::testing {

// Deterministic generator for property tests.
class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

  // num in [-max_num, max_num], den in [1, max_den].
  exact::Rational rational(long max_num, long max_den) {
    exact::Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }

  exact::Rational nonzero_rational(long max_num, long max_den) {
    for (;;) {
      auto q = rational(max_num, max_den);
      if (q != 0) return q;
    }
  }

 private:
  std::mt19937 gen_;
};

// Random polynomial with at most `max_terms` terms of total degree <= max_degree.
inline exact::Poly random_poly(Rng& rng, const exact::RingPtr& ring, unsigned max_degree, std::size_t max_terms = 5) {
  exact::Poly p(ring);
  std::size_t terms = rng.below(max_terms + 1);
  for (std::size_t t = 0; t < terms; ++t) {
    exact::Monomial m(ring->size());
    unsigned deg = static_cast<unsigned>(rng.below(max_degree + 1));
    for (unsigned d = 0; d < deg; ++d) {
      std::size_t v = rng.below(ring->size());
      m.set(v, static_cast<std::uint16_t>(m[v] + 1));
    }
    p.add_term(m, rng.rational(6, 4));
  }
  return p;
}

}  // namespace quadpois::testing
