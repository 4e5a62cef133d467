#pragma once

#include "exterior/ext_element.hpp"
#include "lie/lie_algebra.hpp"
#include "support/random.hpp"

#include <algorithm>

namespace quadpois::testing {

inline exterior::ExtElement random_ext(Rng& rng, const lie::LieAlgebraPtr& g, int degree, std::size_t max_terms = 4) {
  exterior::ExtElement e(g, degree);
  if (degree > g->dim()) return e;
  std::size_t terms = 1 + rng.below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    exterior::Tuple idx;
    while (static_cast<int>(idx.size()) < degree) {
      int i = static_cast<int>(rng.below(static_cast<std::size_t>(g->dim())));
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    e.add_term(idx, exact::Poly(rng.rational(5, 3)));
  }
  return e;
}

// Sparse random rational r-matrix; each stored pair is set with the given percent chance.
inline lie::RMatrix random_rmatrix(Rng& rng, const lie::LieAlgebraPtr& g, int percent = 30) {
  lie::RMatrix r(g);
  for (int i = 0; i < g->dim(); ++i) {
    for (int j = i + 1; j < g->dim(); ++j) {
      if (static_cast<int>(rng.below(100)) < percent) r.add(i, j, exact::Poly(rng.rational(4, 3)));
    }
  }
  return r;
}

// Random Cartan-type r = sum_{i<j} c_ij E_ii ^ E_jj on gl(n).
inline lie::RMatrix random_cartan_rmatrix(Rng& rng, int n) {
  auto g = lie::gl_basis(n);
  lie::RMatrix r(g);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) r.add(lie::gl_index(n, i, i), lie::gl_index(n, j, j), exact::Poly(rng.rational(4, 3)));
  }
  return r;
}

}  // namespace quadpois::testing
