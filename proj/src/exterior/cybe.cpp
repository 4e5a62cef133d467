#include "exterior/cybe.hpp"

#include "common/error.hpp"

namespace quadpois::exterior {

ExtElement rr_bracket_formula(const lie::RMatrix& r) {
  const auto& g = *r.algebra();
  const int n = g.dim();
  ExtElement out(r.algebra(), 3);
  if (n < 3) return out;
  std::vector<std::pair<int, int>> support;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!r.full(i, j).is_zero()) support.emplace_back(i, j);
    }
  }
  for (const auto& [I, J] : support) {
    const Poly rIJ = r.full(I, J);
    for (const auto& [K, L] : support) {
      const auto& br = g.basis_bracket(I, K);
      if (br.empty() || J == L) continue;
      const Poly c = rIJ * r.full(K, L);
      for (const auto& t : br) out.add_term({t.index, J, L}, c * t.coeff);
    }
  }
  return out;
}

ExtElement cyclic_form(const lie::RMatrix& r) {
  const auto& g = *r.algebra();
  const int n = g.dim();
  ExtElement out(r.algebra(), 3);
  if (n < 3) return out;
  // v[K] = r~(e^K) = sum_J R^{KJ} X_J
  std::vector<std::vector<Poly>> v(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = r.full(k, j);
  }
  std::vector<std::vector<std::vector<Poly>>> w(static_cast<std::size_t>(n),
                                                std::vector<std::vector<Poly>>(static_cast<std::size_t>(n)));
  for (int b = 0; b < n; ++b) {
    for (int c = b + 1; c < n; ++c) {
      w[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] =
          g.bracket(v[static_cast<std::size_t>(b)], v[static_cast<std::size_t>(c)]);
    }
  }
  auto W = [&](int b, int c, int a) -> const Poly& {
    return w[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        Poly s = W(b, c, a) - W(a, c, b) + W(a, b, c);
        if (!s.is_zero()) out.add_term({a, b, c}, s);
      }
    }
  }
  return out;
}

CybeReport cybe_check(const lie::RMatrix& r) {
  CybeReport rep{false, schouten_ext(ExtElement::from_rmatrix(r), ExtElement::from_rmatrix(r)),
                 rr_bracket_formula(r), cyclic_form(r)};
  if (rep.schouten != rep.formula) {
    throw InternalError("Schouten bracket and closed formula disagree on [r, r]");
  }
  if (rep.schouten != rep.cyclic * Poly(2)) {
    throw InternalError("Schouten bracket and cyclic form disagree on [r, r]");
  }
  rep.holds = rep.schouten.is_zero();
  return rep;
}

std::string gl_unknown_name(int i, int j, int k, int l) {
  return "r_" + std::to_string(i) + std::to_string(k) + "_" + std::to_string(j) + std::to_string(l);
}

lie::RMatrix symbolic_gl_rmatrix(int n) {
  if (n < 1 || n > 9) throw PreconditionError("symbolic gl(n) r-matrix needs 1 <= n <= 9");
  auto g = lie::gl_basis(n);
  const int d = n * n;
  std::vector<std::string> names;
  for (int I = 0; I < d; ++I) {
    for (int J = I + 1; J < d; ++J) {
      names.push_back(gl_unknown_name(I / n + 1, I % n + 1, J / n + 1, J % n + 1));
    }
  }
  auto ring = exact::Ring::make(names);
  lie::RMatrix r(g);
  std::size_t v = 0;
  for (int I = 0; I < d; ++I) {
    for (int J = I + 1; J < d; ++J) r.add(I, J, Poly::variable(ring, v++));
  }
  return r;
}

std::vector<CybeEquation> gln_cybe_equations(int n, const lie::RMatrix& r) {
  if (r.algebra()->dim() != n * n || !(*r.algebra() == *lie::gl_basis(n))) {
    throw InvalidArgument("r-matrix is not over gl(" + std::to_string(n) + ")");
  }
  // R(i,k,j,l) = r_ik^jl, the coefficient of E_ij ^ E_kl.
  auto R = [&](int i, int k, int j, int l) { return r.full(lie::gl_index(n, i, j), lie::gl_index(n, k, l)); };
  std::vector<CybeEquation> out;
  const int d = n * n;
  for (int x = 0; x < d; ++x) {
    const int i = x / n + 1, j = x % n + 1;
    for (int y = x + 1; y < d; ++y) {
      const int k = y / n + 1, l = y % n + 1;
      for (int z = y + 1; z < d; ++z) {
        const int m = z / n + 1, p = z % n + 1;
        Poly s;
        for (int q = 1; q <= n; ++q) {
          s += R(i, k, q, l) * R(q, m, j, p);
          s -= R(m, k, q, l) * R(q, i, p, j);
          s += R(k, m, q, p) * R(q, i, l, j);
          s -= R(i, m, q, p) * R(q, k, j, l);
          s += R(m, i, q, j) * R(q, k, p, l);
          s -= R(k, i, q, j) * R(q, m, l, p);
        }
        out.push_back({{x + 1, y + 1, z + 1}, {{{i, j}, {k, l}, {m, p}}}, s});
      }
    }
  }
  return out;
}

}  // namespace quadpois::exterior
