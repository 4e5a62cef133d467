#include "polyfields/analysis.hpp"

#include "common/error.hpp"
#include "common/text.hpp"
#include "exterior/cybe.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

namespace quadpois::fields {

JacobiCheck jacobi_poisson_check(const PolyVectorField& bivector) {
  if (!bivector.is_quadratic_bivector()) throw PreconditionError("expected a quadratic bivector field");
  JacobiCheck out{false, sn_bracket(bivector, bivector)};
  out.poisson = out.residual.is_zero();
  return out;
}

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void increasing_tuples(int n, int k, int start, Tuple& cur, std::vector<Tuple>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    increasing_tuples(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

KernelDimension kernel_dimension(int n, int k) {
  if (k == 2) {
    if (n < 1 || n > 4) throw PreconditionError("kernel_dimension with k = 2 needs 1 <= n <= 4");
  } else if (k == 3) {
    if (n < 1 || n > 3) throw PreconditionError("kernel_dimension with k = 3 needs 1 <= n <= 3");
  } else {
    throw PreconditionError("kernel_dimension needs k in {2, 3}");
  }
  KernelDimension out;
  out.n = n;
  out.k = k;
  const int d = n * n;
  std::vector<Tuple> cols;
  Tuple cur;
  increasing_tuples(d, k, 0, cur, cols);
  out.domain = static_cast<long>(cols.size());
  out.target = binomial(n + k - 1, k) * binomial(n, k);
  // Rows: (sorted x-index multiset, increasing d-tuple).
  std::map<std::pair<Tuple, Tuple>, std::size_t> row_index;
  std::vector<std::tuple<std::size_t, std::size_t, int>> entries;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Tuple xs, ds;
    for (int idx : cols[c]) {
      xs.push_back(idx / n);
      ds.push_back(idx % n);
    }
    std::sort(xs.begin(), xs.end());
    int s = exterior::sort_with_sign(ds);
    if (s == 0) continue;
    auto key = std::make_pair(xs, ds);
    auto it = row_index.find(key);
    if (it == row_index.end()) it = row_index.emplace(key, row_index.size()).first;
    entries.emplace_back(it->second, c, s);
  }
  if (static_cast<long>(row_index.size()) > out.target) throw InternalError("J image exceeds its target space");
  exact::RationalMatrix m(static_cast<std::size_t>(out.target), cols.size());
  for (const auto& [r, c, s] : entries) m(r, c) = s;
  auto rk = exact::mat_rank_kernel(m);
  out.rank = static_cast<long>(rk.rank);
  out.computed = out.domain - out.rank;
  const long n2 = static_cast<long>(n) * n;
  out.formula = k == 2 ? n2 * (n2 - 1) / 4 : n2 * (n2 - 1) * (5 * n2 - 8) / 36;
  out.match = out.computed == out.formula;
  out.surjective = out.rank == out.target;
  return out;
}

PolyVectorField LinearVectorField::to_field(const RingPtr& ring) const {
  PolyVectorField out(n, 1, ring);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!at(i, j).is_zero()) out.add_term({j}, at(i, j) * Poly::variable(ring, static_cast<std::size_t>(i)));
    }
  }
  return out;
}

bool LinearVectorField::is_rational() const {
  return std::all_of(a.begin(), a.end(), [](const Poly& p) { return p.is_constant(); });
}

std::string LinearVectorField::to_string() const {
  std::vector<std::pair<Poly, std::string>> parts;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      parts.emplace_back(at(i, j), "x" + std::to_string(i + 1) + "*d" + std::to_string(j + 1));
    }
  }
  return exact::format_combination(parts);
}

LinearVectorField curl(const PolyVectorField& bivector) {
  if (!bivector.is_quadratic_bivector()) throw PreconditionError("curl expects a quadratic bivector field");
  const int n = bivector.dim();
  const auto& ring = bivector.ring();
  LinearVectorField out;
  out.n = n;
  out.a.assign(static_cast<std::size_t>(n * n), Poly(ring));
  for (int i = 0; i < n; ++i) {
    Poly comp(ring);
    for (int j = 0; j < n; ++j) {
      if (i != j) comp += bivector.component({i, j}).derivative(static_cast<std::size_t>(j));
    }
    for (const auto& [m, c] : comp.terms()) {
      exact::Monomial rest = m;
      int k = -1;
      for (int v = 0; v < n; ++v) {
        if (m[static_cast<std::size_t>(v)]) {
          k = v;
          rest.set(static_cast<std::size_t>(v), 0);
        }
      }
      if (k < 0 || m[static_cast<std::size_t>(k)] != 1) throw InternalError("curl of a quadratic field is not linear");
      out.a[static_cast<std::size_t>(k * n + i)] += Poly::monomial(ring, rest, c);
    }
  }
  return out;
}

std::vector<Rational> characteristic_polynomial(const exact::RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidArgument("characteristic polynomial needs a square matrix");
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  exact::RationalMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    exact::RationalMatrix next(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a(i, l) * m(l, j);
        next(i, j) = s;
      }
      next(i, i) += c[n - k + 1];
    }
    m = next;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += a(i, l) * m(l, i);
    }
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

namespace {

std::vector<mpz_class> divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  return out;
}

bool is_triangular(const exact::RationalMatrix& m) {
  bool upper = true, lower = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      if (i > j) upper = false;
      if (i < j) lower = false;
    }
  }
  return upper || lower;
}

}  // namespace

std::optional<std::vector<Rational>> rational_eigenvalues(const exact::RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (is_triangular(m)) {
    std::vector<Rational> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(m(i, i));
    return d;
  }
  auto c = characteristic_polynomial(m);
  std::vector<Rational> roots;
  // Strip zero roots.
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) {
    roots.push_back(0);
    ++low;
  }
  std::vector<Rational> p(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
  mpz_class scale = 1;
  for (const auto& q : p) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> ip;
  for (const auto& q : p) ip.push_back(mpz_class(q * scale));
  constexpr unsigned long kDivisorLimit = 1000000000000UL;
  if (abs(ip.front()) > kDivisorLimit || abs(ip.back()) > kDivisorLimit) return std::nullopt;
  auto num = divisors(ip.front()), den = divisors(ip.back());
  std::vector<Rational> candidates;
  for (const auto& a : num) {
    for (const auto& b : den) {
      Rational q(a, b);
      q.canonicalize();
      candidates.push_back(q);
      candidates.push_back(-q);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& q : candidates) {
    for (;;) {
      if (p.size() <= 1) break;
      // Synthetic division by (t - q); p holds ascending coefficients.
      std::vector<Rational> quotient(p.size() - 1);
      Rational carry = 0;
      for (std::size_t i = p.size(); i-- > 1;) {
        carry = carry * q + p[i];
        quotient[i - 1] = carry;
      }
      Rational remainder = carry * q + p[0];
      if (remainder != 0) break;
      roots.push_back(q);
      p = std::move(quotient);
    }
  }
  if (p.size() > 1) return std::nullopt;
  std::sort(roots.begin(), roots.end());
  return roots;
}

CartanReport cartan_analyze(const PolyVectorField& bivector) {
  if (!bivector.is_quadratic_bivector()) throw PreconditionError("cartan_analyze expects a quadratic bivector field");
  const int n = bivector.dim();
  const auto& ring = bivector.ring();
  CartanReport rep;
  rep.curl = curl(bivector);

  std::vector<std::string> pnames, pinv;
  for (std::size_t v = static_cast<std::size_t>(n); v < ring->size(); ++v) {
    pnames.push_back(ring->name(v));
    if (ring->is_invertible(v)) pinv.push_back(ring->name(v));
  }
  auto params = exact::Ring::make(pnames, pinv);
  bool cartan = true;
  std::vector<Poly> c(static_cast<std::size_t>(n * n));
  for (const auto& [t, comp] : bivector.components()) {
    const int i = t[0], j = t[1];
    exact::Monomial xij(ring->size());
    xij.set(static_cast<std::size_t>(i), 1);
    xij.set(static_cast<std::size_t>(j), 1);
    Poly coef(ring);
    for (const auto& [m, q] : comp.terms()) {
      exact::Monomial coord(ring->size());
      for (int v = 0; v < n; ++v) coord.set(static_cast<std::size_t>(v), m[static_cast<std::size_t>(v)]);
      if (coord != xij) {
        cartan = false;
        break;
      }
      coef.add_term(m.divided_by(xij), q);
    }
    if (!cartan) break;
    Poly cij = coef.is_constant() ? Poly(coef.constant_term()) : coef.embed(params);
    c[static_cast<std::size_t>(i * n + j)] = cij;
    c[static_cast<std::size_t>(j * n + i)] = -cij;
  }
  rep.in_cartan_form = cartan;
  if (cartan) {
    auto g = lie::gl_basis(n);
    lie::RMatrix r(g);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        r.add(lie::gl_index(n, i, i), lie::gl_index(n, j, j), c[static_cast<std::size_t>((i - 1) * n + (j - 1))]);
      }
    }
    if (j_map(n, exterior::ExtElement::from_rmatrix(r)) != bivector) {
      throw InternalError("Cartan r-matrix does not reproduce the bivector");
    }
    if (!exterior::cybe_check(r).holds) throw InternalError("Cartan r-matrix fails CYBE");
    rep.c_matrix = c;
    rep.r_matrix = r;
  }

  if (rep.curl.is_rational()) {
    exact::RationalMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = rep.curl.at(i, j).constant_term();
    }
    rep.eigenvalues = rational_eigenvalues(a);
  }
  if (rep.eigenvalues) {
    const auto& lam = *rep.eigenvalues;
    bool nonres = true;
    for (int i = 0; i < n && nonres; ++i) {
      for (int j = i; j < n && nonres; ++j) {
        for (int r = 0; r < n && nonres; ++r) {
          for (int s = r + 1; s < n && nonres; ++s) {
            if (i == r && j == s) continue;
            if (lam[static_cast<std::size_t>(i)] + lam[static_cast<std::size_t>(j)] ==
                lam[static_cast<std::size_t>(r)] + lam[static_cast<std::size_t>(s)]) {
              nonres = false;
              rep.resonance = std::array<int, 4>{i + 1, j + 1, r + 1, s + 1};
            }
          }
        }
      }
    }
    rep.nonresonant = nonres;
  }
  return rep;
}

PolyVectorField parse_bivector(std::string_view source) {
  int n = -1;
  struct Entry {
    int i, j;
    std::string rhs;
    std::size_t line;
  };
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  for (auto raw : text::lines(source)) {
    ++line_no;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    if (text::starts_with_word(line, "dim")) {
      auto w = text::split_ws(line);
      if (w.size() != 2 || n != -1) throw ParseError(where + "expected 'dim <n>'");
      try {
        n = std::stoi(w[1]);
      } catch (...) {
        throw ParseError(where + "bad dimension");
      }
      if (n < 1) throw ParseError(where + "dimension must be positive");
      continue;
    }
    int i = 0, j = 0;
    auto eq = line.find('=');
    std::string head(line.substr(0, eq == std::string_view::npos ? line.size() : eq));
    head = std::string(text::trim(head));
    char tail = 0;
    if (eq == std::string_view::npos || std::sscanf(head.c_str(), "L[%d][%d]%c", &i, &j, &tail) != 2) {
      throw ParseError(where + "expected 'L[i][j] = <polynomial>'");
    }
    if (i < 1 || j < 1 || i >= j) throw ParseError(where + "indices must satisfy 1 <= i < j");
    entries.push_back({i, j, std::string(line.substr(eq + 1)), line_no});
  }
  int max_index = 1;
  for (const auto& e : entries) max_index = std::max(max_index, e.j);
  if (n == -1) n = std::max(max_index, 2);
  if (max_index > n) throw ParseError("component index exceeds dimension " + std::to_string(n));
  auto full = coordinate_ring(n, exact::Ring::make({"alpha"}, {"alpha"}));
  PolyVectorField field(n, 2, full);
  std::set<std::pair<int, int>> seen;
  bool uses_alpha = false;
  for (const auto& e : entries) {
    if (!seen.insert({e.i, e.j}).second) {
      throw ParseError("line " + std::to_string(e.line) + ": duplicate component");
    }
    Poly p;
    try {
      p = exact::parse_poly(full, e.rhs);
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(e.line) + ": " + err.what());
    }
    uses_alpha = uses_alpha || p.contains_variable(static_cast<std::size_t>(n));
    field.add_term({e.i - 1, e.j - 1}, p);
  }
  return uses_alpha ? field : field.with_ring(coordinate_ring(n));
}

std::string format_bivector(const PolyVectorField& bivector) {
  if (bivector.degree() != 2) throw InvalidArgument("expected a bivector field");
  std::string out = "dim " + std::to_string(bivector.dim()) + "\n";
  for (const auto& [t, c] : bivector.components()) {
    out += "L[" + std::to_string(t[0] + 1) + "][" + std::to_string(t[1] + 1) + "] = " + c.to_string() + "\n";
  }
  return out;
}

}  // namespace quadpois::fields
