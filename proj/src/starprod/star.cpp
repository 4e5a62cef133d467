#include "starprod/star.hpp"

#include "common/error.hpp"
#include "exterior/ext_element.hpp"

namespace quadpois::star {

namespace {

using fields::PolyVectorField;

// out += c * src, term by term.
void add_scaled(Poly& out, const Poly& src, const Rational& c) {
  for (const auto& [m, v] : src.terms()) out.add_term(m, c * v);
}

// Splits a monomial into its first n exponents and the remainder (with the
// first n exponents cleared).
std::pair<Monomial, Monomial> split(const Monomial& m, std::size_t n) {
  const auto& e = m.exponents();
  Monomial coords(std::vector<std::uint16_t>(e.begin(), e.begin() + static_cast<long>(n)));
  Monomial params = m;
  for (std::size_t i = 0; i < n; ++i) params.set(i, 0);
  return {coords, params};
}

// Reads the first n variables of p's ring as the first n of target's.
Poly remap_prefix(const Poly& p, const RingPtr& target, std::size_t n) {
  Poly out(target);
  for (const auto& [m, v] : p.terms()) {
    Monomial r(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= n) throw InvalidArgument("unexpected variable '" + p.ring()->name(i) + "'");
      r.set(i, m[i]);
    }
    out.add_term(r, v);
  }
  return out;
}

Poly coordinate_monomial(const RingPtr& ring, const Monomial& coords) {
  Monomial m(ring->size());
  for (std::size_t i = 0; i < coords.size(); ++i) m.set(i, coords[i]);
  return Poly::monomial(ring, m);
}

std::size_t hash_pair(const Monomial& a, const Monomial& b) {
  MonomialHash h;
  std::size_t s = h(a);
  return s ^ (h(b) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2));
}

PolySeries split_hbar(const Poly& p, const RingPtr& target, std::size_t ncoords, std::size_t hbar, int order) {
  PolySeries out(order, Poly(target));
  for (const auto& [m, v] : p.terms()) {
    Monomial r(target->size());
    for (std::size_t i = 0; i < ncoords; ++i) r.set(i, m[i]);
    out[static_cast<int>(m[hbar])].add_term(r, v);
  }
  return out;
}

class GuttStar final : public StarProduct {
 public:
  GuttStar(LieAlgebraPtr g, int order)
      : StarProduct(g->coordinate_ring(), static_cast<std::size_t>(g->dim()), order), g_(g), engine_(g, order) {}

  StarMethod method() const override { return StarMethod::Gutt; }
  std::string carrier() const override { return "polynomials on the dual of a " + std::to_string(g_->dim()) + "-dimensional Lie algebra"; }
  Poly declared_bracket(const Poly& u, const Poly& v) const override { return linear_poisson_bracket(*g_, u, v); }
  const LieAlgebraPtr& algebra() const { return g_; }

 protected:
  PolySeries compute_monomials(const Monomial& a, const Monomial& b) const override {
    return split_hbar(engine_.gutt_monomials(a, b), ring(), coordinate_count(), engine_.hbar_index(), order());
  }

 private:
  LieAlgebraPtr g_;
  PbwEngine engine_;
};

void require_central(const lie::CentralExtension& ext) {
  const auto& g = *ext.extended;
  if (ext.central_index != g.dim() - 1) throw PreconditionError("distinguished element must be the last basis vector");
  for (int j = 0; j < g.dim(); ++j) {
    if (!g.basis_bracket(ext.central_index, j).empty()) {
      throw PreconditionError("distinguished element " + g.label(ext.central_index) + " is not central");
    }
  }
}

class RestrictedStar final : public StarProduct {
 public:
  RestrictedStar(const lie::CentralExtension& ext, int order)
      : StarProduct(ext.base->coordinate_ring(), static_cast<std::size_t>(ext.base->dim()), order),
        ext_(ext),
        inner_(std::make_shared<GuttStar>(ext.extended, order)) {
    require_central(ext);
  }

  StarMethod method() const override { return StarMethod::Restricted; }
  std::string carrier() const override { return "polynomials on the hyperplane t = 1"; }

  Poly declared_bracket(const Poly& u, const Poly& v) const override {
    Poly ue = u.embed(ring()), ve = v.embed(ring());
    Poly out(ring());
    const auto& g = *ext_.extended;
    const int d = ext_.base->dim();
    for (int i = 0; i < d; ++i) {
      Poly du = ue.derivative(static_cast<std::size_t>(i));
      if (du.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const auto& terms = g.basis_bracket(i, j);
        if (terms.empty()) continue;
        Poly dv = ve.derivative(static_cast<std::size_t>(j));
        if (dv.is_zero()) continue;
        Poly coeff(ring());
        for (const auto& t : terms) {
          if (t.index == ext_.central_index) {
            coeff += Poly(ring(), t.coeff);
          } else {
            coeff += Poly::variable(ring(), static_cast<std::size_t>(t.index)) * t.coeff;
          }
        }
        out += coeff * du * dv;
      }
    }
    return out;
  }

  const GuttStar& inner() const { return *inner_; }
  Poly lift(const Poly& u) const {
    return remap_prefix(u.embed(ring()), inner_->ring(), coordinate_count());
  }

 protected:
  PolySeries compute_monomials(const Monomial& a, const Monomial& b) const override {
    auto pad = [&](const Monomial& m) {
      auto e = m.exponents();
      e.push_back(0);
      return Monomial(std::move(e));
    };
    const auto& full = inner_->monomial_product(pad(a), pad(b));
    PolySeries out = zero_series();
    for (int k = 0; k <= order(); ++k) {
      for (const auto& [m, v] : full[k].terms()) out[k].add_term(split(m, coordinate_count()).first, v);
    }
    return out;
  }

 private:
  lie::CentralExtension ext_;
  std::shared_ptr<GuttStar> inner_;
};

void validate_tuples(const TraceCoefficients& a) {
  for (const auto& [s, c] : a) {
    if (s.empty()) throw InvalidArgument("empty trace index tuple");
    int sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 2) throw InvalidArgument("trace exponents must be at least 2");
      if (i > 0 && s[i] < s[i - 1]) throw InvalidArgument("trace exponents must be nondecreasing");
      sum += s[i];
    }
    if (sum % 2 != 0) throw InvalidArgument("trace exponents must have an even sum");
  }
}

// sum_m c_m d^m f for a constant-coefficient operator written in the
// coordinate names.
Poly apply_operator(const Poly& op, const Poly& f) {
  Poly out(f.ring());
  for (const auto& [m, c] : op.terms()) {
    Poly g = f;
    for (std::size_t i = 0; i < m.size() && !g.is_zero(); ++i) {
      for (unsigned e = 0; e < m[i] && !g.is_zero(); ++e) g = g.derivative(i);
    }
    add_scaled(out, g, c);
  }
  return out;
}

PolySeries apply_operator(const PolySeries& op, const PolySeries& f) {
  PolySeries out(f.order(), Poly(f[0].ring()));
  for (int k = 0; k <= op.order(); ++k) {
    if (op[k].is_zero()) continue;
    for (int i = 0; i + k <= f.order(); ++i) {
      if (!f[i].is_zero()) out[i + k] += apply_operator(op[k], f[i]);
    }
  }
  return out;
}

class EquivalenceStar final : public StarProduct {
 public:
  EquivalenceStar(const LieAlgebraPtr& g, const TraceCoefficients& a, StarProductPtr base)
      : StarProduct(base->ring(), base->coordinate_count(), base->order()),
        base_(std::move(base)),
        t_(order(), Poly(ring())),
        t_inv_(order(), Poly(ring())) {
    validate_tuples(a);
    if (ring()->names() != g->coordinate_ring()->names()) {
      throw InvalidArgument("base product must act on polynomials on the dual of the algebra");
    }
    std::map<int, Poly> traces;
    t_[0] = Poly(ring(), 1);
    for (const auto& [s, c] : a) {
      int deg = 0;
      for (int x : s) deg += x;
      if (deg > order() || c == 0) continue;
      Poly prod(ring(), 1);
      for (int x : s) {
        auto it = traces.find(x);
        if (it == traces.end()) it = traces.emplace(x, ad_trace_power(*g, x).embed(ring())).first;
        prod *= it->second;
      }
      t_[deg] += prod * c;
    }
    t_inv_ = exact::invert_unit(t_);
  }

  StarMethod method() const override { return StarMethod::EquivalenceTransformed; }
  std::string carrier() const override { return base_->carrier(); }
  Poly declared_bracket(const Poly& u, const Poly& v) const override { return base_->declared_bracket(u, v); }

 protected:
  PolySeries compute_monomials(const Monomial& a, const Monomial& b) const override {
    auto lift = [&](const Monomial& m) {
      return apply_operator(t_, PolySeries::constant(order(), coordinate_monomial(ring(), m), Poly(ring())));
    };
    return apply_operator(t_inv_, base_->multiply(lift(a), lift(b)));
  }

 private:
  StarProductPtr base_;
  PolySeries t_;
  PolySeries t_inv_;
};

PolyVectorField cartan_bivector(const exact::RationalMatrix& c) {
  const int n = static_cast<int>(c.rows());
  PolyVectorField lam(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& cij = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (cij != 0) lam.add_term({i, j}, lam.x(i) * lam.x(j) * cij);
    }
  }
  return lam;
}

class CartanStar final : public StarProduct {
 public:
  CartanStar(const exact::RationalMatrix& c, int order)
      : StarProduct(fields::coordinate_ring(static_cast<int>(c.rows())), c.rows(), order), c_(c) {
    if (c.rows() != c.cols() || !c.is_antisymmetric()) throw InvalidArgument("c must be an antisymmetric square matrix");
    lambda_ = cartan_bivector(c);
  }

  StarMethod method() const override { return StarMethod::CartanExponential; }
  std::string carrier() const override { return "polynomials on R^" + std::to_string(c_.rows()); }
  Poly declared_bracket(const Poly& u, const Poly& v) const override {
    return fields::poisson_bracket(lambda_, u, v).embed(ring());
  }

 protected:
  PolySeries compute_monomials(const Monomial& a, const Monomial& b) const override {
    // (x_i d_i)(x) (x_j d_j) acts on x^a (x) x^b by a_i b_j
    Rational lam = 0;
    for (std::size_t i = 0; i < c_.rows(); ++i) {
      for (std::size_t j = 0; j < c_.rows(); ++j) lam += c_(i, j) * a[i] * b[j];
    }
    lam /= 2;
    PolySeries out = zero_series();
    Poly base = coordinate_monomial(ring(), a * b);
    Rational coeff = 1;
    for (int k = 0; k <= order(); ++k) {
      if (k > 0) coeff = coeff * lam / k;
      if (coeff == 0) break;
      out[k] = base * coeff;
    }
    return out;
  }

 private:
  exact::RationalMatrix c_;
  PolyVectorField lambda_{1, 2};
};

int gl_rank(const lie::RMatrix& r) {
  const int d = r.algebra()->dim();
  int n = 1;
  while (n * n < d) ++n;
  if (n * n != d || !(*r.algebra() == *lie::gl_basis(n))) throw InvalidArgument("r-matrix must be over gl(n)");
  return n;
}

class FirstOrderStar final : public StarProduct {
 public:
  explicit FirstOrderStar(const lie::RMatrix& r)
      : StarProduct(fields::coordinate_ring(gl_rank(r), r.coefficient_ring()), static_cast<std::size_t>(gl_rank(r)), 1),
        r_(r),
        n_(gl_rank(r)),
        lambda_(fields::j_map(n_, exterior::ExtElement::from_rmatrix(r)).with_ring(ring())) {}

  StarMethod method() const override { return StarMethod::FirstOrder; }
  std::string carrier() const override { return "polynomials on R^" + std::to_string(n_); }
  Poly declared_bracket(const Poly& u, const Poly& v) const override {
    return fields::poisson_bracket(lambda_, u.embed(ring()), v.embed(ring()));
  }

 protected:
  PolySeries compute_monomials(const Monomial& a, const Monomial& b) const override {
    Poly u = coordinate_monomial(ring(), a), v = coordinate_monomial(ring(), b);
    PolySeries out = zero_series();
    out[0] = u * v;
    // J(E_ij) = x_i d_j; (1/2) sum_{I,J} R^{IJ} = sum_{I<J} s^{IJ} (1/2)(uI vJ - uJ vI)
    auto jmap = [&](int idx, const Poly& f) {
      int i = idx / n_, j = idx % n_;
      return Poly::variable(ring(), static_cast<std::size_t>(i)) * f.derivative(static_cast<std::size_t>(j));
    };
    Poly c1(ring());
    for (const auto& [ij, s] : r_.coefficients()) {
      Poly term = jmap(ij.first, u) * jmap(ij.second, v) - jmap(ij.second, u) * jmap(ij.first, v);
      if (!term.is_zero()) c1 += term * s.embed(ring());
    }
    out[1] = c1 * Rational(1, 2);
    return out;
  }

 private:
  lie::RMatrix r_;
  int n_;
  PolyVectorField lambda_;
};

}  // namespace

std::string method_name(StarMethod method) {
  switch (method) {
    case StarMethod::Gutt: return "gutt";
    case StarMethod::Restricted: return "restricted";
    case StarMethod::EquivalenceTransformed: return "equivalence-transformed";
    case StarMethod::CartanExponential: return "cartan-exponential";
    case StarMethod::FirstOrder: return "first-order";
  }
  return "unknown";
}

std::size_t StarProduct::PairHash::operator()(const std::pair<Monomial, Monomial>& p) const {
  return hash_pair(p.first, p.second);
}

StarProduct::StarProduct(RingPtr ring, std::size_t ncoords, int order)
    : ring_(std::move(ring)), ncoords_(ncoords), order_(order) {
  if (order < 0) throw PreconditionError("truncation order must be nonnegative");
  if (ncoords > ring_->size()) throw InternalError("carrier ring smaller than its coordinate count");
}

const PolySeries& StarProduct::monomial_product(const Monomial& a, const Monomial& b) const {
  if (a.size() != ncoords_ || b.size() != ncoords_) throw InvalidArgument("monomial size mismatch");
  std::lock_guard lock(mutex_);
  auto it = memo_.find({a, b});
  if (it != memo_.end()) return it->second;
  auto value = compute_monomials(a, b);
  return memo_.emplace(std::make_pair(a, b), std::move(value)).first->second;
}

PolySeries StarProduct::multiply(const Poly& u, const Poly& v) const {
  Poly ue = u.embed(ring_), ve = v.embed(ring_);
  PolySeries out = zero_series();
  for (const auto& [m1, c1] : ue.terms()) {
    auto [a, pa] = split(m1, ncoords_);
    for (const auto& [m2, c2] : ve.terms()) {
      auto [b, pb] = split(m2, ncoords_);
      const auto& s = monomial_product(a, b);
      Rational c = c1 * c2;
      if (pa.is_one() && pb.is_one()) {
        for (int k = 0; k <= order_; ++k) add_scaled(out[k], s[k], c);
      } else {
        Poly factor = Poly::monomial(ring_, pa * pb, c);
        for (int k = 0; k <= order_; ++k) {
          if (!s[k].is_zero()) out[k] += s[k] * factor;
        }
      }
    }
  }
  return out;
}

PolySeries StarProduct::multiply(const PolySeries& u, const PolySeries& v) const {
  PolySeries out = zero_series();
  for (int i = 0; i <= std::min(order_, u.order()); ++i) {
    if (u[i].is_zero()) continue;
    for (int j = 0; i + j <= std::min(order_, v.order()); ++j) {
      if (v[j].is_zero()) continue;
      auto p = multiply(u[i], v[j]);
      for (int k = 0; i + j + k <= order_; ++k) out[i + j + k] += p[k];
    }
  }
  return out;
}

Poly linear_poisson_bracket(const LieAlgebra& g, const Poly& u, const Poly& v) {
  const auto& ring = g.coordinate_ring();
  Poly ue = u.embed(ring), ve = v.embed(ring);
  Poly out(ring);
  for (int i = 0; i < g.dim(); ++i) {
    Poly du = ue.derivative(static_cast<std::size_t>(i));
    if (du.is_zero()) continue;
    for (int j = 0; j < g.dim(); ++j) {
      const auto& terms = g.basis_bracket(i, j);
      if (terms.empty()) continue;
      Poly dv = ve.derivative(static_cast<std::size_t>(j));
      if (dv.is_zero()) continue;
      Poly coeff(ring);
      for (const auto& t : terms) coeff += Poly::variable(ring, static_cast<std::size_t>(t.index)) * t.coeff;
      out += coeff * du * dv;
    }
  }
  return out;
}

StarProductPtr make_gutt_star(const LieAlgebraPtr& algebra, int order) {
  if (order < 1) throw PreconditionError("Gutt star product requires N >= 1");
  return std::make_shared<GuttStar>(algebra, order);
}

PolySeries gutt_star(const LieAlgebraPtr& algebra, const Poly& u, const Poly& v, int order) {
  return make_gutt_star(algebra, order)->multiply(u, v);
}

PolySeries gutt_star_direct(const LieAlgebraPtr& algebra, const Poly& u, const Poly& v, int order) {
  if (order < 1) throw PreconditionError("Gutt star product requires N >= 1");
  PbwEngine engine(algebra, order);
  const auto& ring = algebra->coordinate_ring();
  Poly e = engine.multiply(engine.sigma(u.embed(ring)), engine.sigma(v.embed(ring)));
  return split_hbar(engine.sigma_inverse(e), ring, static_cast<std::size_t>(algebra->dim()), engine.hbar_index(),
                    order);
}

StarProductPtr make_restricted_star(const lie::CentralExtension& ext, int order) {
  if (order < 1) throw PreconditionError("restricted star product requires N >= 1");
  return std::make_shared<RestrictedStar>(ext, order);
}

PolySeries hyperplane_restrict_star(const lie::CentralExtension& ext, const Poly& u, const Poly& v, int order) {
  auto star = std::make_shared<RestrictedStar>(ext, order);
  const auto& inner = star->inner();
  Poly t = Poly::variable(inner.ring(), static_cast<std::size_t>(ext.central_index));
  for (const Poly& w : {u, v}) {
    Poly lifted = star->lift(w);
    auto expected = PolySeries::constant(order, t * lifted, Poly(inner.ring()));
    if (inner.multiply(t, lifted) != expected || inner.multiply(lifted, t) != expected) {
      throw InternalError("central coordinate does not act by multiplication");
    }
  }
  return star->multiply(u, v);
}

Poly ad_trace_power(const LieAlgebra& g, int s) {
  if (s < 0) throw InvalidArgument("trace exponent must be nonnegative");
  const auto& ring = g.coordinate_ring();
  const auto d = static_cast<std::size_t>(g.dim());
  // (ad xi)_{KJ} = sum_I xi_I c_IJ^K
  std::vector<Poly> ad(d * d, Poly(ring));
  for (std::size_t i = 0; i < d; ++i) {
    Poly xi = Poly::variable(ring, i);
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& t : g.basis_bracket(static_cast<int>(i), static_cast<int>(j))) {
        ad[static_cast<std::size_t>(t.index) * d + j] += xi * t.coeff;
      }
    }
  }
  std::vector<Poly> power(d * d, Poly(ring));
  for (std::size_t i = 0; i < d; ++i) power[i * d + i] = Poly(ring, 1);
  for (int step = 0; step < s; ++step) {
    std::vector<Poly> next(d * d, Poly(ring));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (power[i * d + k].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (!ad[k * d + j].is_zero()) next[i * d + j] += power[i * d + k] * ad[k * d + j];
        }
      }
    }
    power = std::move(next);
  }
  Poly trace(ring);
  for (std::size_t i = 0; i < d; ++i) trace += power[i * d + i];
  return trace;
}

StarProductPtr make_equivalence_transform(const LieAlgebraPtr& algebra, const TraceCoefficients& a,
                                          const StarProductPtr& base) {
  return std::make_shared<EquivalenceStar>(algebra, a, base);
}

PolySeries equivalence_transform(const LieAlgebraPtr& algebra, const TraceCoefficients& a,
                                 const StarProductPtr& base, const Poly& u, const Poly& v) {
  return make_equivalence_transform(algebra, a, base)->multiply(u, v);
}

StarProductPtr make_cartan_star(const exact::RationalMatrix& c, int order) {
  return std::make_shared<CartanStar>(c, order);
}

PolySeries cartan_star_on_V(const exact::RationalMatrix& c, const Poly& u, const Poly& v, int order) {
  return make_cartan_star(c, order)->multiply(u, v);
}

StarProductPtr make_first_order_star(const lie::RMatrix& r) { return std::make_shared<FirstOrderStar>(r); }

PolySeries first_order_star_on_V(const lie::RMatrix& r, const Poly& u, const Poly& v) {
  return make_first_order_star(r)->multiply(u, v);
}

}  // namespace quadpois::star
