#include "polyfields/polyvector.hpp"

#include "common/error.hpp"

namespace quadpois::fields {

RingPtr coordinate_ring(int n, const RingPtr& params) {
  if (n < 1) throw InvalidArgument("ambient dimension must be positive");
  std::vector<std::string> names, invertible;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t v = 0; v < params->size(); ++v) {
    const auto& name = params->name(v);
    for (int i = 0; i < n; ++i) {
      if (names[static_cast<std::size_t>(i)] == name) {
        throw InvalidArgument("parameter '" + name + "' clashes with a coordinate");
      }
    }
    names.push_back(name);
    if (params->is_invertible(v)) invertible.push_back(name);
  }
  return exact::Ring::make(names, invertible);
}

PolyVectorField::PolyVectorField(int n, int degree, RingPtr ring) : n_(n), degree_(degree), ring_(std::move(ring)) {
  if (n_ < 1) throw InvalidArgument("ambient dimension must be positive");
  if (degree_ < 0) throw InvalidArgument("negative polyvector degree");
  if (ring_->size() < static_cast<std::size_t>(n_)) throw InvalidArgument("ring lacks the coordinates");
  for (int i = 0; i < n_; ++i) {
    if (ring_->name(static_cast<std::size_t>(i)) != "x" + std::to_string(i + 1)) {
      throw InvalidArgument("ring must start with the coordinates x1..xn");
    }
  }
}

Poly PolyVectorField::component(Tuple t) const {
  int s = exterior::sort_with_sign(t);
  if (s == 0) return Poly(ring_);
  auto it = terms_.find(t);
  if (it == terms_.end()) return Poly(ring_);
  return s > 0 ? it->second : -it->second;
}

void PolyVectorField::add_term(Tuple t, const Poly& c) {
  if (static_cast<int>(t.size()) != degree_) throw InvalidArgument("term degree differs from field degree");
  for (int i : t) {
    if (i < 0 || i >= n_) throw InvalidArgument("derivation index out of range");
  }
  if (c.is_zero()) return;
  int s = exterior::sort_with_sign(t);
  if (s == 0) return;
  Poly v = c.embed(ring_);
  if (s < 0) v = -v;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(std::move(t), std::move(v));
    return;
  }
  it->second += v;
  if (it->second.is_zero()) terms_.erase(it);
}

bool PolyVectorField::is_quadratic_bivector() const {
  if (degree_ != 2) return false;
  for (const auto& [t, c] : terms_) {
    if (!c.homogeneous_in(0, static_cast<std::size_t>(n_), 2)) return false;
  }
  return true;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
  if (o.n_ != n_) throw InvalidArgument("fields on different dimensions");
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw InvalidArgument("adding fields of different degree");
  if (is_zero()) degree_ = o.degree_;
  if (!ring_->same_as(*o.ring_)) *this = with_ring(exact::union_ring(ring_, o.ring_));
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& o) {
  PolyVectorField neg = o;
  neg *= Poly(-1);
  return *this += neg;
}

PolyVectorField& PolyVectorField::operator*=(const Poly& c) {
  if (!c.ring()->same_as(*ring_) && c.ring()->size() != 0) *this = with_ring(exact::union_ring(ring_, c.ring()));
  Poly k = c.embed(ring_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= k;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.n_ != b.n_) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
  auto ra = a.ring_, rb = b.ring_;
  if (!ra->same_as(*rb)) {
    auto u = exact::union_ring(ra, rb);
    return a.with_ring(u).terms_ == b.with_ring(u).terms_;
  }
  return a.terms_ == b.terms_;
}

PolyVectorField PolyVectorField::with_ring(const RingPtr& ring) const {
  PolyVectorField out(n_, degree_, ring);
  for (const auto& [t, c] : terms_) out.terms_.emplace(t, c.embed(ring));
  return out;
}

PolyVectorField PolyVectorField::substitute(const std::map<std::size_t, Poly>& assignment) const {
  PolyVectorField out(n_, degree_, ring_);
  for (const auto& [t, c] : terms_) out.add_term(t, c.substitute(assignment));
  return out;
}

std::string PolyVectorField::to_string() const {
  std::vector<std::pair<Poly, std::string>> parts;
  for (const auto& [t, c] : terms_) {
    std::string word;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) word += "^";
      word += "d" + std::to_string(t[i] + 1);
    }
    parts.emplace_back(c, word);
  }
  return exact::format_combination(parts);
}

void unify(PolyVectorField& a, PolyVectorField& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("fields on different dimensions");
  if (a.ring()->same_as(*b.ring())) return;
  auto u = exact::union_ring(a.ring(), b.ring());
  a = a.with_ring(u);
  b = b.with_ring(u);
}

PolyVectorField wedge(const PolyVectorField& p0, const PolyVectorField& q0) {
  PolyVectorField p = p0, q = q0;
  unify(p, q);
  PolyVectorField out(p.dim(), p.degree() + q.degree(), p.ring());
  if (out.degree() > p.dim()) return out;
  for (const auto& [tp, cp] : p.components()) {
    for (const auto& [tq, cq] : q.components()) {
      Tuple t = tp;
      t.insert(t.end(), tq.begin(), tq.end());
      out.add_term(std::move(t), cp * cq);
    }
  }
  return out;
}

namespace {

// One half of the bracket: sum_i (A <- d/dtheta_i)(d_i B), theta order A then B.
void half_bracket(const PolyVectorField& a, const PolyVectorField& b, const Poly& scale, PolyVectorField& out) {
  const int k = a.degree();
  for (const auto& [ta, ca] : a.components()) {
    for (std::size_t pos = 0; pos < ta.size(); ++pos) {
      const int i = ta[pos];
      // Moving theta_i to the right end of theta_T.
      const int sign = ((k - 1 - static_cast<int>(pos)) % 2 == 0) ? 1 : -1;
      Tuple rest;
      for (std::size_t s = 0; s < ta.size(); ++s) {
        if (s != pos) rest.push_back(ta[s]);
      }
      for (const auto& [tb, cb] : b.components()) {
        Poly d = cb.derivative(static_cast<std::size_t>(i));
        if (d.is_zero()) continue;
        Tuple t = rest;
        t.insert(t.end(), tb.begin(), tb.end());
        out.add_term(std::move(t), ca * d * scale * Rational(sign));
      }
    }
  }
}

}  // namespace

PolyVectorField sn_bracket(const PolyVectorField& p0, const PolyVectorField& q0) {
  PolyVectorField p = p0, q = q0;
  unify(p, q);
  const int k = p.degree(), l = q.degree();
  PolyVectorField out(p.dim(), std::max(k + l - 1, 0), p.ring());
  if (k + l == 0) return out;
  const int eps = ((k - 1) * (l - 1)) % 2 == 0 ? 1 : -1;
  half_bracket(p, q, Poly(1), out);
  half_bracket(q, p, Poly(-eps), out);
  return out;
}

Poly apply_vector_field(const PolyVectorField& x, const Poly& f) {
  if (x.degree() != 1) throw InvalidArgument("expected a vector field");
  auto ring = exact::union_ring(x.ring(), f.ring());
  Poly g = f.embed(ring);
  Poly out(ring);
  for (const auto& [t, c] : x.components()) out += c.embed(ring) * g.derivative(static_cast<std::size_t>(t[0]));
  return out;
}

Poly poisson_bracket(const PolyVectorField& bivector, const Poly& f, const Poly& g) {
  if (bivector.degree() != 2) throw InvalidArgument("expected a bivector field");
  auto ring = exact::union_ring(exact::union_ring(bivector.ring(), f.ring()), g.ring());
  Poly ff = f.embed(ring), gg = g.embed(ring);
  Poly out(ring);
  for (const auto& [t, c] : bivector.components()) {
    auto i = static_cast<std::size_t>(t[0]), j = static_cast<std::size_t>(t[1]);
    out += c.embed(ring) * (ff.derivative(i) * gg.derivative(j) - ff.derivative(j) * gg.derivative(i));
  }
  return out;
}

PolyVectorField j_map(int n, const exterior::ExtElement& u) {
  const auto& g = *u.algebra();
  if (g.dim() != n * n || !(g == *lie::gl_basis(n))) throw InvalidArgument("j_map needs an element over gl(n)");
  exact::RingPtr params = exact::Ring::scalars();
  for (const auto& [t, c] : u.terms()) params = exact::union_ring(params, c.ring());
  auto ring = coordinate_ring(n, params);
  PolyVectorField out(n, u.degree(), ring);
  for (const auto& [t, c] : u.terms()) {
    exact::Monomial m(ring->size());
    Tuple d;
    for (int idx : t) {
      const int i = idx / n, j = idx % n;
      m.set(static_cast<std::size_t>(i), static_cast<std::uint16_t>(m[static_cast<std::size_t>(i)] + 1));
      d.push_back(j);
    }
    out.add_term(std::move(d), Poly::monomial(ring, m) * c.embed(ring));
  }
  return out;
}

}  // namespace quadpois::fields
