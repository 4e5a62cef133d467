#include "starprod/pbw.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <optional>

namespace quadpois::star {

namespace {

std::size_t hash_exponents(const Monomial& m, std::size_t seed) {
  for (auto e : m.exponents()) seed ^= e + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

RingPtr engine_ring(const LieAlgebra& g) {
  auto names = g.coordinate_ring()->names();
  if (std::find(names.begin(), names.end(), "hbar") != names.end()) {
    throw InvalidArgument("coordinate name 'hbar' is reserved");
  }
  names.push_back("hbar");
  return exact::Ring::make(std::move(names));
}

}  // namespace

PbwElement::PbwElement(LieAlgebraPtr algebra, int order) : algebra_(std::move(algebra)), order_(order) {
  if (order < 0) throw PreconditionError("truncation order must be nonnegative");
}

void PbwElement::add(const Monomial& a, int k, const Rational& c) {
  if (a.size() != static_cast<std::size_t>(algebra_->dim())) throw InvalidArgument("monomial size mismatch");
  if (k > order_ || c == 0) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) it = terms_.emplace(a, RationalSeries(order_)).first;
  it->second[k] += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool operator==(const PbwElement& a, const PbwElement& b) {
  return *a.algebra_ == *b.algebra_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

std::string PbwElement::to_string() const {
  std::vector<std::pair<Poly, std::string>> pieces;
  auto hring = exact::Ring::make({"hbar"});
  for (const auto& [m, s] : terms_) {
    std::string word;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!word.empty()) word += "*";
      word += algebra_->label(static_cast<int>(i));
      if (m[i] > 1) word += "^" + std::to_string(m[i]);
    }
    Poly c(hring);
    for (int k = 0; k <= order_; ++k) {
      if (s[k] != 0) c += Poly::variable(hring, 0).pow(static_cast<unsigned>(k)) * s[k];
    }
    pieces.emplace_back(c, word);
  }
  return exact::format_combination(pieces);
}

PbwElement pbw_reduce(const LieAlgebraPtr& g, const std::vector<int>& word, int order, RewriteOrder strategy) {
  for (int i : word) {
    if (i < 0 || i >= g->dim()) throw InvalidArgument("basis index out of range");
  }
  std::map<std::vector<int>, RationalSeries> pending, done;
  auto push = [&](std::map<std::vector<int>, RationalSeries>& into, const std::vector<int>& w,
                  const RationalSeries& c) {
    if (c.is_zero()) return;
    auto it = into.find(w);
    if (it == into.end()) {
      into.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) into.erase(it);
    }
  };
  push(pending, word, RationalSeries::constant(order, 1));
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& w = node.key();
    const auto& c = node.mapped();
    std::optional<std::size_t> pos;
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (w[p] > w[p + 1]) {
        pos = p;
        if (strategy == RewriteOrder::Leftmost) break;
      }
    }
    if (!pos) {
      push(done, w, c);
      continue;
    }
    auto swapped = w;
    std::swap(swapped[*pos], swapped[*pos + 1]);
    push(pending, swapped, c);
    if (order >= 1) {
      for (const auto& t : g->basis_bracket(w[*pos], w[*pos + 1])) {
        std::vector<int> shorter(w.begin(), w.begin() + static_cast<long>(*pos));
        shorter.push_back(t.index);
        shorter.insert(shorter.end(), w.begin() + static_cast<long>(*pos) + 2, w.end());
        auto scaled = c.shifted(1);
        for (int k = 0; k <= order; ++k) scaled[k] *= t.coeff;
        push(pending, shorter, scaled);
      }
    }
  }
  PbwElement out(g, order);
  for (const auto& [w, c] : done) {
    Monomial m(static_cast<std::size_t>(g->dim()));
    for (int i : w) m.set(static_cast<std::size_t>(i), static_cast<std::uint16_t>(m[static_cast<std::size_t>(i)] + 1));
    for (int k = 0; k <= order; ++k) out.add(m, k, c[k]);
  }
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const { return hash_exponents(m, 0); }

std::size_t PbwEngine::PairHash::operator()(const std::pair<Monomial, Monomial>& p) const {
  return hash_exponents(p.second, hash_exponents(p.first, 17));
}

std::size_t PbwEngine::GenHash::operator()(const std::pair<Monomial, int>& p) const {
  return hash_exponents(p.first, static_cast<std::size_t>(p.second) * 31 + 7);
}

PbwEngine::PbwEngine(LieAlgebraPtr algebra, int order)
    : algebra_(std::move(algebra)), order_(order), ring_(engine_ring(*algebra_)) {
  if (order < 0) throw PreconditionError("truncation order must be nonnegative");
}

Monomial PbwEngine::key(const Monomial& coords) const {
  if (coords.size() != hbar_index()) throw InvalidArgument("monomial size mismatch");
  auto e = coords.exponents();
  e.push_back(0);
  return Monomial(std::move(e));
}

Monomial PbwEngine::strip_hbar(const Monomial& m) const {
  if (m[hbar_index()] == 0) return m;
  Monomial out = m;
  out.set(hbar_index(), 0);
  return out;
}

void PbwEngine::accumulate(Poly& out, const Poly& src, const Rational& c, unsigned shift) const {
  const auto h = hbar_index();
  for (const auto& [m, v] : src.terms()) {
    unsigned k = m[h] + shift;
    if (k > static_cast<unsigned>(order_)) continue;
    if (shift == 0) {
      out.add_term(m, c * v);
    } else {
      Monomial m2 = m;
      m2.set(h, static_cast<std::uint16_t>(k));
      out.add_term(m2, c * v);
    }
  }
}

const Poly& PbwEngine::rmul(const Monomial& a, int i) const {
  auto found = rmul_.find({a, i});
  if (found != rmul_.end()) return found->second;
  int j = -1;
  for (int k = algebra_->dim() - 1; k >= 0; --k) {
    if (a[static_cast<std::size_t>(k)] > 0) {
      j = k;
      break;
    }
  }
  Poly out(ring_);
  if (j <= i) {
    Monomial m = a;
    m.set(static_cast<std::size_t>(i), static_cast<std::uint16_t>(a[static_cast<std::size_t>(i)] + 1));
    out.add_term(m, 1);
  } else {
    // X^a X_i = (X^{a-e_j} X_i) X_j + hbar X^{a-e_j} [X_j, X_i]
    Monomial rest = a;
    rest.set(static_cast<std::size_t>(j), static_cast<std::uint16_t>(a[static_cast<std::size_t>(j)] - 1));
    const Poly& head = rmul(rest, i);
    for (const auto& [m, v] : head.terms()) accumulate(out, rmul(strip_hbar(m), j), v, m[hbar_index()]);
    if (order_ >= 1) {
      for (const auto& t : algebra_->basis_bracket(j, i)) accumulate(out, rmul(rest, t.index), t.coeff, 1);
    }
  }
  return rmul_.emplace(std::make_pair(a, i), std::move(out)).first->second;
}

Poly PbwEngine::times_generator(const Poly& e, int i) const {
  Poly out(ring_);
  for (const auto& [m, v] : e.terms()) accumulate(out, rmul(strip_hbar(m), i), v, m[hbar_index()]);
  return out;
}

Poly PbwEngine::multiply(const Poly& e, const Poly& f) const {
  std::lock_guard lock(mutex_);
  Poly ee = e.embed(ring_);
  Poly ff = f.embed(ring_);
  Poly out(ring_);
  for (const auto& [m, v] : ff.terms()) {
    Poly acc = ee;
    for (int i = 0; i < algebra_->dim(); ++i) {
      for (unsigned r = 0; r < m[static_cast<std::size_t>(i)]; ++r) acc = times_generator(acc, i);
    }
    accumulate(out, acc, v, m[hbar_index()]);
  }
  return out;
}

const Poly& PbwEngine::sigma_mono(const Monomial& a) const {
  auto found = sigma_.find(a);
  if (found != sigma_.end()) return found->second;
  Poly out(ring_);
  if (a.is_one()) {
    out.add_term(a, 1);
  } else {
    // sigma(x^a) = sum_i (a_i / |a|) sigma(x^{a - e_i}) X_i
    for (int i = 0; i < algebra_->dim(); ++i) {
      auto ai = a[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      Monomial rest = a;
      rest.set(static_cast<std::size_t>(i), static_cast<std::uint16_t>(ai - 1));
      Poly part = times_generator(sigma_mono(rest), i);
      Rational w(static_cast<long>(ai), static_cast<long>(a.degree()));
      w.canonicalize();
      accumulate(out, part, w, 0);
    }
  }
  return sigma_.emplace(a, std::move(out)).first->second;
}

const Poly& PbwEngine::sigma_inverse_mono(const Monomial& a) const {
  auto found = sigma_inv_.find(a);
  if (found != sigma_inv_.end()) return found->second;
  // sigma(x^a) = X^a + lower order terms
  Poly lower = sigma_mono(a);
  lower.add_term(a, -1);
  Poly out(ring_);
  out.add_term(a, 1);
  for (const auto& [m, v] : lower.terms()) accumulate(out, sigma_inverse_mono(strip_hbar(m)), -v, m[hbar_index()]);
  return sigma_inv_.emplace(a, std::move(out)).first->second;
}

Poly PbwEngine::sigma(const Poly& u) const {
  std::lock_guard lock(mutex_);
  Poly e = u.embed(ring_);
  Poly out(ring_);
  for (const auto& [m, v] : e.terms()) accumulate(out, sigma_mono(strip_hbar(m)), v, m[hbar_index()]);
  return out;
}

Poly PbwEngine::sigma_inverse(const Poly& e) const {
  std::lock_guard lock(mutex_);
  Poly f = e.embed(ring_);
  Poly out(ring_);
  for (const auto& [m, v] : f.terms()) accumulate(out, sigma_inverse_mono(strip_hbar(m)), v, m[hbar_index()]);
  return out;
}

const Poly& PbwEngine::right_gen(const Monomial& a, int i) const {
  auto found = right_gen_.find({a, i});
  if (found != right_gen_.end()) return found->second;
  Poly prod = times_generator(sigma_mono(a), i);
  Poly out(ring_);
  for (const auto& [m, v] : prod.terms()) accumulate(out, sigma_inverse_mono(strip_hbar(m)), v, m[hbar_index()]);
  return right_gen_.emplace(std::make_pair(a, i), std::move(out)).first->second;
}

const Poly& PbwEngine::pair(const Monomial& a, const Monomial& b) const {
  auto found = pair_.find({a, b});
  if (found != pair_.end()) return found->second;
  Poly out(ring_);
  if (b.is_one()) {
    out.add_term(a, 1);
  } else {
    // sigma(x^b) = sum_i (b_i/|b|) sigma(x^{b-e_i}) X_i
    for (int i = 0; i < algebra_->dim(); ++i) {
      auto bi = b[static_cast<std::size_t>(i)];
      if (bi == 0) continue;
      Monomial rest = b;
      rest.set(static_cast<std::size_t>(i), static_cast<std::uint16_t>(bi - 1));
      Rational w(static_cast<long>(bi), static_cast<long>(b.degree()));
      w.canonicalize();
      const Poly& prev = pair(a, rest);
      for (const auto& [m, v] : prev.terms()) accumulate(out, right_gen(strip_hbar(m), i), w * v, m[hbar_index()]);
    }
  }
  return pair_.emplace(std::make_pair(a, b), std::move(out)).first->second;
}

Poly PbwEngine::gutt_monomials(const Monomial& a, const Monomial& b) const {
  std::lock_guard lock(mutex_);
  return pair(key(a), key(b));
}

PbwElement PbwEngine::to_element(const Poly& e) const {
  PbwElement out(algebra_, order_);
  Poly f = e.embed(ring_);
  for (const auto& [m, v] : f.terms()) {
    auto ex = m.exponents();
    int k = ex.back();
    ex.pop_back();
    out.add(Monomial(std::move(ex)), k, v);
  }
  return out;
}

Poly PbwEngine::from_element(const PbwElement& e) const {
  if (!(*e.algebra() == *algebra_)) throw InvalidArgument("element belongs to a different algebra");
  Poly out(ring_);
  for (const auto& [m, s] : e.terms()) {
    for (int k = 0; k <= std::min(order_, e.order()); ++k) {
      if (s[k] == 0) continue;
      Monomial km = key(m);
      km.set(hbar_index(), static_cast<std::uint16_t>(k));
      out.add_term(km, s[k]);
    }
  }
  return out;
}

}  // namespace quadpois::star
