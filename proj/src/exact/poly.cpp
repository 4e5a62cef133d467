#include "exact/poly.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace quadpois::exact {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("not a rational number: '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- Ring

RingPtr Ring::make(std::vector<std::string> names, std::vector<std::string> invertible) {
  auto ring = std::shared_ptr<Ring>(new Ring());
  ring->invertible_.assign(names.size(), false);
  for (const auto& inv : invertible) {
    auto it = std::find(names.begin(), names.end(), inv);
    if (it == names.end()) throw InvalidArgument("invertible variable '" + inv + "' is not in the ring");
    ring->invertible_[static_cast<std::size_t>(it - names.begin())] = true;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (names[i] == names[j]) throw InvalidArgument("duplicate variable name '" + names[i] + "'");
    }
  }
  ring->names_ = std::move(names);
  return ring;
}

const RingPtr& Ring::scalars() {
  static const RingPtr empty = make({});
  return empty;
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr union_ring(const RingPtr& a, const RingPtr& b) {
  if (a->same_as(*b) || b->size() == 0) return a;
  if (a->size() == 0) return b;
  std::vector<std::string> names = a->names();
  std::vector<std::string> inv;
  for (std::size_t i = 0; i < a->size(); ++i) {
    if (a->is_invertible(i)) inv.push_back(a->name(i));
  }
  bool grew = false;
  for (std::size_t i = 0; i < b->size(); ++i) {
    if (!a->index_of(b->name(i))) {
      names.push_back(b->name(i));
      grew = true;
    }
    if (b->is_invertible(i) && std::find(inv.begin(), inv.end(), b->name(i)) == inv.end()) {
      inv.push_back(b->name(i));
      grew = true;
    }
  }
  return grew ? Ring::make(std::move(names), std::move(inv)) : a;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint16_t> exps) : e_(std::move(exps)) {
  degree_ = std::accumulate(e_.begin(), e_.end(), 0u);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var) {
  Monomial m(nvars);
  m.set(var, 1);
  return m;
}

void Monomial::set(std::size_t i, std::uint16_t value) {
  degree_ = degree_ - e_[i] + value;
  e_[i] = value;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<std::uint16_t>(r.e_[i] + other.e_[i]);
  r.degree_ += other.degree_;
  return r;
}

bool Monomial::divisible_by(const Monomial& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] < other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::divided_by(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<std::uint16_t>(r.e_[i] - other.e_[i]);
  r.degree_ -= other.degree_;
  return r;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
  if (c != 0) terms_.emplace(Monomial(ring_->size()), c);
}

Poly::Poly(const Rational& c) : Poly(Ring::scalars(), c) {}

Poly Poly::variable(const RingPtr& ring, std::size_t var) {
  if (var >= ring->size()) throw InvalidArgument("variable index out of range");
  Poly p(ring);
  p.terms_.emplace(Monomial::unit(ring->size(), var), Rational(1));
  return p;
}

Poly Poly::variable(const RingPtr& ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw InvalidArgument("unknown variable '" + std::string(name) + "'");
  return variable(ring, *idx);
}

Poly Poly::monomial(const RingPtr& ring, Monomial m, const Rational& c) {
  if (m.size() != ring->size()) throw InvalidArgument("monomial does not match ring");
  Poly p(ring);
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  // The unit monomial is the smallest in grlex, hence last.
  const auto& last = *terms_.rbegin();
  return last.first.is_one() ? last.second : Rational(0);
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m[var]);
  return d;
}

Poly Poly::coefficient_in(std::size_t var, unsigned power) const {
  Poly out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] != power) continue;
    Monomial r(m);
    r.set(var, 0);
    out.terms_.emplace(std::move(r), c);
  }
  return out;
}

bool Poly::contains_variable(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[var] != 0; });
}

bool Poly::homogeneous_in(std::size_t first, std::size_t last, unsigned d) const {
  for (const auto& [m, c] : terms_) {
    unsigned deg = 0;
    for (std::size_t i = first; i < last; ++i) deg += m[i];
    if (deg != d) return false;
  }
  return true;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::lifted_to(const RingPtr& target) const {
  Poly out(target);
  Rational c = constant_term();
  if (c != 0) out.terms_.emplace(Monomial(target->size()), c);
  return out;
}

void Poly::unify_ring(const Poly& other) {
  if (ring_ == other.ring_ || ring_->same_as(*other.ring_)) return;
  if (other.ring_->size() == 0) return;
  if (ring_->size() == 0) {
    *this = lifted_to(other.ring_);
    return;
  }
  throw InvalidArgument("polynomials live over different variable sets");
}

Poly& Poly::operator+=(const Poly& other) {
  unify_ring(other);
  if (other.ring_->size() == 0 && ring_->size() != 0) {
    add_term(Monomial(ring_->size()), other.constant_term());
    return *this;
  }
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  unify_ring(other);
  if (other.ring_->size() == 0 && ring_->size() != 0) {
    add_term(Monomial(ring_->size()), -other.constant_term());
    return *this;
  }
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) {
    Poly z(a.ring_->size() ? a.ring_ : b.ring_);
    return z;
  }
  if (b.ring_->size() == 0) return a * b.constant_term();
  if (a.ring_->size() == 0) return b * a.constant_term();
  Poly out(a.ring_);
  out.unify_ring(b);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.ring_ == b.ring_ || a.ring_->same_as(*b.ring_)) return a.terms_ == b.terms_;
  if (a.is_constant() && b.is_constant()) return a.constant_term() == b.constant_term();
  return false;
}

Poly Poly::pow(unsigned k) const {
  Poly result(ring_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  Poly out(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial r(m);
    r.set(var, static_cast<std::uint16_t>(m[var] - 1));
    out.terms_.emplace(std::move(r), c * m[var]);
  }
  return out;
}

Poly Poly::substitute(const std::map<std::size_t, Poly>& assignment) const {
  if (assignment.empty()) return *this;
  Poly out(ring_);
  // Cache powers of the substituted values.
  std::map<std::pair<std::size_t, unsigned>, Poly> powers;
  auto power_of = [&](std::size_t var, unsigned k) -> const Poly& {
    auto key = std::make_pair(var, k);
    auto it = powers.find(key);
    if (it == powers.end()) {
      Poly v = assignment.at(var);
      if (v.ring()->size() == 0) v = v.lifted_to(ring_);
      it = powers.emplace(key, v.pow(k)).first;
    }
    return it->second;
  };
  for (const auto& [m, c] : terms_) {
    Monomial kept(m);
    Poly factor(ring_, c);
    for (const auto& [var, value] : assignment) {
      if (m[var] == 0) continue;
      kept.set(var, 0);
      factor *= power_of(var, m[var]);
    }
    out += factor * Poly::monomial(ring_, kept);
  }
  return out;
}

Poly Poly::embed(const RingPtr& target) const {
  if (ring_->same_as(*target)) {
    Poly p(target);
    p.terms_ = terms_;
    return p;
  }
  std::vector<std::size_t> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto idx = target->index_of(ring_->name(i));
    if (!idx) {
      if (contains_variable(i)) throw InvalidArgument("variable '" + ring_->name(i) + "' missing from target ring");
      map[i] = target->size();
      continue;
    }
    map[i] = *idx;
  }
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Monomial r(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) r.set(map[i], m[i]);
    }
    out.add_term(r, c);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += mono;
    } else if (is_integer(mag)) {
      s += mag.get_str() + "*" + mono;
    } else {
      s += "(" + mag.get_str() + ")*" + mono;
    }
  }
  return s;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(ring_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rational(1) / d.constant_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    if (accept('-')) return -factor();
    Poly b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational q;
      q.set_str(std::string(text_.substr(start, pos_ - start)), 10);
      return Poly(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) fail("unknown variable '" + std::string(name) + "'");
      return Poly::variable(ring_, *idx);
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

std::string format_combination(const std::vector<std::pair<Poly, std::string>>& terms) {
  std::string out;
  for (const auto& [c, word] : terms) {
    if (c.is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c.is_constant()) {
      Rational q = c.constant_term();
      negative = q < 0;
      if (negative) q = -q;
      if (q != 1 || word.empty()) coef = to_string(q);
      if (!word.empty() && !is_integer(q)) coef = "(" + coef + ")";
    } else if (c.size() == 1) {
      coef = c.to_string();
      if (coef[0] == '-') {
        negative = true;
        coef.erase(0, 1);
      }
    } else {
      coef = "(" + c.to_string() + ")";
    }
    std::string piece = coef.empty() ? word : (word.empty() ? coef : coef + "*" + word);
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += (negative ? " - " : " + ") + piece;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace quadpois::exact
