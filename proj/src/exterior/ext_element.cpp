#include "exterior/ext_element.hpp"

#include "common/error.hpp"

#include <algorithm>

namespace quadpois::exterior {

int sort_with_sign(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  return sign;
}

ExtElement::ExtElement(LieAlgebraPtr algebra, int degree) : algebra_(std::move(algebra)), degree_(degree) {
  if (!algebra_) throw InvalidArgument("exterior element needs an algebra");
  if (degree_ < 0) throw InvalidArgument("negative exterior degree");
}

ExtElement ExtElement::basis(const LieAlgebraPtr& algebra, Tuple t, const Poly& c) {
  ExtElement e(algebra, static_cast<int>(t.size()));
  e.add_term(std::move(t), c);
  return e;
}

ExtElement ExtElement::from_vector(const LieAlgebraPtr& algebra, const std::vector<Rational>& v) {
  if (v.size() != static_cast<std::size_t>(algebra->dim())) throw InvalidArgument("vector length mismatch");
  ExtElement e(algebra, 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) e.add_term({static_cast<int>(i)}, Poly(v[i]));
  }
  return e;
}

ExtElement ExtElement::from_rmatrix(const lie::RMatrix& r) {
  ExtElement e(r.algebra(), 2);
  for (const auto& [k, c] : r.coefficients()) e.add_term({k.first, k.second}, c);
  return e;
}

Poly ExtElement::coefficient(Tuple t) const {
  int s = sort_with_sign(t);
  if (s == 0) return Poly();
  auto it = terms_.find(t);
  if (it == terms_.end()) return Poly();
  return s > 0 ? it->second : -it->second;
}

void ExtElement::add_term(Tuple t, const Poly& c) {
  if (static_cast<int>(t.size()) != degree_) throw InvalidArgument("term degree differs from element degree");
  for (int i : t) {
    if (i < 0 || i >= algebra_->dim()) throw InvalidArgument("basis index out of range");
  }
  if (c.is_zero()) return;
  int s = sort_with_sign(t);
  if (s == 0) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(std::move(t), s > 0 ? c : -c);
    return;
  }
  if (s > 0) {
    it->second += c;
  } else {
    it->second -= c;
  }
  if (it->second.is_zero()) terms_.erase(it);
}

void ExtElement::check_compatible(const ExtElement& o) const {
  if (algebra_ != o.algebra_ && !(*algebra_ == *o.algebra_)) throw InvalidArgument("elements over different algebras");
  if (degree_ != o.degree_ && !is_zero() && !o.is_zero()) throw InvalidArgument("adding elements of different degree");
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  check_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
  check_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

ExtElement& ExtElement::operator*=(const Poly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

bool operator==(const ExtElement& a, const ExtElement& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

ExtElement ExtElement::substitute(const std::map<std::size_t, Poly>& assignment) const {
  ExtElement out(algebra_, degree_);
  for (const auto& [t, c] : terms_) out.add_term(t, c.substitute(assignment));
  return out;
}

std::string ExtElement::to_string() const {
  std::vector<std::pair<Poly, std::string>> parts;
  for (const auto& [t, c] : terms_) {
    std::string word;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) word += "^";
      word += algebra_->label(t[i]);
    }
    parts.emplace_back(c, word);
  }
  return exact::format_combination(parts);
}

ExtElement wedge(const ExtElement& u, const ExtElement& v) {
  if (u.algebra() != v.algebra() && !(*u.algebra() == *v.algebra())) {
    throw InvalidArgument("wedge of elements over different algebras");
  }
  ExtElement out(u.algebra(), u.degree() + v.degree());
  if (out.degree() > u.algebra()->dim()) return out;
  for (const auto& [tu, cu] : u.terms()) {
    for (const auto& [tv, cv] : v.terms()) {
      Tuple t = tu;
      t.insert(t.end(), tv.begin(), tv.end());
      out.add_term(std::move(t), cu * cv);
    }
  }
  return out;
}

namespace {

using BasisResult = std::map<Tuple, Rational>;

BasisResult basis_schouten(const lie::LieAlgebra& g, const Tuple& tu, const Tuple& tv) {
  BasisResult out;
  for (std::size_t a = 0; a < tu.size(); ++a) {
    for (std::size_t b = 0; b < tv.size(); ++b) {
      const auto& br = g.basis_bracket(tu[a], tv[b]);
      if (br.empty()) continue;
      const int sign = ((a + b) % 2 == 0) ? 1 : -1;
      Tuple rest;
      for (std::size_t i = 0; i < tu.size(); ++i) {
        if (i != a) rest.push_back(tu[i]);
      }
      for (std::size_t j = 0; j < tv.size(); ++j) {
        if (j != b) rest.push_back(tv[j]);
      }
      for (const auto& term : br) {
        Tuple t;
        t.reserve(rest.size() + 1);
        t.push_back(term.index);
        t.insert(t.end(), rest.begin(), rest.end());
        int s = sort_with_sign(t);
        if (s == 0) continue;
        auto& slot = out[t];
        slot += term.coeff * (sign * s);
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace

ExtElement schouten_ext(const ExtElement& u, const ExtElement& v) {
  if (u.algebra() != v.algebra() && !(*u.algebra() == *v.algebra())) {
    throw InvalidArgument("Schouten bracket of elements over different algebras");
  }
  const int deg = u.degree() + v.degree() - 1;
  ExtElement out(u.algebra(), std::max(deg, 0));
  if (u.degree() == 0 || v.degree() == 0) return out;
  const auto& g = *u.algebra();
  for (const auto& [tu, cu] : u.terms()) {
    for (const auto& [tv, cv] : v.terms()) {
      auto basis = basis_schouten(g, tu, tv);
      if (basis.empty()) continue;
      Poly c = cu * cv;
      for (const auto& [t, q] : basis) out.add_term(t, c * q);
    }
  }
  return out;
}

}  // namespace quadpois::exterior
