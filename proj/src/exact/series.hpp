#pragma once

#include "common/error.hpp"
#include "exact/poly.hpp"

#include <string>
#include <vector>

namespace quadpois::exact {

// Truncated formal power series sum_{k<=N} hbar^k C_k. Coefficients above
// the truncation order are never materialized; every operation truncates.
template <class T>
class HbarSeries {
 public:
  explicit HbarSeries(int order, const T& zero = T{}) : coeffs_(check_order(order) + 1, zero) {}

  static HbarSeries constant(int order, const T& value, const T& zero = T{}) {
    HbarSeries s(order, zero);
    s.coeffs_[0] = value;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<T>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!is_zero_coeff(c)) return false;
    }
    return true;
  }

  HbarSeries truncated(int order) const {
    HbarSeries s(order, coeffs_[0] - coeffs_[0]);
    for (int k = 0; k <= std::min(order, this->order()); ++k) s[k] = coeffs_[static_cast<std::size_t>(k)];
    return s;
  }

  HbarSeries& operator+=(const HbarSeries& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  HbarSeries& operator-=(const HbarSeries& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }

  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
    a.require_same_order(b);
    HbarSeries out(a.order(), a.coeffs_[0] - a.coeffs_[0]);
    for (int i = 0; i <= a.order(); ++i) {
      if (is_zero_coeff(a[i])) continue;
      for (int j = 0; i + j <= a.order(); ++j) {
        if (is_zero_coeff(b[j])) continue;
        out[i + j] += a[i] * b[j];
      }
    }
    return out;
  }

  // Coefficient-wise scaling by a constant of the coefficient type.
  HbarSeries scaled(const T& c) const {
    HbarSeries out(*this);
    for (auto& v : out.coeffs_) v = v * c;
    return out;
  }

  // Multiplication by hbar^k, dropping what falls beyond the order.
  HbarSeries shifted(int k) const {
    HbarSeries out(order(), coeffs_[0] - coeffs_[0]);
    for (int i = 0; i + k <= order(); ++i) out[i + k] = coeffs_[static_cast<std::size_t>(i)];
    return out;
  }

  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    return a.order() == b.order() && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const HbarSeries& a, const HbarSeries& b) { return !(a == b); }

 private:
  static int check_order(int order) {
    if (order < 0) throw PreconditionError("truncation order must be nonnegative");
    return order;
  }
  void require_same_order(const HbarSeries& o) const {
    if (o.order() != order()) throw InvalidArgument("series truncated at different orders");
  }
  static bool is_zero_coeff(const Rational& c) { return c == 0; }
  static bool is_zero_coeff(const Poly& c) { return c.is_zero(); }

  std::vector<T> coeffs_;
};

using RationalSeries = HbarSeries<Rational>;
using PolySeries = HbarSeries<Poly>;

namespace detail {
inline Rational inverse_constant(const Rational& c) {
  if (c == 0) throw PreconditionError("cannot invert a series with zero constant term");
  return Rational(1) / c;
}
inline Poly inverse_constant(const Poly& c) {
  if (!c.is_constant() || c.is_zero()) {
    throw PreconditionError("cannot invert a series whose constant term is not a nonzero scalar");
  }
  return Poly(c.ring(), Rational(1) / c.constant_term());
}
}  // namespace detail

// 1/a mod hbar^{N+1}; requires an invertible scalar constant term.
template <class T>
HbarSeries<T> invert_unit(const HbarSeries<T>& a) {
  const T zero = a[0] - a[0];
  T inv0 = detail::inverse_constant(a[0]);
  HbarSeries<T> b(a.order(), zero);
  b[0] = inv0;
  for (int k = 1; k <= a.order(); ++k) {
    T acc = zero;
    for (int i = 1; i <= k; ++i) acc += a[i] * b[k - i];
    b[k] = -(acc * inv0);
  }
  return b;
}

// f(a) = sum_k f_k a^k for a scalar power series f; requires a's constant
// term to vanish so the composition is well defined at every order.
template <class T>
HbarSeries<T> compose_with_scalar_series(const std::vector<Rational>& f, const HbarSeries<T>& a, const T& one) {
  const T zero = a[0] - a[0];
  if (!(a[0] == zero)) throw PreconditionError("composition requires a series with zero constant term");
  HbarSeries<T> out(a.order(), zero);
  HbarSeries<T> power = HbarSeries<T>::constant(a.order(), one, zero);
  for (std::size_t k = 0; k < f.size() && static_cast<int>(k) <= a.order(); ++k) {
    if (f[k] != 0) {
      for (int i = 0; i <= a.order(); ++i) out[i] += power[i] * T(f[k]);
    }
    power = power * a;
  }
  return out;
}

enum class SeriesOp { Add, Mul, ComposeWithScalarSeries, InvertUnit };

// Single entry point mirroring the module's combine operation. For
// ComposeWithScalarSeries, the coefficients of b are the scalar series f and the
// result is f(a). InvertUnit ignores b.
RationalSeries series_combine(SeriesOp op, const RationalSeries& a, const RationalSeries& b, int order);
PolySeries series_combine(SeriesOp op, const PolySeries& a, const PolySeries& b, int order);

// "hbar^k: <coeff>" lines, skipping zero orders; "0" for the zero series.
std::string series_to_string(const PolySeries& s);

}  // namespace quadpois::exact
