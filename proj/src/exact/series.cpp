#include "exact/series.hpp"

namespace quadpois::exact {

namespace {

template <class T>
HbarSeries<T> combine(SeriesOp op, const HbarSeries<T>& a, const HbarSeries<T>& b, int order, const T& one) {
  HbarSeries<T> x = a.truncated(order);
  switch (op) {
    case SeriesOp::Add:
      return x + b.truncated(order);
    case SeriesOp::Mul:
      return x * b.truncated(order);
    case SeriesOp::InvertUnit:
      return invert_unit(x);
    case SeriesOp::ComposeWithScalarSeries: {
      std::vector<Rational> f;
      for (int k = 0; k <= b.order(); ++k) {
        if constexpr (std::is_same_v<T, Rational>) {
          f.push_back(b[k]);
        } else {
          if (!b[k].is_constant()) throw InvalidArgument("outer series must have scalar coefficients");
          f.push_back(b[k].constant_term());
        }
      }
      return compose_with_scalar_series(f, x, one);
    }
  }
  throw InvalidArgument("unknown series operation");
}

}  // namespace

RationalSeries series_combine(SeriesOp op, const RationalSeries& a, const RationalSeries& b, int order) {
  return combine<Rational>(op, a, b, order, Rational(1));
}

PolySeries series_combine(SeriesOp op, const PolySeries& a, const PolySeries& b, int order) {
  return combine<Poly>(op, a, b, order, Poly(a[0].ring(), 1));
}

std::string series_to_string(const PolySeries& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k].is_zero()) continue;
    out += "hbar^" + std::to_string(k) + ": " + s[k].to_string() + "\n";
  }
  return out.empty() ? "0\n" : out;
}

}  // namespace quadpois::exact
