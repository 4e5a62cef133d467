#pragma once

#include "exact/series.hpp"
#include "lie/lie_algebra.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace quadpois::star {

using exact::Monomial;
using exact::Poly;
using exact::PolySeries;
using exact::Rational;
using exact::RationalSeries;
using exact::RingPtr;
using lie::LieAlgebra;
using lie::LieAlgebraPtr;

// Element of the enveloping algebra with hbar-scaled bracket, in the ordered
// basis X_1^{a_1} ... X_d^{a_d}, truncated at hbar^N.
class PbwElement {
 public:
  using Terms = std::map<Monomial, RationalSeries, exact::GrlexGreater>;

  PbwElement(LieAlgebraPtr algebra, int order);

  const LieAlgebraPtr& algebra() const { return algebra_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }

  // Adds c * hbar^k * X^a (a has dim entries).
  void add(const Monomial& a, int k, const Rational& c);

  friend bool operator==(const PbwElement& a, const PbwElement& b);
  friend bool operator!=(const PbwElement& a, const PbwElement& b) { return !(a == b); }

  // "E11^2*E12 - hbar*E12"; "1" for the unit, "0" for zero.
  std::string to_string() const;

 private:
  LieAlgebraPtr algebra_;
  int order_;
  Terms terms_;
};

enum class RewriteOrder { Leftmost, Rightmost };

// Normal form of a product of basis elements (0-based indices) by naive
// rewriting X_j X_i -> X_i X_j + hbar [X_j, X_i] for j > i.
PbwElement pbw_reduce(const LieAlgebraPtr& algebra, const std::vector<int>& word, int order,
                      RewriteOrder strategy = RewriteOrder::Leftmost);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

// Memoized arithmetic in the enveloping algebra truncated at hbar^N. Elements
// are encoded as polynomials over ring(): the coordinate variables stand for
// the ordered PBW monomials and the last variable is hbar. The same ring
// carries polynomials on g* with hbar coefficients. Thread-safe.
class PbwEngine {
 public:
  PbwEngine(LieAlgebraPtr algebra, int order);

  const LieAlgebraPtr& algebra() const { return algebra_; }
  int order() const { return order_; }
  const RingPtr& ring() const { return ring_; }
  std::size_t hbar_index() const { return static_cast<std::size_t>(algebra_->dim()); }

  // Ordered product of two encoded elements.
  Poly multiply(const Poly& e, const Poly& f) const;
  // Symmetrization of a polynomial on g* (coordinates of ring()).
  Poly sigma(const Poly& u) const;
  Poly sigma_inverse(const Poly& e) const;
  // sigma^{-1}(sigma(x^a) sigma(x^b)) for coordinate exponents a, b.
  Poly gutt_monomials(const Monomial& a, const Monomial& b) const;

  PbwElement to_element(const Poly& e) const;
  Poly from_element(const PbwElement& e) const;
  // Exponents over the coordinates, extended by a zero hbar entry.
  Monomial key(const Monomial& coords) const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Monomial, Monomial>& p) const;
  };
  struct GenHash {
    std::size_t operator()(const std::pair<Monomial, int>& p) const;
  };

  const Poly& rmul(const Monomial& a, int i) const;
  const Poly& sigma_mono(const Monomial& a) const;
  const Poly& sigma_inverse_mono(const Monomial& a) const;
  const Poly& right_gen(const Monomial& a, int i) const;
  const Poly& pair(const Monomial& a, const Monomial& b) const;
  Poly times_generator(const Poly& e, int i) const;
  // out += c * hbar^shift * src, dropping hbar powers above the order.
  void accumulate(Poly& out, const Poly& src, const Rational& c, unsigned shift) const;
  Monomial strip_hbar(const Monomial& m) const;

  LieAlgebraPtr algebra_;
  int order_;
  RingPtr ring_;
  mutable std::recursive_mutex mutex_;
  mutable std::unordered_map<std::pair<Monomial, int>, Poly, GenHash> rmul_;
  mutable std::unordered_map<Monomial, Poly, MonomialHash> sigma_;
  mutable std::unordered_map<Monomial, Poly, MonomialHash> sigma_inv_;
  mutable std::unordered_map<std::pair<Monomial, int>, Poly, GenHash> right_gen_;
  mutable std::unordered_map<std::pair<Monomial, Monomial>, Poly, PairHash> pair_;
};

}  // namespace quadpois::star
