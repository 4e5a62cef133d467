#pragma once

#include "lie/lie_algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace quadpois::exterior {

using exact::Poly;
using exact::Rational;
using lie::LieAlgebraPtr;

// Strictly increasing 0-based basis indices I1 < ... < Ik.
using Tuple = std::vector<int>;

// Sorts t in place and returns the permutation sign, or 0 on a repeat.
int sort_with_sign(Tuple& t);

// Homogeneous element of Lambda^k(g): X_{I1} ^ ... ^ X_{Ik} carries its
// coefficient with no factorial weights.
class ExtElement {
 public:
  ExtElement(LieAlgebraPtr algebra, int degree);

  // c * X_{t[0]} ^ ... for an arbitrary (unsorted) index list.
  static ExtElement basis(const LieAlgebraPtr& algebra, Tuple t, const Poly& c = Poly(1));
  static ExtElement from_vector(const LieAlgebraPtr& algebra, const std::vector<Rational>& v);
  static ExtElement from_rmatrix(const lie::RMatrix& r);

  const LieAlgebraPtr& algebra() const { return algebra_; }
  int degree() const { return degree_; }
  const std::map<Tuple, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Coefficient on an arbitrary index list (sign from sorting).
  Poly coefficient(Tuple t) const;
  void add_term(Tuple t, const Poly& c);

  ExtElement& operator+=(const ExtElement& o);
  ExtElement& operator-=(const ExtElement& o);
  ExtElement& operator*=(const Poly& c);
  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator*(ExtElement a, const Poly& c) { return a *= c; }
  friend ExtElement operator*(const Poly& c, ExtElement a) { return a *= c; }
  ExtElement operator-() const { return *this * Poly(-1); }
  friend bool operator==(const ExtElement& a, const ExtElement& b);
  friend bool operator!=(const ExtElement& a, const ExtElement& b) { return !(a == b); }

  ExtElement substitute(const std::map<std::size_t, Poly>& assignment) const;

  // "2*E11^E12 - (alpha + 1)*E12^E21"; "0" when empty.
  std::string to_string() const;

 private:
  void check_compatible(const ExtElement& o) const;

  LieAlgebraPtr algebra_;
  int degree_;
  std::map<Tuple, Poly> terms_;
};

// Zero (of degree k+l) when k + l exceeds the dimension.
ExtElement wedge(const ExtElement& u, const ExtElement& v);

// Schouten bracket, degree k+l-1, extending the Lie bracket as a graded
// biderivation. On decomposables:
// [X1^..^Xk, Y1^..^Yl] = sum (-1)^{i+j} [Xi,Yj] ^ X1..^Xi..Xk ^ Y1..^Yj..Yl.
ExtElement schouten_ext(const ExtElement& u, const ExtElement& v);

}  // namespace quadpois::exterior
