#pragma once

#include "exterior/ext_element.hpp"

#include <map>
#include <string>
#include <vector>

namespace quadpois::fields {

using exact::Poly;
using exact::Rational;
using exact::RingPtr;
using exterior::Tuple;

// Ring whose first n variables are the coordinates x1..xn, followed by the
// variables of params (e.g. alpha, symbolic r-matrix unknowns).
RingPtr coordinate_ring(int n, const RingPtr& params = exact::Ring::scalars());

// Degree-k polyvector field sum_T P_T d_{T1} ^ ... ^ d_{Tk} on R^n with
// polynomial components. The ring's first n variables are the coordinates.
class PolyVectorField {
 public:
  PolyVectorField(int n, int degree, RingPtr ring);
  PolyVectorField(int n, int degree) : PolyVectorField(n, degree, coordinate_ring(n)) {}

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const RingPtr& ring() const { return ring_; }
  const std::map<Tuple, Poly>& components() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Component on an arbitrary index list (0-based), sign from sorting.
  Poly component(Tuple t) const;
  void add_term(Tuple t, const Poly& c);

  // Coordinates as polynomials of this field's ring.
  Poly x(int i) const { return Poly::variable(ring_, static_cast<std::size_t>(i)); }

  // k = 2 with every component homogeneous of degree 2 in the coordinates.
  bool is_quadratic_bivector() const;

  PolyVectorField& operator+=(const PolyVectorField& o);
  PolyVectorField& operator-=(const PolyVectorField& o);
  PolyVectorField& operator*=(const Poly& c);
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
  friend PolyVectorField operator*(PolyVectorField a, const Poly& c) { return a *= c; }
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b);
  friend bool operator!=(const PolyVectorField& a, const PolyVectorField& b) { return !(a == b); }

  PolyVectorField with_ring(const RingPtr& ring) const;
  PolyVectorField substitute(const std::map<std::size_t, Poly>& assignment) const;

  // "(x1^2 + x2*x3*alpha)*d2^d3"; "0" when empty.
  std::string to_string() const;

 private:
  int n_;
  int degree_;
  RingPtr ring_;
  std::map<Tuple, Poly> terms_;
};

// Brings both fields into a common ring and checks the dimension.
void unify(PolyVectorField& a, PolyVectorField& b);

PolyVectorField wedge(const PolyVectorField& p, const PolyVectorField& q);

// Schouten-Nijenhuis bracket. Writing fields as functions of odd variables
// theta_i = d_i,
// [P, Q] = sum_i (P <- d/dtheta_i)(d_i Q) - (-1)^{(k-1)(l-1)} (Q <- d/dtheta_i)(d_i P)
// with right theta-derivatives. On vector fields this is the Lie bracket.
PolyVectorField sn_bracket(const PolyVectorField& p, const PolyVectorField& q);

// Applies a vector field or a function's derivative: X(f) = sum X_i d_i f.
Poly apply_vector_field(const PolyVectorField& x, const Poly& f);

// {f, g} = sum_{i<j} L^{ij} (d_i f d_j g - d_j f d_i g).
Poly poisson_bracket(const PolyVectorField& bivector, const Poly& f, const Poly& g);

// J(E_ij) = x_i d_j extended multiplicatively; U over gl(n). The output ring
// carries the coordinates followed by U's coefficient variables.
PolyVectorField j_map(int n, const exterior::ExtElement& u);

}  // namespace quadpois::fields
