#pragma once

#include "polyfields/polyvector.hpp"
#include "starprod/pbw.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace quadpois::star {

enum class StarMethod { Gutt, Restricted, EquivalenceTransformed, CartanExponential, FirstOrder };

// "gutt", "restricted", "equivalence-transformed", "cartan-exponential", "first-order".
std::string method_name(StarMethod method);

// Bilinear product u * v = sum_k hbar^k C_k(u, v) on polynomials truncated at
// hbar^N. The carrier ring's first coordinate_count() variables are the
// coordinates; any further variables are parameters treated as scalars.
// Products of coordinate monomials are memoized; evaluation is thread-safe.
class StarProduct {
 public:
  virtual ~StarProduct() = default;

  virtual StarMethod method() const = 0;
  // Human-readable carrier: "polynomials on gl2*", "polynomials on H", ...
  virtual std::string carrier() const = 0;
  // The bracket the first-order antisymmetric part should reproduce, with
  // u*v - v*u = hbar {u, v} + O(hbar^2).
  virtual Poly declared_bracket(const Poly& u, const Poly& v) const = 0;

  int order() const { return order_; }
  const RingPtr& ring() const { return ring_; }
  std::size_t coordinate_count() const { return ncoords_; }

  // x^a * x^b for coordinate exponent vectors of size coordinate_count().
  const PolySeries& monomial_product(const Monomial& a, const Monomial& b) const;

  PolySeries multiply(const Poly& u, const Poly& v) const;
  PolySeries multiply(const PolySeries& u, const PolySeries& v) const;

 protected:
  StarProduct(RingPtr ring, std::size_t ncoords, int order);
  virtual PolySeries compute_monomials(const Monomial& a, const Monomial& b) const = 0;

  PolySeries zero_series() const { return PolySeries(order_, Poly(ring_)); }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Monomial, Monomial>& p) const;
  };

  RingPtr ring_;
  std::size_t ncoords_;
  int order_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::pair<Monomial, Monomial>, PolySeries, PairHash> memo_;
};

using StarProductPtr = std::shared_ptr<const StarProduct>;

// Linear Poisson bracket {u, v} = sum c_IJ^K x_K d_I u d_J v on g*.
Poly linear_poisson_bracket(const LieAlgebra& algebra, const Poly& u, const Poly& v);

// u * v = sigma^{-1}(sigma(u) sigma(v)) with sigma the symmetrization into
// the enveloping algebra with hbar-scaled bracket. Carrier: coordinate ring
// of the algebra. Requires N >= 1.
StarProductPtr make_gutt_star(const LieAlgebraPtr& algebra, int order);
PolySeries gutt_star(const LieAlgebraPtr& algebra, const Poly& u, const Poly& v, int order);
// Same product by ordered multiplication of the full symmetrizations; a
// second route for cross-checks.
PolySeries gutt_star_direct(const LieAlgebraPtr& algebra, const Poly& u, const Poly& v, int order);

// Gutt product of the extension restricted to the hyperplane t = 1, where t
// is the coordinate of the central element. Carrier: base coordinates.
// PreconditionError if the distinguished element is not central.
StarProductPtr make_restricted_star(const lie::CentralExtension& ext, int order);
// Also checks t*u = t u and u*t = u t in the extension (InternalError).
PolySeries hyperplane_restrict_star(const lie::CentralExtension& ext, const Poly& u, const Poly& v, int order);

// Index tuple s_1 <= ... <= s_c (each s_j >= 2, even sum) -> coefficient.
using TraceCoefficients = std::map<std::vector<int>, Rational>;

// Polynomial Tr((ad xi)^s) on g in the coordinate names of the algebra.
Poly ad_trace_power(const LieAlgebra& algebra, int s);

// u *' v = T^{-1}(T u * T v) with
// T = 1 + sum hbar^{|s|} a_s prod_i Tr(ad d)^{s_i}. The base carrier must
// be the coordinate ring of the algebra. InvalidArgument for malformed tuples.
StarProductPtr make_equivalence_transform(const LieAlgebraPtr& algebra, const TraceCoefficients& a,
                                          const StarProductPtr& base);
PolySeries equivalence_transform(const LieAlgebraPtr& algebra, const TraceCoefficients& a,
                                 const StarProductPtr& base, const Poly& u, const Poly& v);

// u * v = m exp((hbar/2) sum_{i,j} c_ij (x_i d_i) (x) (x_j d_j)) (u (x) v)
// on V = R^n. InvalidArgument unless c is antisymmetric.
StarProductPtr make_cartan_star(const exact::RationalMatrix& c, int order);
PolySeries cartan_star_on_V(const exact::RationalMatrix& c, const Poly& u, const Poly& v, int order);

// u * v = uv + (hbar/2) sum_{I,J} R^{IJ} (J(E_I) u)(J(E_J) v) with N = 1 on
// R^n, for r over gl(n). Declared bracket: that of J^2(r).
StarProductPtr make_first_order_star(const lie::RMatrix& r);
PolySeries first_order_star_on_V(const lie::RMatrix& r, const Poly& u, const Poly& v);

}  // namespace quadpois::star
