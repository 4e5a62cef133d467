#pragma once

#include "lie/lie_algebra.hpp"
#include "polyfields/polyvector.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quadpois::fields {

struct JacobiCheck {
  bool poisson = false;
  PolyVectorField residual;  // [L, L]
};

// Requires the quadratic bivector subtype (PreconditionError otherwise).
JacobiCheck jacobi_poisson_check(const PolyVectorField& bivector);

struct KernelDimension {
  int n = 0;
  int k = 0;
  long domain = 0;        // dim Lambda^k(gl(n))
  long rank = 0;          // rank of J^k
  long computed = 0;      // domain - rank
  long formula = 0;       // closed form for dim ker J^k
  long target = 0;        // dim S^k(V) (x) Lambda^k(V)
  bool match = false;     // computed == formula
  bool surjective = false;  // rank == target
};

// k = 2 with 1 <= n <= 4, or k = 3 with 1 <= n <= 3.
KernelDimension kernel_dimension(int n, int k);

// Linear vector field sum_{i,j} A_ij x_i d_j.
struct LinearVectorField {
  int n = 0;
  std::vector<Poly> a;  // row-major n x n

  const Poly& at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  PolyVectorField to_field(const RingPtr& ring) const;
  bool is_rational() const;
  std::string to_string() const;
};

// rot L = sum_{i,j} d_j L^{ij} d_i over the antisymmetric component tensor.
LinearVectorField curl(const PolyVectorField& bivector);

struct CartanReport {
  bool in_cartan_form = false;
  // Antisymmetric n x n coefficient matrix with L^{ij} = c_ij x_i x_j.
  std::optional<std::vector<Poly>> c_matrix;
  std::optional<lie::RMatrix> r_matrix;  // sum_{i<j} c_ij E_ii ^ E_jj
  LinearVectorField curl;
  // Curl eigenvalues, present only when the characteristic polynomial
  // splits over Q.
  std::optional<std::vector<Rational>> eigenvalues;
  // lambda_i + lambda_j != lambda_r + lambda_s for all r != s, {i,j} != {r,s}.
  std::optional<bool> nonresonant;
  // A witnessing resonance (i, j, r, s), 1-based, when resonant.
  std::optional<std::array<int, 4>> resonance;
};

CartanReport cartan_analyze(const PolyVectorField& bivector);

// Eigenvalues with multiplicity of a rational matrix when its characteristic
// polynomial splits over Q. Triangular input reports its diagonal in order.
std::optional<std::vector<Rational>> rational_eigenvalues(const exact::RationalMatrix& m);

// Coefficients c_0..c_n of det(t I - M) (monic, c_n = 1).
std::vector<Rational> characteristic_polynomial(const exact::RationalMatrix& m);

// Fixture: optional "dim n" line, then "L[i][j] = <poly>" lines (1-based,
// i < j) in x1..xn and alpha.
PolyVectorField parse_bivector(std::string_view text);
std::string format_bivector(const PolyVectorField& bivector);

}  // namespace quadpois::fields
