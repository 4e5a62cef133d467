#pragma once

#include "exact/matrix.hpp"
#include "exact/poly.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quadpois::lie {

using exact::Poly;
using exact::Rational;
using exact::RationalMatrix;

struct BracketTerm {
  int index;
  Rational coeff;
};

// Finite-dimensional Lie algebra given by structure constants in a fixed
// named basis. Antisymmetry is enforced on construction; Jacobi is checked
// separately (check_jacobi_lie).
class LieAlgebra {
 public:
  // brackets[I * dim + J] lists [X_I, X_J] sparsely.
  LieAlgebra(std::vector<std::string> labels, std::vector<std::vector<BracketTerm>> brackets);

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(std::string_view label) const;

  const std::vector<BracketTerm>& basis_bracket(int i, int j) const {
    return brackets_[static_cast<std::size_t>(i * dim() + j)];
  }
  Rational structure_constant(int i, int j, int k) const;
  bool is_abelian() const;

  // [x, y] for coordinate vectors; T is Rational or Poly.
  template <class T>
  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    check_length(x.size());
    check_length(y.size());
    std::vector<T> out(x.size());
    for (int i = 0; i < dim(); ++i) {
      if (is_zero(x[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; j < dim(); ++j) {
        if (is_zero(y[static_cast<std::size_t>(j)])) continue;
        const auto& terms = basis_bracket(i, j);
        if (terms.empty()) continue;
        T xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
        for (const auto& t : terms) out[static_cast<std::size_t>(t.index)] += xy * T(t.coeff);
      }
    }
    return out;
  }

  // Ring of linear coordinates on the dual: lowercased labels when those are
  // distinct identifiers, otherwise x1..xn.
  const exact::RingPtr& coordinate_ring() const { return coordinates_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  void check_length(std::size_t n) const;
  static bool is_zero(const Rational& q) { return q == 0; }
  static bool is_zero(const Poly& p) { return p.is_zero(); }

  std::vector<std::string> labels_;
  std::vector<std::vector<BracketTerm>> brackets_;
  exact::RingPtr coordinates_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

// gl(n) with basis E_ij in lexicographic order (E11, E12, ..., Enn) and
// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj.
LieAlgebraPtr gl_basis(int n);
// Index of E_ij (1-based i, j) in gl_basis(n).
inline int gl_index(int n, int i, int j) { return (i - 1) * n + (j - 1); }

LieAlgebraPtr abelian_algebra(int n);

std::vector<Rational> lie_bracket(const LieAlgebra& algebra, const std::vector<Rational>& x,
                                  const std::vector<Rational>& y);

struct JacobiReport {
  bool holds = true;
  // 1-based basis triples I < J < K whose Jacobiator is nonzero.
  std::vector<std::array<int, 3>> violations;
};

JacobiReport check_jacobi_lie(const LieAlgebra& algebra);

// Central extension g + R X0 with [X, Y]~ = [X, Y] + omega(X, Y) X0. The
// central element is the last basis vector, labelled "T" unless taken.
struct CentralExtension {
  LieAlgebraPtr base;
  RationalMatrix omega;
  LieAlgebraPtr extended;
  int central_index = 0;
};

// Throws InvalidArgument for a non-antisymmetric or mis-sized omega and
// CocycleViolation (with the failing triples, 1-based in the extension) if
// the extended bracket violates Jacobi.
CentralExtension central_extension(const LieAlgebraPtr& base, const RationalMatrix& omega);

// Antisymmetric element r = sum_{I<J} r^{IJ} X_I ^ X_J stored on increasing
// pairs. Coefficients are polynomials so that symbolic r-matrices share the
// same carrier; the rational regime uses constants.
class RMatrix {
 public:
  explicit RMatrix(LieAlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  const LieAlgebraPtr& algebra() const { return algebra_; }
  const std::map<std::pair<int, int>, Poly>& coefficients() const { return coeffs_; }

  // Adds c * X_i ^ X_j for any i, j (i > j flips the sign, i == j is zero).
  void add(int i, int j, const Poly& c);
  // Stored coefficient on (i, j), mirrored with sign for i > j. This is the
  // "full tensor" R with r = (1/2) sum_{I,J} R^{IJ} X_I ^ X_J.
  Poly full(int i, int j) const;
  bool is_rational() const;
  exact::RingPtr coefficient_ring() const;

 private:
  LieAlgebraPtr algebra_;
  std::map<std::pair<int, int>, Poly> coeffs_;
};

struct RTildeImage {
  RationalMatrix r_tilde;  // antisymmetric matrix of the full tensor
  std::vector<std::vector<Rational>> image_basis;
  bool closed = true;  // [g0, g0] inside g0
};

// Requires rational coefficients.
RTildeImage r_tilde_and_image(const RMatrix& r);

// Fixture text: "dim n", optional "basis L1 ... Ln", then "[I J] = expr"
// lines with indices (1-based) or labels; omitted brackets are zero.
LieAlgebraPtr parse_lie_algebra(std::string_view text);
std::string format_lie_algebra(const LieAlgebra& algebra);

// r-matrix fixture: "algebra glN" or "algebra <path>" (relative paths are
// resolved against base_dir), then "A B = coeff" lines naming basis labels
// or 1-based indices. Coefficients are rationals or polynomials in alpha.
RMatrix parse_rmatrix(std::string_view text, const std::string& base_dir = ".");
// Same, against a known algebra; an "algebra" line is then ignored.
RMatrix parse_rmatrix(std::string_view text, const LieAlgebraPtr& algebra);
std::string format_rmatrix(const RMatrix& r);

}  // namespace quadpois::lie
