#pragma once

#include "exterior/cybe.hpp"
#include "lie/lie_algebra.hpp"
#include "polyfields/polyvector.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quadpois::cert {

using exact::Poly;
using exact::Rational;
using exact::RingPtr;
using fields::PolyVectorField;

// Linear system sum_u A_eu u = b_e in the unknowns of symbolic_gl_rmatrix(n)
// with rational A and right-hand sides polynomial in the parameters.
// Reduced row echelon form pivots on the largest unknown index first, so the
// free unknowns are the lexicographically smallest possible.
class LinearConstraintSystem {
 public:
  LinearConstraintSystem(std::vector<std::string> unknowns, RingPtr params,
                         std::vector<std::vector<Rational>> coefficients, std::vector<Poly> rhs);

  const std::vector<std::string>& unknowns() const { return unknowns_; }
  const RingPtr& params() const { return params_; }
  std::size_t equation_count() const { return rhs_.size(); }
  const std::vector<std::vector<Rational>>& coefficients() const { return a_; }
  const std::vector<Poly>& rhs() const { return rhs_; }

  bool consistent() const { return consistent_; }
  // Pivot unknown -> expression in the free unknowns and parameters, over
  // solution_ring(). Empty if inconsistent.
  const std::map<std::size_t, Poly>& pivots() const { return pivots_; }
  const std::vector<std::size_t>& free_unknowns() const { return free_; }
  // Unknowns followed by the parameters.
  const RingPtr& solution_ring() const { return solution_ring_; }
  // Short names for the free unknowns: a, b, ..., s (skipping o) when there
  // are at most 18 of them, the unknown names otherwise.
  const std::vector<std::string>& free_names() const { return free_names_; }

  // "r_11_23 = 1", "r_23_32 = r_23_23 - alpha", ... ordered by pivot index.
  std::vector<std::string> canonical_relations() const;
  // "a = r_12_11", ... in free-unknown order.
  std::vector<std::string> renaming() const;
  // Substitutes values for every unknown (by index) and checks each equation.
  bool satisfied_by(const std::vector<Poly>& values) const;

 private:
  std::vector<std::string> unknowns_;
  RingPtr params_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Poly> rhs_;
  bool consistent_ = true;
  RingPtr solution_ring_;
  std::map<std::size_t, Poly> pivots_;
  std::vector<std::size_t> free_;
  std::vector<std::string> free_names_;
};

// Equates the coefficients of J^2(r), r symbolic over gl(n), with those of a
// quadratic bivector. PreconditionError for a non-quadratic input.
LinearConstraintSystem j2_constraints(const PolyVectorField& bivector);

struct LabeledEquation {
  std::array<int, 3> label;  // 1-based basis indices x < y < z
  Poly poly;
};

// Labeled polynomial equations in the renamed free unknowns and the
// parameters (alpha is flagged invertible in the ring).
struct PolySystem {
  RingPtr ring;
  std::vector<LabeledEquation> equations;

  const LabeledEquation* find(const std::array<int, 3>& label) const;
  std::vector<std::array<int, 3>> zero_labels() const;
  std::size_t identically_zero() const { return zero_labels().size(); }
  std::size_t nontrivial() const { return equations.size() - identically_zero(); }
};

// Substitutes the parametrization of sys into gln_cybe_equations(n).
// PreconditionError if sys is inconsistent, InvalidArgument if its unknowns
// are not those of symbolic_gl_rmatrix(n).
PolySystem reduce_cybe_on_subspace(int n, const LinearConstraintSystem& sys);

// "(1,2,5)"
std::string format_label(const std::array<int, 3>& label);

// r = (b E11 - a E12 + c E21 - b E22) ^ (E11 + E22) over gl(2), with
// J^2(r) = (a x1^2 + 2b x1 x2 + c x2^2) d1 ^ d2 and [r, r] = 0.
lie::RMatrix dim2_r_matrix(const Poly& a, const Poly& b, const Poly& c);

}  // namespace quadpois::cert
