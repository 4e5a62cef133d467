#pragma once

#include "exact/poly.hpp"
#include "exact/rational.hpp"

#include <string>
#include <vector>

namespace quadpois::exact {

// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  // Rejects any entry that is not a rational constant (alpha-bearing input).
  static RationalMatrix from_polys(std::size_t rows, std::size_t cols, const std::vector<Poly>& entries);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  RationalMatrix transposed() const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  bool is_antisymmetric() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::vector<Rational>> kernel_basis;
  std::vector<std::size_t> pivot_columns;
};

// Fraction-free Gaussian elimination: each row is scaled to integers, then
// Bareiss elimination runs with pivots chosen by smallest nonzero magnitude.
// Kernel vectors come from rational back-substitution and are verified by
// multiplication (InternalError otherwise).
RankKernel mat_rank_kernel(const RationalMatrix& m);

// Basis of the row space, each vector scaled so its leading entry is 1.
std::vector<std::vector<Rational>> row_space_basis(const RationalMatrix& m);

}  // namespace quadpois::exact
