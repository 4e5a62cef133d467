#include "exact/matrix.hpp"

#include "common/error.hpp"

namespace quadpois::exact {

RationalMatrix RationalMatrix::from_polys(std::size_t rows, std::size_t cols, const std::vector<Poly>& entries) {
  if (entries.size() != rows * cols) throw InvalidArgument("matrix entry count mismatch");
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].is_constant()) {
      throw InvalidArgument("matrix entry '" + entries[i].to_string() + "' is not rational");
    }
    m.a_[i] = entries[i].constant_term();
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw InvalidArgument("vector length does not match matrix columns");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] != 0) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

bool RationalMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
  }
  return true;
}

namespace {

struct Echelon {
  std::vector<std::vector<mpz_class>> rows;  // first `rank` rows are the echelon form
  std::vector<std::size_t> pivots;
};

Echelon bareiss(const RationalMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  Echelon e;
  e.rows.assign(nr, std::vector<mpz_class>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < nc; ++j) {
      if (m(i, j) != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < nc; ++j) {
      mpq_class v = m(i, j) * scale;
      e.rows[i][j] = v.get_num();
    }
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t best = nr;
    for (std::size_t i = r; i < nr; ++i) {
      if (e.rows[i][c] == 0) continue;
      if (best == nr || abs(e.rows[i][c]) < abs(e.rows[best][c])) best = i;
    }
    if (best == nr) continue;
    std::swap(e.rows[r], e.rows[best]);
    const mpz_class& piv = e.rows[r][c];
    for (std::size_t i = r + 1; i < nr; ++i) {
      mpz_class lead = e.rows[i][c];
      for (std::size_t j = c + 1; j < nc; ++j) {
        mpz_class v = piv * e.rows[i][j] - lead * e.rows[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        e.rows[i][j] = std::move(v);
      }
      e.rows[i][c] = 0;
    }
    prev = piv;
    e.pivots.push_back(c);
    ++r;
  }
  e.rows.resize(r);
  return e;
}

}  // namespace

RankKernel mat_rank_kernel(const RationalMatrix& m) {
  Echelon e = bareiss(m);
  RankKernel out;
  out.rank = e.pivots.size();
  out.pivot_columns = e.pivots;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
      const std::size_t p = e.pivots[k];
      Rational acc = 0;
      for (std::size_t j = p + 1; j < m.cols(); ++j) {
        if (x[j] != 0 && e.rows[k][j] != 0) acc += Rational(e.rows[k][j]) * x[j];
      }
      x[p] = -acc / Rational(e.rows[k][p]);
    }
    for (const auto& v : m.apply(x)) {
      if (v != 0) throw InternalError("kernel vector failed verification");
    }
    out.kernel_basis.push_back(std::move(x));
  }
  if (out.rank + out.kernel_basis.size() != m.cols()) throw InternalError("rank-nullity violated");
  return out;
}

std::vector<std::vector<Rational>> row_space_basis(const RationalMatrix& m) {
  Echelon e = bareiss(m);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    std::vector<Rational> v(m.cols());
    Rational lead(e.rows[k][e.pivots[k]]);
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = Rational(e.rows[k][j]) / lead;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace quadpois::exact
