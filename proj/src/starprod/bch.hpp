#pragma once

#include "lie/lie_algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace quadpois::star {

using exact::Poly;
using exact::Rational;

constexpr int kMaxBchOrder = 6;

// Coefficients of the degree-m part of log(exp(A) exp(B)) in Dynkin form:
// Z_m = sum_w c_w [w_1, [w_2, ... [w_{m-1}, w_m]]] over words w in {A, B}
// (written as strings of 'A' and 'B'). m = 1 .. kMaxBchOrder + 1.
const std::vector<std::pair<std::string, Rational>>& bch_dynkin_coefficients(int m);

// log(exp(A) exp(B)) truncated in the free associative algebra: coefficient
// of each word of length m.
const std::vector<std::pair<std::string, Rational>>& bch_word_coefficients(int m);

// Z(hbar) with hbar-scaled bracket: order k carries the bracket terms of
// length k + 1, so Z_0 = X + Y, Z_1 = [X, Y]/2,
// Z_2 = ([X, [X, Y]] + [Y, [Y, X]])/12. Requires 0 <= N <= kMaxBchOrder.
std::vector<std::vector<Rational>> bch_truncate(const lie::LieAlgebra& algebra, const std::vector<Rational>& x,
                                                const std::vector<Rational>& y, int order);
std::vector<std::vector<Poly>> bch_truncate(const lie::LieAlgebra& algebra, const std::vector<Poly>& x,
                                            const std::vector<Poly>& y, int order);

}  // namespace quadpois::star
