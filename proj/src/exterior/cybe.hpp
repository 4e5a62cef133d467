#pragma once

#include "exterior/ext_element.hpp"

#include <array>
#include <vector>

namespace quadpois::exterior {

// sum_{I,J,K,L} R^{IJ} R^{KL} [X_I, X_K] ^ X_J ^ X_L over the full tensor R
// of r (r = (1/2) sum R^{IJ} X_I ^ X_J). With the halved coefficients
// R/2 this is the familiar 4 sum r r [X_I, X_K] ^ X_J ^ X_L.
ExtElement rr_bracket_formula(const lie::RMatrix& r);

// Cyclic form sum_cyc <xi, [r~ eta, r~ zeta]> on dual basis triples A < B < C,
// returned as the degree-3 element carrying those values.
ExtElement cyclic_form(const lie::RMatrix& r);

struct CybeReport {
  bool holds = false;
  ExtElement schouten;  // [r, r]
  ExtElement formula;   // rr_bracket_formula(r)
  ExtElement cyclic;    // cyclic_form(r); [r, r] = 2 * cyclic
};

// Computes all three and throws InternalError if they disagree.
CybeReport cybe_check(const lie::RMatrix& r);

// gl(n) r-matrix with one unknown per stored pair E_ij ^ E_kl, (i,j) < (k,l),
// named r_ik_jl (n <= 9). Unknowns are ordered by the pair.
lie::RMatrix symbolic_gl_rmatrix(int n);
// Unknown name for the stored pair of E_ij ^ E_kl.
std::string gl_unknown_name(int i, int j, int k, int l);

struct CybeEquation {
  std::array<int, 3> label;  // 1-based basis indices x < y < z
  std::array<std::pair<int, int>, 3> pairs;  // (i,j) < (k,l) < (m,p)
  Poly poly;
};

// One equation per triple (i,j) < (k,l) < (m,p) in lexicographic order:
// sum_d r_ik^dl r_dm^jp - r_mk^dl r_di^pj + r_km^dp r_di^lj
//     - r_im^dp r_dk^jl + r_mi^dj r_dk^pl - r_ki^dj r_dm^lp
// where r_ik^jl is the coefficient of E_ij ^ E_kl (antisymmetric in the
// pair). Its value is half the coefficient of [r, r] on the triple.
std::vector<CybeEquation> gln_cybe_equations(int n, const lie::RMatrix& r);

}  // namespace quadpois::exterior
