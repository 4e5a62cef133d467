#pragma once

#include "lie/lie_algebra.hpp"
#include "polyfields/polyvector.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace quadpois::capi {

using Json = nlohmann::ordered_json;

// Outcome of one command. text is rendered from data alone.
struct Report {
  bool positive = true;
  Json data;
  std::string text;
};

struct StarOptions {
  std::string method;
  lie::LieAlgebraPtr algebra;
  std::optional<fields::PolyVectorField> bivector;
  std::optional<lie::RMatrix> rmatrix;
  std::string omega;
  int order = 2;
};

Report jacobi_report(const fields::PolyVectorField& bivector);
Report curl_report(const fields::PolyVectorField& bivector);
Report cartan_report(const fields::PolyVectorField& bivector);
Report dims_report(int n, int k);
Report j2_report(const lie::RMatrix& r);
Report cybe_report(const lie::RMatrix& r);
Report equations_report(int n, const lie::RMatrix* r);
Report central_ext_report(const lie::LieAlgebraPtr& algebra, const std::string& omega);
Report star_report(const StarOptions& opts, const std::string& u, const std::string& v);
Report star_check_report(const StarOptions& opts, int degree_bound);
Report certify_report(const std::optional<std::string>& alpha, const std::optional<std::string>& script, bool with_log);
Report solve_dim2_report(const std::string& a, const std::string& b, const std::string& c);

// "0 1; -1 0": rows separated by ';', entries by whitespace.
exact::RationalMatrix parse_rational_matrix(const std::string& text);
exact::Rational parse_rational(const std::string& text);

}  // namespace quadpois::capi
