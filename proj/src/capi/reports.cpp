#include "capi/reports.hpp"

#include "certify/counterexample.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "exterior/cybe.hpp"
#include "polyfields/analysis.hpp"
#include "starprod/axioms.hpp"
#include "starprod/star.hpp"

#include <sstream>

namespace quadpois::capi {

using exact::Poly;
using exact::Rational;
using fields::PolyVectorField;

namespace {

std::string value_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + value_text(v[i]);
    return out + "]";
  }
  return v.dump();
}

// "key: value" per entry, in insertion order.
std::string render_fields(const Json& d) {
  std::string out;
  for (const auto& [k, v] : d.items()) out += k + ": " + value_text(v) + "\n";
  return out;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

int gl_rank(const lie::RMatrix& r) {
  const int d = r.algebra()->dim();
  int n = 1;
  while (n * n < d) ++n;
  if (n * n != d || !(*r.algebra() == *lie::gl_basis(n))) {
    throw PreconditionError("the r-matrix must live on gl(n)");
  }
  return n;
}

Report finish(Json d, bool positive, std::string text) {
  Report r;
  r.positive = positive;
  r.data = std::move(d);
  r.text = std::move(text);
  return r;
}

star::StarProductPtr build_star(const StarOptions& o) {
  if (o.order < 0) throw InvalidArgument("order must be nonnegative");
  if (o.method == "gutt") {
    if (!o.algebra) throw InvalidArgument("method gutt needs an algebra");
    return star::make_gutt_star(o.algebra, o.order);
  }
  if (o.method == "restricted") {
    if (!o.algebra) throw InvalidArgument("method restricted needs an algebra");
    return star::make_restricted_star(lie::central_extension(o.algebra, parse_rational_matrix(o.omega)), o.order);
  }
  if (o.method == "cartan") {
    if (!o.bivector) throw InvalidArgument("method cartan needs a bivector");
    auto rep = fields::cartan_analyze(*o.bivector);
    if (!rep.in_cartan_form) throw PreconditionError("the bivector is not of Cartan type");
    const auto n = static_cast<std::size_t>(o.bivector->dim());
    return star::make_cartan_star(exact::RationalMatrix::from_polys(n, n, *rep.c_matrix), o.order);
  }
  if (o.method == "first-order") {
    if (!o.rmatrix) throw InvalidArgument("method first-order needs an r-matrix");
    if (o.order != 1) throw PreconditionError("the first-order product is defined for order 1 only");
    return star::make_first_order_star(*o.rmatrix);
  }
  throw InvalidArgument("unknown star method '" + o.method + "'");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto t = std::string(text::trim(text));
  Rational q;
  if (t.empty() || t.find_first_not_of("+-0123456789/") != std::string::npos || q.set_str(t, 10) != 0 ||
      q.get_den() == 0) {
    throw ParseError("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

exact::RationalMatrix parse_rational_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<Rational> r;
    for (const auto& w : text::split_ws(row)) r.push_back(parse_rational(w));
    rows.push_back(std::move(r));
  }
  if (rows.empty() || rows[0].empty()) throw ParseError("empty matrix");
  exact::RationalMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError("matrix rows differ in length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Report jacobi_report(const PolyVectorField& bivector) {
  auto res = fields::jacobi_poisson_check(bivector);
  Json d;
  d["poisson"] = res.poisson;
  d["residual"] = res.residual.to_string();
  return finish(d, res.poisson, render_fields(d));
}

Report curl_report(const PolyVectorField& bivector) {
  auto c = fields::curl(bivector);
  Json d;
  d["curl"] = c.to_string();
  Json m = Json::array();
  for (int i = 0; i < c.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < c.n; ++j) row.push_back(c.at(i, j).to_string());
    m.push_back(row);
  }
  d["matrix"] = m;
  return finish(d, true, render_fields(d));
}

Report cartan_report(const PolyVectorField& bivector) {
  auto rep = fields::cartan_analyze(bivector);
  Json d;
  d["cartan_form"] = rep.in_cartan_form;
  if (rep.c_matrix) {
    const int n = bivector.dim();
    Json m = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int j = 0; j < n; ++j) row.push_back((*rep.c_matrix)[static_cast<std::size_t>(i * n + j)].to_string());
      m.push_back(row);
    }
    d["c_matrix"] = m;
  } else {
    d["c_matrix"] = nullptr;
  }
  if (rep.r_matrix) {
    std::vector<std::pair<Poly, std::string>> terms;
    const auto& g = *rep.r_matrix->algebra();
    for (const auto& [k, c] : rep.r_matrix->coefficients()) terms.emplace_back(c, g.label(k.first) + "^" + g.label(k.second));
    d["r_matrix"] = exact::format_combination(terms);
  } else {
    d["r_matrix"] = nullptr;
  }
  d["curl"] = rep.curl.to_string();
  if (rep.eigenvalues) {
    Json ev = Json::array();
    for (const auto& q : *rep.eigenvalues) ev.push_back(rational_text(q));
    d["eigenvalues"] = ev;
  } else {
    d["eigenvalues"] = nullptr;
  }
  d["nonresonant"] = rep.nonresonant ? Json(*rep.nonresonant) : Json(nullptr);
  d["resonance"] = rep.resonance ? Json(*rep.resonance) : Json(nullptr);
  return finish(d, rep.in_cartan_form, render_fields(d));
}

Report dims_report(int n, int k) {
  auto kd = fields::kernel_dimension(n, k);
  Json d;
  d["n"] = kd.n;
  d["k"] = kd.k;
  d["ker"] = kd.computed;
  d["formula"] = kd.formula;
  d["match"] = kd.match;
  d["domain"] = kd.domain;
  d["rank"] = kd.rank;
  d["target"] = kd.target;
  d["surjective"] = kd.surjective;
  std::string text = "ker: " + std::to_string(kd.computed) + ", formula: " + std::to_string(kd.formula) + ", " +
                     (kd.match ? "match" : "MISMATCH") + "\n";
  text += "domain: " + std::to_string(kd.domain) + ", rank: " + std::to_string(kd.rank) +
          ", target: " + std::to_string(kd.target) + ", " + (kd.surjective ? "surjective" : "not surjective") + "\n";
  text += "n: " + std::to_string(kd.n) + ", k: " + std::to_string(kd.k) + "\n";
  return finish(d, kd.match, text);
}

Report j2_report(const lie::RMatrix& r) {
  const int n = gl_rank(r);
  auto img = fields::j_map(n, exterior::ExtElement::from_rmatrix(r));
  Json d;
  d["n"] = n;
  d["image"] = img.to_string();
  return finish(d, true, render_fields(d));
}

Report cybe_report(const lie::RMatrix& r) {
  auto rep = exterior::cybe_check(r);
  Json d;
  d["cybe"] = rep.holds;
  d["schouten"] = rep.schouten.to_string();
  d["cyclic"] = rep.cyclic.to_string();
  return finish(d, rep.holds, render_fields(d));
}

Report equations_report(int n, const lie::RMatrix* r) {
  std::optional<lie::RMatrix> sym;
  if (r) {
    if (gl_rank(*r) != n) throw InvalidArgument("the r-matrix is not over gl(" + std::to_string(n) + ")");
  } else {
    sym = exterior::symbolic_gl_rmatrix(n);
    r = &*sym;
  }
  auto eqs = exterior::gln_cybe_equations(n, *r);
  Json d;
  d["n"] = n;
  d["count"] = eqs.size();
  Json list = Json::array();
  std::size_t nonzero = 0;
  std::string lines;
  for (const auto& e : eqs) {
    if (!e.poly.is_zero()) ++nonzero;
    auto label = cert::format_label(e.label);
    auto poly = e.poly.is_zero() ? std::string("0") : e.poly.to_string();
    list.push_back(Json{{"label", label}, {"poly", poly}});
    lines += label + ": " + poly + " = 0\n";
  }
  d["nonzero"] = nonzero;
  d["equations"] = list;
  std::string text = "equations: " + std::to_string(eqs.size()) + ", nonzero: " + std::to_string(nonzero) + "\n";
  return finish(d, true, text + lines);
}

Report central_ext_report(const lie::LieAlgebraPtr& algebra, const std::string& omega) {
  auto m = parse_rational_matrix(omega);
  Json d;
  try {
    auto ext = lie::central_extension(algebra, m);
    d["cocycle"] = true;
    d["central_index"] = ext.central_index + 1;
    d["extended"] = lie::format_lie_algebra(*ext.extended);
    return finish(d, true,
                  "cocycle: true\ncentral_index: " + std::to_string(ext.central_index + 1) + "\nextended:\n" +
                      d["extended"].get<std::string>());
  } catch (const CocycleViolation& v) {
    d["cocycle"] = false;
    Json t = Json::array();
    for (const auto& tr : v.triples()) t.push_back(cert::format_label(tr));
    d["violations"] = t;
    return finish(d, false, render_fields(d));
  }
}

Report star_report(const StarOptions& opts, const std::string& u, const std::string& v) {
  auto s = build_star(opts);
  auto pu = exact::parse_poly(s->ring(), u), pv = exact::parse_poly(s->ring(), v);
  auto prod = s->multiply(pu, pv);
  Json d;
  d["method"] = star::method_name(s->method());
  d["carrier"] = s->carrier();
  d["order"] = s->order();
  d["u"] = pu.to_string();
  d["v"] = pv.to_string();
  Json terms = Json::array();
  std::string lines;
  for (int k = 0; k <= prod.order(); ++k) {
    if (prod[k].is_zero()) continue;
    terms.push_back(Json{{"hbar", k}, {"coefficient", prod[k].to_string()}});
    lines += "  hbar^" + std::to_string(k) + ": " + prod[k].to_string() + "\n";
  }
  d["product"] = terms;
  std::string text = "method: " + d["method"].get<std::string>() + "\ncarrier: " + s->carrier() +
                     "\norder: " + std::to_string(s->order()) + "\nu: " + d["u"].get<std::string>() +
                     "\nv: " + d["v"].get<std::string>() + "\nu*v:\n" + (lines.empty() ? "  0\n" : lines);
  return finish(d, true, text);
}

Report star_check_report(const StarOptions& opts, int degree_bound) {
  auto s = build_star(opts);
  auto rep = star::star_axioms_check(*s, s->order(), degree_bound);
  Json d;
  d["method"] = rep.method;
  d["order"] = rep.order;
  d["degree_bound"] = rep.degree_bound;
  d["monomials"] = rep.monomials;
  d["triples"] = rep.triples;
  d["unit"] = rep.unit;
  d["c0"] = rep.c0;
  d["c1"] = rep.c1;
  d["associative"] = rep.associative;
  Json f = Json::array();
  for (const auto& x : rep.failures) f.push_back(Json{{"kind", x.kind}, {"order", x.order}, {"witness", x.witness}});
  d["failures"] = f;
  d["verdict"] = rep.passed() ? "pass" : "FAIL";
  return finish(d, rep.passed(), rep.to_string());
}

Report certify_report(const std::optional<std::string>& alpha, const std::optional<std::string>& script,
                      bool with_log) {
  std::optional<Rational> a;
  if (alpha) a = parse_rational(*alpha);
  Json d;
  d["alpha"] = a ? rational_text(*a) : std::string("symbolic");
  d["script"] = script ? "custom" : "built-in";
  try {
    auto cert = script ? cert::counterexample_certificate(a, *script) : cert::counterexample_certificate(a);
    d["verdict"] = "VALID";
    d["cases"] = cert.cases;
    d["leaves"] = cert.leaves;
    d["summary"] = cert.summary;
    std::string text;
    if (with_log) {
      d["log"] = cert.log;
      for (const auto& l : cert.log) text += l + "\n";
    }
    return finish(d, true, text + cert.summary + "\n");
  } catch (const cert::InvalidStep& e) {
    d["verdict"] = "INVALID";
    d["line"] = e.line();
    d["reason"] = e.reason();
    std::string summary = "INVALID (line " + std::to_string(e.line()) + ": " + e.reason() + ")";
    d["summary"] = summary;
    return finish(d, false, summary + "\n");
  }
}

Report solve_dim2_report(const std::string& a, const std::string& b, const std::string& c) {
  Rational qa = parse_rational(a), qb = parse_rational(b), qc = parse_rational(c);
  auto r = cert::dim2_r_matrix(qa, qb, qc);
  auto rep = exterior::cybe_check(r);
  PolyVectorField target(2, 2);
  target.add_term({0, 1}, target.x(0) * target.x(0) * qa + target.x(0) * target.x(1) * (2 * qb) +
                              target.x(1) * target.x(1) * qc);
  auto img = fields::j_map(2, exterior::ExtElement::from_rmatrix(r));
  const bool matches = img == target;
  Json d;
  d["a"] = rational_text(qa);
  d["b"] = rational_text(qb);
  d["c"] = rational_text(qc);
  d["r"] = lie::format_rmatrix(r);
  d["cybe"] = rep.holds;
  d["target"] = target.to_string();
  d["image"] = img.to_string();
  d["j2_matches"] = matches;
  std::string text = "a: " + rational_text(qa) + ", b: " + rational_text(qb) + ", c: " + rational_text(qc) +
                     "\nr:\n" + d["r"].get<std::string>() + "cybe: " + (rep.holds ? "true" : "false") +
                     "\ntarget: " + target.to_string() + "\nimage: " + img.to_string() +
                     "\nj2_matches: " + (matches ? "true" : "false") + "\n";
  return finish(d, rep.holds && matches, text);
}

}  // namespace quadpois::capi
