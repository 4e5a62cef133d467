#include "certify/builtin_script.hpp"
#include "certify/counterexample.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "exterior/cybe.hpp"
#include "polyfields/analysis.hpp"
#include "polyfields/polyvector.hpp"
#include "starprod/axioms.hpp"
#include "starprod/bch.hpp"
#include "starprod/star.hpp"
#include "support/lie_random.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace quadpois;
using exact::Poly;
using exact::Rational;
using exact::RationalMatrix;
using exterior::ExtElement;
using fields::PolyVectorField;

namespace {

// Sub-checks of one criterion; the criterion passes when every one does.
class Outcome {
 public:
  void check(bool ok, const std::string& what) {
    (ok ? passed_ : failed_).push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_.empty(); }

  std::string detail() const {
    std::string out;
    if (!failed_.empty()) out += "failed: " + join(failed_) + "; ";
    out += std::to_string(passed_.size()) + " sub-checks passed";
    if (!notes_.empty()) out += "; " + join(notes_);
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
    return out;
  }
  std::vector<std::string> passed_, failed_, notes_;
};

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

std::string fixture(const std::string& name) { return std::string(QUADPOIS_FIXTURES) + "/" + name; }

lie::LieAlgebraPtr fixture_algebra(const std::string& name) {
  return lie::parse_lie_algebra(text::read_file(fixture(name)));
}

std::vector<std::string> fixture_lines(const std::string& name) {
  std::vector<std::string> out;
  const auto content = text::read_file(fixture(name));
  for (auto l : text::lines(content)) {
    auto t = text::trim(l);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

RationalMatrix random_antisymmetric(testing::Rng& rng, int n) {
  RationalMatrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto q = rng.rational(3, 2);
      c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = q;
      c(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = -q;
    }
  }
  return c;
}

void kernel_dimensions(Outcome& out) {
  struct Case {
    int n, k;
    long expected;
  };
  for (const Case& c : {Case{2, 2, 3}, Case{3, 2, 18}, Case{4, 2, 60}, Case{2, 3, 4}, Case{3, 3, 74}}) {
    auto kd = fields::kernel_dimension(c.n, c.k);
    const long n2 = static_cast<long>(c.n) * c.n;
    const long closed = c.k == 2 ? n2 * (n2 - 1) / 4 : n2 * (n2 - 1) * (5 * n2 - 8) / 36;
    std::string tag = "J^" + std::to_string(c.k) + " on gl(" + std::to_string(c.n) + ")";
    out.check(kd.computed == c.expected, tag + " ker " + std::to_string(kd.computed) + " = " + std::to_string(c.expected));
    out.check(kd.formula == closed && kd.computed == closed, tag + " closed formula");
    out.check(kd.rank == kd.target, tag + " rank = dim S^k(V) (x) L^k(V)");
  }
}

void cybe_formulations(Outcome& out) {
  testing::Rng rng(20240601);
  std::vector<lie::LieAlgebraPtr> algebras{lie::gl_basis(2), lie::gl_basis(3), fixture_algebra("sl2.lie"),
                                           fixture_algebra("heisenberg.lie")};
  int samples = 0, equal = 0, iff = 0, vanishing = 0;
  for (int trial = 0; trial < 160; ++trial) {
    const auto& g = algebras[static_cast<std::size_t>(trial % 4)];
    lie::RMatrix r = (trial % 8 < 2) ? testing::random_cartan_rmatrix(rng, trial % 8 == 0 ? 2 : 3)
                                     : testing::random_rmatrix(rng, g, trial % 3 == 0 ? 10 : 40);
    auto s = schouten_ext(ExtElement::from_rmatrix(r), ExtElement::from_rmatrix(r));
    auto f = exterior::rr_bracket_formula(r);
    auto c = exterior::cyclic_form(r);
    ++samples;
    equal += s == f;
    iff += s.is_zero() == c.is_zero() && f.is_zero() == c.is_zero();
    vanishing += s.is_zero();
  }
  out.check(samples >= 100, std::to_string(samples) + " random r-matrices");
  out.check(equal == samples, "[r, r] = double-bracket formula on " + std::to_string(equal) + "/" + std::to_string(samples));
  out.check(iff == samples, "cyclic form vanishes iff [r, r] does on " + std::to_string(iff) + "/" + std::to_string(samples));
  out.check(vanishing > 0 && vanishing < samples, "both verdicts occur");
  out.note(std::to_string(vanishing) + " solutions among the samples");
}

void gl3_equations(Outcome& out) {
  auto sym = exterior::symbolic_gl_rmatrix(3);
  auto eqs = exterior::gln_cybe_equations(3, sym);
  out.check(eqs.size() == 84, std::to_string(eqs.size()) + " labeled equations");
  std::set<std::array<int, 3>> labels;
  for (const auto& e : eqs) labels.insert(e.label);
  out.check(labels.size() == 84, "labels distinct");
  testing::Rng rng(33);
  const Rational constant(1, 2);
  int agree = 0, points = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto g = lie::gl_basis(3);
    auto r = trial % 5 == 0 ? testing::random_cartan_rmatrix(rng, 3) : testing::random_rmatrix(rng, g, 30 + 10 * (trial % 5));
    std::map<std::size_t, Poly> sub;
    std::size_t v = 0;
    for (int I = 0; I < 9; ++I) {
      for (int J = I + 1; J < 9; ++J) sub[v++] = r.full(I, J);
    }
    auto schouten = exterior::cybe_check(r).schouten;
    bool all = true;
    for (const auto& e : eqs) {
      Poly value = e.poly.substitute(sub);
      Poly coeff = schouten.coefficient({e.label[0] - 1, e.label[1] - 1, e.label[2] - 1});
      all = all && value.is_constant() && coeff.is_constant() &&
            value.constant_term() == constant * coeff.constant_term();
    }
    ++points;
    agree += all;
  }
  out.check(agree == points, "equation = (1/2) [r, r] coefficient at " + std::to_string(agree) + "/" + std::to_string(points) + " random points");
  out.note("ledger constant 1/2");
}

void dim2_formula(Outcome& out) {
  testing::Rng rng(44);
  int cybe = 0, image = 0;
  const int trials = 120;
  for (int t = 0; t < trials; ++t) {
    Rational a = rng.rational(9, 5), b = rng.rational(9, 5), c = rng.rational(9, 5);
    auto r = cert::dim2_r_matrix(Poly(a), Poly(b), Poly(c));
    cybe += exterior::cybe_check(r).holds;
    PolyVectorField target(2, 2);
    target.add_term({0, 1}, target.x(0) * target.x(0) * a + target.x(0) * target.x(1) * (2 * b) +
                                target.x(1) * target.x(1) * c);
    image += fields::j_map(2, ExtElement::from_rmatrix(r)) == target;
  }
  out.check(cybe == trials, "[r, r] = 0 on " + std::to_string(cybe) + "/" + std::to_string(trials));
  out.check(image == trials, "J^2(r) matches on " + std::to_string(image) + "/" + std::to_string(trials));
}

bool script_rejected(const std::string& script) {
  try {
    cert::counterexample_certificate(std::nullopt, script);
    return false;
  } catch (const cert::InvalidStep&) {
    return true;
  } catch (const ParseError&) {
    return true;
  }
}

// One corruption per STEP line: scaled expectations, shifted substitutions
// and conclusions, retargeted contradictions, renamed split variables.
std::pair<int, int> corrupt_every_step() {
  auto text = std::string(cert::builtin_counterexample_script());
  auto all = text::lines(text);
  std::vector<std::string> src(all.begin(), all.end());
  int steps = 0, rejected = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::string& l = src[i];
    if (l.find("STEP") == std::string::npos) continue;
    std::string bad;
    if (auto p = l.find("expect "); p != std::string::npos) {
      bad = l.substr(0, p) + "expect 2*(" + l.substr(p + 7) + ")";
    } else if (auto q = l.find(" from "); q != std::string::npos) {
      bad = l.substr(0, q) + " + 1" + l.substr(q);
    } else if (l.find("conclude") != std::string::npos) {
      bad = l + " + 1";
    } else if (l.find("contradiction") != std::string::npos) {
      bad = l.find("(2,3,9)") != std::string::npos ? l.substr(0, l.find('(')) + "(1,3,5)"
                                                   : l.substr(0, l.find("contradiction")) + "contradiction (2,3,9)";
    } else {
      bad = l.substr(0, l.rfind(' ')) + " g";
    }
    std::string script;
    for (std::size_t k = 0; k < src.size(); ++k) script += (k == i ? bad : src[k]) + "\n";
    ++steps;
    rejected += script_rejected(script);
  }
  return {steps, rejected};
}

void counterexample(Outcome& out) {
  const auto& an = cert::counterexample_analysis();
  auto relations = an.constraints.canonical_relations();
  auto printed = fixture_lines("counterexample_constraints.txt");
  out.check(relations.size() == 18, std::to_string(relations.size()) + " linear constraints");
  auto sorted_relations = relations, sorted_printed = printed;
  std::sort(sorted_relations.begin(), sorted_relations.end());
  std::sort(sorted_printed.begin(), sorted_printed.end());
  out.check(sorted_relations == sorted_printed, "constraint lines identical to the reference set");
  if (relations != printed) out.note("constraint lines listed in pivot order");

  const auto& ps = an.system;
  out.check(ps.equations.size() == 84, std::to_string(ps.equations.size()) + " reduced equations");
  const auto zero = ps.identically_zero();
  out.check(zero == 18, "identically zero after reduction: " + std::to_string(zero) + " (expected 18, nontrivial " +
                            std::to_string(ps.nontrivial()) + " vs 66)");

  auto lines = fixture_lines("printed_equations.txt");
  int matched = 0;
  for (const auto& l : lines) {
    std::array<int, 3> label{};
    auto colon = l.find(':');
    if (colon == std::string::npos || std::sscanf(l.c_str(), "(%d,%d,%d)", &label[0], &label[1], &label[2]) != 3) continue;
    const auto* eq = ps.find(label);
    matched += eq && eq->poly == exact::parse_poly(ps.ring, l.substr(colon + 1));
  }
  out.check(lines.size() == 20 && matched == 20, "printed equations at their labels: " + std::to_string(matched) + "/20");

  auto sym = cert::counterexample_certificate();
  out.check(sym.valid && sym.cases == 4, "symbolic alpha: " + sym.summary);
  auto one = cert::counterexample_certificate(Rational(1));
  out.check(one.valid && one.cases == 4, "alpha = 1: " + one.summary);
  auto [steps, rejected] = corrupt_every_step();
  out.check(steps > 0 && rejected == steps, "corrupted steps rejected: " + std::to_string(rejected) + "/" + std::to_string(steps));
}

void star_axioms(Outcome& out) {
  auto g2 = star::star_axioms_check(*star::make_gutt_star(lie::gl_basis(2), 3), 3, 3);
  out.check(g2.passed(), "gl(2) Gutt N=3 D=3 (" + std::to_string(g2.triples) + " triples)");
  auto h = star::star_axioms_check(*star::make_gutt_star(fixture_algebra("heisenberg.lie"), 3), 3, 3);
  out.check(h.passed(), "Heisenberg Gutt N=3 D=3 (" + std::to_string(h.triples) + " triples)");

  std::map<std::string, Rational> w2, w3;
  for (const auto& [w, c] : star::bch_word_coefficients(2)) w2[w] = c;
  for (const auto& [w, c] : star::bch_word_coefficients(3)) w3[w] = c;
  out.check(w2["AB"] == Rational(1, 2) && w2["BA"] == Rational(-1, 2), "order-1 BCH coefficient 1/2");
  out.check(w3["AAB"] == Rational(1, 12) && w3["ABB"] == Rational(1, 12) && w3["BBA"] == Rational(1, 12) &&
                w3["BAA"] == Rational(1, 12) && w3["ABA"] == Rational(-1, 6) && w3["BAB"] == Rational(-1, 6),
            "order-2 BCH coefficient 1/12");

  auto g3 = lie::gl_basis(3);
  testing::Rng rng(66);
  bool ok = true;
  for (int t = 0; t < 10; ++t) {
    std::vector<Rational> x, y;
    for (int i = 0; i < 9; ++i) {
      x.push_back(rng.rational(4, 3));
      y.push_back(rng.rational(4, 3));
    }
    auto z = star::bch_truncate(*g3, x, y, 2);
    auto xy = g3->bracket(x, y);
    auto xxy = g3->bracket(x, xy), yyx = g3->bracket(y, g3->bracket(y, x));
    for (std::size_t i = 0; i < 9; ++i) {
      ok = ok && z[1][i] == xy[i] / 2 && z[2][i] == (xxy[i] + yyx[i]) / 12;
    }
  }
  out.check(ok, "BCH truncation on gl(3) vectors");
}

void cartan_quantization(Outcome& out) {
  testing::Rng rng(77);
  int assoc = 0, bracket = 0, round = 0;
  const int trials = 4;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + t % 2;
    auto c = random_antisymmetric(rng, n);
    auto star = star::make_cartan_star(c, 4);
    assoc += star::star_axioms_check(*star, 4, 3).associative;

    lie::RMatrix r(lie::gl_basis(n));
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        r.add(lie::gl_index(n, i, i), lie::gl_index(n, j, j),
              Poly(c(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1))));
      }
    }
    auto lambda = fields::j_map(n, ExtElement::from_rmatrix(r)).with_ring(star->ring());
    bool agree = true;
    for (const auto& a : star::monomials_up_to(static_cast<std::size_t>(n), 3)) {
      for (const auto& b : star::monomials_up_to(static_cast<std::size_t>(n), 3)) {
        auto p = star->monomial_product(a, b), q = star->monomial_product(b, a);
        Poly u(star->ring()), v(star->ring());
        u.add_term(a, Rational(1));
        v.add_term(b, Rational(1));
        agree = agree && p[1] - q[1] == fields::poisson_bracket(lambda, u, v);
      }
    }
    bracket += agree;

    auto rep = fields::cartan_analyze(fields::j_map(n, ExtElement::from_rmatrix(r)));
    round += rep.in_cartan_form && rep.r_matrix && fields::j_map(n, ExtElement::from_rmatrix(*rep.r_matrix)) ==
                                                       fields::j_map(n, ExtElement::from_rmatrix(r)) &&
             exterior::cybe_check(*rep.r_matrix).holds;
  }
  out.check(assoc == trials, "associative mod hbar^5 at D=3 on " + std::to_string(assoc) + "/" + std::to_string(trials));
  out.check(bracket == trials, "antisymmetrized C1 = bracket of J^2(r) on " + std::to_string(bracket) + "/" + std::to_string(trials));
  out.check(round == trials, "cartan_analyze round trip with [r, r] = 0 on " + std::to_string(round) + "/" + std::to_string(trials));
}

// Independent coboundary of a 2-form: omega([X_i, X_j], X_k) + cyclic.
std::set<std::array<int, 3>> coboundary_support(const lie::LieAlgebra& g, const RationalMatrix& omega) {
  std::set<std::array<int, 3>> out;
  const int d = g.dim();
  auto om = [&](int i, const std::vector<lie::BracketTerm>& terms, bool left) {
    Rational s = 0;
    for (const auto& t : terms) {
      s += t.coeff * (left ? omega(static_cast<std::size_t>(t.index), static_cast<std::size_t>(i))
                           : omega(static_cast<std::size_t>(i), static_cast<std::size_t>(t.index)));
    }
    return s;
  };
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        Rational v = om(k, g.basis_bracket(i, j), true) + om(i, g.basis_bracket(j, k), true) +
                     om(j, g.basis_bracket(k, i), true);
        if (v != 0) out.insert({i + 1, j + 1, k + 1});
      }
    }
  }
  return out;
}

void central_extension(Outcome& out) {
  testing::Rng rng(88);
  std::vector<lie::LieAlgebraPtr> algebras{lie::gl_basis(2), fixture_algebra("sl2.lie"), fixture_algebra("aff1.lie")};
  int rejected = 0, accepted = 0, consistent = 0, trials = 0;
  for (int t = 0; t < 30; ++t) {
    const auto& g = algebras[static_cast<std::size_t>(t % 3)];
    auto omega = random_antisymmetric(rng, g->dim());
    if (t % 5 == 0) {
      for (int i = 1; i < g->dim(); ++i) {
        omega(0, static_cast<std::size_t>(i)) = 0;
        omega(static_cast<std::size_t>(i), 0) = 0;
      }
    }
    auto expected = coboundary_support(*g, omega);
    std::set<std::array<int, 3>> witnesses;
    bool threw = false;
    try {
      lie::central_extension(g, omega);
    } catch (const CocycleViolation& e) {
      threw = true;
      witnesses.insert(e.triples().begin(), e.triples().end());
    }
    ++trials;
    threw ? ++rejected : ++accepted;
    consistent += threw == !expected.empty() && witnesses == expected;
  }
  out.check(consistent == trials, "rejections and witness triples match the coboundary on " + std::to_string(consistent) + "/" + std::to_string(trials));
  out.check(rejected > 0 && accepted > 0, std::to_string(rejected) + " rejected, " + std::to_string(accepted) + " accepted");

  RationalMatrix omega(2, 2);
  omega(0, 1) = 1;
  omega(1, 0) = -1;
  auto ext = lie::central_extension(lie::abelian_algebra(2), omega);
  auto full = star::make_gutt_star(ext.extended, 3);
  auto fring = ext.extended->coordinate_ring();
  auto tm1 = Poly::variable(fring, static_cast<std::size_t>(ext.central_index)) - Poly(fring, 1);
  int ideal = 0;
  const int samples = 20;
  for (int t = 0; t < samples; ++t) {
    auto u = testing::random_poly(rng, fring, 3);
    auto expected = star::PolySeries::constant(3, tm1 * u, Poly(fring));
    ideal += full->multiply(tm1, u) == expected && full->multiply(u, tm1) == expected;
  }
  out.check(ideal == samples, "(t - 1) two-sided star ideal on " + std::to_string(ideal) + "/" + std::to_string(samples));

  auto ring = ext.base->coordinate_ring();
  auto x = Poly::variable(ring, 0), y = Poly::variable(ring, 1);
  auto diff = star::hyperplane_restrict_star(ext, x, y, 3) - star::hyperplane_restrict_star(ext, y, x, 3);
  bool commutator = diff[0].is_zero() && diff[1] == Poly(ring, 1) && diff[2].is_zero() && diff[3].is_zero();
  out.check(commutator, "restricted x*y - y*x = hbar");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "kernel dimensions of J^2 and J^3", 10, kernel_dimensions},
      {2, "three CYBE formulations agree", 30, cybe_formulations},
      {3, "gl(3) CYBE equation system", 60, gl3_equations},
      {4, "two-dimensional constructive formula", 60, dim2_formula},
      {5, "counterexample reproduction and certificate", 10, counterexample},
      {6, "Gutt star-product axioms and BCH coefficients", 60, star_axioms},
      {7, "Cartan quantization", 60, cartan_quantization},
      {8, "central extension and hyperplane restriction", 60, central_extension},
  };
  return all;
}

bool run(const Criterion& c) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    c.run(out);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.check(secs < c.budget_seconds, "runtime under " + std::to_string(static_cast<int>(c.budget_seconds)) + " s");
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (out.ok() ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " (" << out.detail()
            << "; " << timing << ")" << std::endl;
  return out.ok();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all_ok = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.number) == selected.end()) continue;
    all_ok = run(c) && all_ok;
    ++ran;
  }
  if (ran == 0) {
    std::cerr << "usage: quadpois_acceptance [criterion ...] (1-" << criteria().size() << ")\n";
    return 2;
  }
  return all_ok ? 0 : 1;
}
