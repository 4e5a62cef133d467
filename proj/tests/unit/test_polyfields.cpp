#include <doctest.h>

#include "common/error.hpp"
#include "common/text.hpp"
#include "exterior/cybe.hpp"
#include "polyfields/analysis.hpp"
#include "support/lie_random.hpp"

using namespace quadpois;
using namespace quadpois::fields;
using exterior::ExtElement;
using lie::gl_index;

namespace {

PolyVectorField fixture(const std::string& name) {
  return parse_bivector(text::read_file(std::string(QUADPOIS_FIXTURES) + "/" + name));
}

PolyVectorField field(int n, int k, std::initializer_list<std::pair<Tuple, const char*>> terms) {
  auto ring = coordinate_ring(n, exact::Ring::make({"alpha"}, {"alpha"}));
  PolyVectorField f(n, k, ring);
  for (const auto& [t, s] : terms) f.add_term(t, exact::parse_poly(ring, s));
  return f;
}

PolyVectorField random_field(testing::Rng& rng, int n, int k, unsigned max_degree) {
  auto ring = coordinate_ring(n);
  PolyVectorField f(n, k, ring);
  std::size_t terms = 1 + rng.below(3);
  for (std::size_t t = 0; t < terms; ++t) {
    Tuple idx;
    while (static_cast<int>(idx.size()) < k) {
      int i = static_cast<int>(rng.below(static_cast<std::size_t>(n)));
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    f.add_term(idx, testing::random_poly(rng, ring, max_degree, 3));
  }
  return f;
}

// Jacobiator {f,{g,h}} + {g,{h,f}} + {h,{f,g}} as an independent oracle.
Poly jacobiator(const PolyVectorField& l, const Poly& f, const Poly& g, const Poly& h) {
  return poisson_bracket(l, f, poisson_bracket(l, g, h)) + poisson_bracket(l, g, poisson_bracket(l, h, f)) +
         poisson_bracket(l, h, poisson_bracket(l, f, g));
}

int sign_pow(int e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("Schouten-Nijenhuis on vector fields is the Lie bracket") {
  auto a = field(2, 1, {{{1}, "x1"}});
  auto b = field(2, 1, {{{0}, "x2"}});
  CHECK(sn_bracket(a, b) == field(2, 1, {{{0}, "x1"}, {{1}, "-x2"}}));
  CHECK(sn_bracket(a, b).to_string() == "x1*d1 - x2*d2");

  testing::Rng rng(12);
  auto ring = coordinate_ring(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_field(rng, 3, 1, 2), y = random_field(rng, 3, 1, 2);
    Poly f = testing::random_poly(rng, ring, 3);
    auto xy = sn_bracket(x, y);
    CHECK(apply_vector_field(xy, f) ==
          apply_vector_field(x, apply_vector_field(y, f)) - apply_vector_field(y, apply_vector_field(x, f)));
    // Functions: [X, f] = X(f).
    PolyVectorField ff(3, 0, ring);
    ff.add_term({}, f);
    CHECK(sn_bracket(x, ff).component({}) == apply_vector_field(x, f));
  }
}

TEST_CASE("counterexample bivector is Poisson") {
  auto l = fixture("counterexample.biv");
  CHECK(l.ring()->names() == std::vector<std::string>{"x1", "x2", "x3", "alpha"});
  CHECK(l.to_string() == "(x2*x3*alpha + x1^2)*d2^d3");
  CHECK(jacobi_poisson_check(l).poisson);
  CHECK(jacobi_poisson_check(fixture("counterexample_alpha1.biv")).poisson);
  CHECK(jacobi_poisson_check(field(2, 2, {{{0, 1}, "x1^2 + 3*x1*x2"}})).poisson);
}

TEST_CASE("Jacobiator example and bracket normalization") {
  auto l = fixture("not_poisson.biv");
  auto rep = jacobi_poisson_check(l);
  CHECK_FALSE(rep.poisson);
  auto x = [&](int i) { return l.x(i); };
  CHECK(jacobiator(l, x(0), x(1), x(2)) == Poly(2) * x(0) * x(0) * x(1));
  // [L, L] on d1^d2^d3 is twice the Jacobiator on the coordinates.
  CHECK(rep.residual.to_string() == "4*x1^2*x2*d1^d2^d3");
  testing::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    PolyVectorField b(3, 2);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        Poly c(b.ring());
        for (int p = 0; p < 3; ++p) {
          for (int q = p; q < 3; ++q) c += Poly(rng.rational(3, 2)) * b.x(p) * b.x(q);
        }
        b.add_term({i, j}, c);
      }
    }
    auto res = jacobi_poisson_check(b).residual;
    CHECK(res.component({0, 1, 2}) == Poly(2) * jacobiator(b, b.x(0), b.x(1), b.x(2)));
  }
}

TEST_CASE("J map examples") {
  auto g2 = lie::gl_basis(2);
  CHECK(j_map(2, ExtElement::basis(g2, {gl_index(2, 1, 2)})) == field(2, 1, {{{1}, "x1"}}));
  auto g3 = lie::gl_basis(3);
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 3; ++k) {
      for (int j = 1; j <= 3; ++j) {
        if (i == k) continue;
        CHECK(j_map(3, ExtElement::basis(g3, {gl_index(3, i, j), gl_index(3, k, j)})).is_zero());
      }
    }
  }
  // r = M ^ I with M = b E11 - a E12 + c E21 - b E22.
  testing::Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Rational a = rng.rational(5, 3), b = rng.rational(5, 3), c = rng.rational(5, 3);
    auto m = ExtElement::from_vector(g2, {b, -a, c, -b});
    auto id = ExtElement::from_vector(g2, {1, 0, 0, 1});
    auto j2 = j_map(2, wedge(m, id));
    PolyVectorField expect(2, 2);
    expect.add_term({0, 1}, Poly(a) * expect.x(0) * expect.x(0) + Poly(2 * b) * expect.x(0) * expect.x(1) +
                                Poly(c) * expect.x(1) * expect.x(1));
    CHECK(j2 == expect);
  }
}

TEST_CASE("J is a morphism of Gerstenhaber algebras") {
  testing::Rng rng(77);
  for (int n : {2, 3}) {
    auto g = lie::gl_basis(n);
    for (int trial = 0; trial < 40; ++trial) {
      int k = 1 + static_cast<int>(rng.below(2)), l = 1 + static_cast<int>(rng.below(2));
      auto u = testing::random_ext(rng, g, k), v = testing::random_ext(rng, g, l);
      CHECK(j_map(n, wedge(u, v)) == wedge(j_map(n, u), j_map(n, v)));
      CHECK(j_map(n, exterior::schouten_ext(u, v)) == sn_bracket(j_map(n, u), j_map(n, v)));
    }
  }
}

TEST_CASE("CYBE solutions give Poisson structures") {
  testing::Rng rng(14);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 2;
    auto r = trial % 2 ? testing::random_cartan_rmatrix(rng, n) : testing::random_rmatrix(rng, lie::gl_basis(n), 15);
    if (!exterior::cybe_check(r).holds) continue;
    ++checked;
    CHECK(jacobi_poisson_check(j_map(n, ExtElement::from_rmatrix(r))).poisson);
  }
  CHECK(checked >= 20);
}

TEST_CASE("kernel dimensions of J^k") {
  struct Case {
    int n, k;
    long ker;
  };
  for (auto c : {Case{2, 2, 3}, Case{3, 2, 18}, Case{4, 2, 60}, Case{2, 3, 4}, Case{3, 3, 74}}) {
    auto kd = kernel_dimension(c.n, c.k);
    CHECK(kd.computed == c.ker);
    CHECK(kd.formula == c.ker);
    CHECK(kd.match);
    CHECK(kd.surjective);
  }
  CHECK(kernel_dimension(2, 3).rank == 0);
  CHECK(kernel_dimension(3, 3).rank == 10);
  CHECK_THROWS_AS(kernel_dimension(5, 2), PreconditionError);
  CHECK_THROWS_AS(kernel_dimension(4, 3), PreconditionError);
  CHECK_THROWS_AS(kernel_dimension(2, 4), PreconditionError);
}

TEST_CASE("curl examples") {
  CHECK(curl(PolyVectorField(3, 2)).to_string() == "0");
  auto l = fixture("counterexample_alpha1.biv");
  CHECK(curl(l).to_string() == "x2*d2 - x3*d3");
  auto cr = curl(fixture("cartan3.biv"));
  // sum_i (sum_{j != i} c_ij) x_i d_i with c12 = 1, c13 = -2, c23 = 1/2.
  CHECK(cr.to_string() == "-x1*d1 - (1/2)*x2*d2 + (3/2)*x3*d3");
}

TEST_CASE("Cartan analysis") {
  auto r1 = cartan_analyze(field(2, 2, {{{0, 1}, "x1*x2"}}));
  CHECK(r1.in_cartan_form);
  REQUIRE(r1.r_matrix);
  CHECK(exterior::ExtElement::from_rmatrix(*r1.r_matrix).to_string() == "E11^E22");

  auto r0 = cartan_analyze(PolyVectorField(3, 2));
  CHECK(r0.in_cartan_form);
  CHECK(r0.r_matrix->coefficients().empty());

  auto ce = cartan_analyze(fixture("counterexample_alpha1.biv"));
  CHECK_FALSE(ce.in_cartan_form);
  REQUIRE(ce.eigenvalues);
  CHECK(*ce.eigenvalues == std::vector<Rational>{0, 1, -1});
  REQUIRE(ce.nonresonant);
  CHECK_FALSE(*ce.nonresonant);
  CHECK(*ce.resonance == std::array<int, 4>{1, 1, 2, 3});

  auto sym = cartan_analyze(fixture("counterexample.biv"));
  CHECK_FALSE(sym.in_cartan_form);
  CHECK_FALSE(sym.eigenvalues);
  CHECK_FALSE(sym.nonresonant);

  auto alpha_cartan = cartan_analyze(field(2, 2, {{{0, 1}, "alpha*x1*x2"}}));
  CHECK(alpha_cartan.in_cartan_form);
  CHECK(exterior::cybe_check(*alpha_cartan.r_matrix).holds);

  CHECK_THROWS_AS(cartan_analyze(field(2, 2, {{{0, 1}, "x1"}})), PreconditionError);
}

TEST_CASE("Cartan round trip on random coefficients") {
  testing::Rng rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    PolyVectorField l(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) l.add_term({i, j}, Poly(rng.rational(5, 4)) * l.x(i) * l.x(j));
    }
    auto rep = cartan_analyze(l);
    REQUIRE(rep.in_cartan_form);
    CHECK(j_map(n, ExtElement::from_rmatrix(*rep.r_matrix)) == l);
    CHECK(exterior::cybe_check(*rep.r_matrix).holds);
    CHECK(jacobi_poisson_check(l).poisson);
    // Diagonal curl, eigenvalues row sums of c.
    REQUIRE(rep.eigenvalues);
    for (int i = 0; i < n; ++i) {
      Rational s = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += (*rep.c_matrix)[static_cast<std::size_t>(i * n + j)].constant_term();
      }
      CHECK((*rep.eigenvalues)[static_cast<std::size_t>(i)] == s);
    }
  }
}

TEST_CASE("rational eigenvalues") {
  exact::RationalMatrix swap(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  CHECK(*rational_eigenvalues(swap) == std::vector<Rational>{-1, 1});
  exact::RationalMatrix rot(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  CHECK_FALSE(rational_eigenvalues(rot));
  exact::RationalMatrix sq2(2, 2);
  sq2(0, 1) = 2;
  sq2(1, 0) = 1;
  CHECK_FALSE(rational_eigenvalues(sq2));
  exact::RationalMatrix m(3, 3);
  m(0, 1) = Rational(1, 2);
  m(1, 0) = 2;
  m(2, 2) = 3;
  m(2, 0) = 1;
  m(0, 2) = 1;
  auto cp = characteristic_polynomial(m);
  CHECK(cp.back() == 1);
  auto ev = rational_eigenvalues(m);
  if (ev) {
    for (const auto& lam : *ev) {
      Rational v = 0, p = 1;
      for (const auto& c : cp) {
        v += c * p;
        p *= lam;
      }
      CHECK(v == 0);
    }
  }
  exact::RationalMatrix z(2, 2);
  z(0, 1) = 1;
  z(1, 0) = 0;
  CHECK(*rational_eigenvalues(z) == std::vector<Rational>{0, 0});
}

TEST_CASE("Schouten-Nijenhuis graded identities") {
  testing::Rng rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    int k = static_cast<int>(rng.below(3)) + 1, l = static_cast<int>(rng.below(3)) + 1,
        m = static_cast<int>(rng.below(3));
    auto p = random_field(rng, 3, k, 1), q = random_field(rng, 3, l, 1), w = random_field(rng, 3, m, 1);
    CHECK(sn_bracket(p, q) == sn_bracket(q, p) * Poly(-sign_pow((k - 1) * (l - 1))));
    auto lhs = sn_bracket(p, sn_bracket(q, w));
    auto rhs = sn_bracket(sn_bracket(p, q), w) + sn_bracket(q, sn_bracket(p, w)) * Poly(sign_pow((k - 1) * (l - 1)));
    CHECK(lhs == rhs);
    CHECK(sn_bracket(p, wedge(q, w)) ==
          wedge(sn_bracket(p, q), w) + wedge(q, sn_bracket(p, w)) * Poly(sign_pow((k - 1) * l)));
  }
}

TEST_CASE("bivector fixtures") {
  for (const char* name : {"counterexample.biv", "not_poisson.biv", "cartan3.biv"}) {
    auto l = fixture(name);
    CHECK(parse_bivector(format_bivector(l)) == l);
  }
  CHECK(parse_bivector("L[1][2] = x1*x2\n").dim() == 2);
  CHECK_THROWS_AS(parse_bivector("L[2][1] = x1*x2\n"), ParseError);
  CHECK_THROWS_AS(parse_bivector("L[1][2] = x1*x2\nL[1][2] = x1^2\n"), ParseError);
  CHECK_THROWS_AS(parse_bivector("dim 2\nL[1][3] = x1\n"), ParseError);
  CHECK_THROWS_AS(parse_bivector("L[1][2] = y\n"), ParseError);
  CHECK_THROWS_AS(parse_bivector("M[1][2] = x1\n"), ParseError);
}
