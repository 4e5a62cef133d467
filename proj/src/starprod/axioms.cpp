#include "starprod/axioms.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace quadpois::star {

namespace {

Poly coordinate_monomial(const RingPtr& ring, const Monomial& coords) {
  Monomial m(ring->size());
  for (std::size_t i = 0; i < coords.size(); ++i) m.set(i, coords[i]);
  return Poly::monomial(ring, m);
}

Monomial coords_of(const Monomial& m, std::size_t n) {
  const auto& e = m.exponents();
  return Monomial(std::vector<std::uint16_t>(e.begin(), e.begin() + static_cast<long>(n)));
}

// First order k <= N where a and b differ, or -1.
int first_difference(const PolySeries& a, const PolySeries& b, int order) {
  for (int k = 0; k <= order; ++k) {
    if (a[k] != b[k]) return k;
  }
  return -1;
}

// (sum_i hbar^i p_i) * x^w when p is a series over the coordinates only.
PolySeries right_times(const StarProduct& star, const PolySeries& p, const Monomial& w, int order) {
  PolySeries out(order, Poly(star.ring()));
  for (int i = 0; i <= order; ++i) {
    for (const auto& [m, c] : p[i].terms()) {
      const auto& s = star.monomial_product(coords_of(m, star.coordinate_count()), w);
      for (int k = 0; i + k <= order; ++k) {
        for (const auto& [mm, cc] : s[k].terms()) out[i + k].add_term(mm, c * cc);
      }
    }
  }
  return out;
}

PolySeries left_times(const StarProduct& star, const Monomial& u, const PolySeries& p, int order) {
  PolySeries out(order, Poly(star.ring()));
  for (int i = 0; i <= order; ++i) {
    for (const auto& [m, c] : p[i].terms()) {
      const auto& s = star.monomial_product(u, coords_of(m, star.coordinate_count()));
      for (int k = 0; i + k <= order; ++k) {
        for (const auto& [mm, cc] : s[k].terms()) out[i + k].add_term(mm, c * cc);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t n, int degree_bound) {
  std::vector<Monomial> out;
  for (int d = 0; d <= degree_bound; ++d) {
    std::vector<Monomial> level;
    std::vector<std::uint16_t> e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n || n == 0) {
        if (n) e[i] = static_cast<std::uint16_t>(left);
        if (n || left == 0) level.emplace_back(e);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[i] = static_cast<std::uint16_t>(k);
        rec(i + 1, left - k);
      }
      e[i] = 0;
    };
    rec(0, d);
    std::sort(level.begin(), level.end(),
              [](const Monomial& a, const Monomial& b) { return a.exponents() < b.exponents(); });
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

StarAxiomsReport star_axioms_check(const StarProduct& star, int order, int degree_bound) {
  if (order < 0 || order > star.order()) throw PreconditionError("check order exceeds the product's truncation");
  if (degree_bound < 0) throw InvalidArgument("degree bound must be nonnegative");
  StarAxiomsReport rep;
  rep.method = method_name(star.method());
  rep.order = order;
  rep.degree_bound = degree_bound;
  const auto n = star.coordinate_count();
  const auto& ring = star.ring();
  auto monos = monomials_up_to(n, degree_bound);
  rep.monomials = monos.size();
  std::vector<Poly> polys;
  std::vector<std::string> names;
  for (const auto& m : monos) {
    polys.push_back(coordinate_monomial(ring, m));
    names.push_back(polys.back().to_string());
  }
  std::map<std::string, std::size_t> counts;
  auto fail = [&](const std::string& kind, std::vector<std::string> witness, int k) {
    if (counts[kind]++ < StarAxiomsReport::kMaxFailuresPerKind) rep.failures.push_back({kind, std::move(witness), k});
  };
  auto truncated = [&](const PolySeries& s) { return s.truncated(order); };
  const Monomial one(n);
  const Poly zero(ring);

  for (std::size_t a = 0; a < monos.size(); ++a) {
    auto expected = PolySeries::constant(order, polys[a], zero);
    int k1 = first_difference(truncated(star.monomial_product(one, monos[a])), expected, order);
    int k2 = first_difference(truncated(star.monomial_product(monos[a], one)), expected, order);
    if (k1 >= 0 || k2 >= 0) {
      rep.unit = false;
      fail("unit", {names[a]}, k1 >= 0 ? (k2 >= 0 ? std::min(k1, k2) : k1) : k2);
    }
  }

  for (std::size_t a = 0; a < monos.size(); ++a) {
    for (std::size_t b = 0; b < monos.size(); ++b) {
      const auto& uv = star.monomial_product(monos[a], monos[b]);
      if (uv[0] != polys[a] * polys[b]) {
        rep.c0 = false;
        fail("C0", {names[a], names[b]}, 0);
      }
      if (order >= 1 && a < b) {
        const auto& vu = star.monomial_product(monos[b], monos[a]);
        if (uv[1] - vu[1] != star.declared_bracket(polys[a], polys[b])) {
          rep.c1 = false;
          fail("C1", {names[a], names[b]}, 1);
        }
      }
    }
  }

  const bool params = ring->size() != n;
  for (std::size_t a = 0; a < monos.size(); ++a) {
    for (std::size_t b = 0; b < monos.size(); ++b) {
      auto uv = truncated(star.monomial_product(monos[a], monos[b]));
      for (std::size_t c = 0; c < monos.size(); ++c) {
        ++rep.triples;
        auto vw = truncated(star.monomial_product(monos[b], monos[c]));
        PolySeries left(order), right(order);
        if (params) {
          left = truncated(star.multiply(uv, PolySeries::constant(star.order(), polys[c], zero)));
          right = truncated(star.multiply(PolySeries::constant(star.order(), polys[a], zero), vw));
        } else {
          left = right_times(star, uv, monos[c], order);
          right = left_times(star, monos[a], vw, order);
        }
        int k = first_difference(left, right, order);
        if (k >= 0) {
          rep.associative = false;
          fail("associativity", {names[a], names[b], names[c]}, k);
        }
      }
    }
  }
  return rep;
}

std::string StarAxiomsReport::to_string() const {
  std::ostringstream os;
  auto verdict = [](bool b) { return b ? "pass" : "FAIL"; };
  os << "method: " << method << "\n";
  os << "order: " << order << ", degree bound: " << degree_bound << ", monomials: " << monomials
     << ", triples: " << triples << "\n";
  os << "unit: " << verdict(unit) << "\n";
  os << "C0 = product: " << verdict(c0) << "\n";
  os << "antisymmetrized C1 = bracket: " << verdict(c1) << "\n";
  os << "associativity: " << verdict(associative) << "\n";
  for (const auto& f : failures) {
    os << "failure: " << f.kind << " at hbar^" << f.order << " on (";
    for (std::size_t i = 0; i < f.witness.size(); ++i) os << (i ? ", " : "") << f.witness[i];
    os << ")\n";
  }
  os << "verdict: " << (passed() ? "pass" : "FAIL") << "\n";
  return os.str();
}

}  // namespace quadpois::star
