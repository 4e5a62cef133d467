#include "certify/constraints.hpp"

#include "common/error.hpp"
#include "exterior/ext_element.hpp"

#include <algorithm>

namespace quadpois::cert {

namespace {

RingPtr append_ring(const std::vector<std::string>& head, const RingPtr& params) {
  auto names = head;
  std::vector<std::string> inv;
  for (std::size_t i = 0; i < params->size(); ++i) {
    names.push_back(params->name(i));
    if (params->is_invertible(i)) inv.push_back(params->name(i));
  }
  return exact::Ring::make(std::move(names), std::move(inv));
}

RingPtr params_of(const RingPtr& ring, std::size_t skip) {
  std::vector<std::string> names, inv;
  for (std::size_t i = skip; i < ring->size(); ++i) {
    names.push_back(ring->name(i));
    if (ring->is_invertible(i)) inv.push_back(ring->name(i));
  }
  return exact::Ring::make(std::move(names), std::move(inv));
}

}  // namespace

LinearConstraintSystem::LinearConstraintSystem(std::vector<std::string> unknowns, RingPtr params,
                                               std::vector<std::vector<Rational>> coefficients, std::vector<Poly> rhs)
    : unknowns_(std::move(unknowns)), params_(std::move(params)), a_(std::move(coefficients)), rhs_(std::move(rhs)) {
  if (a_.size() != rhs_.size()) throw InvalidArgument("coefficient rows and right-hand sides differ in number");
  const std::size_t u = unknowns_.size();
  for (const auto& row : a_) {
    if (row.size() != u) throw InvalidArgument("coefficient row has the wrong length");
  }
  for (auto& b : rhs_) b = b.embed(params_);
  solution_ring_ = append_ring(unknowns_, params_);

  // Gauss-Jordan with columns taken from the last unknown to the first.
  auto rows = a_;
  std::vector<Poly> b;
  for (const auto& p : rhs_) b.push_back(p.embed(solution_ring_));
  std::vector<std::size_t> pivot_col;
  std::size_t prow = 0;
  for (std::size_t step = 0; step < u && prow < rows.size(); ++step) {
    std::size_t col = u - 1 - step;
    std::size_t r = prow;
    while (r < rows.size() && rows[r][col] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[prow]);
    std::swap(b[r], b[prow]);
    Rational inv = Rational(1) / rows[prow][col];
    for (auto& v : rows[prow]) v *= inv;
    b[prow] *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == prow || rows[k][col] == 0) continue;
      Rational f = rows[k][col];
      for (std::size_t j = 0; j < u; ++j) rows[k][j] -= f * rows[prow][j];
      b[k] -= b[prow] * f;
    }
    pivot_col.push_back(col);
    ++prow;
  }
  for (std::size_t k = prow; k < rows.size(); ++k) {
    if (!b[k].is_zero()) consistent_ = false;
  }
  std::vector<bool> is_pivot(u, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t j = 0; j < u; ++j) {
    if (!is_pivot[j]) free_.push_back(j);
  }
  static const std::string letters = "abcdefghijklmnpqrs";
  for (std::size_t i = 0; i < free_.size(); ++i) {
    free_names_.push_back(free_.size() <= letters.size() ? std::string(1, letters[i]) : unknowns_[free_[i]]);
  }
  if (!consistent_) return;
  for (std::size_t k = 0; k < prow; ++k) {
    Poly expr = b[k];
    for (auto f : free_) {
      if (rows[k][f] != 0) expr -= Poly::variable(solution_ring_, f) * rows[k][f];
    }
    pivots_.emplace(pivot_col[k], expr);
  }
}

std::vector<std::string> LinearConstraintSystem::canonical_relations() const {
  std::vector<std::string> out;
  for (const auto& [idx, expr] : pivots_) out.push_back(unknowns_[idx] + " = " + expr.to_string());
  return out;
}

std::vector<std::string> LinearConstraintSystem::renaming() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < free_.size(); ++i) out.push_back(free_names_[i] + " = " + unknowns_[free_[i]]);
  return out;
}

bool LinearConstraintSystem::satisfied_by(const std::vector<Poly>& values) const {
  if (values.size() != unknowns_.size()) throw InvalidArgument("one value per unknown is required");
  for (std::size_t e = 0; e < rhs_.size(); ++e) {
    Poly lhs = -rhs_[e];
    for (std::size_t j = 0; j < unknowns_.size(); ++j) {
      if (a_[e][j] != 0) lhs += values[j] * a_[e][j];
    }
    if (!lhs.is_zero()) return false;
  }
  return true;
}

LinearConstraintSystem j2_constraints(const PolyVectorField& bivector) {
  if (!bivector.is_quadratic_bivector()) throw PreconditionError("j2_constraints needs a quadratic bivector");
  const int n = bivector.dim();
  auto r = exterior::symbolic_gl_rmatrix(n);
  auto unknown_ring = r.coefficient_ring();
  auto params = params_of(bivector.ring(), static_cast<std::size_t>(n));
  auto image = fields::j_map(n, exterior::ExtElement::from_rmatrix(r));
  auto target = bivector;
  fields::unify(image, target);
  auto diff = image - target;
  const auto& ring = diff.ring();
  const std::size_t u = unknown_ring->size();
  std::vector<std::size_t> unknown_pos(u);
  for (std::size_t j = 0; j < u; ++j) unknown_pos[j] = *ring->index_of(unknown_ring->name(j));

  std::vector<std::vector<Rational>> rows;
  std::vector<Poly> rhs;
  // Group each component by its coordinate monomial.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Poly comp = diff.component({i, j});
      std::map<std::vector<std::uint16_t>, Poly> groups;
      for (const auto& [m, c] : comp.terms()) {
        std::vector<std::uint16_t> key(m.exponents().begin(), m.exponents().begin() + n);
        exact::Monomial rest = m;
        for (int v = 0; v < n; ++v) rest.set(static_cast<std::size_t>(v), 0);
        auto it = groups.find(key);
        if (it == groups.end()) it = groups.emplace(key, Poly(ring)).first;
        it->second.add_term(rest, c);
      }
      for (const auto& [key, lin] : groups) {
        std::vector<Rational> row(u);
        Poly constant(ring);
        for (const auto& [m, c] : lin.terms()) {
          std::optional<std::size_t> which;
          bool has_param = false;
          for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            auto pos = std::find(unknown_pos.begin(), unknown_pos.end(), v);
            if (pos == unknown_pos.end()) {
              has_param = true;
            } else {
              if (which || m[v] != 1) throw InternalError("J^2 constraint is not linear in the unknowns");
              which = static_cast<std::size_t>(pos - unknown_pos.begin());
            }
          }
          if (which) {
            if (has_param) throw InvalidArgument("parameter-dependent coefficient of an unknown");
            row[*which] += c;
          } else {
            constant.add_term(m, c);
          }
        }
        rows.push_back(std::move(row));
        rhs.push_back((-constant).embed(params));
      }
    }
  }
  return LinearConstraintSystem(unknown_ring->names(), params, std::move(rows), std::move(rhs));
}

const LabeledEquation* PolySystem::find(const std::array<int, 3>& label) const {
  for (const auto& e : equations) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

std::vector<std::array<int, 3>> PolySystem::zero_labels() const {
  std::vector<std::array<int, 3>> out;
  for (const auto& e : equations) {
    if (e.poly.is_zero()) out.push_back(e.label);
  }
  return out;
}

PolySystem reduce_cybe_on_subspace(int n, const LinearConstraintSystem& sys) {
  if (!sys.consistent()) throw PreconditionError("constraint system is inconsistent");
  auto r = exterior::symbolic_gl_rmatrix(n);
  if (r.coefficient_ring()->names() != sys.unknowns()) {
    throw InvalidArgument("constraint unknowns do not match the gl(n) r-matrix");
  }
  auto target = append_ring(sys.free_names(), sys.params());
  // Work ring: unknowns, then short names, then parameters.
  auto head = sys.unknowns();
  for (const auto& name : sys.free_names()) {
    if (std::find(head.begin(), head.end(), name) == head.end()) head.push_back(name);
  }
  auto work = append_ring(head, sys.params());
  std::map<std::size_t, Poly> free_to_short;
  for (std::size_t i = 0; i < sys.free_unknowns().size(); ++i) {
    free_to_short.emplace(*sys.solution_ring()->index_of(sys.unknowns()[sys.free_unknowns()[i]]),
                          Poly::variable(work, sys.free_names()[i]));
  }
  std::map<std::size_t, Poly> renamed;
  for (const auto& [idx, p] : free_to_short) renamed.emplace(*work->index_of(sys.solution_ring()->name(idx)), p);
  std::map<std::size_t, Poly> assignment;
  for (std::size_t j = 0; j < sys.unknowns().size(); ++j) {
    auto it = sys.pivots().find(j);
    Poly value(work);
    if (it != sys.pivots().end()) {
      value = it->second.embed(work).substitute(renamed);
    } else {
      auto pos = std::find(sys.free_unknowns().begin(), sys.free_unknowns().end(), j) - sys.free_unknowns().begin();
      value = Poly::variable(work, sys.free_names()[static_cast<std::size_t>(pos)]);
    }
    assignment.emplace(*work->index_of(sys.unknowns()[j]), value);
  }
  PolySystem out;
  out.ring = target;
  for (const auto& eq : exterior::gln_cybe_equations(n, r)) {
    Poly p = eq.poly.embed(work).substitute(assignment).embed(target);
    out.equations.push_back({eq.label, p});
  }
  return out;
}

std::string format_label(const std::array<int, 3>& label) {
  return "(" + std::to_string(label[0]) + "," + std::to_string(label[1]) + "," + std::to_string(label[2]) + ")";
}

lie::RMatrix dim2_r_matrix(const Poly& a, const Poly& b, const Poly& c) {
  auto g = lie::gl_basis(2);
  lie::RMatrix r(g);
  const int e11 = lie::gl_index(2, 1, 1), e12 = lie::gl_index(2, 1, 2), e21 = lie::gl_index(2, 2, 1),
            e22 = lie::gl_index(2, 2, 2);
  const std::vector<std::pair<int, Poly>> m{{e11, b}, {e12, -a}, {e21, c}, {e22, -b}};
  for (const auto& [idx, coeff] : m) {
    if (coeff.is_zero()) continue;
    r.add(idx, e11, coeff);
    r.add(idx, e22, coeff);
  }
  return r;
}

}  // namespace quadpois::cert
