#include "lie/lie_algebra.hpp"

#include "common/error.hpp"
#include "common/text.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

namespace quadpois::lie {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

exact::RingPtr make_coordinates(const std::vector<std::string>& labels) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  bool ok = true;
  for (const auto& l : labels) {
    std::string lower = l;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!is_identifier(lower) || lower == "alpha" || lower == "hbar" || !seen.insert(lower).second) ok = false;
    names.push_back(lower);
  }
  if (!ok) {
    names.clear();
    for (std::size_t i = 1; i <= labels.size(); ++i) names.push_back("x" + std::to_string(i));
  }
  return exact::Ring::make(names);
}

void normalize(std::vector<BracketTerm>& terms) {
  std::map<int, Rational> acc;
  for (const auto& t : terms) acc[t.index] += t.coeff;
  terms.clear();
  for (auto& [i, c] : acc) {
    if (c != 0) terms.push_back({i, c});
  }
}

bool same_terms(const std::vector<BracketTerm>& a, const std::vector<BracketTerm>& b, int sign) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || a[i].coeff != sign * b[i].coeff) return false;
  }
  return true;
}

std::vector<Rational> unit_vector(int n, int i) {
  std::vector<Rational> v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<std::vector<BracketTerm>> brackets)
    : labels_(std::move(labels)), brackets_(std::move(brackets)) {
  const int n = dim();
  if (n <= 0) throw InvalidArgument("Lie algebra must have positive dimension");
  if (brackets_.size() != static_cast<std::size_t>(n * n)) throw InvalidArgument("bracket table has wrong size");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty() || !seen.insert(l).second) throw InvalidArgument("basis labels must be distinct and nonempty");
  }
  for (auto& t : brackets_) {
    for (const auto& term : t) {
      if (term.index < 0 || term.index >= n) throw InvalidArgument("bracket refers to a basis index out of range");
    }
    normalize(t);
  }
  for (int i = 0; i < n; ++i) {
    if (!basis_bracket(i, i).empty()) {
      throw InvalidArgument("bracket [" + label(i) + ", " + label(i) + "] must vanish");
    }
    for (int j = i + 1; j < n; ++j) {
      if (!same_terms(basis_bracket(i, j), basis_bracket(j, i), -1)) {
        throw InvalidArgument("bracket is not antisymmetric on (" + label(i) + ", " + label(j) + ")");
      }
    }
  }
  coordinates_ = make_coordinates(labels_);
}

std::optional<int> LieAlgebra::index_of(std::string_view label) const {
  for (int i = 0; i < dim(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  }
  return std::nullopt;
}

Rational LieAlgebra::structure_constant(int i, int j, int k) const {
  for (const auto& t : basis_bracket(i, j)) {
    if (t.index == k) return t.coeff;
  }
  return 0;
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(brackets_.begin(), brackets_.end(), [](const auto& t) { return t.empty(); });
}

void LieAlgebra::check_length(std::size_t n) const {
  if (n != static_cast<std::size_t>(dim())) throw InvalidArgument("vector length does not match algebra dimension");
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.labels_ != b.labels_) return false;
  for (std::size_t i = 0; i < a.brackets_.size(); ++i) {
    if (!same_terms(a.brackets_[i], b.brackets_[i], 1)) return false;
  }
  return true;
}

LieAlgebraPtr gl_basis(int n) {
  if (n < 1) throw PreconditionError("gl(n) needs n >= 1");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      labels.push_back(n < 10 ? "E" + std::to_string(i) + std::to_string(j)
                              : "E" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  const int d = n * n;
  std::vector<std::vector<BracketTerm>> br(static_cast<std::size_t>(d * d));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) {
          auto& t = br[static_cast<std::size_t>(gl_index(n, i, j) * d + gl_index(n, k, l))];
          if (j == k) t.push_back({gl_index(n, i, l), 1});
          if (l == i) t.push_back({gl_index(n, k, j), -1});
        }
      }
    }
  }
  return std::make_shared<LieAlgebra>(std::move(labels), std::move(br));
}

LieAlgebraPtr abelian_algebra(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
  return std::make_shared<LieAlgebra>(std::move(labels),
                                      std::vector<std::vector<BracketTerm>>(static_cast<std::size_t>(n * n)));
}

std::vector<Rational> lie_bracket(const LieAlgebra& algebra, const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) {
  return algebra.bracket(x, y);
}

JacobiReport check_jacobi_lie(const LieAlgebra& g) {
  JacobiReport rep;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    auto ei = unit_vector(n, i);
    for (int j = i + 1; j < n; ++j) {
      auto ej = unit_vector(n, j);
      for (int k = j + 1; k < n; ++k) {
        auto ek = unit_vector(n, k);
        auto a = g.bracket(ei, g.bracket(ej, ek));
        auto b = g.bracket(ej, g.bracket(ek, ei));
        auto c = g.bracket(ek, g.bracket(ei, ej));
        for (int m = 0; m < n; ++m) {
          auto s = static_cast<std::size_t>(m);
          if (a[s] + b[s] + c[s] != 0) {
            rep.holds = false;
            rep.violations.push_back({i + 1, j + 1, k + 1});
            break;
          }
        }
      }
    }
  }
  return rep;
}

CentralExtension central_extension(const LieAlgebraPtr& base, const RationalMatrix& omega) {
  const int n = base->dim();
  if (omega.rows() != static_cast<std::size_t>(n) || omega.cols() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("omega must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  if (!omega.is_antisymmetric()) throw InvalidArgument("omega must be antisymmetric");
  auto labels = base->labels();
  std::string central = "T";
  for (int k = 0; base->index_of(central); ++k) central = "T" + std::to_string(k);
  labels.push_back(central);
  const int d = n + 1;
  std::vector<std::vector<BracketTerm>> br(static_cast<std::size_t>(d * d));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto& t = br[static_cast<std::size_t>(i * d + j)];
      t = base->basis_bracket(i, j);
      const auto& w = omega(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (w != 0) t.push_back({n, w});
    }
  }
  auto ext = std::make_shared<LieAlgebra>(std::move(labels), std::move(br));
  auto jac = check_jacobi_lie(*ext);
  if (!jac.holds) throw CocycleViolation(jac.violations);
  return {base, omega, ext, n};
}

void RMatrix::add(int i, int j, const Poly& c) {
  const int n = algebra_->dim();
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("r-matrix index out of range");
  if (i == j || c.is_zero()) return;
  std::pair<int, int> key = i < j ? std::pair{i, j} : std::pair{j, i};
  Poly v = i < j ? c : -c;
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    coeffs_.emplace(key, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Poly RMatrix::full(int i, int j) const {
  if (i == j) return Poly();
  auto it = coeffs_.find(i < j ? std::pair{i, j} : std::pair{j, i});
  if (it == coeffs_.end()) return Poly();
  return i < j ? it->second : -it->second;
}

bool RMatrix::is_rational() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

exact::RingPtr RMatrix::coefficient_ring() const {
  exact::RingPtr r = exact::Ring::scalars();
  for (const auto& [k, c] : coeffs_) r = exact::union_ring(r, c.ring());
  return r;
}

RTildeImage r_tilde_and_image(const RMatrix& r) {
  if (!r.is_rational()) throw InvalidArgument("r_tilde_and_image needs rational coefficients");
  const auto& g = *r.algebra();
  const auto n = static_cast<std::size_t>(g.dim());
  RTildeImage out;
  out.r_tilde = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.r_tilde(i, j) = r.full(static_cast<int>(i), static_cast<int>(j)).constant_term();
    }
  }
  // Image is spanned by the rows (the matrix is antisymmetric).
  out.image_basis = row_space_basis(out.r_tilde);
  const std::size_t k = out.image_basis.size();
  for (std::size_t a = 0; a < k && out.closed; ++a) {
    for (std::size_t b = a + 1; b < k && out.closed; ++b) {
      auto v = g.bracket(out.image_basis[a], out.image_basis[b]);
      RationalMatrix m(k + 1, n);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = out.image_basis[i][j];
      }
      for (std::size_t j = 0; j < n; ++j) m(k, j) = v[j];
      if (mat_rank_kernel(m).rank != k) out.closed = false;
    }
  }
  return out;
}

namespace {

int resolve_basis(const std::vector<std::string>& labels, const std::string& tok, int n, std::size_t line_no) {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[static_cast<std::size_t>(i)] == tok) return i;
  }
  if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    int v = std::stoi(tok);
    if (v >= 1 && v <= n) return v - 1;
  }
  throw ParseError("line " + std::to_string(line_no) + ": unknown basis element '" + tok + "'");
}

}  // namespace

LieAlgebraPtr parse_lie_algebra(std::string_view source) {
  int n = -1;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::size_t>> pending;
  std::size_t line_no = 0;
  for (auto raw : text::lines(source)) {
    ++line_no;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    if (text::starts_with_word(line, "dim")) {
      auto w = text::split_ws(line);
      if (w.size() != 2 || n != -1) throw ParseError("line " + std::to_string(line_no) + ": expected 'dim <n>'");
      try {
        n = std::stoi(w[1]);
      } catch (...) {
        throw ParseError("line " + std::to_string(line_no) + ": bad dimension");
      }
      if (n < 1) throw ParseError("line " + std::to_string(line_no) + ": dimension must be positive");
    } else if (text::starts_with_word(line, "basis")) {
      auto w = text::split_ws(line);
      labels.assign(w.begin() + 1, w.end());
    } else if (line.front() == '[') {
      pending.emplace_back(std::string(line), line_no);
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unrecognized line '" + std::string(line) + "'");
    }
  }
  if (n == -1) throw ParseError("missing 'dim' line");
  if (labels.empty()) {
    for (int i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n) throw ParseError("basis has " + std::to_string(labels.size()) +
                                                             " labels but dim is " + std::to_string(n));
  for (const auto& l : labels) {
    if (!is_identifier(l)) throw ParseError("basis label '" + l + "' is not an identifier");
  }
  auto label_ring = exact::Ring::make(labels);
  std::vector<std::vector<BracketTerm>> br(static_cast<std::size_t>(n * n));
  std::vector<bool> given(static_cast<std::size_t>(n * n), false);
  for (const auto& [line, no] : pending) {
    auto close = line.find(']');
    auto eq = line.find('=', close == std::string::npos ? 0 : close);
    if (close == std::string::npos || eq == std::string::npos) {
      throw ParseError("line " + std::to_string(no) + ": expected '[A B] = expr'");
    }
    std::string inside = line.substr(1, close - 1);
    std::replace(inside.begin(), inside.end(), ',', ' ');
    auto w = text::split_ws(inside);
    if (w.size() != 2) throw ParseError("line " + std::to_string(no) + ": bracket needs two basis elements");
    int i = resolve_basis(labels, w[0], n, no);
    int j = resolve_basis(labels, w[1], n, no);
    if (text::trim(std::string_view(line).substr(close + 1, eq - close - 1)).size() != 0) {
      throw ParseError("line " + std::to_string(no) + ": junk before '='");
    }
    exact::Poly rhs;
    try {
      rhs = exact::parse_poly(label_ring, std::string_view(line).substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(no) + ": " + e.what());
    }
    std::vector<BracketTerm> terms;
    for (const auto& [m, c] : rhs.terms()) {
      if (m.degree() != 1) throw ParseError("line " + std::to_string(no) + ": bracket must be linear in the basis");
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v]) terms.push_back({static_cast<int>(v), c});
      }
    }
    normalize(terms);
    auto fwd = static_cast<std::size_t>(i * n + j), bwd = static_cast<std::size_t>(j * n + i);
    if (i == j) {
      if (!terms.empty()) throw ParseError("line " + std::to_string(no) + ": [X, X] must vanish");
      continue;
    }
    std::vector<BracketTerm> neg = terms;
    for (auto& t : neg) t.coeff = -t.coeff;
    if (given[fwd] && !same_terms(br[fwd], terms, 1)) {
      throw ParseError("line " + std::to_string(no) + ": conflicting bracket [" + labels[static_cast<std::size_t>(i)] +
                       " " + labels[static_cast<std::size_t>(j)] + "]");
    }
    br[fwd] = terms;
    br[bwd] = neg;
    given[fwd] = given[bwd] = true;
  }
  return std::make_shared<LieAlgebra>(std::move(labels), std::move(br));
}

std::string format_lie_algebra(const LieAlgebra& g) {
  std::string out = "dim " + std::to_string(g.dim()) + "\nbasis";
  for (const auto& l : g.labels()) out += " " + l;
  out += "\n";
  auto ring = exact::Ring::make(g.labels());
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      const auto& t = g.basis_bracket(i, j);
      if (t.empty()) continue;
      exact::Poly p(ring);
      for (const auto& term : t) p += exact::Poly::variable(ring, static_cast<std::size_t>(term.index)) * term.coeff;
      out += "[" + g.label(i) + " " + g.label(j) + "] = " + p.to_string() + "\n";
    }
  }
  return out;
}

namespace {

exact::Poly parse_coefficient(std::string_view s, std::size_t no) {
  static const auto ring = exact::Ring::make({"alpha"}, {"alpha"});
  exact::Poly p;
  try {
    p = exact::parse_poly(ring, s);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(no) + ": " + e.what());
  }
  if (p.is_constant()) return exact::Poly(p.constant_term());
  return p;
}

RMatrix parse_rmatrix_impl(std::string_view source, LieAlgebraPtr algebra, const std::string& base_dir) {
  std::optional<RMatrix> r;
  if (algebra) r.emplace(algebra);
  std::size_t line_no = 0;
  for (auto raw : text::lines(source)) {
    ++line_no;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    if (text::starts_with_word(line, "algebra")) {
      auto w = text::split_ws(line);
      if (w.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'algebra <name>'");
      if (algebra) continue;
      if (r) throw ParseError("line " + std::to_string(line_no) + ": duplicate 'algebra' line");
      const std::string& name = w[1];
      if (name.size() > 2 && name.substr(0, 2) == "gl" &&
          std::all_of(name.begin() + 2, name.end(), ::isdigit)) {
        r.emplace(gl_basis(std::stoi(name.substr(2))));
      } else {
        std::filesystem::path p(name);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        r.emplace(parse_lie_algebra(text::read_file(p.string())));
      }
      continue;
    }
    if (!r) throw ParseError("line " + std::to_string(line_no) + ": 'algebra' line must come first");
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected 'A B = c'");
    auto w = text::split_ws(line.substr(0, eq));
    if (w.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected two basis elements");
    const auto& g = *r->algebra();
    int i = resolve_basis(g.labels(), w[0], g.dim(), line_no);
    int j = resolve_basis(g.labels(), w[1], g.dim(), line_no);
    if (i == j) throw ParseError("line " + std::to_string(line_no) + ": X ^ X vanishes");
    r->add(i, j, parse_coefficient(line.substr(eq + 1), line_no));
  }
  if (!r) throw ParseError("missing 'algebra' line");
  return *r;
}

}  // namespace

RMatrix parse_rmatrix(std::string_view text, const std::string& base_dir) {
  return parse_rmatrix_impl(text, nullptr, base_dir);
}

RMatrix parse_rmatrix(std::string_view text, const LieAlgebraPtr& algebra) {
  return parse_rmatrix_impl(text, algebra, ".");
}

std::string format_rmatrix(const RMatrix& r) {
  const auto& g = *r.algebra();
  std::string out;
  int n = 0;
  while (n * n < g.dim()) ++n;
  if (n * n == g.dim() && g == *gl_basis(n)) out += "algebra gl" + std::to_string(n) + "\n";
  for (const auto& [k, c] : r.coefficients()) {
    out += g.label(k.first) + " " + g.label(k.second) + " = " + c.to_string() + "\n";
  }
  return out;
}

}  // namespace quadpois::lie
