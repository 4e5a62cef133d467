#include "certify/script.hpp"

#include "common/text.hpp"

#include <optional>
#include <set>
#include <sstream>

namespace quadpois::cert {

InvalidStep::InvalidStep(int line, std::string reason)
    : Error("invalid step at line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}

namespace {

struct Line {
  int number;
  std::size_t indent;
  std::string body;
};

[[noreturn]] void parse_fail(const Line& l, const std::string& what) {
  throw ParseError("script line " + std::to_string(l.number) + ": " + what);
}

// Splits at top-level '+' / '-' (outside brackets and parentheses), keeping
// the sign with each piece.
std::vector<std::string> split_terms(const Line& l, std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth < 0) parse_fail(l, "unbalanced brackets");
    if (depth == 0 && (ch == '+' || ch == '-')) {
      if (!std::string(text::trim(cur)).empty()) out.emplace_back(text::trim(cur));
      cur = ch;
      continue;
    }
    cur += ch;
  }
  if (depth != 0) parse_fail(l, "unbalanced brackets");
  if (!std::string(text::trim(cur)).empty()) out.emplace_back(text::trim(cur));
  return out;
}

std::pair<std::string, std::string> parse_term(const Line& l, std::string term) {
  std::string sign;
  if (term[0] == '+' || term[0] == '-') {
    sign = term[0] == '-' ? "-" : "";
    term = std::string(text::trim(std::string_view(term).substr(1)));
  }
  std::string weight = "1";
  if (!term.empty() && term[0] == '[') {
    auto close = term.find(']');
    if (close == std::string::npos || close + 1 >= term.size() || term[close + 1] != '*') {
      parse_fail(l, "weight must read [w]*source");
    }
    weight = term.substr(1, close - 1);
    term = std::string(text::trim(std::string_view(term).substr(close + 2)));
  }
  if (term.empty()) parse_fail(l, "missing source in combination");
  return {sign.empty() ? weight : "-(" + weight + ")", term};
}

std::pair<std::string, std::string> split_assignment(const Line& l, std::string_view s) {
  auto eq = s.find('=');
  if (eq == std::string_view::npos) parse_fail(l, "expected VAR = VALUE");
  std::string var(text::trim(s.substr(0, eq)));
  std::string value(text::trim(s.substr(eq + 1)));
  if (var.empty() || value.empty() || var.find_first_of(" \t") != std::string::npos) parse_fail(l, "bad assignment");
  return {var, value};
}

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) {
    int number = 0;
    for (auto raw : text::lines(text)) {
      ++number;
      auto body = text::trim(text::strip_comment(raw));
      if (body.empty()) continue;
      lines_.push_back({number, text::indentation(raw), std::string(body)});
    }
  }

  std::vector<ScriptStep> parse() {
    auto out = block(lines_.empty() ? 0 : lines_[0].indent);
    if (pos_ != lines_.size()) parse_fail(lines_[pos_], "unexpected indentation");
    return out;
  }

 private:
  std::vector<ScriptStep> block(std::size_t indent) {
    std::vector<ScriptStep> out;
    while (pos_ < lines_.size() && lines_[pos_].indent == indent) {
      const Line l = lines_[pos_];
      if (text::starts_with_word(l.body, "BRANCH")) break;
      ++pos_;
      out.push_back(step(l));
      if (out.back().kind == StepKind::Split) branches(l, out.back());
    }
    if (pos_ < lines_.size() && lines_[pos_].indent > indent) parse_fail(lines_[pos_], "unexpected indentation");
    return out;
  }

  void branches(const Line& head, ScriptStep& s) {
    bool seen_zero = false, seen_nonzero = false;
    for (int k = 0; k < 2; ++k) {
      if (pos_ >= lines_.size() || lines_[pos_].indent <= head.indent) parse_fail(head, "split needs two branches");
      const Line b = lines_[pos_];
      auto words = text::split_ws(b.body);
      if (words.size() != 2 || words[0] != "BRANCH") parse_fail(b, "expected BRANCH zero or BRANCH nonzero");
      ++pos_;
      if (pos_ >= lines_.size() || lines_[pos_].indent <= b.indent) parse_fail(b, "empty branch");
      auto body = block(lines_[pos_].indent);
      if (words[1] == "zero" && !seen_zero) {
        seen_zero = true;
        s.zero_branch = std::move(body);
      } else if (words[1] == "nonzero" && !seen_nonzero) {
        seen_nonzero = true;
        s.nonzero_branch = std::move(body);
      } else {
        parse_fail(b, "expected one zero and one nonzero branch");
      }
      if (pos_ < lines_.size() && lines_[pos_].indent != b.indent && lines_[pos_].indent > head.indent) {
        parse_fail(lines_[pos_], "unexpected indentation");
      }
    }
  }

  ScriptStep step(const Line& l) {
    auto words = text::split_ws(l.body);
    if (words.size() < 2 || words[0] != "STEP") parse_fail(l, "expected STEP <kind> <args>");
    ScriptStep s;
    s.line = l.number;
    s.text = l.body;
    const std::string& kind = words[1];
    std::string_view rest = l.body;
    rest = text::trim(rest.substr(rest.find(kind) + kind.size()));
    if (kind == "combine") {
      s.kind = StepKind::Combine;
      auto ex = rest.find(" expect ");
      if (ex == std::string_view::npos) parse_fail(l, "combine needs 'expect'");
      auto [name, sum] = split_assignment(l, rest.substr(0, ex));
      s.name = name;
      for (auto& t : split_terms(l, sum)) s.terms.push_back(parse_term(l, t));
      if (s.terms.empty()) parse_fail(l, "empty combination");
      s.expect = std::string(text::trim(rest.substr(ex + 8)));
      if (s.expect.empty()) parse_fail(l, "missing expected polynomial");
    } else if (kind == "subst") {
      s.kind = StepKind::Substitute;
      auto from = rest.rfind(" from ");
      if (from == std::string_view::npos) parse_fail(l, "subst needs 'from SOURCE'");
      std::tie(s.var, s.value) = split_assignment(l, rest.substr(0, from));
      s.source = std::string(text::trim(rest.substr(from + 6)));
    } else if (kind == "conclude") {
      s.kind = StepKind::Conclude;
      auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) parse_fail(l, "conclude needs SOURCE VAR = VALUE");
      s.source = std::string(rest.substr(0, sp));
      std::tie(s.var, s.value) = split_assignment(l, rest.substr(sp));
    } else if (kind == "cases" || kind == "split") {
      s.kind = StepKind::Split;
      s.counts_case = kind == "cases";
      if (words.size() != 3) parse_fail(l, kind + " takes one variable");
      s.var = words[2];
    } else if (kind == "contradiction") {
      s.kind = StepKind::Contradiction;
      if (words.size() != 3) parse_fail(l, "contradiction takes one source");
      s.source = words[2];
    } else {
      parse_fail(l, "unknown step kind '" + kind + "'");
    }
    if (s.kind != StepKind::Split && s.kind != StepKind::Combine && s.source.empty()) parse_fail(l, "missing source");
    return s;
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

struct BranchState {
  std::map<std::size_t, Poly> subs;
  std::set<std::size_t> nonzero;
  std::map<std::string, Poly> derived;
  std::string path;
};

class Replayer {
 public:
  Replayer(const PolySystem& sys, Certificate& cert) : sys_(sys), ring_(sys.ring), cert_(cert) {}

  void run(const std::vector<ScriptStep>& steps, BranchState st, bool in_case_tree) {
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const auto& s = steps[k];
      const bool last = k + 1 == steps.size();
      switch (s.kind) {
        case StepKind::Combine: combine(s, st); break;
        case StepKind::Substitute: substitute(s, st); break;
        case StepKind::Conclude: conclude(s, st); break;
        case StepKind::Contradiction:
          contradiction(s, st);
          if (!last) throw InvalidStep(steps[k + 1].line, "step after a contradiction");
          if (in_case_tree) ++cert_.cases;
          ++cert_.leaves;
          return;
        case StepKind::Split:
          if (!last) throw InvalidStep(steps[k + 1].line, "step after a split");
          if (in_case_tree && !s.counts_case) ++cert_.cases;
          split(s, st, in_case_tree);
          return;
      }
    }
    throw InvalidStep(steps.empty() ? 0 : steps.back().line, "branch ends without a contradiction");
  }

 private:
  std::size_t variable(const ScriptStep& s, const std::string& name) const {
    auto idx = ring_->index_of(name);
    if (!idx) throw InvalidStep(s.line, "unknown variable '" + name + "'");
    return *idx;
  }

  Poly parse(const ScriptStep& s, const std::string& text) const {
    try {
      return exact::parse_poly(ring_, text).embed(ring_);
    } catch (const ParseError& e) {
      throw InvalidStep(s.line, std::string("bad polynomial: ") + e.what());
    }
  }

  Poly reduce(const Poly& p, const BranchState& st) const {
    return st.subs.empty() ? p.embed(ring_) : p.embed(ring_).substitute(st.subs);
  }

  Poly source(const ScriptStep& s, const std::string& name, const BranchState& st) const {
    if (!name.empty() && name[0] == '(') {
      std::array<int, 3> label{};
      char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
      std::istringstream is(name);
      if (!(is >> c1 >> label[0] >> c2 >> label[1] >> c3 >> label[2] >> c4) || c1 != '(' || c2 != ',' || c3 != ',' ||
          c4 != ')') {
        throw InvalidStep(s.line, "bad label '" + name + "'");
      }
      const auto* eq = sys_.find(label);
      if (!eq) throw InvalidStep(s.line, "no equation labeled " + name);
      return reduce(eq->poly, st);
    }
    auto it = st.derived.find(name);
    if (it == st.derived.end()) throw InvalidStep(s.line, "no derived equation named '" + name + "'");
    return reduce(it->second, st);
  }

  bool invertible_monomial(const Poly& p, const BranchState& st) const {
    if (p.size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    if (c == 0) return false;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != 0 && !ring_->is_invertible(v) && !st.nonzero.count(v)) return false;
    }
    return true;
  }

  void log(const ScriptStep& s, const BranchState& st, const std::string& what) {
    cert_.log.push_back("line " + std::to_string(s.line) + " [" + (st.path.empty() ? "root" : st.path) + "] " + what);
  }

  void assign(const ScriptStep& s, BranchState& st, std::size_t var, const Poly& value) {
    if (st.nonzero.count(var) && value.is_zero()) throw InvalidStep(s.line, ring_->name(var) + " is assumed nonzero");
    if (value.contains_variable(var)) throw InvalidStep(s.line, "value contains " + ring_->name(var));
    std::map<std::size_t, Poly> one{{var, value}};
    for (auto& [k, v] : st.subs) v = v.substitute(one);
    st.subs.emplace(var, value);
  }

  void combine(const ScriptStep& s, BranchState& st) {
    if (st.derived.count(s.name) || s.name[0] == '(') throw InvalidStep(s.line, "name '" + s.name + "' is taken");
    Poly sum(ring_);
    for (const auto& [w, src] : s.terms) sum += reduce(parse(s, w), st) * source(s, src, st);
    sum = reduce(sum, st);
    Poly expect = reduce(parse(s, s.expect), st);
    if (sum != expect) {
      throw InvalidStep(s.line, "combination gives " + sum.to_string() + ", expected " + expect.to_string());
    }
    st.derived.emplace(s.name, sum);
    log(s, st, s.name + " := " + sum.to_string());
  }

  void substitute(const ScriptStep& s, BranchState& st) {
    const auto var = variable(s, s.var);
    if (st.subs.count(var)) throw InvalidStep(s.line, s.var + " is already eliminated");
    Poly value = reduce(parse(s, s.value), st);
    Poly e = source(s, s.source, st);
    if (e.degree_in(var) != 1) throw InvalidStep(s.line, s.source + " is not linear in " + s.var);
    Poly c = e.coefficient_in(var, 1);
    if (!c.is_constant() || c.is_zero()) throw InvalidStep(s.line, "coefficient of " + s.var + " is not a constant");
    Poly target = c * (Poly::variable(ring_, var) - value);
    if (e != target) throw InvalidStep(s.line, s.source + " reduces to " + e.to_string() + ", not a multiple of " + s.var + " - (" + value.to_string() + ")");
    assign(s, st, var, value);
    log(s, st, s.source + " => " + s.var + " = " + value.to_string());
  }

  void conclude(const ScriptStep& s, BranchState& st) {
    const auto var = variable(s, s.var);
    if (st.subs.count(var)) throw InvalidStep(s.line, s.var + " is already eliminated");
    Poly value = reduce(parse(s, s.value), st);
    Poly e = source(s, s.source, st);
    const unsigned k = e.degree_in(var);
    if (k == 0) throw InvalidStep(s.line, s.source + " reduces to " + e.to_string() + ", free of " + s.var);
    Poly u = e.coefficient_in(var, k);
    if (!invertible_monomial(u, st)) throw InvalidStep(s.line, "leading factor " + u.to_string() + " is not invertible");
    Poly target = u * (Poly::variable(ring_, var) - value).pow(k);
    if (e != target) {
      throw InvalidStep(s.line, s.source + " reduces to " + e.to_string() + ", not " + target.to_string());
    }
    assign(s, st, var, value);
    log(s, st, s.source + ": " + e.to_string() + " = 0 => " + s.var + " = " + value.to_string());
  }

  void contradiction(const ScriptStep& s, const BranchState& st) {
    Poly e = source(s, s.source, st);
    if (!invertible_monomial(e, st)) {
      throw InvalidStep(s.line, s.source + " reduces to " + (e.is_zero() ? std::string("0") : e.to_string()) +
                                    ", not an invertible element");
    }
    log(s, st, s.source + ": " + e.to_string() + " = 0, contradiction");
  }

  void split(const ScriptStep& s, const BranchState& st, bool in_case_tree) {
    const auto var = variable(s, s.var);
    if (st.subs.count(var)) throw InvalidStep(s.line, s.var + " is already eliminated");
    if (st.nonzero.count(var) || ring_->is_invertible(var)) throw InvalidStep(s.line, s.var + " is already nonzero");
    const bool cases = in_case_tree && s.counts_case;
    if (s.counts_case && !in_case_tree) throw InvalidStep(s.line, "case split inside a subcase");
    auto prefix = st.path.empty() ? std::string() : st.path + "; ";
    BranchState zero = st;
    zero.path = prefix + s.var + " = 0";
    assign(s, zero, var, Poly(ring_));
    log(s, st, "split on " + s.var);
    run(s.zero_branch, std::move(zero), cases);
    BranchState nonzero = st;
    nonzero.path = prefix + s.var + " != 0";
    nonzero.nonzero.insert(var);
    run(s.nonzero_branch, std::move(nonzero), cases);
  }

  const PolySystem& sys_;
  RingPtr ring_;
  Certificate& cert_;
};

}  // namespace

CaseScript CaseScript::parse(std::string_view text) {
  CaseScript s;
  s.steps = ScriptParser(text).parse();
  if (s.steps.empty()) throw ParseError("empty script");
  return s;
}

Certificate case_certify(const PolySystem& sys, const CaseScript& script,
                         const std::map<std::string, Rational>& specialization) {
  if (!sys.ring) throw InvalidArgument("system has no ring");
  Certificate cert;
  BranchState root;
  for (const auto& [name, value] : specialization) {
    auto idx = sys.ring->index_of(name);
    if (!idx) throw InvalidArgument("unknown variable '" + name + "' in specialization");
    if (value == 0 && sys.ring->is_invertible(*idx)) {
      throw PreconditionError(name + " is invertible and cannot be specialized to 0");
    }
    root.subs.emplace(*idx, Poly(sys.ring, value));
    cert.log.push_back("specialize " + name + " = " + value.get_str());
  }
  Replayer(sys, cert).run(script.steps, std::move(root), true);
  cert.valid = true;
  cert.summary = "VALID (" + std::to_string(cert.cases) + (cert.cases == 1 ? " case" : " cases") +
                 ", all leaves contradiction)";
  return cert;
}

}  // namespace quadpois::cert
