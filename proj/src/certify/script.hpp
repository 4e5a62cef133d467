#pragma once

#include "certify/constraints.hpp"
#include "common/error.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace quadpois::cert {

// A script step that does not re-verify. line is the 1-based script line.
class InvalidStep : public Error {
 public:
  InvalidStep(int line, std::string reason);
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

enum class StepKind { Combine, Substitute, Conclude, Split, Contradiction };

// One script line. Polynomials are kept as text and parsed against the
// system's ring at replay time.
struct ScriptStep {
  StepKind kind = StepKind::Combine;
  int line = 0;
  std::string text;
  // Combine: name = sum weight * source, expect.
  std::string name;
  std::vector<std::pair<std::string, std::string>> terms;  // (weight, source)
  std::string expect;
  // Substitute / Conclude / Split: variable and value; source is the label.
  std::string var;
  std::string value;
  std::string source;
  // Split: counts_case marks a top-level case distinction ("cases").
  bool counts_case = false;
  std::vector<ScriptStep> zero_branch;
  std::vector<ScriptStep> nonzero_branch;
};

// Step grammar, one per line, nesting by indentation ('#' starts a comment):
//   STEP combine NAME = [w]*(x,y,z) + (x,y,z) - [w]*NAME expect POLY
//   STEP subst VAR = POLY from SOURCE
//   STEP conclude SOURCE VAR = POLY
//   STEP cases VAR | STEP split VAR, followed by indented
//     BRANCH zero / BRANCH nonzero blocks
//   STEP contradiction SOURCE
// SOURCE is a label (x,y,z) or a combine name. ParseError on bad syntax.
struct CaseScript {
  std::vector<ScriptStep> steps;
  static CaseScript parse(std::string_view text);
};

struct Certificate {
  bool valid = false;
  int cases = 0;   // leaves of the tree of "cases" splits
  int leaves = 0;  // contradiction steps
  std::vector<std::string> log;
  std::string summary;  // "VALID (4 cases, all leaves contradiction)"
};

// Replays script on sys. specialization fixes variables to rational values
// before the first step (PreconditionError if an invertible variable is set
// to zero). Throws InvalidStep at the first step that fails to verify.
Certificate case_certify(const PolySystem& sys, const CaseScript& script,
                         const std::map<std::string, Rational>& specialization = {});

}  // namespace quadpois::cert
