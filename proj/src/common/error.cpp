#include "common/error.hpp"

namespace quadpois {

namespace {

std::string describe(const std::vector<std::array<int, 3>>& triples) {
  std::string s = "cocycle condition fails on basis triples";
  for (const auto& t : triples) {
    s += " (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
  }
  return s;
}

}  // namespace

CocycleViolation::CocycleViolation(std::vector<std::array<int, 3>> triples)
    : Error(describe(triples)), triples_(std::move(triples)) {}

}  // namespace quadpois
