#pragma once

#include <string_view>

namespace quadpois::cert {

// Text of fixtures/counterexample.script, embedded at build time.
std::string_view builtin_counterexample_script();

}  // namespace quadpois::cert
