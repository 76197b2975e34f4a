#pragma once

#include <string>

namespace flagspec {

/// Outcome of an exact identity check; `witness` localises the first failure.
struct CheckResult {
  bool pass = true;
  std::string witness;
};

}  // namespace flagspec
