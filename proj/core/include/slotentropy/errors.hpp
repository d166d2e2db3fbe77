#pragma once

#include <stdexcept>
#include <string>

namespace slotentropy {

// Error families map onto CLI exit codes: ConfigError -> 1,
// EmptyAnalysisError -> 2, InvariantError -> 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyAnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace slotentropy
