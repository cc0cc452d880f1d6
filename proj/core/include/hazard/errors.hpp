#pragma once

#include <stdexcept>

namespace hazard {

/// Raised when an exact search exceeds its label limit or wall-clock
/// budget. Searches abort cleanly; no partial results escape.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hazard
