#pragma once

#include <stdexcept>
#include <string>

namespace etaq {

// Input that cannot be interpreted: bad polynomial/complex text, bad config.
// pos is a 0-based character offset into the offending token when known.
struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg), pos(position) {}
};

// Evaluation request at (or numerically on top of) a pole of a closed form.
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refusal of an exponential-cost direct summation beyond the configured cap.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain violation: zero modulus, non-square-free input, mismatched levels...
// Distinct from ParseError so the library can be used without the CLI.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency failure that signals a computation bug (for example a
// character sum that should be a rational integer but is not).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace etaq
