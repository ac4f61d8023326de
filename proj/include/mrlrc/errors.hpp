#pragma once

#include <stdexcept>
#include <string>

namespace mrlrc {

/// A caller violated an operation's precondition (bad parameters, level
/// mismatch, inversion of zero, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A text artifact (tower line, matrix, SDSS, MR file) could not be parsed.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed: two independent computations disagree, or a
/// construction produced an object that violates its own guarantee.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mrlrc
