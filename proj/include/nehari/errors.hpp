#ifndef NEHARI_ERRORS_HPP
#define NEHARI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nehari {

/// Invalid input, violated invariant or malformed configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A requested accuracy cannot be met with the given truncation.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its budget before meeting its stopping rule.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Gram matrix is too ill conditioned for a generalized eigenproblem.
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace nehari

#endif
