#pragma once

#include <stdexcept>
#include <string>

namespace gmmlab {

/// Malformed input: non-finite entries, mismatched lengths, out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is well formed but the statistic is undefined on it (e.g. 0/0 in GMM).
class DegenerateInputError : public std::domain_error {
 public:
  explicit DegenerateInputError(const std::string& what) : std::domain_error(what) {}
};

/// The requested asymptotic result does not hold for this mixing law.
class RegimeError : public std::domain_error {
 public:
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace gmmlab
