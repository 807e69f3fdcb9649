#pragma once

#include <stdexcept>
#include <string>

namespace sforge {

/// Raised when user-supplied data (files, CLI arguments, query parameters)
/// fails validation.  CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a pluggable component (oracle, separator provider, minor
/// provider) returns an answer that violates its documented contract.
class contract_violation : public std::runtime_error {
 public:
  explicit contract_violation(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal invariant that the construction is supposed to
/// maintain fails at runtime.  Always a bug or a falsified precondition,
/// never a recoverable condition.
class invariant_violation : public std::runtime_error {
 public:
  explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

/// Relative tolerance used by every floating point comparison in the
/// library.  Distances are sums of at most O(n) doubles, so 1e-9 leaves
/// three orders of magnitude of headroom over accumulated rounding.
inline constexpr double kRelTol = 1e-9;

/// a <= b up to relative tolerance.
inline bool leq_tol(double a, double b, double tol = kRelTol) {
  return a <= b + tol * (b < 0 ? -b : b) + tol;
}

/// |a - b| within relative tolerance of max(|a|, |b|, 1).
inline bool close_tol(double a, double b, double tol = kRelTol) {
  double m = (a < 0 ? -a : a);
  double mb = (b < 0 ? -b : b);
  if (mb > m) m = mb;
  if (m < 1.0) m = 1.0;
  double d = a - b;
  if (d < 0) d = -d;
  return d <= tol * m;
}

}  // namespace sforge
