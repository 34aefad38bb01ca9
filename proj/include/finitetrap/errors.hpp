#ifndef FINITETRAP_ERRORS_HPP
#define FINITETRAP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace finitetrap {

// Base class for all library errors. `name()` is stable and machine-readable;
// the CLI puts it in front of the message so scripts can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// A quantity left the validity range of the deformation (f^2 <= 0).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

// A level index beyond the bound spectrum (n > n_max, dim > n_max+1).
struct TruncationError : Error {
  explicit TruncationError(const std::string& what) : Error("TruncationError", what) {}
};

// tan/cos branch violation: sqrt(gamma)*eta reached pi/2.
struct BranchError : Error {
  explicit BranchError(const std::string& what) : Error("BranchError", what) {}
};

// A denominator fell below its floor (F0 ratio, Laguerre zero, eta = 0 in chi).
struct SingularDenominator : Error {
  explicit SingularDenominator(const std::string& what) : Error("SingularDenominator", what) {}
};

// Caller broke an interface contract (mismatched dimensions, bad argument).
struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error("UsageError", what) {}
};

}  // namespace finitetrap

#endif  // FINITETRAP_ERRORS_HPP
