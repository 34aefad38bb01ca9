#ifndef FINITETRAP_TRAP_HPP
#define FINITETRAP_TRAP_HPP

#include <cmath>
#include <optional>
#include <string>

#include "finitetrap/errors.hpp"

namespace finitetrap {

// Reduced Planck constant, J s (CODATA 2018 exact value).
inline constexpr double kHBar = 1.054571817e-34;

// Largest bound-level index for a given s. Bound levels need n strictly
// below s, so an exactly integral s steps down to s-1.
inline int truncation_level_from_s(double s) {
  if (s < 0.0) throw UsageError("truncation level: s must be nonnegative");
  const double fl = std::floor(s);
  int level = static_cast<int>(fl);
  if (s == fl) level -= 1;
  return level < 0 ? 0 : level;
}

// Dimensionless description of the finite-range (tanh^2-shaped) trap.
//
// Everything downstream works in units hbar = omega = 1 and is driven by the
// single dimensionless depth N = 4D/(hbar omega) = 2 m omega delta^2 / hbar.
// Derived quantities:
//   beta  = sqrt(1 + 1/N^2)
//   gamma = 1/N
//   s     = (sqrt(1 + N^2) - 1)/2      (bound spectrum runs over n = 0..[s])
//   n_max = truncation level, strictly below s
// The harmonic oscillator is the N -> infinity limit.
class TrapParams {
 public:
  struct Physical {
    double mass;        // kg
    double omega;       // rad/s
    double range;       // m
    double well_depth;  // J
  };

  explicit TrapParams(double depth) { init(depth); }

  // Lab-frame inputs; only used to form N at this boundary. If well_depth is
  // supplied it must agree with (1/2) m omega^2 delta^2 to relative 1e-12.
  static TrapParams from_physical(double mass, double omega, double range,
                                  std::optional<double> well_depth = std::nullopt) {
    if (!(mass > 0.0) || !(omega > 0.0) || !(range > 0.0)) {
      throw UsageError("TrapParams: physical inputs must be positive");
    }
    const double derived_depth_j = 0.5 * mass * omega * omega * range * range;
    double depth_j = derived_depth_j;
    if (well_depth) {
      depth_j = *well_depth;
      if (std::abs(depth_j - derived_depth_j) > 1e-12 * derived_depth_j) {
        throw DomainError("TrapParams: well depth inconsistent with (1/2) m omega^2 delta^2");
      }
    }
    const double n_from_geometry = 2.0 * mass * omega * range * range / kHBar;
    const double n_from_depth = 4.0 * depth_j / (kHBar * omega);
    if (std::abs(n_from_geometry - n_from_depth) > 1e-12 * n_from_geometry) {
      throw DomainError("TrapParams: N from geometry and from well depth disagree");
    }
    TrapParams out(n_from_geometry);
    out.physical_ = Physical{mass, omega, range, depth_j};
    return out;
  }

  double depth() const noexcept { return depth_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double s() const noexcept { return s_; }
  int n_max() const noexcept { return n_max_; }

  // beta * N evaluated as hypot(N, 1); used where the product enters an
  // exponent and large N would shred beta's sub-ulp deviation from 1.
  double beta_depth() const noexcept { return beta_depth_; }

  // A trap with a single bound level still constructs but supports none of
  // the driven-state machinery; callers may want to warn.
  bool shallow() const noexcept { return n_max_ == 0; }

  const std::optional<Physical>& physical() const noexcept { return physical_; }

 private:
  void init(double depth) {
    if (!(depth > 0.0) || !std::isfinite(depth)) {
      throw UsageError("TrapParams: depth N must be positive and finite");
    }
    depth_ = depth;
    gamma_ = 1.0 / depth;
    beta_ = std::hypot(1.0, gamma_);
    beta_depth_ = std::hypot(depth, 1.0);
    s_ = 0.5 * (beta_depth_ - 1.0);
    n_max_ = truncation_level_from_s(s_);
  }

  double depth_ = 0.0;
  double beta_ = 0.0;
  double gamma_ = 0.0;
  double beta_depth_ = 0.0;
  double s_ = 0.0;
  int n_max_ = 0;
  std::optional<Physical> physical_;
};

// f^2(n) = sqrt(1 + 1/N^2) - n/N, the deformation that reproduces the
// trap's bound spectrum. Valid through n_max + 2: the interaction-picture
// transition frequency samples two levels above the top bound state.
inline double deformation_f2(int n, const TrapParams& trap) {
  if (n < 0) throw UsageError("deformation_f2: n must be nonnegative");
  if (n > trap.n_max() + 2) {
    throw TruncationError("deformation_f2: n = " + std::to_string(n) +
                          " beyond validity range n_max + 2 = " + std::to_string(trap.n_max() + 2));
  }
  const double value = trap.beta() - n * trap.gamma();
  if (value <= 0.0) {
    throw DomainError("deformation_f2: f^2(" + std::to_string(n) + ") <= 0");
  }
  return value;
}

inline double deformation_f(int n, const TrapParams& trap) {
  return std::sqrt(deformation_f2(n, trap));
}

// Level energy from the deformed-oscillator Hamiltonian,
// E_n = [(n+1) f^2(n+1) + n f^2(n)] / 2, in units of hbar omega.
inline double energy_deformed(int n, const TrapParams& trap) {
  if (n < 0) throw UsageError("energy_deformed: n must be nonnegative");
  if (n > trap.n_max()) {
    throw TruncationError("energy_deformed: n beyond bound spectrum (n_max = " +
                          std::to_string(trap.n_max()) + ")");
  }
  return 0.5 * ((n + 1.0) * deformation_f2(n + 1, trap) + n * deformation_f2(n, trap));
}

// Same level energy straight from the bound-spectrum formula,
// E_n = -n^2/N + (beta - 1/N) n + (beta - 1/N)/2. Kept as an independent
// algebraic route; the two must agree to roundoff.
inline double energy_mpt(int n, const TrapParams& trap) {
  if (n < 0) throw UsageError("energy_mpt: n must be nonnegative");
  if (n > trap.n_max()) {
    throw TruncationError("energy_mpt: n beyond bound spectrum (n_max = " +
                          std::to_string(trap.n_max()) + ")");
  }
  const double bg = trap.beta() - trap.gamma();
  return -static_cast<double>(n) * n * trap.gamma() + bg * n + 0.5 * bg;
}

// nu_n = [(n+2) f^2(n+2) - n f^2(n)] / 2 in units of omega; equals the level
// spacing energy_deformed(n+1) - energy_deformed(n).
inline double transition_frequency(int n, const TrapParams& trap) {
  if (n < 0) throw UsageError("transition_frequency: n must be nonnegative");
  return 0.5 * ((n + 2.0) * deformation_f2(n + 2, trap) - n * deformation_f2(n, trap));
}

}  // namespace finitetrap

#endif  // FINITETRAP_TRAP_HPP
