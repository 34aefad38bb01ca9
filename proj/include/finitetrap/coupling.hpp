#ifndef FINITETRAP_COUPLING_HPP
#define FINITETRAP_COUPLING_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "finitetrap/errors.hpp"
#include "finitetrap/kahan.hpp"
#include "finitetrap/laguerre.hpp"
#include "finitetrap/trap.hpp"

namespace finitetrap {

// Bichromatic drive: a carrier (Rabi frequency Omega_0) plus a lower-sideband
// beam (Omega_1). Only the ratio and the Lamb-Dicke parameter eta enter the
// steady state; the raw Rabi frequencies are optional bookkeeping.
class DriveParams {
 public:
  DriveParams(double eta, double rabi_ratio) : eta_(eta), rabi_ratio_(rabi_ratio) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw UsageError("DriveParams: eta must be nonnegative and finite");
    }
    if (!(rabi_ratio >= 0.0) || !std::isfinite(rabi_ratio)) {
      throw UsageError("DriveParams: Rabi ratio must be nonnegative and finite");
    }
  }

  static DriveParams from_rabi(double eta, double omega0, double omega1) {
    if (!(omega1 > 0.0)) throw UsageError("DriveParams: Omega_1 must be positive");
    if (omega0 < 0.0) throw UsageError("DriveParams: Omega_0 must be nonnegative");
    DriveParams out(eta, std::abs(omega0 / omega1));
    out.omega0_ = omega0;
    out.omega1_ = omega1;
    return out;
  }

  double eta() const noexcept { return eta_; }
  double rabi_ratio() const noexcept { return rabi_ratio_; }
  const std::optional<double>& omega0() const noexcept { return omega0_; }
  const std::optional<double>& omega1() const noexcept { return omega1_; }

 private:
  double eta_;
  double rabi_ratio_;
  std::optional<double> omega0_;
  std::optional<double> omega1_;
};

namespace detail {

// Throws if sqrt(gamma)*eta is outside the [0, pi/2) branch; returns it.
inline double branch_argument(double eta, const TrapParams& trap, const char* who) {
  if (eta < 0.0) throw UsageError(std::string(who) + ": eta must be nonnegative");
  const double x = std::sqrt(trap.gamma()) * eta;
  if (!(x < std::numbers::pi / 2.0)) {
    throw BranchError(std::string(who) + ": sqrt(gamma)*eta = " + std::to_string(x) +
                      " reached the tan/cos branch at pi/2");
  }
  return x;
}

// log(cos x) without the catastrophic loss near cos x ~ 1.
inline double log_cos(double x) {
  const double s = std::sin(0.5 * x);
  return std::log1p(-2.0 * s * s);
}

}  // namespace detail

// g(eta) = (i/sqrt(gamma)) tan(sqrt(gamma) eta): purely imaginary, positive
// imaginary part for eta > 0.
inline std::complex<double> g_eta(double eta, const TrapParams& trap) {
  const double x = detail::branch_argument(eta, trap, "g_eta");
  return std::complex<double>(0.0, std::tan(x) / std::sqrt(trap.gamma()));
}

// M(n) = cos(sqrt(gamma) eta)^(2n+1 - beta N), evaluated in log space.
inline double m_factor(int n, double eta, const TrapParams& trap) {
  if (n < 0) throw UsageError("m_factor: n must be nonnegative");
  const double x = detail::branch_argument(eta, trap, "m_factor");
  const double exponent = (2.0 * n + 1.0 - trap.beta_depth()) * detail::log_cos(x);
  return std::exp(exponent);
}

// F_j(n, eta) with its numerical diagnostics. The sum is alternating; a
// result much smaller than its largest term is flagged, not rejected.
struct SidebandWeight {
  double value = 0.0;
  double largest_term = 0.0;
  bool cancellation_warning = false;
};

// The sideband coupling function of the rotating-wave interaction,
//
//   F_j(n, eta) = sum_{l=0}^{n} [g(eta)]^{2l} / (l! (l+j)!)
//                 * f(n)! f(n+j)! / [f(n-l)!]^2 * n!/(n-l)! * M(n-l),
//
// diagonal in the number basis. [g]^{2l} = (-1)^l tan^{2l}(sqrt(gamma) eta) /
// gamma^l is real, so the whole sum is evaluated in real arithmetic. The
// f-factorials only enter through ratios, which removes the f(0)! convention
// from the picture. Factorial ratios are carried as log magnitudes and
// recombined per term; terms are accumulated with compensated summation.
inline SidebandWeight f_j(int j, int n, double eta, const TrapParams& trap) {
  if (j != 0 && j != 1) throw UsageError("f_j: sideband index j must be 0 or 1");
  if (n < 0) throw UsageError("f_j: n must be nonnegative");
  if (n + j > trap.n_max() + 1) {
    throw TruncationError("f_j: n + j = " + std::to_string(n + j) +
                          " beyond n_max + 1 = " + std::to_string(trap.n_max() + 1));
  }
  const double x = detail::branch_argument(eta, trap, "f_j");
  const double t = std::tan(x);
  const double ln_cos = detail::log_cos(x);
  const double beta_depth = trap.beta_depth();

  // ln f^2(k) for k = 1..n+j; DomainError surfaces from deformation_f2 if the
  // deformation leaves validity inside a factorial.
  std::vector<double> ln_f2(static_cast<std::size_t>(n + j) + 1, 0.0);
  for (int k = 1; k <= n + j; ++k) ln_f2[k] = std::log(deformation_f2(k, trap));

  // sum over k = n+1..n+j of ln f^2(k): the part of the f-ratio that does not
  // depend on l.
  const double tail_f = (j == 1) ? ln_f2[n + 1] : 0.0;

  KahanSum sum;
  double largest = 0.0;

  // l = 0: factorial ratios are empty, only M(n) and (for j=1) f(n+1) remain.
  {
    const double log_mag = 0.5 * tail_f + (2.0 * n + 1.0 - beta_depth) * ln_cos;
    const double term = std::exp(log_mag);
    largest = std::abs(term);
    sum.add(term);
  }

  if (t != 0.0) {
    const double ln_t2_over_gamma = std::log(t * t / trap.gamma());
    const double lg_n1 = std::lgamma(n + 1.0);
    double running_f = 0.0;  // sum_{k=n-l+1}^{n} ln f^2(k)
    for (int l = 1; l <= n; ++l) {
      running_f += ln_f2[n - l + 1];
      const double log_mag = l * ln_t2_over_gamma                       // [g]^{2l} magnitude
                             - std::lgamma(l + 1.0)                     // 1/l!
                             - std::lgamma(l + j + 1.0)                 // 1/(l+j)!
                             + running_f + 0.5 * tail_f                 // f-factorial ratios
                             + lg_n1 - std::lgamma(n - l + 1.0)         // n!/(n-l)!
                             + (2.0 * (n - l) + 1.0 - beta_depth) * ln_cos;  // M(n-l)
      const double term = (l % 2 == 0 ? 1.0 : -1.0) * std::exp(log_mag);
      largest = std::max(largest, std::abs(term));
      sum.add(term);
    }
  }

  SidebandWeight out;
  out.value = sum.value();
  out.largest_term = largest;
  out.cancellation_warning = std::abs(out.value) < 1e-10 * largest;
  return out;
}

// Steady-state deformation h(n) = F_1(n-1, eta) / F_0(n-1, eta).
inline double h_n(int n, double eta, const TrapParams& trap) {
  if (n < 1) throw UsageError("h_n: n must be at least 1");
  const double f1 = f_j(1, n - 1, eta, trap).value;
  const double f0 = f_j(0, n - 1, eta, trap).value;
  if (std::abs(f0) < 1e-12 * std::abs(f1)) {
    throw SingularDenominator("h_n: F_0(" + std::to_string(n - 1) + ") below denominator floor");
  }
  return f1 / f0;
}

// Harmonic-trap counterpart of h(n): L_{n-1}^1(eta^2) / (n L_{n-1}^0(eta^2)).
// Exists as an independent cross-check oracle for the N -> infinity limit.
inline double laguerre_h(int n, double eta) {
  if (n < 1) throw UsageError("laguerre_h: n must be at least 1");
  const double x = eta * eta;
  const double l1 = assoc_laguerre(n - 1, 1, x);
  const double l0 = assoc_laguerre(n - 1, 0, x);
  if (std::abs(n * l0) < 1e-12 * std::abs(l1)) {
    throw SingularDenominator("laguerre_h: L_{n-1}^0 vanished");
  }
  return l1 / (n * l0);
}

}  // namespace finitetrap

#endif  // FINITETRAP_COUPLING_HPP
