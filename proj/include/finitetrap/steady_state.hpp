#ifndef FINITETRAP_STEADY_STATE_HPP
#define FINITETRAP_STEADY_STATE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finitetrap/coupling.hpp"
#include "finitetrap/errors.hpp"
#include "finitetrap/kahan.hpp"
#include "finitetrap/trap.hpp"

namespace finitetrap {

// Normalized motional state in the truncated Fock basis, plus the
// diagnostics of the recursion that built it.
struct MotionalState {
  std::vector<std::complex<double>> amps;

  std::optional<TrapParams> trap;
  std::optional<DriveParams> drive;
  bool terminated_early = false;
  std::string termination_reason;

  // ||(a h(n) - chi) psi|| over components 0..dim-2; the top component is a
  // truncation artifact and is reported separately as edge_leakage = |chi c_top|.
  double recursion_residual = 0.0;
  double edge_leakage = 0.0;

  int dim() const noexcept { return static_cast<int>(amps.size()); }

  double norm() const {
    KahanSum acc;
    for (const auto& c : amps) acc.add(std::norm(c));
    return std::sqrt(acc.value());
  }

  double top_population() const { return amps.empty() ? 0.0 : std::norm(amps.back()); }

  // Population piled up at the truncation edge. Such a state is still
  // normalized and stationary on the interior, but its shape is set by the
  // finite basis as much as by the drive.
  bool truncation_dominated() const { return top_population() >= 0.05; }
};

inline double fidelity(const MotionalState& a, const MotionalState& b) {
  const std::size_t n = std::min(a.amps.size(), b.amps.size());
  std::complex<double> overlap{};
  for (std::size_t k = 0; k < n; ++k) overlap += std::conj(a.amps[k]) * b.amps[k];
  return std::norm(overlap);
}

// chi = -(Omega_0/Omega_1) / g(eta): the eigenvalue selected by the drive,
// purely imaginary with positive imaginary part for a positive Rabi ratio.
inline std::complex<double> chi_of(const DriveParams& drive, const TrapParams& trap) {
  if (drive.eta() == 0.0) {
    throw SingularDenominator("chi_of: eta = 0 gives no sideband coupling (g = 0)");
  }
  return -std::complex<double>(drive.rabi_ratio(), 0.0) / g_eta(drive.eta(), trap);
}

namespace detail {

inline void rescale_if_needed(std::vector<std::complex<double>>& amps, int upto) {
  double peak = 0.0;
  for (int k = 0; k <= upto; ++k) peak = std::max(peak, std::abs(amps[k]));
  if (peak > 1e150) {
    for (int k = 0; k <= upto; ++k) amps[k] /= peak;
  }
}

inline void normalize(std::vector<std::complex<double>>& amps) {
  KahanSum acc;
  for (const auto& c : amps) acc.add(std::norm(c));
  const double nrm = std::sqrt(acc.value());
  for (auto& c : amps) c /= nrm;  // nonzero: c_0 seeds the recursion
}

}  // namespace detail

// Solves a h(n) |psi> = chi |psi> by coefficient recursion,
// c_{n+1} = chi c_n / (sqrt(n+1) h(n+1)), seeded c_0 = 1 and normalized.
//
// max_dim = 0 chooses the workspace automatically: the full bound spectrum
// when it is small, otherwise enough levels that the occupied tail is
// negligible (the amplitudes decay at least like a coherent state's).
inline MotionalState solve_steady_state(const TrapParams& trap, const DriveParams& drive,
                                        std::optional<std::complex<double>> chi_override = std::nullopt,
                                        int max_dim = 0) {
  if (trap.n_max() < 1) {
    throw UsageError("solve_steady_state: trap holds a single bound level (n_max = 0)");
  }
  const std::complex<double> chi = chi_override ? *chi_override : chi_of(drive, trap);

  int dim = trap.n_max() + 1;
  std::string cap_reason;
  {
    const double mag = std::abs(chi);
    const int needed = static_cast<int>(std::ceil(mag * mag + 10.0 * mag + 40.0));
    const int cap = std::clamp(max_dim > 0 ? max_dim : std::max(needed, 64), 2, 4096);
    if (cap < dim) {
      dim = cap;
      cap_reason = "workspace cap at dim = " + std::to_string(dim) + " (n_max = " +
                   std::to_string(trap.n_max()) + ")";
    }
  }

  MotionalState state;
  state.trap = trap;
  state.drive = drive;
  state.amps.assign(dim, std::complex<double>{});
  state.amps[0] = 1.0;

  std::vector<double> h_values(dim, 0.0);  // h_values[k] = h(k), k >= 1
  int filled = 1;
  for (int n = 0; n + 1 < dim; ++n) {
    double h;
    try {
      h = h_n(n + 1, drive.eta(), trap);
    } catch (const SingularDenominator& err) {
      state.terminated_early = true;
      state.termination_reason = err.what();
      break;
    }
    h_values[n + 1] = h;
    state.amps[n + 1] = chi * state.amps[n] / (std::sqrt(n + 1.0) * h);
    filled = n + 2;
    detail::rescale_if_needed(state.amps, n + 1);
  }
  state.amps.resize(filled);
  detail::normalize(state.amps);

  if (!state.terminated_early && filled < trap.n_max() + 1) {
    state.terminated_early = true;
    state.termination_reason = cap_reason;
  }

  // Residual of the eigenvalue equation on the interior components.
  KahanSum res2;
  for (int m = 0; m + 1 < filled; ++m) {
    const std::complex<double> r =
        h_values[m + 1] * std::sqrt(m + 1.0) * state.amps[m + 1] - chi * state.amps[m];
    res2.add(std::norm(r));
  }
  state.recursion_residual = std::sqrt(res2.value());
  state.edge_leakage = std::abs(chi) * std::abs(state.amps.back());
  return state;
}

// Nonlinear coherent state |alpha, f> truncated at n_cut: amplitudes
// proportional to alpha^n / (sqrt(n!) f(1) f(2) ... f(n)), normalized. The
// f(0)! convention factor is common to every amplitude and drops out.
inline MotionalState build_nlcs(std::span<const double> f_values, std::complex<double> alpha,
                                int n_cut) {
  if (n_cut < 1) throw UsageError("build_nlcs: n_cut must be at least 1");
  if (f_values.size() < static_cast<std::size_t>(n_cut)) {
    throw UsageError("build_nlcs: need f(1)..f(n_cut), got " + std::to_string(f_values.size()) +
                     " values");
  }
  MotionalState state;
  state.amps.assign(n_cut + 1, std::complex<double>{});
  state.amps[0] = 1.0;
  for (int n = 0; n < n_cut; ++n) {
    const double fk = f_values[n];  // f(n+1)
    if (fk == 0.0) {
      throw SingularDenominator("build_nlcs: f(" + std::to_string(n + 1) + ") = 0");
    }
    state.amps[n + 1] = alpha * state.amps[n] / (std::sqrt(n + 1.0) * fk);
    detail::rescale_if_needed(state.amps, n + 1);
  }
  detail::normalize(state.amps);
  return state;
}

}  // namespace finitetrap

#endif  // FINITETRAP_STEADY_STATE_HPP
