#ifndef FINITETRAP_VIBRONIC_HPP
#define FINITETRAP_VIBRONIC_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "finitetrap/coupling.hpp"
#include "finitetrap/errors.hpp"
#include "finitetrap/kahan.hpp"
#include "finitetrap/matrix.hpp"
#include "finitetrap/steady_state.hpp"
#include "finitetrap/trap.hpp"

namespace finitetrap {

// Joint internal (two-level) and motional state. Amplitudes are ordered
// (|g,0>..|g,dim-1>, |e,0>..|e,dim-1>): ground block first.
struct VibronicState {
  int motional_dim = 0;
  std::vector<std::complex<double>> amps;  // length 2*motional_dim

  static VibronicState ground_product(const MotionalState& motional) {
    VibronicState v;
    v.motional_dim = motional.dim();
    v.amps.assign(2 * motional.amps.size(), std::complex<double>{});
    std::copy(motional.amps.begin(), motional.amps.end(), v.amps.begin());
    return v;
  }

  double norm() const {
    KahanSum acc;
    for (const auto& c : amps) acc.add(std::norm(c));
    return std::sqrt(acc.value());
  }
};

// Rotating-wave interaction Hamiltonian on the two-level (x) Fock product
// space, in units of hbar Omega_1:
//
//   H_I = S^+ [ (Omega_0/Omega_1) F_0(n) + g(eta) F_1(n) a ] + H.c.
//
// F_j act diagonally in the motional number basis, a is the bare
// annihilation operator. dim = 0 uses the full bound spectrum n_max + 1.
inline OperatorMatrix build_interaction_hamiltonian(const TrapParams& trap,
                                                    const DriveParams& drive,
                                                    std::size_t dim = 0) {
  if (dim == 0) dim = static_cast<std::size_t>(trap.n_max()) + 1;
  if (dim > static_cast<std::size_t>(trap.n_max()) + 1) {
    throw TruncationError("build_interaction_hamiltonian: dim exceeds n_max + 1");
  }
  const double ratio = drive.rabi_ratio();
  const std::complex<double> g = g_eta(drive.eta(), trap);

  OperatorMatrix h(2 * dim, "H_I");
  for (std::size_t n = 0; n < dim; ++n) {
    // carrier: diagonal in the motional index
    const std::complex<double> carrier = ratio * f_j(0, static_cast<int>(n), drive.eta(), trap).value;
    h(dim + n, n) = carrier;
    h(n, dim + n) = std::conj(carrier);
    // sideband: F_1(n) a lowers the motional index under S^+
    if (n + 1 < dim) {
      const std::complex<double> side =
          g * f_j(1, static_cast<int>(n), drive.eta(), trap).value * std::sqrt(n + 1.0);
      h(dim + n, n + 1) = side;
      h(n + 1, dim + n) = std::conj(side);
    }
  }
  return h;
}

// || H_I (|g> (x) |psi>) || / (hbar Omega_1) with the top motional component
// excluded (truncation edge). H_I maps the ground product into the excited
// block only, so a vanishing norm certifies [H_I, |g,psi><g,psi|] = 0.
inline double stationarity_residual(const MotionalState& state, const TrapParams& trap,
                                    const DriveParams& drive) {
  const std::size_t dim = state.amps.size();
  if (dim < 1 || dim > static_cast<std::size_t>(trap.n_max()) + 1) {
    throw UsageError("stationarity_residual: state dimension does not fit the trap basis");
  }
  const OperatorMatrix h = build_interaction_hamiltonian(trap, drive, dim);
  const VibronicState ground = VibronicState::ground_product(state);
  const std::vector<std::complex<double>> image = h.apply(ground.amps);

  KahanSum acc;
  for (std::size_t k = 0; k < 2 * dim; ++k) {
    if (k == 2 * dim - 1) continue;  // top motional component of the excited block
    acc.add(std::norm(image[k]));
  }
  return std::sqrt(acc.value());
}

}  // namespace finitetrap

#endif  // FINITETRAP_VIBRONIC_HPP
