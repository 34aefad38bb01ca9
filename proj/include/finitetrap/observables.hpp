#ifndef FINITETRAP_OBSERVABLES_HPP
#define FINITETRAP_OBSERVABLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finitetrap/errors.hpp"
#include "finitetrap/kahan.hpp"
#include "finitetrap/laguerre.hpp"
#include "finitetrap/operators.hpp"
#include "finitetrap/parallel.hpp"
#include "finitetrap/steady_state.hpp"

namespace finitetrap {

// p(n) = |c_n|^2.
inline std::vector<double> number_distribution(const MotionalState& state) {
  std::vector<double> p(state.amps.size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm(state.amps[n]);
  return p;
}

inline double mean_occupation(const MotionalState& state) {
  KahanSum acc;
  for (std::size_t n = 0; n < state.amps.size(); ++n) acc.add(n * std::norm(state.amps[n]));
  return acc.value();
}

namespace detail {

struct LadderMoments {
  std::complex<double> a;   // <a>
  std::complex<double> a2;  // <a^2>
  double n;                 // <a^dag a>
  double aad;               // <a a^dag>
};

inline LadderMoments bare_moments(std::span<const std::complex<double>> c) {
  LadderMoments m{};
  const std::size_t dim = c.size();
  for (std::size_t k = 0; k + 1 < dim; ++k) m.a += std::conj(c[k]) * std::sqrt(k + 1.0) * c[k + 1];
  for (std::size_t k = 0; k + 2 < dim; ++k)
    m.a2 += std::conj(c[k]) * std::sqrt((k + 1.0) * (k + 2.0)) * c[k + 2];
  KahanSum nbar;
  for (std::size_t k = 0; k < dim; ++k) nbar.add(k * std::norm(c[k]));
  m.n = nbar.value();
  m.aad = m.n + 1.0;  // exact: zero-padding above dim changes nothing
  return m;
}

}  // namespace detail

// Var(X_theta) with X_theta = (a e^{-i theta} + a^dag e^{i theta})/2 built
// from bare ladder operators; the vacuum value is 1/4.
inline double quadrature_variance(const MotionalState& state, double theta) {
  const auto m = detail::bare_moments(state.amps);
  const std::complex<double> rot = std::polar(1.0, -theta);
  const double mean = (m.a * rot).real();
  const double second = 0.25 * (2.0 * (m.a2 * rot * rot).real() + m.n + m.aad);
  return second - mean * mean;
}

// Same quadrature built from the deformed ladder operators A, A^dag of the
// trap (the operators the ion's position is actually made of). Comparison
// variant; note [A, A^dag] != 1, so the vacuum reference is not 1/4.
inline double quadrature_variance_deformed(const MotionalState& state, double theta,
                                           const TrapParams& trap) {
  const std::size_t dim = state.amps.size();
  if (dim > static_cast<std::size_t>(trap.n_max()) + 1) {
    throw UsageError("quadrature_variance_deformed: state does not fit the trap basis");
  }
  const auto& c = state.amps;
  std::complex<double> a{}, a2{};
  KahanSum diag_ad_a, diag_a_ad;
  for (std::size_t k = 0; k + 1 < dim; ++k)
    a += std::conj(c[k]) * std::sqrt(k + 1.0) * deformation_f(static_cast<int>(k) + 1, trap) * c[k + 1];
  for (std::size_t k = 0; k + 2 < dim; ++k)
    a2 += std::conj(c[k]) * std::sqrt((k + 1.0) * (k + 2.0)) *
          deformation_f(static_cast<int>(k) + 1, trap) * deformation_f(static_cast<int>(k) + 2, trap) *
          c[k + 2];
  for (std::size_t k = 0; k < dim; ++k)
    diag_ad_a.add(k * deformation_f2(static_cast<int>(k), trap) * std::norm(c[k]));
  // A A^dag within the truncated basis: the top level has no upper neighbour.
  for (std::size_t k = 0; k + 1 < dim; ++k)
    diag_a_ad.add((k + 1.0) * deformation_f2(static_cast<int>(k) + 1, trap) * std::norm(c[k]));
  const std::complex<double> rot = std::polar(1.0, -theta);
  const double mean = (a * rot).real();
  const double second = 0.25 * (2.0 * (a2 * rot * rot).real() + diag_ad_a.value() + diag_a_ad.value());
  return second - mean * mean;
}

enum class LadderConvention { bare, deformed };

// Squeezing parameter S(theta) = 4 Var(X_theta) - 1 versus trap depth.
// Failures at individual depths are recorded, not fatal.
struct SqueezeScan {
  double theta = 0.0;
  LadderConvention convention = LadderConvention::bare;
  std::vector<double> depths;
  std::vector<double> s_values;
  std::vector<std::pair<double, std::string>> failures;  // (depth, error name)
};

inline SqueezeScan squeezing_scan(std::span<const double> trap_depths, const DriveParams& drive,
                                  double theta,
                                  LadderConvention convention = LadderConvention::bare) {
  SqueezeScan scan;
  scan.theta = theta;
  scan.convention = convention;
  for (double depth : trap_depths) {
    try {
      const TrapParams trap(depth);
      const MotionalState state = solve_steady_state(trap, drive);
      const double var = convention == LadderConvention::bare
                             ? quadrature_variance(state, theta)
                             : quadrature_variance_deformed(state, theta, trap);
      scan.depths.push_back(depth);
      scan.s_values.push_back(4.0 * var - 1.0);
    } catch (const Error& err) {
      scan.failures.emplace_back(depth, err.name());
    }
  }
  return scan;
}

enum class GridKind { q_function, wigner };

// Rectangular grid in the complex-alpha plane with a real scalar field.
// Row-major storage: value(i, j) pairs with alpha = re_at(i) + i*im_at(j).
struct PhaseSpaceGrid {
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  int n_re = 0, n_im = 0;
  GridKind kind = GridKind::q_function;
  std::vector<double> values;

  bool coverage_warning = false;  // grid radius too small for the state energy
  double max_leakage = 0.0;       // wigner only: worst displaced-state norm defect

  static PhaseSpaceGrid square(double half_width, int points, GridKind kind) {
    if (!(half_width > 0.0)) throw UsageError("PhaseSpaceGrid: half width must be positive");
    if (points < 2) throw UsageError("PhaseSpaceGrid: need at least 2 points per axis");
    PhaseSpaceGrid g;
    g.re_min = -half_width;
    g.re_max = half_width;
    g.im_min = -half_width;
    g.im_max = half_width;
    g.n_re = points;
    g.n_im = points;
    g.kind = kind;
    g.values.assign(static_cast<std::size_t>(points) * points, 0.0);
    return g;
  }

  double re_at(int i) const { return re_min + (re_max - re_min) * i / (n_re - 1); }
  double im_at(int j) const { return im_min + (im_max - im_min) * j / (n_im - 1); }

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_im + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_im + j]; }

  double cell_area() const {
    return (re_max - re_min) / (n_re - 1) * (im_max - im_min) / (n_im - 1);
  }

  double integral() const {
    KahanSum acc;
    for (double v : values) acc.add(v);
    return acc.value() * cell_area();
  }

  double min_value() const { return *std::min_element(values.begin(), values.end()); }

  // Shortest distance from the origin to the boundary.
  double inner_radius() const {
    return std::min(std::min(re_max, -re_min), std::min(im_max, -im_min));
  }
};

// Default geometry: square of half width 2 + 2 sqrt(<n> + 1), 201 points per
// axis. Covers the classical amplitude plus two vacuum widths.
inline PhaseSpaceGrid default_grid(const MotionalState& state, GridKind kind, int points = 201) {
  const double hw = 2.0 + 2.0 * std::sqrt(mean_occupation(state) + 1.0);
  return PhaseSpaceGrid::square(hw, points, kind);
}

namespace detail {

inline bool grid_covers(const PhaseSpaceGrid& grid, const MotionalState& state) {
  return grid.inner_radius() >= 2.0 * std::sqrt(mean_occupation(state) + 3.0);
}

}  // namespace detail

// Husimi Q: values[i][j] = |<alpha_ij | psi>|^2 / pi with the coherent
// overlap <alpha|psi> = e^{-|alpha|^2/2} sum_n c_n conj(alpha)^n / sqrt(n!).
// (Convention pinned by the vacuum: Q(alpha) = e^{-|alpha|^2}/pi.)
inline void q_function(const MotionalState& state, PhaseSpaceGrid& grid) {
  if (grid.kind != GridKind::q_function) throw UsageError("q_function: grid kind mismatch");
  grid.coverage_warning = !detail::grid_covers(grid, state);
  const auto& c = state.amps;
  const int dim = state.dim();
  parallel_rows(grid.n_re, [&](int i) {
    const double re = grid.re_at(i);
    for (int j = 0; j < grid.n_im; ++j) {
      const std::complex<double> alpha(re, grid.im_at(j));
      const std::complex<double> abar = std::conj(alpha);
      // Gaussian folded into the running term so nothing overflows at the
      // grid corners.
      std::complex<double> term = std::exp(-0.5 * std::norm(alpha));
      std::complex<double> overlap = c[0] * term;
      for (int n = 1; n < dim; ++n) {
        term *= abar / std::sqrt(static_cast<double>(n));
        overlap += c[n] * term;
      }
      grid.at(i, j) = std::norm(overlap) / std::numbers::pi;
    }
  });
}

namespace detail {

// Workspace needed to hold D(xi)|psi> for a dim-level state: the displaced
// weight reaches up to the classical turning point (|xi| + sqrt(dim))^2; the
// extra margin covers the Airy falloff region. Never below the
// max(4 dim, dim + 20) floor so small displacements keep their headroom.
inline int displaced_workspace(double x, int dim) {
  const double edge = std::sqrt(x) + std::sqrt(static_cast<double>(dim));
  const double needed = edge * edge + 8.0 * edge + 20.0;
  return std::max({4 * dim, dim + 20, static_cast<int>(std::ceil(needed))});
}

}  // namespace detail

// Wigner function by the displaced-parity series,
//   W(alpha) = (2/pi) sum_k (-1)^k |<k| D(-alpha) |psi>|^2,
// in a bare Fock workspace sized per point so the displaced state actually
// fits. The displacement matrix elements come from the associated-Laguerre
// closed form,
//   <k|D(xi)|n> = sqrt(n!/k!) xi^{k-n} e^{-|xi|^2/2} L_n^{k-n}(|xi|^2),  k >= n,
// with the k < n case by (-conj(xi))^{n-k} symmetry. The norm the displaced
// state loses above the workspace is tracked as leakage.
inline void wigner_function(const MotionalState& state, PhaseSpaceGrid& grid) {
  if (grid.kind != GridKind::wigner) throw UsageError("wigner_function: grid kind mismatch");
  grid.coverage_warning = !detail::grid_covers(grid, state);
  const auto& c = state.amps;
  const int dim = state.dim();

  std::vector<double> row_leakage(grid.n_re, 0.0);
  parallel_rows(grid.n_re, [&](int i) {
    // Scratch reused across the row: Laguerre table L_m^(a)(x) for degrees
    // m < dim, orders a < workspace, and the displaced amplitude vector.
    std::vector<double> lag;
    std::vector<double> col(dim);
    std::vector<std::complex<double>> displaced;
    const double re = grid.re_at(i);
    for (int j = 0; j < grid.n_im; ++j) {
      const std::complex<double> alpha(re, grid.im_at(j));
      const std::complex<double> xi = -alpha;
      const double x = std::norm(xi);
      const double gauss = std::exp(-0.5 * x);
      const int workspace = detail::displaced_workspace(x, dim);
      lag.resize(static_cast<std::size_t>(dim) * workspace);
      displaced.resize(workspace);

      for (int a = 0; a < workspace; ++a) {
        assoc_laguerre_column(a, x, col);
        for (int m = 0; m < dim; ++m) lag[static_cast<std::size_t>(m) * workspace + a] = col[m];
      }

      std::fill(displaced.begin(), displaced.end(), std::complex<double>{});
      for (int n = 0; n < dim; ++n) {
        const std::complex<double> cn = c[n];
        const double* lag_n = &lag[static_cast<std::size_t>(n) * workspace];
        // climb k = n..workspace-1: prefactor gains xi/sqrt(k) per step
        std::complex<double> pref(gauss, 0.0);
        displaced[n] += pref * lag_n[0] * cn;
        for (int k = n + 1; k < workspace; ++k) {
          pref *= xi / std::sqrt(static_cast<double>(k));
          displaced[k] += pref * lag_n[k - n] * cn;
        }
        // descend k = n-1..0: prefactor gains -conj(xi)/sqrt(k+1) per step
        pref = std::complex<double>(gauss, 0.0);
        for (int k = n - 1; k >= 0; --k) {
          pref *= -std::conj(xi) / std::sqrt(k + 1.0);
          displaced[k] += pref * lag[static_cast<std::size_t>(k) * workspace + (n - k)] * cn;
        }
      }

      KahanSum parity, total;
      for (int k = 0; k < workspace; ++k) {
        const double p = std::norm(displaced[k]);
        parity.add(k % 2 == 0 ? p : -p);
        total.add(p);
      }
      grid.at(i, j) = 2.0 / std::numbers::pi * parity.value();
      row_leakage[i] = std::max(row_leakage[i], 1.0 - total.value());
    }
  });
  grid.max_leakage = *std::max_element(row_leakage.begin(), row_leakage.end());
  if (grid.max_leakage > 1e-6) grid.coverage_warning = true;
}

}  // namespace finitetrap

#endif  // FINITETRAP_OBSERVABLES_HPP
