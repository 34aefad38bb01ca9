#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "finitetrap/observables.hpp"
#include "finitetrap/steady_state.hpp"
#include "finitetrap/trap.hpp"

using namespace finitetrap;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

MotionalState fock(int level, int dim) {
  MotionalState state;
  state.amps.assign(dim, std::complex<double>{});
  state.amps[level] = 1.0;
  return state;
}

MotionalState coherent(std::complex<double> alpha, int n_cut) {
  const std::vector<double> ones(n_cut, 1.0);
  return build_nlcs(ones, alpha, n_cut);
}

MotionalState fig1_state(double depth) {
  return solve_steady_state(TrapParams(depth), DriveParams(0.22, 0.85));
}

double grid_value_at(const PhaseSpaceGrid& grid, std::complex<double> alpha) {
  // nearest grid node; tests pick alphas that sit on nodes
  const int i = static_cast<int>(std::lround((alpha.real() - grid.re_min) /
                                             (grid.re_max - grid.re_min) * (grid.n_re - 1)));
  const int j = static_cast<int>(std::lround((alpha.imag() - grid.im_min) /
                                             (grid.im_max - grid.im_min) * (grid.n_im - 1)));
  return grid.at(i, j);
}

}  // namespace

TEST_CASE("number distribution") {
  SECTION("vacuum") {
    const auto p = number_distribution(fock(0, 6));
    CHECK(p[0] == 1.0);
    for (int n = 1; n < 6; ++n) CHECK(p[n] == 0.0);
  }
  SECTION("normalization for driven states") {
    for (double depth : {15.0, 30.0, 45.0, 75.0}) {
      const auto p = number_distribution(fig1_state(depth));
      KahanSum sum;
      for (double v : p) sum.add(v);
      REQUIRE_THAT(sum.value(), WithinAbs(1.0, 1e-12));
    }
  }
  SECTION("unique dominant interior peak at N = 45") {
    const auto p = number_distribution(fig1_state(45.0));
    int peak = 0;
    for (int n = 1; n < static_cast<int>(p.size()); ++n)
      if (p[n] > p[peak]) peak = n;
    CHECK(peak > 0);
    CHECK(peak < static_cast<int>(p.size()) - 1);
    for (int n = 0; n < static_cast<int>(p.size()); ++n)
      if (n != peak) REQUIRE(p[peak] > p[n]);
  }
}

TEST_CASE("quadrature variance, bare convention") {
  SECTION("vacuum is 1/4 at any phase") {
    for (double theta : {0.0, 0.7, kPi / 4.0}) {
      CHECK_THAT(quadrature_variance(fock(0, 4), theta), WithinAbs(0.25, 1e-14));
    }
  }
  SECTION("Fock |1> is 3/4") {
    CHECK_THAT(quadrature_variance(fock(1, 4), 0.3), WithinAbs(0.75, 1e-14));
  }
  SECTION("coherent states are minimum-uncertainty") {
    const auto state = coherent({0.6, 0.2}, 40);
    for (double theta : {0.0, 1.1, kPi / 4.0}) {
      CHECK_THAT(quadrature_variance(state, theta), WithinAbs(0.25, 1e-10));
    }
  }
  SECTION("half-turn symmetry S(theta) = S(theta + pi)") {
    const auto state = fig1_state(30.0);
    for (double theta : {0.0, 0.4, 1.3}) {
      CHECK_THAT(quadrature_variance(state, theta),
                 WithinAbs(quadrature_variance(state, theta + kPi), 1e-12));
    }
  }
}

TEST_CASE("squeezing scan") {
  std::vector<double> depths;
  for (int n = 5; n <= 100; ++n) depths.push_back(n);

  SECTION("zero ratio: vacuum steady state, S = 0 at every depth") {
    const auto scan = squeezing_scan(depths, DriveParams(0.25, 0.0), kPi / 4.0);
    REQUIRE(scan.depths.size() == depths.size());
    for (double s : scan.s_values) CHECK_THAT(s, WithinAbs(0.0, 1e-12));
  }
  SECTION("bare quadrature at pi/4 cannot dip below zero") {
    // With chi purely imaginary the amplitudes carry phases i^n, <a^2> is
    // real and <a> imaginary, so S(pi/4) = 2(<n> - |<a>|^2) >= 0 by
    // Cauchy-Schwarz. Documented identity; the squeezing the deformed
    // quadrature sees below is invisible here.
    const auto scan = squeezing_scan(depths, DriveParams(0.25, 0.31), kPi / 4.0);
    REQUIRE(!scan.s_values.empty());
    double min_s = scan.s_values[0];
    for (double s : scan.s_values) min_s = std::min(min_s, s);
    CHECK(min_s >= 0.0);
    CHECK(min_s < 1e-3);  // it does graze zero near N = 22
  }
  SECTION("deformed quadrature at pi/4 is squeezed") {
    const auto scan = squeezing_scan(depths, DriveParams(0.25, 0.31), kPi / 4.0,
                                     LadderConvention::deformed);
    double min_s = scan.s_values[0];
    for (double s : scan.s_values) min_s = std::min(min_s, s);
    CHECK(min_s < 0.0);
  }
  SECTION("per-depth failures are recorded, not fatal") {
    const std::vector<double> with_bad{30.0, 1.0, 45.0};  // N = 1 has a single level
    const auto scan = squeezing_scan(with_bad, DriveParams(0.25, 0.31), kPi / 4.0);
    CHECK(scan.depths.size() == 2);
    REQUIRE(scan.failures.size() == 1);
    CHECK(scan.failures[0].first == 1.0);
    CHECK(scan.failures[0].second == "UsageError");
  }
}

TEST_CASE("Q function closed forms") {
  SECTION("vacuum") {
    const auto state = fock(0, 3);
    auto grid = PhaseSpaceGrid::square(4.0, 81, GridKind::q_function);
    q_function(state, grid);
    CHECK_THAT(grid_value_at(grid, {0.0, 0.0}), WithinAbs(1.0 / kPi, 1e-10));
    for (std::complex<double> alpha : {std::complex<double>{1.0, 0.0},
                                       std::complex<double>{-0.5, 1.5},
                                       std::complex<double>{2.0, -2.0}}) {
      CHECK_THAT(grid_value_at(grid, alpha),
                 WithinAbs(std::exp(-std::norm(alpha)) / kPi, 1e-10));
    }
  }
  SECTION("Fock ring") {
    const int level = 3;
    const auto state = fock(level, 6);
    auto grid = PhaseSpaceGrid::square(4.0, 81, GridKind::q_function);
    q_function(state, grid);
    for (std::complex<double> alpha : {std::complex<double>{1.5, 0.0},
                                       std::complex<double>{0.0, -2.0}}) {
      const double want = std::pow(std::norm(alpha), level) * std::exp(-std::norm(alpha)) /
                          (kPi * std::tgamma(level + 1.0));
      CHECK_THAT(grid_value_at(grid, alpha), WithinAbs(want, 1e-10));
    }
  }
  SECTION("nonnegative everywhere") {
    auto grid = default_grid(fig1_state(30.0), GridKind::q_function, 101);
    q_function(fig1_state(30.0), grid);
    CHECK(grid.min_value() >= -1e-14);
  }
}

TEST_CASE("Wigner closed forms") {
  auto grid = PhaseSpaceGrid::square(4.0, 81, GridKind::wigner);
  SECTION("vacuum") {
    wigner_function(fock(0, 3), grid);
    CHECK_THAT(grid_value_at(grid, {0.0, 0.0}), WithinAbs(2.0 / kPi, 1e-10));
    for (std::complex<double> alpha : {std::complex<double>{1.0, 0.5},
                                       std::complex<double>{-1.5, 0.0}}) {
      CHECK_THAT(grid_value_at(grid, alpha),
                 WithinAbs(2.0 / kPi * std::exp(-2.0 * std::norm(alpha)), 1e-10));
    }
  }
  SECTION("Fock |1> parity at the origin") {
    wigner_function(fock(1, 3), grid);
    CHECK_THAT(grid_value_at(grid, {0.0, 0.0}), WithinAbs(-2.0 / kPi, 1e-10));
  }
}

TEST_CASE("parity identity at the origin") {
  for (double depth : {15.0, 30.0}) {
    const auto state = fig1_state(depth);
    auto grid = PhaseSpaceGrid::square(1.0, 3, GridKind::wigner);  // includes alpha = 0
    wigner_function(state, grid);
    const auto p = number_distribution(state);
    KahanSum parity;
    for (std::size_t n = 0; n < p.size(); ++n) parity.add(n % 2 == 0 ? p[n] : -p[n]);
    REQUIRE_THAT(grid_value_at(grid, {0.0, 0.0}),
                 WithinAbs(2.0 / kPi * parity.value(), 1e-10));
  }
}

TEST_CASE("phase-space normalizations on default grids") {
  const auto state = fig1_state(30.0);
  auto q = default_grid(state, GridKind::q_function);
  q_function(state, q);
  CHECK_FALSE(q.coverage_warning);
  CHECK_THAT(q.integral(), WithinAbs(1.0, 0.02));

  auto w = default_grid(state, GridKind::wigner);
  wigner_function(state, w);
  CHECK_FALSE(w.coverage_warning);
  CHECK(w.max_leakage <= 1e-6);
  CHECK_THAT(w.integral(), WithinAbs(1.0, 0.02));
}

TEST_CASE("Husimi anti-normal moment gives the mean occupation") {
  const auto state = fig1_state(30.0);
  auto q = default_grid(state, GridKind::q_function);
  q_function(state, q);
  KahanSum moment;
  for (int i = 0; i < q.n_re; ++i) {
    for (int j = 0; j < q.n_im; ++j) {
      const std::complex<double> alpha(q.re_at(i), q.im_at(j));
      moment.add((std::norm(alpha) - 1.0) * q.at(i, j));
    }
  }
  CHECK_THAT(moment.value() * q.cell_area(), WithinAbs(mean_occupation(state), 0.05));
}

TEST_CASE("Gaussian smoothing of the vacuum Wigner function reproduces Q") {
  const auto state = fock(0, 3);
  auto w = PhaseSpaceGrid::square(5.0, 161, GridKind::wigner);
  wigner_function(state, w);
  for (std::complex<double> alpha : {std::complex<double>{0.0, 0.0},
                                     std::complex<double>{0.5, 0.0},
                                     std::complex<double>{1.0, 0.5}}) {
    KahanSum conv;
    for (int i = 0; i < w.n_re; ++i) {
      for (int j = 0; j < w.n_im; ++j) {
        const std::complex<double> beta(w.re_at(i), w.im_at(j));
        conv.add(w.at(i, j) * std::exp(-2.0 * std::norm(alpha - beta)));
      }
    }
    const double smoothed = 2.0 / kPi * conv.value() * w.cell_area();
    const double q_exact = std::exp(-std::norm(alpha)) / kPi;
    REQUIRE_THAT(smoothed, WithinRel(q_exact, 0.01));
  }
}

TEST_CASE("rotated Wigner marginal second moment matches the ladder-moment variance") {
  auto check_state = [](const MotionalState& state, double theta) {
    auto w = default_grid(state, GridKind::wigner);
    wigner_function(state, w);
    KahanSum m1, m2;
    for (int i = 0; i < w.n_re; ++i) {
      for (int j = 0; j < w.n_im; ++j) {
        const std::complex<double> alpha(w.re_at(i), w.im_at(j));
        const double x = (alpha * std::polar(1.0, -theta)).real();
        m1.add(x * w.at(i, j));
        m2.add(x * x * w.at(i, j));
      }
    }
    const double mean = m1.value() * w.cell_area();
    const double var = m2.value() * w.cell_area() - mean * mean;
    REQUIRE_THAT(var, WithinAbs(quadrature_variance(state, theta), 1e-2));
  };
  check_state(fock(1, 4), 0.3);
  check_state(fig1_state(15.0), 0.7);
}

TEST_CASE("Q function interference structure at N = 7") {
  // eta = 0.75, ratio 0.9: the Fock polynomial has n_max roots, visible as
  // localized near-zero pockets of Q between the amplitude lobes.
  const auto state = solve_steady_state(TrapParams(7.0), DriveParams(0.75, 0.9));
  auto q = default_grid(state, GridKind::q_function);
  q_function(state, q);
  double q_max = 0.0;
  for (double v : q.values) q_max = std::max(q_max, v);

  int near_zero_minima = 0;
  int maxima = 0;
  const double inner = 0.75 * q.inner_radius();
  for (int i = 1; i + 1 < q.n_re; ++i) {
    for (int j = 1; j + 1 < q.n_im; ++j) {
      const double v = q.at(i, j);
      bool is_min = true, is_max = true;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (q.at(i + di, j + dj) <= v) is_min = false;
          if (q.at(i + di, j + dj) >= v) is_max = false;
        }
      if (std::hypot(q.re_at(i), q.im_at(j)) > inner) continue;
      if (is_min && v < 1e-4 * q_max) ++near_zero_minima;
      if (is_max && v > 0.05 * q_max) ++maxima;
    }
  }
  CHECK(near_zero_minima >= 2);
  CHECK(maxima >= 1);
}

TEST_CASE("Wigner negativity for the deep-drive parameter sets") {
  // ratio 0.9 throughout; modest grids here, the acceptance suite re-runs
  // these on the full default geometry.
  const std::vector<std::pair<double, double>> sets{
      {0.75, 7.0}, {0.5, 7.0}, {0.25, 7.0}, {0.75, 26.0}};
  for (const auto& [eta, depth] : sets) {
    const auto state = solve_steady_state(TrapParams(depth), DriveParams(eta, 0.9));
    auto w = default_grid(state, GridKind::wigner, 75);
    wigner_function(state, w);
    REQUIRE(w.min_value() < 0.0);
  }
}

TEST_CASE("grid plumbing and coverage warnings") {
  const auto state = fig1_state(30.0);
  SECTION("tiny grid is flagged") {
    auto q = PhaseSpaceGrid::square(1.0, 21, GridKind::q_function);
    q_function(state, q);
    CHECK(q.coverage_warning);
  }
  SECTION("kind mismatch") {
    auto q = PhaseSpaceGrid::square(2.0, 11, GridKind::q_function);
    CHECK_THROWS_AS(wigner_function(state, q), UsageError);
    auto w = PhaseSpaceGrid::square(2.0, 11, GridKind::wigner);
    CHECK_THROWS_AS(q_function(state, w), UsageError);
  }
  SECTION("geometry accessors") {
    auto g = PhaseSpaceGrid::square(3.0, 4, GridKind::q_function);
    CHECK(g.re_at(0) == -3.0);
    CHECK(g.re_at(3) == 3.0);
    CHECK_THAT(g.cell_area(), WithinRel(4.0, 1e-14));
    CHECK(g.inner_radius() == 3.0);
    CHECK_THROWS_AS(PhaseSpaceGrid::square(0.0, 4, GridKind::q_function), UsageError);
    CHECK_THROWS_AS(PhaseSpaceGrid::square(1.0, 1, GridKind::q_function), UsageError);
  }
}
