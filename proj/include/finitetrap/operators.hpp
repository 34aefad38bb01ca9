#ifndef FINITETRAP_OPERATORS_HPP
#define FINITETRAP_OPERATORS_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "finitetrap/matrix.hpp"
#include "finitetrap/trap.hpp"

namespace finitetrap {

struct LadderPair {
  OperatorMatrix lowering;  // A
  OperatorMatrix raising;   // A^dag
};

// Deformed ladder operators on the truncated basis |0>..|dim-1>:
// <n-1| A |n> = sqrt(n) f(n), A^dag its conjugate transpose.
inline LadderPair build_ladder(const TrapParams& trap, std::size_t dim) {
  if (dim == 0) throw UsageError("build_ladder: dim must be positive");
  if (dim > static_cast<std::size_t>(trap.n_max()) + 1) {
    throw TruncationError("build_ladder: dim exceeds n_max + 1 = " +
                          std::to_string(trap.n_max() + 1));
  }
  OperatorMatrix a(dim, "A");
  for (std::size_t n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n)) * deformation_f(static_cast<int>(n), trap);
  }
  return LadderPair{a, a.adjoint()};
}

// Undeformed annihilation matrix, <n-1| a |n> = sqrt(n).
inline OperatorMatrix bare_lowering(std::size_t dim) {
  if (dim == 0) throw UsageError("bare_lowering: dim must be positive");
  OperatorMatrix a(dim, "a");
  for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Center-of-mass position eta*(A + A^dag), in units where the laser wave
// number k_l = 1 (it cancels in every downstream use).
inline OperatorMatrix build_position(const TrapParams& trap, double eta, std::size_t dim) {
  auto [a, adag] = build_ladder(trap, dim);
  OperatorMatrix x(dim, "x");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) x(i, j) = eta * (a(i, j) + adag(i, j));
  return x;
}

}  // namespace finitetrap

#endif  // FINITETRAP_OPERATORS_HPP
