#ifndef FINITETRAP_LAGUERRE_HPP
#define FINITETRAP_LAGUERRE_HPP

#include <span>

#include "finitetrap/errors.hpp"

namespace finitetrap {

// Associated Laguerre polynomial L_degree^(order)(x) by the standard
// three-term recurrence in the degree.
inline double assoc_laguerre(int degree, int order, double x) {
  if (degree < 0 || order < 0) {
    throw UsageError("assoc_laguerre: degree and order must be nonnegative");
  }
  double lm1 = 1.0;  // L_0
  if (degree == 0) return lm1;
  double lm = 1.0 + order - x;  // L_1
  for (int m = 1; m < degree; ++m) {
    const double lp = ((2.0 * m + order + 1.0 - x) * lm - (m + order) * lm1) / (m + 1.0);
    lm1 = lm;
    lm = lp;
  }
  return lm;
}

// Fills out[m] = L_m^(order)(x) for m = 0..out.size()-1.
inline void assoc_laguerre_column(int order, double x, std::span<double> out) {
  const int count = static_cast<int>(out.size());
  if (count == 0) return;
  out[0] = 1.0;
  if (count == 1) return;
  out[1] = 1.0 + order - x;
  for (int m = 1; m + 1 < count; ++m) {
    out[m + 1] = ((2.0 * m + order + 1.0 - x) * out[m] - (m + order) * out[m - 1]) / (m + 1.0);
  }
}

}  // namespace finitetrap

#endif  // FINITETRAP_LAGUERRE_HPP
