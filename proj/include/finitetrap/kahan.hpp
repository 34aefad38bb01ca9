#ifndef FINITETRAP_KAHAN_HPP
#define FINITETRAP_KAHAN_HPP

#include <cmath>

namespace finitetrap {

// Neumaier-compensated accumulator. The alternating-sign series in the
// coupling functions and the parity sums in the Wigner evaluation are the
// intended users; for those the compensation term also survives partial
// cancellation of the running sum.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace finitetrap

#endif  // FINITETRAP_KAHAN_HPP
