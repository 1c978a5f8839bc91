// SPDX-License-Identifier: Apache-2.0
#ifndef DAPPROX_DETAIL_COMPENSATED_HPP
#define DAPPROX_DETAIL_COMPENSATED_HPP

#include <cmath>

namespace dapprox::detail {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
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

}  // namespace dapprox::detail

#endif
