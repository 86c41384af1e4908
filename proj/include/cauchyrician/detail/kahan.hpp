// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cauchyrician::detail {

// Neumaier variant of compensated summation: unlike plain Kahan it also
// keeps the correction when the new term is larger than the running sum.
class KahanSum {
  public:
    void add(double value) {
        const double t = sum_ + value;
        if ((sum_ >= value ? sum_ : -sum_) >= (value >= 0 ? value : -value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    double result() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace cauchyrician::detail
