#pragma once

#include <cmath>

namespace adaptbound {

// Absolute tolerance for probability/accuracy invariant checks.
inline constexpr double kTolerance = 1e-9;

// Neumaier compensated accumulator. Keeps the relative error of long
// sums with mixed signs near one ulp instead of growing with the count.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace adaptbound
