#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace quenchbat {

// Pairwise summation with a fixed reduction tree. For a given array the
// result is bitwise deterministic, independent of threading at call sites.
double pairwise_sum(const double* x, std::size_t n);
double pairwise_sum(std::span<const double> x);

// Neumaier compensated accumulator for ordered streams.
class NeumaierSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace quenchbat
