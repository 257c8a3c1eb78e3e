#include "quenchbat/sum.hpp"

namespace quenchbat {

namespace {

// Fixed binary reduction: split at the largest power of two below n.
double pairwise_impl(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t half = 1;
  while (half * 2 < n) half *= 2;
  return pairwise_impl(x, half) + pairwise_impl(x + half, n - half);
}

}  // namespace

double pairwise_sum(const double* x, std::size_t n) { return pairwise_impl(x, n); }

double pairwise_sum(std::span<const double> x) { return pairwise_impl(x.data(), x.size()); }

}  // namespace quenchbat
