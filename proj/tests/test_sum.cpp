#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "quenchbat/sum.hpp"

namespace {

using quenchbat::NeumaierSum;
using quenchbat::pairwise_sum;

TEST_SUITE("sum") {
  TEST_CASE("pairwise sums known arrays") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(pairwise_sum(v.data(), v.size()) == 15.0);
    CHECK(pairwise_sum(nullptr, 0) == 0.0);
    double one = 7.5;
    CHECK(pairwise_sum(&one, 1) == 7.5);
  }

  TEST_CASE("span overload matches the pointer form") {
    std::vector<double> v{0.25, -1.5, 3.125, 9.0, -2.0, 0.5, 1.0};
    CHECK(pairwise_sum(std::span<const double>(v)) == pairwise_sum(v.data(), v.size()));
  }

  TEST_CASE("pairwise tracks a long double reference on random data") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(100000);
    long double ref = 0.0L;
    for (double& x : v) {
      x = dist(rng);
      ref += x;
    }
    double got = pairwise_sum(v.data(), v.size());
    CHECK(std::abs(got - double(ref)) <= 1e-12 * std::abs(double(ref)));
  }

  TEST_CASE("pairwise is deterministic for a fixed array") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> v(1537);
    for (double& x : v) x = dist(rng);
    double a = pairwise_sum(v.data(), v.size());
    double b = pairwise_sum(v.data(), v.size());
    CHECK(a == b);
  }

  TEST_CASE("Neumaier keeps the small addend alive through cancellation") {
    NeumaierSum s;
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 1.0);
  }

  TEST_CASE("Neumaier matches plain addition on benign streams") {
    NeumaierSum s;
    double plain = 0.0;
    for (int i = 1; i <= 10; ++i) {
      s.add(0.5 * i);
      plain += 0.5 * i;
    }
    CHECK(s.value() == plain);
  }
}

}  // namespace
