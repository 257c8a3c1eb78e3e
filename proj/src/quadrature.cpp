#include "quenchbat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "quenchbat/errors.hpp"
#include "quenchbat/sum.hpp"

namespace quenchbat::quadrature {

namespace {

// Kronrod-15 abscissae (positive half) and weights; the odd-indexed
// abscissae carry the embedded Gauss-7 rule.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {0.12948496616886969327, 0.27970539148927666790,
                           0.38183005050511894495, 0.41795918367346938776};

struct Interval {
  double a;
  double b;
  double result;
  double err;
  double resabs;
};

// x layout per interval: [0..6] = c - h*xgk[j], [7] = c, [8..14] = c + h*xgk[j].
void fill_abscissae(double a, double b, double* x) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  for (int j = 0; j < 7; ++j) {
    x[j] = c - h * kXgk[j];
    x[8 + j] = c + h * kXgk[j];
  }
  x[7] = c;
}

Interval apply_rule(double a, double b, const double* f) {
  double h = 0.5 * (b - a);
  double fc = f[7];
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    double fs = f[j] + f[8 + j];
    resk += kWgk[j] * fs;
    resabs += kWgk[j] * (std::abs(f[j]) + std::abs(f[8 + j]));
    if (j % 2 == 1) resg += kWg[j / 2] * fs;
  }
  double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f[j] - reskh) + std::abs(f[8 + j] - reskh));
  }
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return Interval{a, b, resk * h, err, resabs * std::abs(h)};
}

bool worse(const Interval& u, const Interval& v) { return u.err < v.err; }

}  // namespace

QuadratureResult integrate_adaptive(const BatchFn& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (!f) throw SpecError("quadrature needs an integrand");
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw SpecError("quadrature bounds must satisfy a <= b");
  }
  if (a == b) return QuadratureResult{0.0, 0.0, 0, 0};
  if (!(options.rel_tol > 0.0) && !(options.abs_tol > 0.0)) {
    throw SpecError("quadrature needs a positive tolerance");
  }

  std::vector<double> bounds;
  bounds.push_back(a);
  std::size_t panels = std::max<std::size_t>(1, options.initial_panels);
  for (std::size_t i = 1; i < panels; ++i) {
    bounds.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(panels));
  }
  for (double bp : options.breakpoints) {
    if (bp > a && bp < b) bounds.push_back(bp);
  }
  bounds.push_back(b);
  std::sort(bounds.begin(), bounds.end());
  double merge_tol = 1e-13 * (b - a);
  std::vector<double> edges;
  edges.push_back(bounds.front());
  for (double v : bounds) {
    if (v - edges.back() > merge_tol) edges.push_back(v);
  }
  if (edges.back() != b) edges.back() = b;

  std::size_t m = edges.size() - 1;
  std::vector<double> xs(15 * m);
  std::vector<double> fs(15 * m);
  for (std::size_t i = 0; i < m; ++i) fill_abscissae(edges[i], edges[i + 1], xs.data() + 15 * i);
  f(xs.data(), xs.size(), fs.data());
  std::size_t evaluations = xs.size();

  std::vector<Interval> heap;
  heap.reserve(m + 64);
  double errsum = 0.0;
  double area = 0.0;
  double abssum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Interval iv = apply_rule(edges[i], edges[i + 1], fs.data() + 15 * i);
    errsum += iv.err;
    area += iv.result;
    abssum += iv.resabs;
    heap.push_back(iv);
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  double half_xs[30];
  double half_fs[30];
  while (true) {
    // The third term floors the target at the roundoff level of integrating
    // |f|; below it the error estimate is pure noise and cannot shrink.
    double errbnd = std::max({options.abs_tol, options.rel_tol * std::abs(area),
                              100.0 * std::numeric_limits<double>::epsilon() * abssum});
    if (errsum <= errbnd) break;
    if (heap.size() >= options.max_intervals) {
      double scale = std::max(std::abs(area), 1e-300);
      throw QuadratureError(
          "quadrature did not converge within " + std::to_string(options.max_intervals) +
              " intervals",
          options.rel_tol, errsum / scale);
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    Interval worst = heap.back();
    heap.pop_back();
    double c = 0.5 * (worst.a + worst.b);
    if (!(worst.a < c && c < worst.b)) {
      double scale = std::max(std::abs(area), 1e-300);
      throw QuadratureError("quadrature interval underflow; integrand may be singular",
                            options.rel_tol, errsum / scale);
    }
    fill_abscissae(worst.a, c, half_xs);
    fill_abscissae(c, worst.b, half_xs + 15);
    f(half_xs, 30, half_fs);
    evaluations += 30;
    Interval left = apply_rule(worst.a, c, half_fs);
    Interval right = apply_rule(c, worst.b, half_fs + 15);
    errsum += left.err + right.err - worst.err;
    area += left.result + right.result - worst.result;
    abssum += left.resabs + right.resabs - worst.resabs;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Leaf order is the spatial order, so the final compensated sum does not
  // depend on the heap's refinement history.
  std::sort(heap.begin(), heap.end(),
            [](const Interval& u, const Interval& v) { return u.a < v.a; });
  NeumaierSum value;
  NeumaierSum err;
  for (const Interval& iv : heap) {
    value.add(iv.result);
    err.add(iv.err);
  }
  return QuadratureResult{value.value(), err.value(), evaluations, heap.size()};
}

}  // namespace quenchbat::quadrature
