#include <cmath>
#include <cstring>
#include <limits>

#include "quenchbat/kernels.hpp"
#include "quenchbat/spectral.hpp"
#include "quenchbat/types.hpp"

namespace quenchbat::kernels {

namespace {

// Below this scale a mode is inert: the cross term bounds the summand by
// the same scale, so forcing 0 is the continuous limit, never a cutoff.
constexpr double kInertTol = 1e-150;

ThermalSpec to_spec(const ThermalParams& t, double mu) {
  return ThermalSpec{t.beta_inf ? std::numeric_limits<double>::infinity() : t.beta, mu};
}

void sc_mode_terms(const double* xa, const double* za, const double* xb, const double* zb,
                   std::size_t n, ThermalParams thermal, double* omega, double* amp) {
  // The pairing class is particle-hole symmetric; mu does not enter.
  ThermalSpec spec = to_spec(thermal, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double eps = std::sqrt(xa[i] * xa[i] + za[i] * za[i]);
    double om = std::sqrt(xb[i] * xb[i] + zb[i] * zb[i]);
    omega[i] = om;
    if (eps < kInertTol || om < kInertTol) {
      amp[i] = 0.0;
      continue;
    }
    double cross = xa[i] * zb[i] - za[i] * xb[i];
    double th = spectral::thermal_weight_from_bands(eps, 0.0, spec);
    amp[i] = cross * cross / (om * om) * th / (2.0 * eps);
  }
}

void nonsc_mode_terms(const double* d0a, const double* d1a, const double* d2a, const double* d3a,
                      const double* d0b, const double* d1b, const double* d2b, const double* d3b,
                      std::size_t n, ThermalParams thermal, double* omega, double* amp) {
  ThermalSpec spec = to_spec(thermal, thermal.mu);
  (void)d0b;
  for (std::size_t i = 0; i < n; ++i) {
    double ra = std::sqrt(d1a[i] * d1a[i] + d2a[i] * d2a[i] + d3a[i] * d3a[i]);
    double rb = std::sqrt(d1b[i] * d1b[i] + d2b[i] * d2b[i] + d3b[i] * d3b[i]);
    omega[i] = rb;
    if (ra < kInertTol || rb < kInertTol) {
      amp[i] = 0.0;
      continue;
    }
    double cx = d2a[i] * d3b[i] - d3a[i] * d2b[i];
    double cy = d3a[i] * d1b[i] - d1a[i] * d3b[i];
    double cz = d1a[i] * d2b[i] - d2a[i] * d1b[i];
    double f0 = cx * cx + cy * cy + cz * cz;
    double ft = spectral::thermal_weight_from_bands(ra, d0a[i], spec);
    amp[i] = f0 / (rb * rb) * ft / ra;
  }
}

void oscillation(const double* omega, const double* amp, std::size_t n, double tau,
                 bool long_time_average, double* out) {
  if (long_time_average) {
    std::memcpy(out, amp, n * sizeof(double));
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = std::sin(omega[i] * tau);
    out[i] = amp[i] * (2.0 * s * s);
  }
}

}  // namespace

const KernelOps& scalar_kernels() {
  static const KernelOps ops{"scalar", &sc_mode_terms, &nonsc_mode_terms, &oscillation};
  return ops;
}

}  // namespace quenchbat::kernels
