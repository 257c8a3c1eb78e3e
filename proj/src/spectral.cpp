#include "quenchbat/spectral.hpp"

#include <cmath>

namespace quenchbat::spectral {

namespace {

// Zero-temperature occupation step: 1 below mu, 0 above, 1/2 exactly at mu.
double step_occupation(double energy, double mu) {
  if (energy < mu) return 1.0;
  if (energy > mu) return 0.0;
  return 0.5;
}

double weight_zero_temperature(double gap_half, double d0, double mu) {
  return step_occupation(d0 - gap_half, mu) - step_occupation(d0 + gap_half, mu);
}

}  // namespace

BandDispersion dispersion_nonsc(const DVectorModel& model, const Momentum& k) {
  DVector d = model(k);
  return BandDispersion{d.d0 + d.root(), d.d0};
}

double dispersion_sc(const NambuModel& model, const Momentum& k) { return model(k).root(); }

double f0_cross_form(const DVector& a, const DVector& b) {
  double cx = a.d2 * b.d3 - a.d3 * b.d2;
  double cy = a.d3 * b.d1 - a.d1 * b.d3;
  double cz = a.d1 * b.d2 - a.d2 * b.d1;
  return cx * cx + cy * cy + cz * cz;
}

F0Result f0_numerator_detail(const DVectorModel& a, const DVectorModel& b, const Momentum& k) {
  DVector da = a(k);
  DVector db = b(k);
  double omega_sq = db.d1 * db.d1 + db.d2 * db.d2 + db.d3 * db.d3;
  double q_sq = db.d1 * db.d1 + db.d2 * db.d2;
  if (q_sq < kDegenerateBranchTol) {
    return F0Result{f0_cross_form(da, db), true};
  }
  double c12 = da.d1 * db.d2 - da.d2 * db.d1;
  double dot12 = da.d1 * db.d1 + da.d2 * db.d2;
  double q = std::sqrt(q_sq);
  double t2 = da.d3 * q - db.d3 * dot12 / q;
  return F0Result{omega_sq / q_sq * c12 * c12 + t2 * t2, false};
}

double f0_numerator(const DVectorModel& a, const DVectorModel& b, const Momentum& k) {
  return f0_numerator_detail(a, b, k).value;
}

double fermi_occupation(double energy, const ThermalSpec& thermal) {
  if (thermal.zero_temperature()) return step_occupation(energy, thermal.mu);
  double x = thermal.beta * (energy - thermal.mu);
  if (!std::isfinite(x)) return step_occupation(energy, thermal.mu);
  if (x >= 0.0) {
    double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double thermal_weight_from_bands(double gap_half, double d0, const ThermalSpec& thermal) {
  if (thermal.zero_temperature()) return weight_zero_temperature(gap_half, d0, thermal.mu);
  double a = thermal.beta * gap_half;
  double b = thermal.beta * (d0 - thermal.mu);
  if (!std::isfinite(a) || !std::isfinite(b)) {
    return weight_zero_temperature(gap_half, d0, thermal.mu);
  }
  double ab = std::abs(b);
  if (a >= ab) {
    // All shifted exponents are <= 0 here.
    double em = std::expm1(-2.0 * a);
    double den = 2.0 + em + std::exp(b - a) + std::exp(-b - a);
    return -em / den;
  }
  // 2 sinh(a) e^{-|b|} = -e^{a-|b|} expm1(-2a), with a - |b| < 0.
  double num = -std::exp(a - ab) * std::expm1(-2.0 * a);
  double den = std::exp(a - ab) + std::exp(-a - ab) + 1.0 + std::exp(-2.0 * ab);
  return num / den;
}

double thermal_weight_fermi_form(double gap_half, double d0, const ThermalSpec& thermal) {
  return fermi_occupation(d0 - gap_half, thermal) - fermi_occupation(d0 + gap_half, thermal);
}

double thermal_weight(const DVectorModel& a, const Momentum& k, const ThermalSpec& thermal) {
  BandDispersion bands = dispersion_nonsc(a, k);
  return thermal_weight_from_bands(bands.gap_half(), bands.d0, thermal);
}

}  // namespace quenchbat::spectral
