#pragma once

#include "quenchbat/types.hpp"

namespace quenchbat::spectral {

// Degenerate-branch threshold in F0: omega^2 - (d3_B)^2 below this value
// selects the cross-product fallback, the continuous extension of the
// two-term form.
inline constexpr double kDegenerateBranchTol = 1e-12;

struct BandDispersion {
  // Upper band energy d0 + root and the raw identity coefficient d0.
  double epsilon;
  double d0;

  // Root part; half of the band splitting. The stored-energy formula and
  // the thermal weight depend on the bands only through this and d0.
  double gap_half() const { return epsilon - d0; }
};

// Band dispersion of the non-superconducting class at one momentum.
BandDispersion dispersion_nonsc(const DVectorModel& model, const Momentum& k);

// Quasiparticle dispersion sqrt(X^2 + Z^2) >= 0 of the superconducting class.
double dispersion_sc(const NambuModel& model, const Momentum& k);

// |d_A x d_B|^2 on the (d1, d2, d3) parts; continuous everywhere, zero iff
// the two vectors are parallel.
double f0_cross_form(const DVector& a, const DVector& b);

struct F0Result {
  double value;
  // True when the degenerate branch omega^2 ~ (d3_B)^2 forced the
  // cross-product fallback; not an error.
  bool degenerate_branch;
};

// Quench numerator F0(k) >= 0 in its printed two-term form
//   omega^2/(omega^2 - d3B^2) * (d1A d2B - d2A d1B)^2
//   + (d3A sqrt(omega^2 - d3B^2) - d3B (d1A d1B + d2A d2B)/sqrt(omega^2 - d3B^2))^2
// with omega the root part of phase B. Algebraically identical to
// f0_cross_form away from the degenerate branch.
F0Result f0_numerator_detail(const DVectorModel& a, const DVectorModel& b, const Momentum& k);
double f0_numerator(const DVectorModel& a, const DVectorModel& b, const Momentum& k);

// Fermi occupation of a level at the given energy. At beta = infinity this
// is the step function with value 1/2 exactly at mu.
double fermi_occupation(double energy, const ThermalSpec& thermal);

// Thermal weight
//   F_T = sinh(beta r) / (cosh(beta r) + cosh(beta (d0 - mu))),  r = gap half,
// the occupation difference between the lower and upper band. Lies in
// [0, 1]; overflow-safe for every beta including +infinity, where it takes
// the values {0, 1/2, 1} by the band/mu ordering.
double thermal_weight_from_bands(double gap_half, double d0, const ThermalSpec& thermal);

// Same weight as the literal difference of Fermi factors
// n_F(d0 - r) - n_F(d0 + r). Agrees with thermal_weight_from_bands to
// ~1e-12 for beta*r <= 30; less robust against overflow, kept as an
// independent algebraic route for consistency checks.
double thermal_weight_fermi_form(double gap_half, double d0, const ThermalSpec& thermal);

// Model-level convenience: weight of phase A at momentum k.
double thermal_weight(const DVectorModel& a, const Momentum& k, const ThermalSpec& thermal);

}  // namespace quenchbat::spectral
