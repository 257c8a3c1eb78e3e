#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "quenchbat/engine.hpp"
#include "quenchbat/errors.hpp"
#include "quenchbat/spectral.hpp"
#include "quenchbat/sum.hpp"

namespace quenchbat::oracle {

namespace {

using Cx = std::complex<double>;

struct M2 {
  Cx a, b, c, d;  // [[a, b], [c, d]]
};

M2 operator*(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}
M2 operator+(const M2& x, const M2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
M2 operator-(const M2& x, const M2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
M2 operator*(Cx s, const M2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
M2 dagger(const M2& x) {
  return {std::conj(x.a), std::conj(x.c), std::conj(x.b), std::conj(x.d)};
}
Cx trace(const M2& x) { return x.a + x.d; }

// c0 I + c1 sx + c2 sy + c3 sz
M2 pauli(double c0, double c1, double c2, double c3) {
  return {Cx(c0 + c3, 0.0), Cx(c1, -c2), Cx(c1, c2), Cx(c0 - c3, 0.0)};
}

const M2 kId = pauli(1.0, 0.0, 0.0, 0.0);

constexpr double kDegenerate = 1e-300;

// Spectral projectors of n.(d1,d2,d3); with a vanishing vector both
// collapse to I/2, which callers must special-case.
void band_projectors(double d1, double d2, double d3, M2& plus, M2& minus) {
  double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
  if (r < kDegenerate) {
    plus = Cx(0.5, 0.0) * kId;
    minus = plus;
    return;
  }
  M2 n = pauli(0.0, d1 / r, d2 / r, d3 / r);
  plus = Cx(0.5, 0.0) * (kId + n);
  minus = Cx(0.5, 0.0) * (kId - n);
}

// exp(-i t (d0 I + d.sigma)) by the spin rotation formula.
M2 evolution(double d0, double d1, double d2, double d3, double t) {
  double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
  Cx phase = std::polar(1.0, -d0 * t);
  if (r < kDegenerate) return phase * kId;
  double ct = std::cos(r * t);
  double st = std::sin(r * t);
  M2 n = pauli(0.0, d1 / r, d2 / r, d3 / r);
  return phase * ((Cx(ct, 0.0) * kId) + (Cx(0.0, -st) * n));
}

// Dense one-mode evaluation for the two-band class: Gibbs one-particle
// correlation in the initial bands, exact evolution (or the stationary
// dephased state for the long-time average), trace against the initial
// Hamiltonian.
double nonsc_mode(const DVector& da, const DVector& db, double tau, bool lta,
                  const ThermalSpec& thermal) {
  M2 ha = pauli(da.d0, da.d1, da.d2, da.d3);
  M2 pa_plus, pa_minus;
  band_projectors(da.d1, da.d2, da.d3, pa_plus, pa_minus);
  double ra = da.root();
  double f_plus = spectral::fermi_occupation(da.d0 + ra, thermal);
  double f_minus = spectral::fermi_occupation(da.d0 - ra, thermal);
  M2 n0 = (Cx(f_plus, 0.0) * pa_plus) + (Cx(f_minus, 0.0) * pa_minus);

  M2 evolved;
  if (lta) {
    if (db.root() < kDegenerate) {
      evolved = n0;  // the pulse Hamiltonian is proportional to I; nothing moves
    } else {
      M2 pb_plus, pb_minus;
      band_projectors(db.d1, db.d2, db.d3, pb_plus, pb_minus);
      evolved = (pb_plus * n0 * pb_plus) + (pb_minus * n0 * pb_minus);
    }
  } else {
    M2 u = evolution(db.d0, db.d1, db.d2, db.d3, tau);
    evolved = u * n0 * dagger(u);
  }
  return std::real(trace((evolved - n0) * ha));
}

// Dense evaluation on the even-parity pair block {|0>, c+c+|0>} with
// h = [[-Z, X], [X, Z]]. The two odd single-particle states sit at zero
// energy and enter only through the Gibbs normalization (+2). Returns the
// pair energy; one momentum carries half of it.
double sc_pair_energy(double x_a, double z_a, double x_b, double z_b, double tau, bool lta,
                      const ThermalSpec& thermal) {
  M2 ha = pauli(0.0, x_a, 0.0, -z_a);
  double eps = std::sqrt(x_a * x_a + z_a * z_a);

  M2 rho;
  double beta_eps = thermal.zero_temperature()
                        ? std::numeric_limits<double>::infinity()
                        : thermal.beta * eps;
  if (eps < kDegenerate) {
    rho = Cx(0.25, 0.0) * kId;  // e^{-beta h} = I, total weight 4
  } else if (std::isinf(beta_eps)) {
    M2 hn = pauli(0.0, x_a / eps, 0.0, -z_a / eps);
    rho = Cx(0.5, 0.0) * (kId - hn);  // even-block ground state
  } else {
    // rho = (cosh(be) I - sinh(be) hn) / (2 cosh(be) + 2), rescaled by
    // e^{-be} so every term stays bounded.
    double e1 = std::exp(-beta_eps);
    double e2 = std::exp(-2.0 * beta_eps);
    double ch = 0.5 * (1.0 + e2);
    double sh = 0.5 * (1.0 - e2);
    double den = 2.0 * ch + 2.0 * e1;
    M2 hn = pauli(0.0, x_a / eps, 0.0, -z_a / eps);
    rho = Cx(1.0 / den, 0.0) * ((Cx(ch, 0.0) * kId) - (Cx(sh, 0.0) * hn));
  }

  M2 evolved;
  if (lta) {
    double om = std::sqrt(x_b * x_b + z_b * z_b);
    if (om < kDegenerate) {
      evolved = rho;
    } else {
      M2 pb_plus, pb_minus;
      band_projectors(x_b, 0.0, -z_b, pb_plus, pb_minus);
      evolved = (pb_plus * rho * pb_plus) + (pb_minus * rho * pb_minus);
    }
  } else {
    M2 u = evolution(0.0, x_b, 0.0, -z_b, tau);
    evolved = u * rho * dagger(u);
  }
  return std::real(trace((evolved - rho) * ha));
}

}  // namespace

double stored_energy_mode(const QuenchSpec<DVectorModel>& spec, const Momentum& k,
                          const ThermalSpec& thermal) {
  spec.validate();
  thermal.validate();
  return nonsc_mode(spec.phase_a(k), spec.phase_b(k), spec.tau, spec.long_time_average(),
                    thermal);
}

double stored_energy_mode(const QuenchSpec<NambuModel>& spec, const Momentum& k,
                          const ThermalSpec& thermal) {
  spec.validate();
  thermal.validate();
  NambuCoeffs ca = spec.phase_a(k);
  NambuCoeffs cb = spec.phase_b(k);
  return 0.5 * sc_pair_energy(ca.x, ca.z, cb.x, cb.z, spec.tau, spec.long_time_average(),
                              thermal);
}

double stored_energy_mode_scaled(const QuenchSpec<NambuModel>& spec, const Momentum& k,
                                 const ThermalSpec& thermal, double coeff_scale) {
  spec.validate();
  thermal.validate();
  if (!std::isfinite(coeff_scale)) throw SpecError("coeff_scale must be finite");
  NambuCoeffs ca = spec.phase_a(k);
  NambuCoeffs cb = spec.phase_b(k);
  return 0.5 * sc_pair_energy(coeff_scale * ca.x, coeff_scale * ca.z, coeff_scale * cb.x,
                              coeff_scale * cb.z, spec.tau, spec.long_time_average(), thermal);
}

double stored_energy(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal) {
  if (!grid.is_finite()) throw SpecError("the dense oracle needs a finite grid");
  std::vector<double> ks = grid.momenta();
  std::vector<double> vals(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    vals[i] = stored_energy_mode(spec, ks[i], thermal);
  }
  return pairwise_sum(vals.data(), vals.size()) / static_cast<double>(vals.size());
}

double stored_energy(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal) {
  if (!grid.is_finite()) throw SpecError("the dense oracle needs a finite grid");
  std::vector<double> ks = grid.momenta();
  std::vector<double> vals(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    vals[i] = stored_energy_mode(spec, ks[i], thermal);
  }
  return pairwise_sum(vals.data(), vals.size()) / static_cast<double>(vals.size());
}

}  // namespace quenchbat::oracle
