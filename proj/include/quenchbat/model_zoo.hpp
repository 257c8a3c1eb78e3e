#pragma once

#include <functional>
#include <vector>

#include "quenchbat/types.hpp"

namespace quenchbat {

// Transverse-field Ising chain in Nambu form:
//   X(k) = -sin k,  Z(k) = h - cos k.
struct IsingParams {
  double h = 0.0;
};
NambuModel build_ising(const IsingParams& params);

// Anisotropic XY chain in a transverse field:
//   X(k) = -gamma sin k,  Z(k) = h - cos k.
struct XYParams {
  double gamma = 1.0;
  double h = 0.0;
};
NambuModel build_xy(const XYParams& params);

// Cluster Ising chain. The pair Hamiltonian carries an overall prefactor 2
// on top of the coefficients
//   X(k) = sin 2k + lambda sin k,  Z(k) = -cos 2k + lambda cos k,
// recorded as hamiltonian_prefactor on the model. The stored-energy kernel
// consumes the coefficients as given; the prefactor rescales energy,
// frequency and temperature jointly and is exposed for that bookkeeping.
struct ClusterIsingParams {
  double lambda = 0.0;
};
NambuModel build_cluster_ising(const ClusterIsingParams& params);

// Dimerized fermion chain with alternating first- and third-neighbor
// hopping plus a uniform second-neighbor term. Two-band Bloch form:
//   d0 = 2 j2 cos k
//   d1 = j1p + j1 cos k + j3p cos k + j3 cos 2k
//   d2 = j1 sin k + j3 sin 2k - j3p sin k
//   d3 = 0.
struct SshParams {
  double j1 = 1.0;
  double j1p = 1.0;
  double j2 = 0.0;
  double j3 = 0.0;
  double j3p = 0.0;

  // Nearest-neighbor dimerization: j1 = 1 - delta, j1p = 1 + delta.
  static SshParams nearest(double delta);
  // Adds third-neighbor dimerization j3 = r - delta3, j3p = r + delta3.
  static SshParams third_neighbor(double delta1, double delta3, double r);
};
DVectorModel build_ssh(const SshParams& params);

// Constrained quench protocol for the dimerized chain: both phases sit on
// the line delta3 = m delta1 + q with j1 = 1 - alpha delta1,
// j1p = 1 + alpha delta1, j3 = r - beta_c delta3, j3p = r + beta_c delta3.
struct SshProtocolParams {
  double alpha = 1.0;
  double beta_c = 1.0;
  double r = 0.0;
  double m = 0.0;
  double q = 0.0;
};

// Builds the phase at a given delta1 on the protocol line. Enforces the
// dominant-nearest-neighbor validity window |j1|, |j1p| > |j3|, |j3p|
// (SpecError naming the violated inequality); the check is vacuous when
// j3 = j3p = 0 exactly, where the third-neighbor terms are absent.
DVectorModel ssh_protocol_phase(const SshProtocolParams& protocol, double delta1);
SshParams ssh_protocol_params(const SshProtocolParams& protocol, double delta1);

// Double quench along the protocol line: phase A at delta1_0, phase B at
// delta1_0 + delta1_1, both validity-checked.
QuenchSpec<DVectorModel> ssh_protocol_quench(const SshProtocolParams& protocol, double delta1_0,
                                             double delta1_1,
                                             double tau = std::numeric_limits<double>::infinity());

// Closed forms for the long-time-average stored energy per site at zero
// temperature, quenching from the named initial point to the named final
// point.

// Ising chain, quenched from zero field h0 = 0 (flat initial band) to h:
//   |h| >= 1 -> 1/4,   |h| < 1 -> h^2 / 4.
double ising_plateau_closed_form(double h_final);

// XY chain at fixed h = 0 (multicritical point), anisotropy quenched
// gamma = 1 -> gamma1:
//   gamma1 <= 0 -> 1/4,   gamma1 > 0 -> (gamma1 - 1)^2 / (4 (gamma1 + 1)^2).
double xy_plateau_closed_form(double gamma1);

// Integrand of the XY plateau in closed form: the long-time-average
// summand at momentum k for the gamma = 1 -> gamma1, h = 0 quench,
// zero temperature, including the 1/(2 pi) measure. Integrating k over
// [-pi, pi] gives the plateau.
double xy_plateau_integrand(double gamma1, double k);

// Antiderivative of the k-integral above on [0, pi], split into an
// arctangent piece and an algebraic piece (valid for gamma1^2 != 1,
// gamma1 != 0):
//   piece_arctan(k) = gamma1 / (gamma1^2-1)^2 * arctan(gamma1 tan k)
//   piece_algebraic(k) = -gamma1^2 k / (gamma1^2-1)^2
//                        + (k/2 - sin 2k / 4) / (gamma1^2 - 1).
// piece_arctan jumps across k = pi/2 where tan diverges; the definite
// integral accounts for the branch.
struct XyAntiderivative {
  double piece_arctan;
  double piece_algebraic;
};
XyAntiderivative xy_plateau_antiderivative(double gamma1, double k);

// Plateau evaluated from the antiderivative with the arctangent branch
// handled explicitly. Agrees with xy_plateau_closed_form.
double xy_plateau_via_antiderivative(double gamma1);

// Momenta in [0, pi] where the model's gap closes, found by scanning at
// the given resolution and refining each sign-change or near-zero minimum.
std::vector<double> gap_closure_momenta(const NambuModel& model, double resolution = 1e-2);
std::vector<double> gap_closure_momenta(const DVectorModel& model, double resolution = 1e-2);

}  // namespace quenchbat
