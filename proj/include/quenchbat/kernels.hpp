#pragma once

#include <cstddef>

namespace quenchbat::kernels {

// Thermal parameters in kernel form. beta_inf selects the zero-temperature
// limits; mu is consumed by the non-superconducting kernel only.
struct ThermalParams {
  double beta;
  double mu;
  bool beta_inf;
};

// One kernel family: the scalar reference or a SIMD variant. All functions
// write per-momentum outputs in index order over structure-of-arrays input
// batches; for a fixed input array the output is deterministic.
//
// Mode decomposition: the per-momentum summand factors as
//   s_i(tau) = amp_i * (long-time average ? 1 : 2 sin^2(omega_i tau)),
// where for the superconducting class
//   omega_i = |(X_B, Z_B)|,
//   amp_i   = (X_A Z_B - Z_A X_B)^2 / omega_i^2 * tanh(beta eps_i / 2) / (2 eps_i),
//   eps_i   = |(X_A, Z_A)|,
// and for the non-superconducting class
//   omega_i = |d_B|,
//   amp_i   = |d_A x d_B|^2 / omega_i^2 * F_T(|d_A|, d0_A) / |d_A|.
// Vanishing eps or omega makes the mode inert: amp_i = 0.
struct KernelOps {
  const char* name;

  void (*sc_mode_terms)(const double* xa, const double* za, const double* xb, const double* zb,
                        std::size_t n, ThermalParams thermal, double* omega, double* amp);

  void (*nonsc_mode_terms)(const double* d0a, const double* d1a, const double* d2a,
                           const double* d3a, const double* d0b, const double* d1b,
                           const double* d2b, const double* d3b, std::size_t n,
                           ThermalParams thermal, double* omega, double* amp);

  void (*oscillation)(const double* omega, const double* amp, std::size_t n, double tau,
                      bool long_time_average, double* out);
};

// Scalar reference kernels; always available.
const KernelOps& scalar_kernels();

// AVX2+FMA variant; null when not compiled in or the CPU lacks support.
const KernelOps* avx2_kernels();

// Active set: QUENCHBAT_KERNEL=scalar|avx2 forces a variant (SpecError if
// the forced variant is unavailable); otherwise the best available one.
// Resolved once per process.
const KernelOps& active_kernels();

// Vector transcendental probes for accuracy tests; null without a SIMD
// variant.
struct VecMathProbe {
  void (*exp)(const double* x, std::size_t n, double* out);
  void (*sin)(const double* x, std::size_t n, double* out);
};
const VecMathProbe* vec_math_probe();

}  // namespace quenchbat::kernels
