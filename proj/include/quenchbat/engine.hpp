#pragma once

#include <cstddef>
#include <vector>

#include "quenchbat/bz_grid.hpp"
#include "quenchbat/types.hpp"

namespace quenchbat {

struct EngineOptions {
  // 0 = resolve from QUENCHBAT_WORKERS, else hardware concurrency.
  int workers = 0;
};

// Stored energy per momentum mode of the double quench A -> B -> A,
// measured against H_A at the end of the pulse. tau = infinity selects the
// long-time average. Finite grids sum modes pairwise in index order;
// thermodynamic grids integrate dk/(2 pi) adaptively with panel boundaries
// at spectral non-smoothness (band touchings of either phase, and at zero
// temperature the chemical-potential crossings of the initial bands).
double stored_energy(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal, const EngineOptions& options = {});
double stored_energy(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal, const EngineOptions& options = {});

struct EnergyCurve {
  std::vector<double> tau;
  std::vector<double> energy;
};

// Stored energy across many pulse durations with the momentum batch
// prepared once. tau values are evaluated in order.
EnergyCurve energy_curve(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                         const ThermalSpec& thermal, const std::vector<double>& tau,
                         const EngineOptions& options = {});
EnergyCurve energy_curve(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                         const ThermalSpec& thermal, const std::vector<double>& tau,
                         const EngineOptions& options = {});

struct MaxPower {
  double power;  // E(tau*) / tau*
  double tau;    // charging duration tau*
};

// Maximum charging power over tau in [1e-3, 50]: coarse log-spaced scan,
// then golden-section refinement when the best sample is a strict interior
// maximum. Ties resolve to the smallest tau.
MaxPower max_power(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const EngineOptions& options = {});
MaxPower max_power(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const EngineOptions& options = {});

// Same search over a caller-supplied tau grid (nonempty, finite, positive,
// strictly ascending; SpecError otherwise).
MaxPower max_power(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const std::vector<double>& tau_grid,
                   const EngineOptions& options = {});
MaxPower max_power(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const std::vector<double>& tau_grid,
                   const EngineOptions& options = {});

// Log-spaced tau samples, inclusive of both endpoints.
std::vector<double> log_spaced_tau(double tau_min = 1e-3, double tau_max = 50.0,
                                   std::size_t count = 400);

namespace oracle {

// Independent dense evaluation of one momentum mode's stored energy:
// build the 2x2 (or Nambu even-block) Hamiltonians, the Gibbs correlation
// state, the exact evolution operator, and take the trace directly. Slow;
// exists to check the kernel formulas, never used by the engine.
double stored_energy_mode(const QuenchSpec<DVectorModel>& spec, const Momentum& k,
                          const ThermalSpec& thermal);
double stored_energy_mode(const QuenchSpec<NambuModel>& spec, const Momentum& k,
                          const ThermalSpec& thermal);

// Same construction with the pair Hamiltonian multiplied by coeff_scale,
// Gibbs state taken at the scaled Hamiltonian. Quantifies how an overall
// Hamiltonian prefactor displaces energy scale, oscillation frequency and
// effective temperature relative to the unscaled coefficients.
double stored_energy_mode_scaled(const QuenchSpec<NambuModel>& spec, const Momentum& k,
                                 const ThermalSpec& thermal, double coeff_scale);

// Grid average of stored_energy_mode (finite grids only).
double stored_energy(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal);
double stored_energy(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal);

}  // namespace oracle

}  // namespace quenchbat
