#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "quenchbat/engine.hpp"

namespace quenchbat {

// Uniform parameter axis: from, from + step, ..., through to (inclusive
// within half a step).
struct SweepAxis {
  std::vector<double> values;
  static SweepAxis uniform(double from, double to, double step);
};

struct SweepResult {
  std::vector<double> param;
  std::vector<double> energy;
};

// Stored energy across a family of quenches indexed by a parameter: at(v)
// supplies the quench at sweep value v. Points are evaluated in parallel
// and the result is deterministic in index order.
SweepResult sweep_stored_energy(const std::function<QuenchSpec<DVectorModel>(double)>& at,
                                const std::vector<double>& values, const BzGrid& grid,
                                const ThermalSpec& thermal, const EngineOptions& options = {});
SweepResult sweep_stored_energy(const std::function<QuenchSpec<NambuModel>(double)>& at,
                                const std::vector<double>& values, const BzGrid& grid,
                                const ThermalSpec& thermal, const EngineOptions& options = {});

// Indices where a curve sampled on a uniform axis has a slope
// discontinuity: local maxima of |second difference| exceeding
// threshold * median(|second difference|) and prominent against the
// curvature two samples away (factor 4). Adjacent flags merge to the
// larger. Endpoints are not reported.
std::vector<std::size_t> detect_kinks(const std::vector<double>& values,
                                      double threshold = 10.0);

// Maximal runs of at least min_run consecutive samples whose one-sided
// finite-difference slope magnitude stays below tol (slope per unit of
// the axis step).
struct PlateauRegion {
  std::size_t begin;
  std::size_t end;  // one past the last index
};
std::vector<PlateauRegion> plateau_regions(const std::vector<double>& param,
                                           const std::vector<double>& values,
                                           double tol = 1e-3, std::size_t min_run = 5);

// Finite-size recurrence profile of the energy curve E(tau) on a chain of
// n_modes momenta: locate the quietest window (minimum variance over
// windows of window samples), treat it as the plateau, and report the
// first window whose variance exceeds onset_factor times the plateau
// variance at a later time, if any. e_max is the largest sample past the
// quiet window (the recurrence regime), tau_at_max its position; when the
// quiet window abuts the end of the curve the whole curve stands in.
struct RecurrenceReport {
  EnergyCurve curve;
  double plateau_value;
  double plateau_variance;
  std::size_t plateau_begin;
  std::optional<double> onset_tau;
  double e_max;
  double tau_at_max;
};
RecurrenceReport recurrence_profile(const QuenchSpec<DVectorModel>& spec, std::size_t n_modes,
                                    const ThermalSpec& thermal, double tau_max,
                                    double dt = 0.05, std::size_t window = 50,
                                    double onset_factor = 5.0,
                                    const EngineOptions& options = {});
RecurrenceReport recurrence_profile(const QuenchSpec<NambuModel>& spec, std::size_t n_modes,
                                    const ThermalSpec& thermal, double tau_max,
                                    double dt = 0.05, std::size_t window = 50,
                                    double onset_factor = 5.0,
                                    const EngineOptions& options = {});

// Least-squares line y = slope * x + intercept. r_squared is the
// coefficient of determination (1 when the y values are constant).
struct LinearFit {
  double slope;
  double intercept;
  double max_residual;
  double r_squared;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Extensive scaling of the maximal charging power: total power N * p(N)
// against N for each chain length, with a linear fit. p(N) is the
// per-mode maximal power from max_power. Needs at least four chain sizes.
struct PowerScaling {
  std::vector<double> n;
  std::vector<double> total_power;
  LinearFit fit;
};
PowerScaling power_scaling(const QuenchSpec<DVectorModel>& spec,
                           const std::vector<std::size_t>& n_list, const ThermalSpec& thermal,
                           const EngineOptions& options = {});
PowerScaling power_scaling(const QuenchSpec<NambuModel>& spec,
                           const std::vector<std::size_t>& n_list, const ThermalSpec& thermal,
                           const EngineOptions& options = {});

}  // namespace quenchbat
