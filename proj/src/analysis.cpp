#include "quenchbat/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "quenchbat/errors.hpp"
#include "quenchbat/parallel.hpp"

namespace quenchbat {

SweepAxis SweepAxis::uniform(double from, double to, double step) {
  if (!std::isfinite(from) || !std::isfinite(to)) throw SpecError("sweep bounds must be finite");
  if (!(step > 0.0)) throw SpecError("sweep step must be > 0");
  if (to < from) throw SpecError("sweep range needs to >= from");
  auto m = static_cast<std::size_t>(std::floor((to - from) / step + 0.5));
  if (from + static_cast<double>(m) * step > to + 0.5 * step && m > 0) --m;
  SweepAxis axis;
  axis.values.reserve(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    axis.values.push_back(from + static_cast<double>(i) * step);
  }
  return axis;
}

namespace {

template <class ModelT>
SweepResult sweep_impl(const std::function<QuenchSpec<ModelT>(double)>& at,
                       const std::vector<double>& values, const BzGrid& grid,
                       const ThermalSpec& thermal, const EngineOptions& options) {
  if (!at) throw SpecError("sweep needs a quench factory");
  SweepResult result;
  result.param = values;
  result.energy.resize(values.size());
  int workers = resolve_workers(options.workers);
  // Parallelism lives across sweep points; each point runs single-threaded
  // so the per-point sums stay identical to a standalone evaluation.
  parallel_for_chunks(values.size(), workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      result.energy[i] = stored_energy(at(values[i]), grid, thermal, EngineOptions{1});
    }
  });
  return result;
}

}  // namespace

SweepResult sweep_stored_energy(const std::function<QuenchSpec<DVectorModel>(double)>& at,
                                const std::vector<double>& values, const BzGrid& grid,
                                const ThermalSpec& thermal, const EngineOptions& options) {
  return sweep_impl(at, values, grid, thermal, options);
}

SweepResult sweep_stored_energy(const std::function<QuenchSpec<NambuModel>(double)>& at,
                                const std::vector<double>& values, const BzGrid& grid,
                                const ThermalSpec& thermal, const EngineOptions& options) {
  return sweep_impl(at, values, grid, thermal, options);
}

std::vector<std::size_t> detect_kinks(const std::vector<double>& values, double threshold) {
  if (!(threshold > 0.0)) throw SpecError("kink threshold must be > 0");
  std::vector<std::size_t> out;
  std::size_t n = values.size();
  if (n < 3) return out;

  // |second difference|, zero-padded at the ends so boundary comparisons
  // see an inert neighbor.
  std::vector<double> dd(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    dd[i] = std::abs(values[i + 1] - 2.0 * values[i] + values[i - 1]);
  }

  std::vector<double> mag(dd.begin() + 1, dd.end() - 1);
  std::sort(mag.begin(), mag.end());
  double median;
  std::size_t m = mag.size();
  if (m % 2 == 1) {
    median = mag[m / 2];
  } else {
    median = 0.5 * (mag[m / 2 - 1] + mag[m / 2]);
  }

  // A slope discontinuity contaminates at most the two adjacent second
  // differences, so a true kink dominates the curvature two samples away;
  // smooth steep regions fail that prominence test.
  std::vector<std::size_t> flagged;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double v = dd[i];
    if (!(v > threshold * median)) continue;
    if (dd[i - 1] > v || dd[i + 1] > v) continue;
    if (i >= 2 && !(v >= 4.0 * dd[i - 2])) continue;
    if (i + 2 < n && !(v >= 4.0 * dd[i + 2])) continue;
    flagged.push_back(i);
  }

  for (std::size_t idx : flagged) {
    if (!out.empty() && idx == out.back() + 1) {
      if (dd[idx] > dd[out.back()]) out.back() = idx;
    } else {
      out.push_back(idx);
    }
  }
  return out;
}

std::vector<PlateauRegion> plateau_regions(const std::vector<double>& param,
                                           const std::vector<double>& values, double tol,
                                           std::size_t min_run) {
  if (param.size() != values.size()) throw SpecError("plateau arrays must match in length");
  if (!(tol > 0.0)) throw SpecError("plateau tolerance must be > 0");
  if (min_run < 2) throw SpecError("plateau min_run must be >= 2");
  std::size_t n = param.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(param[i + 1] > param[i])) throw SpecError("plateau axis must increase strictly");
  }

  std::vector<PlateauRegion> regions;
  std::size_t i = 0;
  while (i + 1 < n) {
    double slope = std::abs((values[i + 1] - values[i]) / (param[i + 1] - param[i]));
    if (slope >= tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n &&
           std::abs((values[j + 1] - values[j]) / (param[j + 1] - param[j])) < tol) {
      ++j;
    }
    if (j - i + 1 >= min_run) regions.push_back(PlateauRegion{i, j + 1});
    i = j + 1;
  }
  return regions;
}

namespace {

template <class ModelT>
RecurrenceReport recurrence_impl(const QuenchSpec<ModelT>& spec, std::size_t n_modes,
                                 const ThermalSpec& thermal, double tau_max, double dt,
                                 std::size_t window, double onset_factor,
                                 const EngineOptions& options) {
  if (!(dt > 0.0) || !(tau_max > dt)) throw SpecError("recurrence needs 0 < dt < tau_max");
  if (window < 2) throw SpecError("recurrence window must be >= 2");
  if (!(onset_factor > 1.0)) throw SpecError("recurrence onset factor must be > 1");
  auto count = static_cast<std::size_t>(std::floor(tau_max / dt + 1e-9));
  if (count < 3 * window) {
    throw SpecError("recurrence needs at least 3 windows of samples; raise tau_max or lower dt");
  }

  std::vector<double> taus(count);
  for (std::size_t i = 0; i < count; ++i) taus[i] = dt * static_cast<double>(i + 1);
  RecurrenceReport rep{
      energy_curve(spec, BzGrid::finite(static_cast<int>(n_modes)), thermal, taus, options),
      0.0, 0.0, 0, std::nullopt, 0.0, 0.0};
  const std::vector<double>& v = rep.curve.energy;

  auto window_stats = [&](std::size_t s, double& mean, double& var) {
    double sum = 0.0;
    for (std::size_t i = s; i < s + window; ++i) sum += v[i];
    mean = sum / static_cast<double>(window);
    double acc = 0.0;
    for (std::size_t i = s; i < s + window; ++i) {
      double d = v[i] - mean;
      acc += d * d;
    }
    var = acc / static_cast<double>(window);
  };

  std::size_t best = 0;
  double best_mean;
  double best_var;
  window_stats(0, best_mean, best_var);
  for (std::size_t s = 1; s + window <= count; ++s) {
    double mean;
    double var;
    window_stats(s, mean, var);
    if (var < best_var) {
      best = s;
      best_var = var;
      best_mean = mean;
    }
  }
  rep.plateau_begin = best;
  rep.plateau_value = best_mean;
  rep.plateau_variance = best_var;

  for (std::size_t s = best + window; s + window <= count; ++s) {
    double mean;
    double var;
    window_stats(s, mean, var);
    if (var > onset_factor * best_var) {
      rep.onset_tau = rep.curve.tau[s];
      break;
    }
  }

  // The recurrence regime is everything past the quiet window. When that
  // window abuts the end of the curve there is no post-plateau data and the
  // whole curve stands in (periodic curves never dephase, so any window is
  // representative).
  std::size_t from = best + window;
  if (from >= count) from = 0;
  std::size_t imax = from;
  for (std::size_t i = from + 1; i < count; ++i) {
    if (v[i] > v[imax]) imax = i;
  }
  rep.e_max = v[imax];
  rep.tau_at_max = rep.curve.tau[imax];
  return rep;
}

}  // namespace

RecurrenceReport recurrence_profile(const QuenchSpec<DVectorModel>& spec, std::size_t n_modes,
                                    const ThermalSpec& thermal, double tau_max, double dt,
                                    std::size_t window, double onset_factor,
                                    const EngineOptions& options) {
  return recurrence_impl(spec, n_modes, thermal, tau_max, dt, window, onset_factor, options);
}

RecurrenceReport recurrence_profile(const QuenchSpec<NambuModel>& spec, std::size_t n_modes,
                                    const ThermalSpec& thermal, double tau_max, double dt,
                                    std::size_t window, double onset_factor,
                                    const EngineOptions& options) {
  return recurrence_impl(spec, n_modes, thermal, tau_max, dt, window, onset_factor, options);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw SpecError("fit needs >= 2 matching points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw SpecError("fit needs at least two distinct x values");
  LinearFit fit{sxy / sxx, 0.0, 0.0, 1.0};
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.slope * x[i] + fit.intercept);
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
    ss_res += r * r;
    ss_tot += (y[i] - my) * (y[i] - my);
  }
  if (ss_tot > 0.0) fit.r_squared = 1.0 - ss_res / ss_tot;
  return fit;
}

namespace {

template <class ModelT>
PowerScaling power_scaling_impl(const QuenchSpec<ModelT>& spec,
                                const std::vector<std::size_t>& n_list,
                                const ThermalSpec& thermal, const EngineOptions& options) {
  if (n_list.size() < 4) throw SpecError("power scaling needs at least four chain sizes");
  PowerScaling ps;
  for (std::size_t n : n_list) {
    if (n < 1) throw SpecError("chain sizes must be >= 1");
    MaxPower mp = max_power(spec, BzGrid::finite(static_cast<int>(n)), thermal, options);
    ps.n.push_back(static_cast<double>(n));
    ps.total_power.push_back(static_cast<double>(n) * mp.power);
  }
  ps.fit = fit_line(ps.n, ps.total_power);
  return ps;
}

}  // namespace

PowerScaling power_scaling(const QuenchSpec<DVectorModel>& spec,
                           const std::vector<std::size_t>& n_list, const ThermalSpec& thermal,
                           const EngineOptions& options) {
  return power_scaling_impl(spec, n_list, thermal, options);
}

PowerScaling power_scaling(const QuenchSpec<NambuModel>& spec,
                           const std::vector<std::size_t>& n_list, const ThermalSpec& thermal,
                           const EngineOptions& options) {
  return power_scaling_impl(spec, n_list, thermal, options);
}

}  // namespace quenchbat
