#include "quenchbat/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "quenchbat/errors.hpp"
#include "quenchbat/kernels.hpp"
#include "quenchbat/parallel.hpp"
#include "quenchbat/quadrature.hpp"
#include "quenchbat/sum.hpp"

namespace quenchbat {

namespace {

constexpr double kPi = std::numbers::pi;

kernels::ThermalParams thermal_params(const ThermalSpec& t) {
  return kernels::ThermalParams{t.beta, t.mu, t.zero_temperature()};
}

// Frequencies and amplitudes of every mode, computed once per batch; the
// pulse duration enters only through the oscillation pass.
struct PreparedModes {
  std::vector<double> omega;
  std::vector<double> amp;

  double energy(double tau, std::vector<double>& scratch) const {
    const kernels::KernelOps& ops = kernels::active_kernels();
    scratch.resize(omega.size());
    ops.oscillation(omega.data(), amp.data(), omega.size(), tau, std::isinf(tau),
                    scratch.data());
    return pairwise_sum(scratch.data(), scratch.size()) /
           static_cast<double>(omega.size());
  }
};

PreparedModes prepare_modes(const QuenchSpec<DVectorModel>& spec, const std::vector<double>& ks,
                            const ThermalSpec& thermal, int workers) {
  const std::size_t n = ks.size();
  std::vector<double> d0a(n), d1a(n), d2a(n), d3a(n), d0b(n), d1b(n), d2b(n), d3b(n);
  parallel_for_chunks(n, workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      DVector da = spec.phase_a(ks[i]);
      DVector db = spec.phase_b(ks[i]);
      d0a[i] = da.d0;
      d1a[i] = da.d1;
      d2a[i] = da.d2;
      d3a[i] = da.d3;
      d0b[i] = db.d0;
      d1b[i] = db.d1;
      d2b[i] = db.d2;
      d3b[i] = db.d3;
    }
  });
  PreparedModes p;
  p.omega.resize(n);
  p.amp.resize(n);
  kernels::active_kernels().nonsc_mode_terms(d0a.data(), d1a.data(), d2a.data(), d3a.data(),
                                             d0b.data(), d1b.data(), d2b.data(), d3b.data(), n,
                                             thermal_params(thermal), p.omega.data(),
                                             p.amp.data());
  return p;
}

PreparedModes prepare_modes(const QuenchSpec<NambuModel>& spec, const std::vector<double>& ks,
                            const ThermalSpec& thermal, int workers) {
  const std::size_t n = ks.size();
  std::vector<double> xa(n), za(n), xb(n), zb(n);
  parallel_for_chunks(n, workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      NambuCoeffs ca = spec.phase_a(ks[i]);
      NambuCoeffs cb = spec.phase_b(ks[i]);
      xa[i] = ca.x;
      za[i] = ca.z;
      xb[i] = cb.x;
      zb[i] = cb.z;
    }
  });
  PreparedModes p;
  p.omega.resize(n);
  p.amp.resize(n);
  kernels::active_kernels().sc_mode_terms(xa.data(), za.data(), xb.data(), zb.data(), n,
                                          thermal_params(thermal), p.omega.data(),
                                          p.amp.data());
  return p;
}

double refine_minimum(const std::function<double(double)>& g, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

double refine_root(const std::function<double(double)>& g, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = g(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Momenta in (-pi, pi) where g has a (near-)zero minimum: band touchings
// make the summand non-smooth there. Missing a near-touching only costs
// refinement steps, so coarse gates are safe.
void scan_minima(const std::function<double(double)>& g, std::vector<double>& out) {
  constexpr int kScan = 1024;
  std::vector<double> gv(kScan + 1);
  for (int i = 0; i <= kScan; ++i) gv[i] = g(-kPi + 2.0 * kPi * i / kScan);
  for (int i = 1; i < kScan; ++i) {
    if (gv[i] <= gv[i - 1] && gv[i] <= gv[i + 1] && gv[i] < 0.05) {
      double lo = -kPi + 2.0 * kPi * (i - 1) / kScan;
      double hi = -kPi + 2.0 * kPi * (i + 1) / kScan;
      double km = refine_minimum(g, lo, hi);
      if (g(km) < 1e-8) out.push_back(km);
    }
  }
}

// Momenta where g crosses zero; at zero temperature the occupation weight
// steps there.
void scan_roots(const std::function<double(double)>& g, std::vector<double>& out) {
  constexpr int kScan = 1024;
  double prev_k = -kPi;
  double prev_g = g(prev_k);
  for (int i = 1; i <= kScan; ++i) {
    double k = -kPi + 2.0 * kPi * i / kScan;
    double cur = g(k);
    if (cur == 0.0) {
      out.push_back(k);
    } else if (prev_g != 0.0 && (prev_g < 0.0) != (cur < 0.0)) {
      out.push_back(refine_root(g, prev_k, k, prev_g));
    }
    prev_k = k;
    prev_g = cur;
  }
}

std::vector<double> integration_breakpoints(const QuenchSpec<DVectorModel>& spec,
                                            const ThermalSpec& thermal) {
  std::vector<double> bps;
  scan_minima([&](double k) { return spec.phase_a(k).root(); }, bps);
  scan_minima([&](double k) { return spec.phase_b(k).root(); }, bps);
  if (thermal.zero_temperature()) {
    scan_roots(
        [&](double k) {
          DVector d = spec.phase_a(k);
          return d.d0 - d.root() - thermal.mu;
        },
        bps);
    scan_roots(
        [&](double k) {
          DVector d = spec.phase_a(k);
          return d.d0 + d.root() - thermal.mu;
        },
        bps);
  }
  return bps;
}

std::vector<double> integration_breakpoints(const QuenchSpec<NambuModel>& spec,
                                            const ThermalSpec&) {
  std::vector<double> bps;
  scan_minima([&](double k) { return spec.phase_a(k).root(); }, bps);
  scan_minima([&](double k) { return spec.phase_b(k).root(); }, bps);
  return bps;
}

quadrature::BatchFn make_integrand(const QuenchSpec<DVectorModel>& spec,
                                   const ThermalSpec& thermal, double tau) {
  kernels::ThermalParams tp = thermal_params(thermal);
  bool lta = std::isinf(tau);
  return [&spec, tp, tau, lta](const double* xs, std::size_t cnt, double* out) {
    std::vector<double> d0a(cnt), d1a(cnt), d2a(cnt), d3a(cnt);
    std::vector<double> d0b(cnt), d1b(cnt), d2b(cnt), d3b(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
      DVector da = spec.phase_a(xs[i]);
      DVector db = spec.phase_b(xs[i]);
      d0a[i] = da.d0;
      d1a[i] = da.d1;
      d2a[i] = da.d2;
      d3a[i] = da.d3;
      d0b[i] = db.d0;
      d1b[i] = db.d1;
      d2b[i] = db.d2;
      d3b[i] = db.d3;
    }
    std::vector<double> omega(cnt), amp(cnt);
    const kernels::KernelOps& ops = kernels::active_kernels();
    ops.nonsc_mode_terms(d0a.data(), d1a.data(), d2a.data(), d3a.data(), d0b.data(), d1b.data(),
                         d2b.data(), d3b.data(), cnt, tp, omega.data(), amp.data());
    ops.oscillation(omega.data(), amp.data(), cnt, tau, lta, out);
  };
}

quadrature::BatchFn make_integrand(const QuenchSpec<NambuModel>& spec,
                                   const ThermalSpec& thermal, double tau) {
  kernels::ThermalParams tp = thermal_params(thermal);
  bool lta = std::isinf(tau);
  return [&spec, tp, tau, lta](const double* xs, std::size_t cnt, double* out) {
    std::vector<double> xa(cnt), za(cnt), xb(cnt), zb(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
      NambuCoeffs ca = spec.phase_a(xs[i]);
      NambuCoeffs cb = spec.phase_b(xs[i]);
      xa[i] = ca.x;
      za[i] = ca.z;
      xb[i] = cb.x;
      zb[i] = cb.z;
    }
    std::vector<double> omega(cnt), amp(cnt);
    const kernels::KernelOps& ops = kernels::active_kernels();
    ops.sc_mode_terms(xa.data(), za.data(), xb.data(), zb.data(), cnt, tp, omega.data(),
                      amp.data());
    ops.oscillation(omega.data(), amp.data(), cnt, tau, lta, out);
  };
}

template <class ModelT>
double stored_energy_thermo(const QuenchSpec<ModelT>& spec, const BzGrid& grid,
                            const ThermalSpec& thermal, double tau) {
  quadrature::QuadratureOptions opt;
  opt.rel_tol = grid.rel_tol();
  opt.initial_panels = static_cast<std::size_t>(grid.initial_panels());
  opt.breakpoints = integration_breakpoints(spec, thermal);
  quadrature::QuadratureResult res =
      quadrature::integrate_adaptive(make_integrand(spec, thermal, tau), -kPi, kPi, opt);
  return res.value / (2.0 * kPi);
}

template <class ModelT>
double stored_energy_impl(const QuenchSpec<ModelT>& spec, const BzGrid& grid,
                          const ThermalSpec& thermal, const EngineOptions& options) {
  spec.validate();
  thermal.validate();
  if (grid.is_finite()) {
    int workers = resolve_workers(options.workers);
    PreparedModes p = prepare_modes(spec, grid.momenta(), thermal, workers);
    std::vector<double> scratch;
    return p.energy(spec.tau, scratch);
  }
  return stored_energy_thermo(spec, grid, thermal, spec.tau);
}

template <class ModelT>
EnergyCurve energy_curve_impl(const QuenchSpec<ModelT>& spec, const BzGrid& grid,
                              const ThermalSpec& thermal, const std::vector<double>& tau,
                              const EngineOptions& options) {
  spec.validate();
  thermal.validate();
  for (double t : tau) {
    if (std::isnan(t) || t < 0.0) throw SpecError("curve tau values must be >= 0 or infinite");
  }
  EnergyCurve curve;
  curve.tau = tau;
  curve.energy.resize(tau.size());
  int workers = resolve_workers(options.workers);
  if (grid.is_finite()) {
    PreparedModes p = prepare_modes(spec, grid.momenta(), thermal, workers);
    parallel_for_chunks(tau.size(), workers, [&](std::size_t lo, std::size_t hi) {
      std::vector<double> scratch;
      for (std::size_t i = lo; i < hi; ++i) curve.energy[i] = p.energy(tau[i], scratch);
    });
  } else {
    for (std::size_t i = 0; i < tau.size(); ++i) {
      curve.energy[i] = stored_energy_thermo(spec, grid, thermal, tau[i]);
    }
  }
  return curve;
}

template <class ModelT>
MaxPower max_power_impl(const QuenchSpec<ModelT>& spec, const BzGrid& grid,
                        const ThermalSpec& thermal, const std::vector<double>& taus,
                        const EngineOptions& options) {
  spec.validate();
  thermal.validate();
  if (taus.empty()) throw SpecError("power tau grid must be nonempty");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!std::isfinite(taus[i]) || !(taus[i] > 0.0)) {
      throw SpecError("power tau grid values must be finite and positive");
    }
    if (i > 0 && !(taus[i] > taus[i - 1])) {
      throw SpecError("power tau grid must be strictly ascending");
    }
  }
  int workers = resolve_workers(options.workers);

  PreparedModes prepared;
  std::vector<double> scratch;
  std::function<double(double)> energy;
  if (grid.is_finite()) {
    prepared = prepare_modes(spec, grid.momenta(), thermal, workers);
    energy = [&prepared, &scratch](double t) { return prepared.energy(t, scratch); };
  } else {
    energy = [&spec, &grid, &thermal](double t) {
      return stored_energy_thermo(spec, grid, thermal, t);
    };
  }

  std::vector<double> power(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) power[i] = energy(taus[i]) / taus[i];
  std::size_t best = 0;
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (power[i] > power[best]) best = i;
  }
  MaxPower result{power[best], taus[best]};

  // Refine only a strict interior maximum; a boundary or tied sample stays
  // the answer as-is.
  if (best > 0 && best + 1 < taus.size() && power[best] > power[best - 1] &&
      power[best] > power[best + 1]) {
    const double invphi = 0.6180339887498948482;
    double a = taus[best - 1];
    double b = taus[best + 1];
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double pc = energy(c) / c;
    double pd = energy(d) / d;
    for (int it = 0; it < 200 && (b - a) > 1e-10 * result.tau; ++it) {
      if (pc > result.power) result = MaxPower{pc, c};
      if (pd > result.power) result = MaxPower{pd, d};
      if (pc > pd) {
        b = d;
        d = c;
        pd = pc;
        c = b - invphi * (b - a);
        pc = energy(c) / c;
      } else {
        a = c;
        c = d;
        pc = pd;
        d = a + invphi * (b - a);
        pd = energy(d) / d;
      }
    }
    if (pc > result.power) result = MaxPower{pc, c};
    if (pd > result.power) result = MaxPower{pd, d};
  }
  return result;
}

}  // namespace

double stored_energy(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal, const EngineOptions& options) {
  return stored_energy_impl(spec, grid, thermal, options);
}

double stored_energy(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                     const ThermalSpec& thermal, const EngineOptions& options) {
  return stored_energy_impl(spec, grid, thermal, options);
}

EnergyCurve energy_curve(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                         const ThermalSpec& thermal, const std::vector<double>& tau,
                         const EngineOptions& options) {
  return energy_curve_impl(spec, grid, thermal, tau, options);
}

EnergyCurve energy_curve(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                         const ThermalSpec& thermal, const std::vector<double>& tau,
                         const EngineOptions& options) {
  return energy_curve_impl(spec, grid, thermal, tau, options);
}

MaxPower max_power(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const EngineOptions& options) {
  return max_power_impl(spec, grid, thermal, log_spaced_tau(), options);
}

MaxPower max_power(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const EngineOptions& options) {
  return max_power_impl(spec, grid, thermal, log_spaced_tau(), options);
}

MaxPower max_power(const QuenchSpec<DVectorModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const std::vector<double>& tau_grid,
                   const EngineOptions& options) {
  return max_power_impl(spec, grid, thermal, tau_grid, options);
}

MaxPower max_power(const QuenchSpec<NambuModel>& spec, const BzGrid& grid,
                   const ThermalSpec& thermal, const std::vector<double>& tau_grid,
                   const EngineOptions& options) {
  return max_power_impl(spec, grid, thermal, tau_grid, options);
}

std::vector<double> log_spaced_tau(double tau_min, double tau_max, std::size_t count) {
  if (!(tau_min > 0.0) || !(tau_max > tau_min)) {
    throw SpecError("log spacing needs 0 < tau_min < tau_max");
  }
  if (count < 2) throw SpecError("log spacing needs at least two samples");
  std::vector<double> taus(count);
  double lmin = std::log(tau_min);
  double lmax = std::log(tau_max);
  for (std::size_t i = 0; i < count; ++i) {
    taus[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                  static_cast<double>(count - 1));
  }
  taus.front() = tau_min;
  taus.back() = tau_max;
  return taus;
}

}  // namespace quenchbat
