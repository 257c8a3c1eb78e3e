#include "quenchbat/model_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "quenchbat/errors.hpp"

namespace quenchbat {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw SpecError(std::string(name) + " must be finite");
}

}  // namespace

NambuModel build_ising(const IsingParams& params) {
  require_finite(params.h, "ising h");
  double h = params.h;
  return NambuModel(
      [h](const Momentum& k) {
        return NambuCoeffs{-std::sin(k.k()), h - std::cos(k.k())};
      },
      1, "ising");
}

NambuModel build_xy(const XYParams& params) {
  require_finite(params.gamma, "xy gamma");
  require_finite(params.h, "xy h");
  double g = params.gamma;
  double h = params.h;
  return NambuModel(
      [g, h](const Momentum& k) {
        return NambuCoeffs{-g * std::sin(k.k()), h - std::cos(k.k())};
      },
      1, "xy");
}

NambuModel build_cluster_ising(const ClusterIsingParams& params) {
  require_finite(params.lambda, "cluster lambda");
  double l = params.lambda;
  return NambuModel(
      [l](const Momentum& km) {
        double k = km.k();
        return NambuCoeffs{std::sin(2.0 * k) + l * std::sin(k),
                           -std::cos(2.0 * k) + l * std::cos(k)};
      },
      1, "cluster_ising", 2.0);
}

SshParams SshParams::nearest(double delta) {
  return SshParams{1.0 - delta, 1.0 + delta, 0.0, 0.0, 0.0};
}

SshParams SshParams::third_neighbor(double delta1, double delta3, double r) {
  return SshParams{1.0 - delta1, 1.0 + delta1, 0.0, r - delta3, r + delta3};
}

DVectorModel build_ssh(const SshParams& params) {
  require_finite(params.j1, "ssh j1");
  require_finite(params.j1p, "ssh j1p");
  require_finite(params.j2, "ssh j2");
  require_finite(params.j3, "ssh j3");
  require_finite(params.j3p, "ssh j3p");
  SshParams p = params;
  return DVectorModel(
      [p](const Momentum& km) {
        double k = km.k();
        double c = std::cos(k);
        double s = std::sin(k);
        DVector d;
        d.d0 = 2.0 * p.j2 * c;
        d.d1 = p.j1p + p.j1 * c + p.j3p * c + p.j3 * std::cos(2.0 * k);
        d.d2 = p.j1 * s + p.j3 * std::sin(2.0 * k) - p.j3p * s;
        d.d3 = 0.0;
        return d;
      },
      1, "ssh");
}

SshParams ssh_protocol_params(const SshProtocolParams& protocol, double delta1) {
  require_finite(protocol.alpha, "protocol alpha");
  require_finite(protocol.beta_c, "protocol beta_c");
  require_finite(protocol.r, "protocol r");
  require_finite(protocol.m, "protocol m");
  require_finite(protocol.q, "protocol q");
  require_finite(delta1, "protocol delta1");

  double delta3 = protocol.m * delta1 + protocol.q;
  SshParams p;
  p.j1 = 1.0 - protocol.alpha * delta1;
  p.j1p = 1.0 + protocol.alpha * delta1;
  p.j2 = 0.0;
  p.j3 = protocol.r - protocol.beta_c * delta3;
  p.j3p = protocol.r + protocol.beta_c * delta3;

  // Dominant-nearest-neighbor window; with no third-neighbor terms at all
  // there is nothing to dominate and the check is vacuous.
  if (p.j3 != 0.0 || p.j3p != 0.0) {
    auto require = [](double lhs, const char* ln, double rhs, const char* rn) {
      if (!(std::abs(lhs) > std::abs(rhs))) {
        throw SpecError(std::string("protocol validity violated: |") + ln + "| <= |" + rn +
                        "| (" + std::to_string(std::abs(lhs)) + " <= " +
                        std::to_string(std::abs(rhs)) + ")");
      }
    };
    require(p.j1, "j1", p.j3, "j3");
    require(p.j1, "j1", p.j3p, "j3p");
    require(p.j1p, "j1p", p.j3, "j3");
    require(p.j1p, "j1p", p.j3p, "j3p");
  }
  return p;
}

DVectorModel ssh_protocol_phase(const SshProtocolParams& protocol, double delta1) {
  return build_ssh(ssh_protocol_params(protocol, delta1));
}

QuenchSpec<DVectorModel> ssh_protocol_quench(const SshProtocolParams& protocol, double delta1_0,
                                             double delta1_1, double tau) {
  QuenchSpec<DVectorModel> spec{ssh_protocol_phase(protocol, delta1_0),
                                ssh_protocol_phase(protocol, delta1_0 + delta1_1), tau};
  spec.validate();
  return spec;
}

double ising_plateau_closed_form(double h_final) {
  if (std::abs(h_final) >= 1.0) return 0.25;
  return 0.25 * h_final * h_final;
}

double xy_plateau_closed_form(double gamma1) {
  if (gamma1 <= 0.0) return 0.25;
  double den = gamma1 + 1.0;
  return (gamma1 - 1.0) * (gamma1 - 1.0) / (4.0 * den * den);
}

double xy_plateau_integrand(double gamma1, double k) {
  double s2 = std::sin(k) * std::sin(k);
  double den = 1.0 + (gamma1 * gamma1 - 1.0) * s2;
  return (1.0 - gamma1) * (1.0 - gamma1) * (s2 - s2 * s2) / (4.0 * kPi * den);
}

XyAntiderivative xy_plateau_antiderivative(double gamma1, double k) {
  double g2 = gamma1 * gamma1;
  double d = g2 - 1.0;
  if (std::abs(d) < 1e-12) throw SpecError("antiderivative needs gamma1^2 != 1");
  XyAntiderivative result;
  result.piece_arctan = gamma1 / (d * d) * std::atan(gamma1 * std::tan(k));
  result.piece_algebraic = -g2 * k / (d * d) + (0.5 * k - 0.25 * std::sin(2.0 * k)) / d;
  return result;
}

double xy_plateau_via_antiderivative(double gamma1) {
  double g2 = gamma1 * gamma1;
  double d = g2 - 1.0;
  if (std::abs(d) < 1e-12) throw SpecError("antiderivative needs gamma1^2 != 1");
  // The arctangent branch steps by sign(gamma1) pi across k = pi/2; a
  // continuous antiderivative gains |gamma1| pi / (gamma1^2-1)^2 over [0, pi].
  double integral = std::abs(gamma1) * kPi / (d * d);
  XyAntiderivative hi = xy_plateau_antiderivative(gamma1, kPi);
  XyAntiderivative lo = xy_plateau_antiderivative(gamma1, 0.0);
  integral += (hi.piece_arctan + hi.piece_algebraic) - (lo.piece_arctan + lo.piece_algebraic);
  return -(1.0 - gamma1) * (1.0 - gamma1) / (2.0 * kPi) * integral;
}

namespace {

double refine_gap_minimum(const std::function<double(double)>& gap, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (gap(m1) < gap(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> closure_scan(const std::function<double(double)>& gap, double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw SpecError("closure scan resolution must be in (0, 1]");
  }
  int n = static_cast<int>(std::ceil(kPi / resolution));
  std::vector<double> ks(static_cast<std::size_t>(n) + 1);
  std::vector<double> gv(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    ks[i] = kPi * i / n;
    gv[i] = gap(ks[i]);
  }
  std::vector<double> found;
  auto consider = [&](double lo, double hi) {
    double km = refine_gap_minimum(gap, lo, hi);
    if (gap(km) < 1e-8) found.push_back(km);
  };
  if (gv[0] <= gv[1] && gv[0] < 0.05) consider(ks[0], ks[1]);
  for (int i = 1; i < n; ++i) {
    if (gv[i] <= gv[i - 1] && gv[i] <= gv[i + 1] && gv[i] < 0.05) {
      consider(ks[i - 1], ks[i + 1]);
    }
  }
  if (gv[n] <= gv[n - 1] && gv[n] < 0.05) consider(ks[n - 1], ks[n]);

  std::sort(found.begin(), found.end());
  std::vector<double> out;
  for (double k : found) {
    if (out.empty() || k - out.back() > resolution) out.push_back(k);
  }
  return out;
}

}  // namespace

std::vector<double> gap_closure_momenta(const NambuModel& model, double resolution) {
  return closure_scan([&model](double k) { return model(k).root(); }, resolution);
}

std::vector<double> gap_closure_momenta(const DVectorModel& model, double resolution) {
  return closure_scan([&model](double k) { return model(k).root(); }, resolution);
}

}  // namespace quenchbat
