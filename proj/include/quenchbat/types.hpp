#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "quenchbat/errors.hpp"

namespace quenchbat {

// Quasimomentum with a fixed dimension tag. Every bundled model is
// one-dimensional; the type carries up to three components so that
// higher-dimensional maps fit the same interfaces.
class Momentum {
 public:
  // 1D is the common case, so the single-component constructor is implicit.
  Momentum(double k) : comp_{k, 0.0, 0.0}, dim_(1) {}
  Momentum(double kx, double ky) : comp_{kx, ky, 0.0}, dim_(2) {}
  Momentum(double kx, double ky, double kz) : comp_{kx, ky, kz}, dim_(3) {}

  int dimension() const { return dim_; }
  double operator[](int i) const { return comp_[static_cast<std::size_t>(i)]; }
  // 1D shorthand.
  double k() const { return comp_[0]; }

 private:
  std::array<double, 3> comp_;
  int dim_;
};

// Coefficients of H(k) = d0*I + d1*sx + d2*sy + d3*sz at one momentum.
struct DVector {
  double d0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  // Norm of the (d1, d2, d3) part; half of the band splitting.
  double root() const { return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3); }
};

// Coefficients (X, Z) of the Nambu block (1/2)[Z sz + X sx] at one momentum.
struct NambuCoeffs {
  double x = 0.0;
  double z = 0.0;

  double root() const { return std::sqrt(x * x + z * z); }
};

// Inverse temperature and chemical potential of the pre-quench state.
// beta may be +infinity (ground state). mu is meaningful only for the
// non-superconducting class; the superconducting class is particle-hole
// symmetric and ignores it.
struct ThermalSpec {
  double beta = std::numeric_limits<double>::infinity();
  double mu = 0.0;

  bool zero_temperature() const { return std::isinf(beta); }

  // Throws SpecError unless beta > 0 (infinity allowed) and mu is finite.
  void validate() const;
};

// Non-superconducting two-band model: momentum -> d-vector. The evaluator
// must be deterministic; all components must be finite (checked per call,
// EvaluationError otherwise).
class DVectorModel {
 public:
  using Evaluator = std::function<DVector(const Momentum&)>;

  DVectorModel(Evaluator eval, int dimension = 1, std::string name = "custom")
      : eval_(std::move(eval)), dim_(dimension), name_(std::move(name)) {
    if (!eval_) throw SpecError("DVectorModel requires an evaluator");
    if (dim_ < 1 || dim_ > 3) throw SpecError("DVectorModel dimension must be 1..3");
  }

  DVector operator()(const Momentum& k) const {
    DVector d = eval_(k);
    if (!std::isfinite(d.d0) || !std::isfinite(d.d1) || !std::isfinite(d.d2) ||
        !std::isfinite(d.d3)) {
      throw EvaluationError("model '" + name_ + "' returned a non-finite d-vector at k = " +
                                std::to_string(k.k()),
                            k.k());
    }
    return d;
  }

  int dimension() const { return dim_; }
  const std::string& name() const { return name_; }

 private:
  Evaluator eval_;
  int dim_;
  std::string name_;
};

// Superconducting (Nambu) model: momentum -> (X, Z). Same evaluator contract
// as DVectorModel. hamiltonian_prefactor records a global scale some models
// print in front of the Hamiltonian; the stored-energy formula path and the
// default oracle both consume the unscaled (X, Z).
class NambuModel {
 public:
  using Evaluator = std::function<NambuCoeffs(const Momentum&)>;

  NambuModel(Evaluator eval, int dimension = 1, std::string name = "custom",
             double hamiltonian_prefactor = 1.0)
      : eval_(std::move(eval)),
        dim_(dimension),
        name_(std::move(name)),
        prefactor_(hamiltonian_prefactor) {
    if (!eval_) throw SpecError("NambuModel requires an evaluator");
    if (dim_ < 1 || dim_ > 3) throw SpecError("NambuModel dimension must be 1..3");
  }

  NambuCoeffs operator()(const Momentum& k) const {
    NambuCoeffs c = eval_(k);
    if (!std::isfinite(c.x) || !std::isfinite(c.z)) {
      throw EvaluationError("model '" + name_ + "' returned non-finite coefficients at k = " +
                                std::to_string(k.k()),
                            k.k());
    }
    return c;
  }

  int dimension() const { return dim_; }
  const std::string& name() const { return name_; }
  double hamiltonian_prefactor() const { return prefactor_; }

 private:
  Evaluator eval_;
  int dim_;
  std::string name_;
  double prefactor_;
};

// A double sudden quench: the system is prepared thermal with respect to
// phase_a, evolves under phase_b for a duration tau, then is measured with
// phase_a again. tau = +infinity selects the long-time average (the plateau).
template <class ModelT>
struct QuenchSpec {
  ModelT phase_a;
  ModelT phase_b;
  double tau = std::numeric_limits<double>::infinity();

  bool long_time_average() const { return std::isinf(tau); }

  void validate() const {
    if (phase_a.dimension() != phase_b.dimension())
      throw SpecError("quench phases must share the momentum dimension");
    if (std::isnan(tau) || tau < 0.0) throw SpecError("tau must be >= 0 or infinite");
  }
};

inline void ThermalSpec::validate() const {
  if (std::isnan(beta) || beta <= 0.0) throw SpecError("thermal beta must be > 0 (inf allowed)");
  if (!std::isfinite(mu)) throw SpecError("thermal mu must be finite");
}

}  // namespace quenchbat
