#pragma once

#include <string>
#include <vector>

#include "quenchbat/errors.hpp"

namespace quenchbat {

enum class GridOffset {
  // k_j = -pi + 2*pi*(j + 1/2)/N, j = 0..N-1. All momenta lie strictly
  // inside (-pi, pi) and the grid is symmetric under k -> -k.
  kHalfInteger,
  // k_j = -pi + 2*pi*j/N, j = 0..N-1. Contains the zone boundary -pi.
  kInteger,
};

// Brillouin-zone discretization: either a finite chain of N momenta or the
// thermodynamic limit (adaptive integration over (-pi, pi), reported per
// site with the extensive prefactor factored out).
class BzGrid {
 public:
  static BzGrid finite(int n_modes, GridOffset offset = GridOffset::kHalfInteger);
  static BzGrid thermodynamic(double rel_tol = 1e-9, int initial_panels = 8);

  bool is_finite() const { return finite_; }

  // Finite grids only.
  int modes() const;
  GridOffset offset() const;
  double momentum(int j) const;
  std::vector<double> momenta() const;

  // Thermodynamic limit only.
  double rel_tol() const;
  int initial_panels() const;

  // "half_integer", "integer", or "thermodynamic"; recorded in manifests.
  std::string convention() const;

 private:
  BzGrid() = default;

  bool finite_ = true;
  int n_ = 0;
  GridOffset offset_ = GridOffset::kHalfInteger;
  double rel_tol_ = 1e-9;
  int initial_panels_ = 8;
};

}  // namespace quenchbat
