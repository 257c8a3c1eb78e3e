#include "quenchbat/bz_grid.hpp"

#include <numbers>

namespace quenchbat {

BzGrid BzGrid::finite(int n_modes, GridOffset offset) {
  if (n_modes < 1) throw SpecError("finite grid needs at least one momentum");
  BzGrid g;
  g.finite_ = true;
  g.n_ = n_modes;
  g.offset_ = offset;
  return g;
}

BzGrid BzGrid::thermodynamic(double rel_tol, int initial_panels) {
  if (!(rel_tol > 0.0)) throw SpecError("thermodynamic grid rel_tol must be > 0");
  if (initial_panels < 1) throw SpecError("thermodynamic grid needs at least one panel");
  BzGrid g;
  g.finite_ = false;
  g.n_ = 0;
  g.rel_tol_ = rel_tol;
  g.initial_panels_ = initial_panels;
  return g;
}

int BzGrid::modes() const {
  if (!finite_) throw SpecError("modes() requires a finite grid");
  return n_;
}

GridOffset BzGrid::offset() const {
  if (!finite_) throw SpecError("offset() requires a finite grid");
  return offset_;
}

double BzGrid::momentum(int j) const {
  if (!finite_) throw SpecError("momentum() requires a finite grid");
  if (j < 0 || j >= n_) throw SpecError("momentum index out of range");
  const double pi = std::numbers::pi;
  double frac = offset_ == GridOffset::kHalfInteger ? (j + 0.5) / n_ : double(j) / n_;
  return -pi + 2.0 * pi * frac;
}

std::vector<double> BzGrid::momenta() const {
  if (!finite_) throw SpecError("momenta() requires a finite grid");
  std::vector<double> ks(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) ks[static_cast<std::size_t>(j)] = momentum(j);
  return ks;
}

double BzGrid::rel_tol() const {
  if (finite_) throw SpecError("rel_tol() requires the thermodynamic grid");
  return rel_tol_;
}

int BzGrid::initial_panels() const {
  if (finite_) throw SpecError("initial_panels() requires the thermodynamic grid");
  return initial_panels_;
}

std::string BzGrid::convention() const {
  if (!finite_) return "thermodynamic";
  return offset_ == GridOffset::kHalfInteger ? "half_integer" : "integer";
}

}  // namespace quenchbat
