#pragma once

#include <iosfwd>
#include <vector>

#include "mslab/models.hpp"

namespace mslab {

struct EnergyReport {
  double dirichlet = 0.0;   // D(x,r)
  double length = 0.0;      // ℓ(x,r)
  double fidelity = 0.0;    // ℱ = ∫|u−g|²
  double lambda = 0.0;
  double total = 0.0;       // D + ℓ + λℱ
  double d = 0.0;           // D/r
  double ell_over_r = 0.0;
  double F = 0.0;           // 2d + ℓ/r
  double upper_bound = 0.0; // 2πr + λπ‖g‖²_∞ r²
  bool upper_bound_ok = true;
};

// ∫_{D\K} |∇u|²; models by adaptive polar quadrature (exact radial part),
// grids by cell quadrature with one-sided stencils at cells cut by K
double dirichlet(const PairView& p, const Disk& d, double rel_tol = 1e-8);

double fidelity(const PairView& p, const Disk& d, double rel_tol = 1e-8);

EnergyReport energy_total(const PairView& p, const Disk& d, double rel_tol = 1e-8);

struct RadialProfile {
  std::vector<double> r, d, ell_over_r, F;
  std::vector<int> N;
  std::vector<bool> d_decreasing, F_decreasing;  // step [i, i+1] decreases
  std::vector<std::pair<double, double>> d_decreasing_intervals;
  std::vector<std::pair<double, double>> F_decreasing_intervals;
};

RadialProfile radial_profile(const PairView& p, Vec2 x, const std::vector<double>& radii,
                             double rel_tol = 1e-8);

std::vector<double> linspace(double lo, double hi, int n);

// CSV columns: r, d, ell_over_r, F, N, violation_flag
void write_csv(const RadialProfile& prof, std::ostream& out);

}  // namespace mslab
