#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "mslab/models.hpp"

namespace mslab {

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs − rhs
  std::map<std::string, double> terms;
  long quadrature_nodes = 0;
  double quadrature_error = 0.0;

  std::string to_json() const;
};

// one-sided Euler-Lagrange residuals sampled along a jump arc of K:
//   Δu = λ(u−g)          (probed off K at distance 2h)
//   ∂u/∂ν = 0            (first-order one-sided normal difference)
//   κ = −(|∇u⁺|²−|∇u⁻|²) − λ(|u⁺−g_K|²−|u⁻−g_K|²)
// The one-sided gradients use a forward tangential difference on the + side
// and a backward one on the − side, so each side only sees its own data.
struct ELResiduals {
  std::vector<Vec2> points;
  std::vector<double> harmonic, neumann, curvature;
  double h = 0.0;
};
ELResiduals euler_lagrange_residuals(const PairView& p, const std::vector<Vec2>& arc, double h);

IdentityResidual dlms_residual(const PairView& p, Vec2 y, double r, double tol = 1e-9);

enum class BoundaryVariationKind { Translation, Rotation };

IdentityResidual boundary_identity_residual(const PairView& p, Vec2 y, double r,
                                            BoundaryVariationKind kind, Vec2 v = {1, 0},
                                            double tol = 1e-9);

// loose-end identity: translation along τ(p) minus rotation; requires
// #(K ∩ ∂B_r(y)) = 1
IdentityResidual am_identity_residual(const PairView& p, double r, Vec2 y, double tol = 1e-9);
IdentityResidual am_identity_residual(const PairView& p, double r, double tol = 1e-9);

// Solves for the cracktip amplitude from the translation identity on B₁,
// treating b as unknown: 1 = b²·Q with Q from circle quadrature.
struct CracktipFactorResult {
  double b = 0.0;
  double b_squared = 0.0;
  double deviation = 0.0;  // |b² − 2/π|
  long nodes = 0;
  double quadrature_error = 0.0;
};
CracktipFactorResult cracktip_factor_solve(int circle_nodes = 2048, bool negative = false);

// (∂u/∂z)²(z₀) = −(1/8π) ∫_K dH¹(w)/(w−z₀)², evaluated in the model's
// canonical frame; K truncated at R with the analytic tail added back.
IdentityResidual magic_formula_residual(const ModelMinimizer& m, std::complex<double> z0,
                                        double truncation_R = 1e4);

// superlevel-set proxy for the weak-L⁴ norm: M ↦ M·|{|∇u|⁴ ≥ M} ∩ U|
struct LweakProfile {
  std::vector<double> M, measure, M_times_measure;
  double sup = 0.0;
};
LweakProfile lweak_profile(const PairView& p, const Disk& U, const std::vector<double>& M_grid);

}  // namespace mslab
