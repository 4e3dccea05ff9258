#pragma once

#include <memory>
#include <vector>

#include "mslab/diagnostics.hpp"
#include "mslab/field.hpp"

namespace mslab {

// Ambrosio-Tortorelli state: z ≈ 0 marks the crack, z ≈ 1 elsewhere.
// The discrete energy is
//   Σ_edges (z̄_e²+δ)(u_p−u_q)²  +  h² Σ (u−g)²
//   + λ [ ε Σ_edges (z_p−z_q)²  +  h²/(4ε) Σ (1−z)² ]
// with z̄_e the edge midpoint value and δ = 1e-6·ε. λ is the crack-length
// coefficient: a jump of height Δ is worth opening where Δ² exceeds ~2λ
// (a fidelity-weighted λ ≤ 1 could never open a crack on [0,1]-valued data).
struct PhaseFieldState {
  ScalarField u, z;
  std::shared_ptr<const ScalarField> g;
  double lambda = 0.0;
  double eps_phase = 0.0;
  double delta = 0.0;
  std::vector<double> energy_log;  // one entry per sweep, nonincreasing
};

struct SolverOptions {
  double cg_tol = 1e-8;
  int cg_max_iters = 20000;
};

// alternating exact quadratic solves (PCG, warm-started, which keeps the
// energy log monotone even under truncation); checks the maximum principle
PhaseFieldState at_minimize(std::shared_ptr<const ScalarField> g, double lambda,
                            double eps_phase, int sweeps, SolverOptions opts = {});

double at_energy(const PhaseFieldState& s);

// level-set contours of {field = level} (marching squares, subpixel linear)
std::vector<std::vector<Vec2>> marching_squares(const ScalarField& f, double level);

// centerline of the z-trench: sublevel mask, Zhang-Suen thinning, path
// tracing, parabolic subpixel refinement; chains shorter than 4h discarded
JumpSet extract_jumpset(const PhaseFieldState& s, double threshold);

// classification runs on (u, extracted K) with the fidelity term dropped
// (the regularity diagnostics live in the blow-up regime where it vanishes)
std::vector<Classification> diagnose_segmentation(const PhaseFieldState& s,
                                                  const std::vector<Vec2>& points,
                                                  const std::vector<double>& scales,
                                                  ClassifyThresholds thr = {0.25, 0.1});

}  // namespace mslab
