#pragma once

#include <functional>
#include <vector>

namespace mslab {

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  long evals = 0;
};

// adaptive Simpson on [a,b]
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double tol, int max_depth = 40);

// composite Gauss-Legendre (8 point) with n panels on [a,b]
double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels);

// Integral over the full circle parametrized by angle in [0, 2π), split at the
// crossing angles so no node is ever evaluated at (or across) a crossing.
// Panels per arc double until the tolerance is met. buffer_factor > 0 excludes
// an arc of half-width buffer_factor·h_angle next to each crossing and
// extends the integrand one-sidedly (linear extrapolation) over it; with the
// default 0 the Gauss nodes are interior anyway.
QuadResult integrate_circle(const std::function<double(double)>& f,
                            const std::vector<double>& crossing_angles, double tol,
                            int max_panels_per_arc = 1 << 14, double buffer_factor = 0.0);

// same splitting, but with a pinned total node budget (8 nodes per panel)
QuadResult integrate_circle_fixed(const std::function<double(double)>& f,
                                  const std::vector<double>& crossing_angles, int total_nodes);

}  // namespace mslab
