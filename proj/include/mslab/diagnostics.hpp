#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mslab/energy.hpp"
#include "mslab/models.hpp"

namespace mslab {

struct FlatnessReport {
  double beta = 0.0;           // min over affine lines of ∫ dist²/r³
  Vec2 line_point{};           // minimizing affine line
  Vec2 line_direction{};
  double excess = 0.0;         // exc or exc_V
  Vec2 excess_direction{};
};

// β(x,r): principal-axis line through the length-weighted centroid minimizes
// the second moment exactly (total least squares); throws EmptyIntersection
FlatnessReport mean_flatness(const JumpSet& j, const Disk& d);

// tilt excess; without V the optimal direction comes from averaging the
// tangent double-angle
FlatnessReport excess(const JumpSet& j, const Disk& d,
                      std::optional<Vec2> direction = std::nullopt);

enum class ModelClass { Jump, Triple, Cracktip };

struct ClosenessReport {
  double theta_star = 0.0;      // minimizing rotation in [0, 2π)
  double hausdorff_part = 0.0;  // r⁻¹ dist_H(K∩B̄_2r, posed model ∩ B̄_2r)
  double dirichlet_part = 0.0;  // r⁻¹ ∫_{B_2r\K} |∇u|²  (0 for Ω^c)
  double omega = 0.0;           // hausdorff_part + dirichlet_part
};

// Ω^j / Ω^t / Ω^c at (x, r): θ minimized on a 0.5° grid with golden-section
// refinement; Ω^c omits the Dirichlet part
ClosenessReport closeness(const PairView& p, Vec2 x, double r, ModelClass cls,
                          double sample_spacing_factor = 0.005);

struct ClassifyThresholds {
  double eps = 0.05;   // Ω threshold
  double d_min = 0.1;  // loose ends need d(x,r) bounded away from 0
};

struct Classification {
  std::string label;  // jump | triple | loose-end | unknown
  Vec2 point{};
  std::vector<double> scales;
  std::vector<double> omega_j, omega_t, omega_c, d;

  std::string to_json() const;
};

Classification classify_point(const PairView& p, Vec2 x, const std::vector<double>& scales,
                              ClassifyThresholds thr = {});

}  // namespace mslab
