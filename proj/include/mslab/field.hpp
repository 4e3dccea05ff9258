#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mslab/geometry.hpp"

namespace mslab {

// exact area of an axis-aligned box, resp. a convex polygon, clipped by a disk
double box_disk_area(Vec2 lo, Vec2 hi, const Disk& d);
double polygon_disk_area(const std::vector<Vec2>& poly, const Disk& d);

// Regular-grid sample of a scalar quantity. Node (i,j) sits at
// origin + h·(i,j); values are row-major, j*nx + i. When a jump set is
// attached, nodes near K get a side classification and gradient stencils
// never difference across K.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Vec2 origin, double h, int nx, int ny, double fill = 0.0);

  static ScalarField sample(Vec2 origin, double h, int nx, int ny,
                            const std::function<double(Vec2)>& f);

  Vec2 origin() const { return origin_; }
  double spacing() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Vec2 node(int i, int j) const { return origin_ + h_ * Vec2(i, j); }
  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  Vec2 domain_lo() const { return origin_; }
  Vec2 domain_hi() const { return origin_ + h_ * Vec2(nx_ - 1, ny_ - 1); }
  bool disk_inside(const Disk& d) const;

  double max_abs() const;
  double min_value() const;
  double max_value() const;

  // bilinear interpolation (side-unaware; callers near K use cell routines)
  double interp(Vec2 p) const;

  // K-awareness. band_width controls which nodes get a side tag; cells whose
  // center is within exclusion_band of K are dropped from energy integrals
  // (used for phase-field output where u is transitional inside the trench).
  void attach_jumps(std::shared_ptr<const JumpSet> jumps, double band_width,
                    double exclusion_band = 0.0);
  const std::shared_ptr<const JumpSet>& jumps() const { return jumps_; }
  double exclusion_band() const { return exclusion_band_; }
  int side(int i, int j) const;        // +1 / -1 near K, 0 away or unclassified
  bool cell_cut(int i, int j) const;   // cell (i,j)-(i+1,j+1) crossed by K
  bool cell_excluded(int i, int j) const;

  // gradient on the cell from its own corners (they never straddle K if the
  // cell is not cut); for cut cells see cell_side_gradient
  Vec2 cell_gradient(int i, int j) const;
  // one-sided gradient for the given side of a cut cell, reaching to same-side
  // neighbor nodes when a component is missing inside the cell
  Vec2 cell_side_gradient(int i, int j, int side) const;

  // gradient at a point, using the containing cell (side-aware)
  Vec2 gradient(Vec2 p) const;

 private:
  Vec2 origin_{};
  double h_ = 1.0;
  int nx_ = 0, ny_ = 0;
  std::vector<double> values_;

  std::shared_ptr<const JumpSet> jumps_;
  double exclusion_band_ = 0.0;
  std::vector<std::int8_t> side_;      // per node
  std::vector<std::uint8_t> cut_;      // per cell
  std::vector<std::uint8_t> excluded_; // per cell
};

// binary PGM (P5, maxval 255), values mapped to [0,1], spacing 1 (pixel units)
ScalarField read_pgm(const std::string& path);
void write_pgm(const ScalarField& f, const std::string& path);

}  // namespace mslab
