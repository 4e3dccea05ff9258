#pragma once

#include <cmath>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mslab/errors.hpp"

namespace mslab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  // counterclockwise rotation by 90 degrees
  Vec2 perp() const { return {-y, x}; }
  Vec2 rotated(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * x - s * y, s * x + c * y};
  }
  Vec2 normalized() const {
    const double n = norm();
    return {x / n, y / n};
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct Disk {
  Vec2 center;
  double radius = 1.0;

  Disk() = default;
  Disk(Vec2 c, double r) : center(c), radius(r) {
    if (!(r > 0)) throw Error("Disk radius must be positive");
  }
  bool contains(Vec2 p) const { return dist(p, center) < radius; }
};

// Transversal intersection of the jump set with a circle. The tangent is
// oriented outward, e(p)·n(p) > 0, with n the exterior unit normal.
struct CircleCrossing {
  Vec2 point;
  Vec2 tangent;
  double incidence = 0.0;  // e(p)·n(p) ∈ (0,1]
  double angle = 0.0;      // polar angle of p around the disk center
};

// K as a finite union of polyline chains. Chains are open unless flagged
// closed; every chain has >= 2 vertices and consecutive vertices distinct.
class JumpSet {
 public:
  JumpSet() = default;

  void add_chain(std::vector<Vec2> vertices, bool closed = false);

  const std::vector<std::vector<Vec2>>& chains() const { return chains_; }
  const std::vector<bool>& closed_flags() const { return closed_; }
  bool empty() const { return chains_.empty(); }
  std::size_t chain_count() const { return chains_.size(); }

  double total_length() const;

  // visits every segment (a, b); closed chains include the wrap-around one
  void for_each_segment(const std::function<void(Vec2, Vec2)>& f) const;

  double distance_to(Vec2 p) const;

  std::string to_json() const;
  static JumpSet from_json(const std::string& text);

 private:
  std::vector<std::vector<Vec2>> chains_;
  std::vector<bool> closed_;
};

double segment_length_in_disk(Vec2 a, Vec2 b, const Disk& d);

// H^1(K ∩ D) by exact segment/disk clipping
double length_in_disk(const JumpSet& j, const Disk& d);

// all transversal crossings of ∂D, sorted by polar angle; throws
// TangentialCrossing when a segment meets the circle with |e·n| below tol
// (callers are expected to perturb the radius and retry)
std::vector<CircleCrossing> circle_crossings(const JumpSet& j, const Disk& d,
                                             double tangential_tol = 1e-6);

int crossing_count(const JumpSet& j, const Disk& d, double tangential_tol = 1e-6);

// symmetric Hausdorff distance between two point samples
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// point sample of one chain / of K with spacing <= max_spacing
std::vector<Vec2> densify_chain(const std::vector<Vec2>& vertices, bool closed,
                                double max_spacing);
std::vector<Vec2> densify(const JumpSet& j, double max_spacing);

// three-point circumscribed-circle curvature per vertex, signed by the
// ν = e⊥ orientation (left turn positive). Collinear-within-tolerance
// triples and open-chain endpoints get 0.
std::vector<double> curvature_profile_chain(const std::vector<Vec2>& vertices, bool closed);
std::vector<std::vector<double>> curvature_profile(const JumpSet& j);

}  // namespace mslab
