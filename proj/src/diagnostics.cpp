#include "mslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace mslab {

namespace {

struct ClippedSegment {
  Vec2 a, b;
  double length() const { return dist(a, b); }
};

std::vector<ClippedSegment> clip_to_disk(const JumpSet& j, const Disk& d) {
  std::vector<ClippedSegment> out;
  j.for_each_segment([&](Vec2 a, Vec2 b) {
    const Vec2 dir = b - a;
    const double len2 = dir.norm2();
    const Vec2 m = a - d.center;
    const double bq = m.dot(dir), cq = m.norm2() - d.radius * d.radius;
    const double disc = bq * bq - len2 * cq;
    if (disc <= 0) return;
    const double sq = std::sqrt(disc);
    const double lo = std::max(0.0, (-bq - sq) / len2);
    const double hi = std::min(1.0, (-bq + sq) / len2);
    if (hi > lo) out.push_back({a + lo * dir, a + hi * dir});
  });
  return out;
}

}  // namespace

FlatnessReport mean_flatness(const JumpSet& j, const Disk& d) {
  const auto segs = clip_to_disk(j, d);
  double L = 0.0;
  for (const auto& s : segs) L += s.length();
  if (L <= 0.0) throw EmptyIntersection("mean_flatness: K does not meet the disk");

  Vec2 centroid{};
  for (const auto& s : segs) centroid += s.length() * 0.5 * (s.a + s.b);
  centroid = centroid / L;

  // second moment about the centroid; the optimal affine line passes through
  // the centroid with the principal direction
  double mxx = 0, mxy = 0, myy = 0;
  for (const auto& s : segs) {
    const Vec2 q0 = s.a - centroid, q1 = s.b - centroid;
    const Vec2 dd = q1 - q0;
    const double len = s.length();
    // ∫₀¹ q(t)q(t)ᵀ dt with q(t) = q0 + t·dd
    mxx += len * (q0.x * q0.x + q0.x * dd.x + dd.x * dd.x / 3.0);
    myy += len * (q0.y * q0.y + q0.y * dd.y + dd.y * dd.y / 3.0);
    mxy += len * (q0.x * q0.y + 0.5 * (q0.x * dd.y + q0.y * dd.x) + dd.x * dd.y / 3.0);
  }
  const double tr = mxx + myy;
  const double det = mxx * myy - mxy * mxy;
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  const double lam_min = 0.5 * tr - disc;
  const double lam_max = 0.5 * tr + disc;

  Vec2 dir;
  if (std::abs(mxy) > 1e-300) {
    dir = Vec2{lam_max - myy, mxy}.normalized();
  } else {
    dir = mxx >= myy ? Vec2{1, 0} : Vec2{0, 1};
  }

  FlatnessReport rep;
  rep.beta = std::max(0.0, lam_min) / std::pow(d.radius, 3);
  rep.line_point = centroid;
  rep.line_direction = dir;
  return rep;
}

FlatnessReport excess(const JumpSet& j, const Disk& d, std::optional<Vec2> direction) {
  const auto segs = clip_to_disk(j, d);
  double L = 0.0;
  for (const auto& s : segs) L += s.length();
  if (L <= 0.0) throw EmptyIntersection("excess: K does not meet the disk");

  // |V − T|² = 2 − 2cos²Δ = 1 − cos(2Δ) for the angle Δ between the lines
  double c2 = 0, s2 = 0;
  for (const auto& s : segs) {
    const Vec2 t = (s.b - s.a).normalized();
    const double ang = std::atan2(t.y, t.x);
    c2 += s.length() * std::cos(2 * ang);
    s2 += s.length() * std::sin(2 * ang);
  }

  FlatnessReport rep;
  if (direction) {
    const Vec2 v = direction->normalized();
    const double av = std::atan2(v.y, v.x);
    rep.excess = (L - (c2 * std::cos(2 * av) + s2 * std::sin(2 * av))) / d.radius;
    rep.excess_direction = v;
  } else {
    const double best = 0.5 * std::atan2(s2, c2);
    rep.excess = (L - std::hypot(c2, s2)) / d.radius;
    rep.excess_direction = {std::cos(best), std::sin(best)};
  }
  return rep;
}

namespace {

JumpSet posed_model_set(ModelClass cls, double theta, Vec2 x, double extent) {
  switch (cls) {
    case ModelClass::Jump:
      return model_jump_set(ModelMinimizer::pure_jump(theta, x), extent);
    case ModelClass::Triple:
      return model_jump_set(ModelMinimizer::triple_junction(theta, x), extent);
    case ModelClass::Cracktip:
      return model_jump_set(ModelMinimizer::cracktip(theta, x), extent);
  }
  return {};
}

std::vector<Vec2> clipped_sample(const JumpSet& j, const Disk& d, double spacing) {
  std::vector<Vec2> pts;
  for (const auto& s : clip_to_disk(j, d)) {
    const int n = std::max(1, static_cast<int>(std::ceil(s.length() / spacing)));
    for (int i = 0; i <= n; ++i) pts.push_back(s.a + (static_cast<double>(i) / n) * (s.b - s.a));
  }
  return pts;
}

double symmetry_period(ModelClass cls) {
  switch (cls) {
    case ModelClass::Jump: return M_PI;
    case ModelClass::Triple: return 2.0 * M_PI / 3.0;
    case ModelClass::Cracktip: return 2.0 * M_PI;
  }
  return 2.0 * M_PI;
}

}  // namespace

ClosenessReport closeness(const PairView& p, Vec2 x, double r, ModelClass cls,
                          double sample_spacing_factor) {
  const Disk ball{x, 2.0 * r};
  if (!p.disk_inside_domain(ball)) throw OutOfDomain("closeness: B_2r(x) leaves the domain");
  p.ensure_extent((x.norm() + 2.0 * r) * 2.0 + 1.0);

  const double coarse = 3.0 * sample_spacing_factor * r;
  const double fine = sample_spacing_factor * r;
  const auto k_segs = clip_to_disk(p.jumps(), ball);
  const auto k_coarse = clipped_sample(p.jumps(), ball, coarse);
  const auto k_fine = clipped_sample(p.jumps(), ball, fine);
  if (k_coarse.empty()) throw EmptyIntersection("closeness: K does not meet B_2r(x)");

  // symmetric Hausdorff distance with the sup over samples and the inf as the
  // exact point-to-segment distance: a perfect match reads 0 instead of the
  // sample-phase floor of a doubly-sampled estimate
  auto directed = [](const std::vector<Vec2>& pts, const std::vector<ClippedSegment>& segs) {
    double sup = 0.0;
    for (Vec2 q : pts) {
      double inf = std::numeric_limits<double>::infinity();
      for (const auto& s : segs) {
        const Vec2 dseg = s.b - s.a;
        const double t = std::clamp((q - s.a).dot(dseg) / dseg.norm2(), 0.0, 1.0);
        inf = std::min(inf, (q - (s.a + t * dseg)).norm2());
      }
      sup = std::max(sup, inf);
    }
    return std::sqrt(sup);
  };

  auto hpart = [&](double theta, bool fine_pass) {
    const JumpSet model = posed_model_set(cls, theta, x, 2.0 * r);
    const auto m_segs = clip_to_disk(model, ball);
    const auto msample = clipped_sample(model, ball, fine_pass ? fine : coarse);
    if (msample.empty()) return std::numeric_limits<double>::infinity();
    return std::max(directed(fine_pass ? k_fine : k_coarse, m_segs),
                    directed(msample, k_segs)) /
           r;
  };

  // 0.5° grid over one symmetry period, then golden-section refinement
  const double period = symmetry_period(cls);
  const double step = M_PI / 360.0;
  double best_theta = 0.0, best_h = std::numeric_limits<double>::infinity();
  for (double theta = 0.0; theta < period; theta += step) {
    const double h = hpart(theta, false);
    if (h < best_h) {
      best_h = h;
      best_theta = theta;
    }
  }
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  auto golden = [&](double a, double b, bool fine_pass, double width_tol) {
    double t1 = b - gr * (b - a), t2 = a + gr * (b - a);
    double f1 = hpart(t1, fine_pass), f2 = hpart(t2, fine_pass);
    for (int it = 0; it < 60 && (b - a) > width_tol; ++it) {
      if (f1 <= f2) {
        b = t2; t2 = t1; f2 = f1;
        t1 = b - gr * (b - a);
        f1 = hpart(t1, fine_pass);
      } else {
        a = t1; t1 = t2; f1 = f2;
        t2 = a + gr * (b - a);
        f2 = hpart(t2, fine_pass);
      }
    }
    return std::make_pair(a, b);
  };
  auto [a, b] = golden(best_theta - step, best_theta + step, false, 5e-3);
  std::tie(a, b) = golden(a - 2e-3, b + 2e-3, true, 1e-6);
  double theta_star = 0.5 * (a + b);

  ClosenessReport rep;
  rep.theta_star = std::fmod(theta_star + 2.0 * M_PI, 2.0 * M_PI);
  rep.hausdorff_part = hpart(theta_star, true);
  if (cls != ModelClass::Cracktip) {
    rep.dirichlet_part = dirichlet(p, ball) / r;
  }
  rep.omega = rep.hausdorff_part + rep.dirichlet_part;
  return rep;
}

std::string Classification::to_json() const {
  nlohmann::json doc;
  doc["point"] = {point.x, point.y};
  doc["scales"] = scales;
  doc["omega_j"] = omega_j;
  doc["omega_t"] = omega_t;
  doc["omega_c"] = omega_c;
  doc["d"] = d;
  doc["label"] = label;
  return doc.dump(2);
}

Classification classify_point(const PairView& p, Vec2 x, const std::vector<double>& scales,
                              ClassifyThresholds thr) {
  if (scales.size() < 3) throw Error("classify_point needs at least 3 scales");
  Classification out;
  out.point = x;
  out.scales = scales;
  bool all_j = true, all_t = true, all_c = true;
  double min_d = std::numeric_limits<double>::infinity();
  for (double r : scales) {
    double oj, ot, oc;
    try {
      oj = closeness(p, x, r, ModelClass::Jump).omega;
      ot = closeness(p, x, r, ModelClass::Triple).omega;
      oc = closeness(p, x, r, ModelClass::Cracktip).omega;
    } catch (const EmptyIntersection&) {
      oj = ot = oc = std::numeric_limits<double>::infinity();
    }
    const double dd = dirichlet(p, Disk{x, r}) / r;
    out.omega_j.push_back(oj);
    out.omega_t.push_back(ot);
    out.omega_c.push_back(oc);
    out.d.push_back(dd);
    min_d = std::min(min_d, dd);
    all_j = all_j && oj < thr.eps;
    all_t = all_t && ot < thr.eps;
    all_c = all_c && oc < thr.eps;
  }
  if (all_j) out.label = "jump";
  else if (all_t) out.label = "triple";
  else if (all_c && min_d >= thr.d_min) out.label = "loose-end";
  else out.label = "unknown";
  return out;
}

}  // namespace mslab
