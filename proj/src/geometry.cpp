#include "mslab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace mslab {

void JumpSet::add_chain(std::vector<Vec2> vertices, bool closed) {
  if (vertices.size() < 2) throw Error("JumpSet chain needs at least 2 vertices");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (dist(vertices[i], vertices[i + 1]) == 0.0)
      throw Error("JumpSet chain has repeated consecutive vertices");
  }
  if (closed && dist(vertices.front(), vertices.back()) == 0.0)
    throw Error("closed chain must not repeat the first vertex at the end");
  chains_.push_back(std::move(vertices));
  closed_.push_back(closed);
}

double JumpSet::total_length() const {
  double total = 0.0;
  for_each_segment([&](Vec2 a, Vec2 b) { total += dist(a, b); });
  return total;
}

void JumpSet::for_each_segment(const std::function<void(Vec2, Vec2)>& f) const {
  for (std::size_t c = 0; c < chains_.size(); ++c) {
    const auto& v = chains_[c];
    for (std::size_t i = 0; i + 1 < v.size(); ++i) f(v[i], v[i + 1]);
    if (closed_[c]) f(v.back(), v.front());
  }
}

double JumpSet::distance_to(Vec2 p) const {
  double best = std::numeric_limits<double>::infinity();
  for_each_segment([&](Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double t = std::clamp((p - a).dot(d) / d.norm2(), 0.0, 1.0);
    best = std::min(best, dist(p, a + t * d));
  });
  return best;
}

std::string JumpSet::to_json() const {
  nlohmann::json doc;
  doc["chains"] = nlohmann::json::array();
  for (const auto& chain : chains_) {
    nlohmann::json jc = nlohmann::json::array();
    for (Vec2 p : chain) jc.push_back({p.x, p.y});
    doc["chains"].push_back(std::move(jc));
  }
  doc["closed"] = closed_;
  return doc.dump(2);
}

JumpSet JumpSet::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  JumpSet out;
  const auto& chains = doc.at("chains");
  std::vector<bool> closed(chains.size(), false);
  if (doc.contains("closed")) closed = doc.at("closed").get<std::vector<bool>>();
  if (closed.size() != chains.size()) throw Error("JumpSet JSON: closed/chains size mismatch");
  for (std::size_t c = 0; c < chains.size(); ++c) {
    std::vector<Vec2> pts;
    for (const auto& p : chains[c]) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    out.add_chain(std::move(pts), closed[c]);
  }
  return out;
}

double segment_length_in_disk(Vec2 a, Vec2 b, const Disk& d) {
  const Vec2 dir = b - a;
  const double len2 = dir.norm2();
  const Vec2 m = a - d.center;
  // |a + t·dir − c|² = r²  ⇔  len2·t² + 2(m·dir)t + |m|² − r² = 0
  const double bq = m.dot(dir);
  const double cq = m.norm2() - d.radius * d.radius;
  const double disc = bq * bq - len2 * cq;
  if (disc <= 0) return 0.0;
  const double sq = std::sqrt(disc);
  const double lo = std::max(0.0, (-bq - sq) / len2);
  const double hi = std::min(1.0, (-bq + sq) / len2);
  return hi > lo ? (hi - lo) * std::sqrt(len2) : 0.0;
}

double length_in_disk(const JumpSet& j, const Disk& d) {
  double total = 0.0;
  j.for_each_segment([&](Vec2 a, Vec2 b) { total += segment_length_in_disk(a, b, d); });
  return total;
}

std::vector<CircleCrossing> circle_crossings(const JumpSet& j, const Disk& d,
                                             double tangential_tol) {
  std::vector<CircleCrossing> out;
  const double r = d.radius;
  j.for_each_segment([&](Vec2 a, Vec2 b) {
    const Vec2 dir = b - a;
    const double len2 = dir.norm2();
    const Vec2 m = a - d.center;
    const double bq = m.dot(dir);
    const double cq = m.norm2() - r * r;
    const double disc = bq * bq - len2 * cq;
    if (disc < 0) return;
    const double sq = std::sqrt(disc);
    // segment carried entirely by the circle: both endpoints and the midpoint
    // are on ∂D within tolerance
    const double mid = std::abs((a + 0.5 * dir - d.center).norm() - r);
    if (std::abs(m.norm() - r) < 1e-12 * r && std::abs((b - d.center).norm() - r) < 1e-12 * r &&
        mid < 1e-12 * r)
      throw TangentialCrossing("chain segment lies on the circle");
    for (double t : {(-bq - sq) / len2, (-bq + sq) / len2}) {
      // half-open [0,1) so a crossing at a shared vertex is counted once
      if (t < 0.0 || t >= 1.0) continue;
      const Vec2 p = a + t * dir;
      const Vec2 n = (p - d.center) / r;
      Vec2 e = dir.normalized();
      double inc = e.dot(n);
      if (std::abs(inc) < tangential_tol)
        throw TangentialCrossing("segment tangent to the circle within tolerance");
      if (inc < 0) {
        e = -e;
        inc = -inc;
      }
      out.push_back({p, e, inc, std::atan2(p.y - d.center.y, p.x - d.center.x)});
      if (sq == 0.0) break;  // double root counted once (and already tangential-checked)
    }
  });
  std::sort(out.begin(), out.end(),
            [](const CircleCrossing& u, const CircleCrossing& v) { return u.angle < v.angle; });
  return out;
}

int crossing_count(const JumpSet& j, const Disk& d, double tangential_tol) {
  return static_cast<int>(circle_crossings(j, d, tangential_tol).size());
}

double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) throw EmptySet("hausdorff_distance needs non-empty samples");
  auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    double sup = 0.0;
    for (Vec2 p : from) {
      double inf = std::numeric_limits<double>::infinity();
      for (Vec2 q : to) inf = std::min(inf, (p - q).norm2());
      sup = std::max(sup, inf);
    }
    return std::sqrt(sup);
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<Vec2> densify_chain(const std::vector<Vec2>& vertices, bool closed,
                                double max_spacing) {
  std::vector<Vec2> out;
  const std::size_t n = vertices.size();
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % n];
    const int pieces = std::max(1, static_cast<int>(std::ceil(dist(a, b) / max_spacing)));
    for (int k = 0; k < pieces; ++k) out.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
  }
  if (!closed) out.push_back(vertices.back());
  return out;
}

std::vector<Vec2> densify(const JumpSet& j, double max_spacing) {
  std::vector<Vec2> out;
  for (std::size_t c = 0; c < j.chain_count(); ++c) {
    auto pts = densify_chain(j.chains()[c], j.closed_flags()[c], max_spacing);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

namespace {

double three_point_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 u = b - a, v = c - b, w = c - a;
  const double area2 = u.cross(v);  // twice the signed triangle area
  const double denom = u.norm() * v.norm() * w.norm();
  if (denom == 0.0) return 0.0;
  const double kappa = 2.0 * area2 / denom;
  // collinear within tolerance: treat as a degenerate triple
  const double scale = std::max(u.norm(), v.norm());
  if (std::abs(area2) < 1e-14 * scale * scale) return 0.0;
  return kappa;
}

}  // namespace

std::vector<double> curvature_profile_chain(const std::vector<Vec2>& vertices, bool closed) {
  const std::size_t n = vertices.size();
  std::vector<double> kappa(n, 0.0);
  if (n < 3) return kappa;
  if (closed) {
    for (std::size_t i = 0; i < n; ++i)
      kappa[i] = three_point_curvature(vertices[(i + n - 1) % n], vertices[i], vertices[(i + 1) % n]);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i)
      kappa[i] = three_point_curvature(vertices[i - 1], vertices[i], vertices[i + 1]);
  }
  return kappa;
}

std::vector<std::vector<double>> curvature_profile(const JumpSet& j) {
  std::vector<std::vector<double>> out;
  for (std::size_t c = 0; c < j.chain_count(); ++c)
    out.push_back(curvature_profile_chain(j.chains()[c], j.closed_flags()[c]));
  return out;
}

}  // namespace mslab
