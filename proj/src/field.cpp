#include "mslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace mslab {

namespace {

// Green's theorem over the boundary of poly ∩ disk: straight parts along the
// polygon edges (clipped to the disk) plus circular arcs where the circle
// runs inside the polygon.
double green_segment(Vec2 a, Vec2 b) { return 0.5 * a.cross(b); }

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y) &&
        p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) + poly[i].x)
      in = !in;
  }
  return in;
}

}  // namespace

double polygon_disk_area(const std::vector<Vec2>& poly, const Disk& d) {
  const double r = d.radius;
  double area = 0.0;
  std::vector<double> circle_cut_angles;
  bool any_vertex_inside = false;

  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    const Vec2 dir = b - a;
    const double len2 = dir.norm2();
    if (len2 == 0.0) continue;
    const Vec2 m = a - d.center;
    if (m.norm() < r) any_vertex_inside = true;
    const double bq = m.dot(dir);
    const double cq = m.norm2() - r * r;
    const double disc = bq * bq - len2 * cq;
    double lo = 0.0, hi = 1.0;
    bool inside_interval = false;
    if (disc > 0) {
      const double sq = std::sqrt(disc);
      const double t0 = (-bq - sq) / len2, t1 = (-bq + sq) / len2;
      lo = std::max(0.0, t0);
      hi = std::min(1.0, t1);
      inside_interval = hi > lo;
      for (double t : {t0, t1}) {
        if (t > 0.0 && t < 1.0) {
          const Vec2 p = a + t * dir;
          circle_cut_angles.push_back(std::atan2(p.y - d.center.y, p.x - d.center.x));
        }
      }
    } else {
      inside_interval = cq < 0;  // whole segment inside (or outside)
    }
    if (inside_interval) {
      const Vec2 pa = a + lo * dir, pb = a + hi * dir;
      area += green_segment(pa - d.center, pb - d.center);
      // connect clipped endpoints to the polygon corner flow: the missing
      // outside parts are replaced by arcs below, so nothing else to add here
    }
  }

  if (circle_cut_angles.empty()) {
    // no boundary intersections: either poly ⊂ disk, disk ⊂ poly, or disjoint
    if (any_vertex_inside) {
      double a2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) a2 += green_segment(poly[i], poly[(i + 1) % n]);
      return std::abs(a2);
    }
    if (point_in_polygon(poly, d.center)) return M_PI * r * r;
    return 0.0;
  }

  std::sort(circle_cut_angles.begin(), circle_cut_angles.end());
  const std::size_t m = circle_cut_angles.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double t0 = circle_cut_angles[i];
    double t1 = circle_cut_angles[(i + 1) % m];
    if (i + 1 == m) t1 += 2.0 * M_PI;
    const double tm = 0.5 * (t0 + t1);
    const Vec2 mid = d.center + r * Vec2(std::cos(tm), std::sin(tm));
    if (point_in_polygon(poly, mid)) {
      // arc contribution of Green's integral, relative to the disk center
      area += 0.5 * r * r * (t1 - t0);
    }
  }
  return std::max(0.0, area);
}

double box_disk_area(Vec2 lo, Vec2 hi, const Disk& d) {
  return polygon_disk_area({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}, d);
}

ScalarField::ScalarField(Vec2 origin, double h, int nx, int ny, double fill)
    : origin_(origin), h_(h), nx_(nx), ny_(ny),
      values_(static_cast<std::size_t>(nx) * ny, fill) {
  if (h <= 0 || nx < 2 || ny < 2) throw Error("ScalarField needs h>0 and at least 2x2 nodes");
}

ScalarField ScalarField::sample(Vec2 origin, double h, int nx, int ny,
                                const std::function<double(Vec2)>& f) {
  ScalarField out(origin, h, nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.at(i, j) = f(out.node(i, j));
  return out;
}

bool ScalarField::disk_inside(const Disk& d) const {
  const Vec2 lo = domain_lo(), hi = domain_hi();
  return d.center.x - d.radius >= lo.x && d.center.y - d.radius >= lo.y &&
         d.center.x + d.radius <= hi.x && d.center.y + d.radius <= hi.y;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::interp(Vec2 p) const {
  const double fx = (p.x - origin_.x) / h_, fy = (p.y - origin_.y) / h_;
  const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, nx_ - 2);
  const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, ny_ - 2);
  const double tx = std::clamp(fx - i, 0.0, 1.0), ty = std::clamp(fy - j, 0.0, 1.0);
  return (1 - tx) * (1 - ty) * at(i, j) + tx * (1 - ty) * at(i + 1, j) +
         (1 - tx) * ty * at(i, j + 1) + tx * ty * at(i + 1, j + 1);
}

void ScalarField::attach_jumps(std::shared_ptr<const JumpSet> jumps, double band_width,
                               double exclusion_band) {
  jumps_ = std::move(jumps);
  exclusion_band_ = exclusion_band;
  side_.assign(values_.size(), 0);
  cut_.assign(static_cast<std::size_t>(nx_ - 1) * (ny_ - 1), 0);
  excluded_.assign(static_cast<std::size_t>(nx_ - 1) * (ny_ - 1), 0);
  if (!jumps_ || jumps_->empty()) return;

  // nearest-segment side classification inside the band
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Vec2 p = node(i, j);
      double best = std::numeric_limits<double>::infinity();
      double sgn = 0.0;
      jumps_->for_each_segment([&](Vec2 a, Vec2 b) {
        const Vec2 dseg = b - a;
        const double t = std::clamp((p - a).dot(dseg) / dseg.norm2(), 0.0, 1.0);
        const double dd = dist(p, a + t * dseg);
        if (dd < best) {
          best = dd;
          sgn = dseg.cross(p - a);
        }
      });
      if (best <= band_width) side_[static_cast<std::size_t>(j) * nx_ + i] = sgn >= 0 ? 1 : -1;
    }
  }
  for (int j = 0; j + 1 < ny_; ++j) {
    for (int i = 0; i + 1 < nx_; ++i) {
      const Vec2 lo = node(i, j), hi = node(i + 1, j + 1);
      bool cut = false;
      jumps_->for_each_segment([&](Vec2 a, Vec2 b) {
        if (cut) return;
        // conservative segment/box overlap: clip to the box slab-wise
        double t0 = 0.0, t1 = 1.0;
        const Vec2 dseg = b - a;
        auto clip = [&](double p0, double dseg1, double lo1, double hi1) {
          if (dseg1 == 0.0) return p0 >= lo1 && p0 <= hi1;
          double ta = (lo1 - p0) / dseg1, tb = (hi1 - p0) / dseg1;
          if (ta > tb) std::swap(ta, tb);
          t0 = std::max(t0, ta);
          t1 = std::min(t1, tb);
          return t0 <= t1;
        };
        if (clip(a.x, dseg.x, lo.x, hi.x) && clip(a.y, dseg.y, lo.y, hi.y) && t0 <= t1) cut = true;
      });
      if (cut) cut_[static_cast<std::size_t>(j) * (nx_ - 1) + i] = 1;
      if (exclusion_band_ > 0.0) {
        const Vec2 c = 0.5 * (lo + hi);
        if (jumps_->distance_to(c) <= exclusion_band_)
          excluded_[static_cast<std::size_t>(j) * (nx_ - 1) + i] = 1;
      }
    }
  }
}

int ScalarField::side(int i, int j) const {
  if (side_.empty()) return 0;
  return side_[static_cast<std::size_t>(j) * nx_ + i];
}

bool ScalarField::cell_cut(int i, int j) const {
  if (cut_.empty()) return false;
  return cut_[static_cast<std::size_t>(j) * (nx_ - 1) + i] != 0;
}

bool ScalarField::cell_excluded(int i, int j) const {
  if (excluded_.empty()) return false;
  return excluded_[static_cast<std::size_t>(j) * (nx_ - 1) + i] != 0;
}

Vec2 ScalarField::cell_gradient(int i, int j) const {
  const double ux = 0.5 * ((at(i + 1, j) - at(i, j)) + (at(i + 1, j + 1) - at(i, j + 1))) / h_;
  const double uy = 0.5 * ((at(i, j + 1) - at(i, j)) + (at(i + 1, j + 1) - at(i + 1, j))) / h_;
  return {ux, uy};
}

Vec2 ScalarField::cell_side_gradient(int i, int j, int s) const {
  // corners on the requested side
  const int ci[4] = {i, i + 1, i, i + 1};
  const int cj[4] = {j, j, j + 1, j + 1};
  bool on[4];
  for (int k = 0; k < 4; ++k) on[k] = side(ci[k], cj[k]) == s;

  auto same = [&](int a, int b) { return on[a] && on[b]; };
  double ux = 0.0, uy = 0.0;
  int nx_cnt = 0, ny_cnt = 0;
  if (same(0, 1)) { ux += (at(i + 1, j) - at(i, j)) / h_; ++nx_cnt; }
  if (same(2, 3)) { ux += (at(i + 1, j + 1) - at(i, j + 1)) / h_; ++nx_cnt; }
  if (same(0, 2)) { uy += (at(i, j + 1) - at(i, j)) / h_; ++ny_cnt; }
  if (same(1, 3)) { uy += (at(i + 1, j + 1) - at(i + 1, j)) / h_; ++ny_cnt; }

  // reach one node outward on the same side for a missing component
  auto node_side = [&](int a, int b) {
    if (a < 0 || b < 0 || a >= nx_ || b >= ny_) return 0;
    return side(a, b);
  };
  if (nx_cnt == 0) {
    for (int k = 0; k < 4 && nx_cnt == 0; ++k) {
      if (!on[k]) continue;
      if (node_side(ci[k] - 1, cj[k]) == s) { ux = (at(ci[k], cj[k]) - at(ci[k] - 1, cj[k])) / h_; ++nx_cnt; }
      else if (node_side(ci[k] + 1, cj[k]) == s) { ux = (at(ci[k] + 1, cj[k]) - at(ci[k], cj[k])) / h_; ++nx_cnt; }
    }
  }
  if (ny_cnt == 0) {
    for (int k = 0; k < 4 && ny_cnt == 0; ++k) {
      if (!on[k]) continue;
      if (node_side(ci[k], cj[k] - 1) == s) { uy = (at(ci[k], cj[k]) - at(ci[k], cj[k] - 1)) / h_; ++ny_cnt; }
      else if (node_side(ci[k], cj[k] + 1) == s) { uy = (at(ci[k], cj[k] + 1) - at(ci[k], cj[k])) / h_; ++ny_cnt; }
    }
  }
  if (nx_cnt > 1) ux /= nx_cnt;
  if (ny_cnt > 1) uy /= ny_cnt;
  return {ux, uy};
}

Vec2 ScalarField::gradient(Vec2 p) const {
  const double fx = (p.x - origin_.x) / h_, fy = (p.y - origin_.y) / h_;
  const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, nx_ - 2);
  const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, ny_ - 2);
  if (cell_cut(i, j) && jumps_) {
    // pick the side of the query point
    double best = std::numeric_limits<double>::infinity();
    double sgn = 0.0;
    jumps_->for_each_segment([&](Vec2 a, Vec2 b) {
      const Vec2 dseg = b - a;
      const double t = std::clamp((p - a).dot(dseg) / dseg.norm2(), 0.0, 1.0);
      const double dd = dist(p, a + t * dseg);
      if (dd < best) {
        best = dd;
        sgn = dseg.cross(p - a);
      }
    });
    return cell_side_gradient(i, j, sgn >= 0 ? 1 : -1);
  }
  return cell_gradient(i, j);
}

ScalarField read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open PGM file: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw Error("expected binary PGM (P5): " + path);
  auto next_int = [&in, &path]() {
    // skip whitespace and '#' comment lines
    int c = in.get();
    while (c == '#' || std::isspace(c)) {
      if (c == '#') { while (c != '\n' && c != EOF) c = in.get(); }
      c = in.get();
    }
    in.unget();
    long v;
    if (!(in >> v)) throw Error("malformed PGM header: " + path);
    return v;
  };
  const long w = next_int(), h = next_int(), maxval = next_int();
  if (maxval != 255) throw Error("PGM maxval must be 255: " + path);
  in.get();  // single whitespace after maxval
  ScalarField out({0, 0}, 1.0, static_cast<int>(w), static_cast<int>(h));
  std::vector<unsigned char> row(w);
  for (long j = 0; j < h; ++j) {
    in.read(reinterpret_cast<char*>(row.data()), w);
    if (!in) throw Error("truncated PGM data: " + path);
    // PGM rows go top-down; grid j goes bottom-up
    for (long i = 0; i < w; ++i) out.at(static_cast<int>(i), static_cast<int>(h - 1 - j)) = row[i] / 255.0;
  }
  return out;
}

void write_pgm(const ScalarField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write PGM file: " + path);
  out << "P5\n" << f.nx() << " " << f.ny() << "\n255\n";
  std::vector<unsigned char> row(f.nx());
  for (int j = f.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < f.nx(); ++i)
      row[i] = static_cast<unsigned char>(std::lround(std::clamp(f.at(i, j), 0.0, 1.0) * 255.0));
    out.write(reinterpret_cast<const char*>(row.data()), f.nx());
  }
}

}  // namespace mslab
