#include "mslab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mslab/quadrature.hpp"

namespace mslab {

namespace {

// interval of ρ where base + ρ·e(θ) lies in the disk
struct RayChord {
  double in = 0.0, out = 0.0;  // 0 ≤ in ≤ out
  bool hit = false;
};

RayChord ray_chord(Vec2 base, double theta, const Disk& d) {
  const Vec2 e{std::cos(theta), std::sin(theta)};
  const Vec2 m = d.center - base;
  const double em = e.dot(m);
  const double disc = em * em - m.norm2() + d.radius * d.radius;
  RayChord rc;
  if (disc <= 0) return rc;
  const double sq = std::sqrt(disc);
  const double lo = em - sq, hi = em + sq;
  if (hi <= 0) return rc;
  rc.in = std::max(0.0, lo);
  rc.out = hi;
  rc.hit = rc.out > rc.in;
  return rc;
}

// angular support of the disk as seen from base (adaptive quadrature would
// miss a narrow window entirely)
std::pair<double, double> angular_window(Vec2 base, const Disk& d) {
  const Vec2 m = d.center - base;
  const double dist_c = m.norm();
  if (dist_c <= d.radius) return {0.0, 2.0 * M_PI};
  const double phi = std::atan2(m.y, m.x);
  const double w = std::asin(std::min(1.0, d.radius / dist_c));
  return {phi - w, phi + w};
}

int sector_of(double theta) {
  if (theta < 0) theta += 2.0 * M_PI;
  return std::min(2, static_cast<int>(theta / (2.0 * M_PI / 3.0)));
}

double model_dirichlet(const ModelMinimizer& m, const Disk& d, double rel_tol) {
  if (m.kind != ModelKind::Cracktip) return 0.0;
  // |∇u|² = b²/(4ρ) around the tip, so the radial integral is the chord length
  const Vec2 tip = m.pose.center;
  auto len = [&](double theta) {
    const RayChord rc = ray_chord(tip, theta, d);
    return rc.hit ? rc.out - rc.in : 0.0;
  };
  const auto [t0, t1] = angular_window(tip, d);
  const double crude = 2.0 * M_PI * std::max(d.radius, 1e-12);
  const auto q = adaptive_simpson(len, t0, t1, rel_tol * crude);
  return 0.25 * m.b * m.b * q.value;
}

double model_fidelity(const ModelMinimizer& m, const Disk& d, double g, double rel_tol) {
  const double r = d.radius;
  switch (m.kind) {
    case ModelKind::Constant: {
      const double diff = m.sector_values[0] - g;
      return diff * diff * M_PI * r * r;
    }
    case ModelKind::PureJump:
    case ModelKind::TripleJunction: {
      // piecewise constant in the angle around the pose center
      const Vec2 base = m.pose.center;
      auto f = [&](double theta) {
        const RayChord rc = ray_chord(base, theta, d);
        if (!rc.hit) return 0.0;
        const double ang = theta - m.pose.theta;
        double value;
        if (m.kind == ModelKind::PureJump) {
          double a = std::fmod(ang, 2.0 * M_PI);
          if (a < 0) a += 2.0 * M_PI;
          value = (a < M_PI) ? m.sector_values[1] : m.sector_values[0];
        } else {
          value = m.sector_values[sector_of(std::remainder(ang, 2.0 * M_PI))];
        }
        const double diff = value - g;
        return 0.5 * diff * diff * (rc.out * rc.out - rc.in * rc.in);
      };
      const auto [t0, t1] = angular_window(base, d);
      const double crude = M_PI * r * r * (1.0 + g * g);
      return adaptive_simpson(f, t0, t1, rel_tol * std::max(1.0, crude)).value;
    }
    case ModelKind::Cracktip: {
      // |u−g|² = b²ρcos²(θ/2) − 2 g s b √ρ cos(θ/2) + g², radial moments exact
      const Vec2 tip = m.pose.center;
      const double sb = m.signed_b();
      auto f = [&](double theta) {
        const RayChord rc = ray_chord(tip, theta, d);
        if (!rc.hit) return 0.0;
        double ang = std::fmod(theta - m.pose.theta, 2.0 * M_PI);
        if (ang < 0) ang += 2.0 * M_PI;
        const double c = std::cos(0.5 * ang);
        const double i3 = (std::pow(rc.out, 3) - std::pow(rc.in, 3)) / 3.0;
        const double i52 = 0.4 * (std::pow(rc.out, 2.5) - std::pow(rc.in, 2.5));
        const double i2 = 0.5 * (rc.out * rc.out - rc.in * rc.in);
        return m.b * m.b * c * c * i3 - 2.0 * g * sb * c * i52 + g * g * i2;
      };
      const auto [t0, t1] = angular_window(tip, d);
      const double crude = M_PI * r * r * (1.0 + g * g + m.b * m.b * (d.center.norm() + r));
      return adaptive_simpson(f, t0, t1, rel_tol * std::max(1.0, crude)).value;
    }
  }
  return 0.0;
}

double grid_dirichlet(const ScalarField& u, const Disk& d) {
  if (!u.disk_inside(d)) throw OutOfDomain("dirichlet: disk not contained in the grid domain");
  const double h = u.spacing();
  const Vec2 o = u.origin();
  const int i0 = std::max(0, static_cast<int>((d.center.x - d.radius - o.x) / h) - 1);
  const int i1 = std::min(u.nx() - 2, static_cast<int>((d.center.x + d.radius - o.x) / h) + 1);
  const int j0 = std::max(0, static_cast<int>((d.center.y - d.radius - o.y) / h) - 1);
  const int j1 = std::min(u.ny() - 2, static_cast<int>((d.center.y + d.radius - o.y) / h) + 1);
  double total = 0.0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      if (u.cell_excluded(i, j)) continue;
      const Vec2 lo = u.node(i, j), hi = u.node(i + 1, j + 1);
      const double w = box_disk_area(lo, hi, d);
      if (w <= 0) continue;
      if (u.cell_cut(i, j) && u.jumps()) {
        // split along the local chord and integrate per side one-sidedly
        std::vector<Vec2> hits;
        u.jumps()->for_each_segment([&](Vec2 a, Vec2 b) {
          double t0 = 0.0, t1 = 1.0;
          const Vec2 dseg = b - a;
          auto clip = [&](double p0, double dd, double lo1, double hi1) {
            if (dd == 0.0) return p0 >= lo1 && p0 <= hi1;
            double ta = (lo1 - p0) / dd, tb = (hi1 - p0) / dd;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            return t0 <= t1;
          };
          if (clip(a.x, dseg.x, lo.x, hi.x) && clip(a.y, dseg.y, lo.y, hi.y) && t0 < t1) {
            hits.push_back(a + t0 * dseg);
            hits.push_back(a + t1 * dseg);
          }
        });
        if (hits.size() >= 2) {
          const Vec2 ca = hits.front(), cb = hits.back();
          const Vec2 chord = cb - ca;
          if (chord.norm() > 1e-14 * h) {
            // side polygons of the cell rectangle split by the chord line
            const std::vector<Vec2> corners = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
            std::vector<Vec2> plus, minus;
            auto side_of = [&](Vec2 p) { return chord.cross(p - ca); };
            for (int k = 0; k < 4; ++k) {
              const Vec2 a = corners[k], b = corners[(k + 1) % 4];
              const double sa = side_of(a), sb2 = side_of(b);
              if (sa >= 0) plus.push_back(a);
              if (sa <= 0) minus.push_back(a);
              if ((sa > 0 && sb2 < 0) || (sa < 0 && sb2 > 0)) {
                const double t = sa / (sa - sb2);
                const Vec2 x = a + t * (b - a);
                plus.push_back(x);
                minus.push_back(x);
              }
            }
            double acc = 0.0;
            if (plus.size() >= 3)
              acc += polygon_disk_area(plus, d) * u.cell_side_gradient(i, j, +1).norm2();
            if (minus.size() >= 3)
              acc += polygon_disk_area(minus, d) * u.cell_side_gradient(i, j, -1).norm2();
            total += acc;
            continue;
          }
        }
        // fall through: majority side of the corners
        int s = 0;
        s += u.side(i, j) + u.side(i + 1, j) + u.side(i, j + 1) + u.side(i + 1, j + 1);
        total += w * u.cell_side_gradient(i, j, s >= 0 ? 1 : -1).norm2();
        continue;
      }
      total += w * u.cell_gradient(i, j).norm2();
    }
  }
  return total;
}

double grid_fidelity(const PairView& p, const Disk& d) {
  const ScalarField& u = p.field();
  if (!u.disk_inside(d)) throw OutOfDomain("fidelity: disk not contained in the grid domain");
  const double h = u.spacing();
  const Vec2 o = u.origin();
  const int i0 = std::max(0, static_cast<int>((d.center.x - d.radius - o.x) / h) - 1);
  const int i1 = std::min(u.nx() - 2, static_cast<int>((d.center.x + d.radius - o.x) / h) + 1);
  const int j0 = std::max(0, static_cast<int>((d.center.y - d.radius - o.y) / h) - 1);
  const int j1 = std::min(u.ny() - 2, static_cast<int>((d.center.y + d.radius - o.y) / h) + 1);
  double total = 0.0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Vec2 lo = u.node(i, j), hi = u.node(i + 1, j + 1);
      const double w = box_disk_area(lo, hi, d);
      if (w <= 0) continue;
      double s = 0.0;
      for (int k = 0; k < 4; ++k) {
        const int ii = i + (k & 1), jj = j + (k >> 1);
        const double diff = u.at(ii, jj) - p.g_at(u.node(ii, jj));
        s += diff * diff;
      }
      total += w * 0.25 * s;
    }
  }
  return total;
}

}  // namespace

double dirichlet(const PairView& p, const Disk& d, double rel_tol) {
  if (p.is_model()) return model_dirichlet(p.model(), d, rel_tol);
  return grid_dirichlet(p.field(), d);
}

double fidelity(const PairView& p, const Disk& d, double rel_tol) {
  if (p.is_model()) {
    if (p.has_field_g()) throw Error("model pairs take a constant fidelity datum");
    return model_fidelity(p.model(), d, p.g_at({0, 0}), rel_tol);
  }
  return grid_fidelity(p, d);
}

EnergyReport energy_total(const PairView& p, const Disk& d, double rel_tol) {
  p.ensure_extent((d.center.norm() + d.radius) * 2.0 + 1.0);
  EnergyReport rep;
  rep.lambda = p.lambda();
  rep.dirichlet = dirichlet(p, d, rel_tol);
  rep.length = length_in_disk(p.jumps(), d);
  rep.fidelity = p.lambda() > 0 ? fidelity(p, d, rel_tol) : 0.0;
  rep.total = rep.dirichlet + rep.length + rep.lambda * rep.fidelity;
  rep.d = rep.dirichlet / d.radius;
  rep.ell_over_r = rep.length / d.radius;
  rep.F = 2.0 * rep.d + rep.ell_over_r;
  const double gs = p.g_sup();
  rep.upper_bound = 2.0 * M_PI * d.radius + rep.lambda * M_PI * gs * gs * d.radius * d.radius;
  rep.upper_bound_ok = rep.total <= rep.upper_bound + 1e-12 * std::max(1.0, rep.upper_bound);
  return rep;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

RadialProfile radial_profile(const PairView& p, Vec2 x, const std::vector<double>& radii,
                             double rel_tol) {
  RadialProfile prof;
  if (!radii.empty()) p.ensure_extent((x.norm() + radii.back()) * 2.0 + 1.0);
  for (double r : radii) {
    if (!(r > 0) || (!prof.r.empty() && r <= prof.r.back()))
      throw Error("radial_profile needs positive increasing radii");
    const Disk d{x, r};
    if (!p.disk_inside_domain(d)) throw OutOfDomain("radial_profile: radius leaves the domain");
    const double D = dirichlet(p, d, rel_tol);
    const double ell = length_in_disk(p.jumps(), d);
    int n = 0;
    double rr = r;
    for (int attempt = 0;; ++attempt) {
      try {
        n = crossing_count(p.jumps(), Disk{x, rr});
        break;
      } catch (const TangentialCrossing&) {
        if (attempt >= 8) throw;
        rr = r * (1.0 + (attempt + 1) * 1e-9);  // identities hold for a.e. r: resample
      }
    }
    prof.r.push_back(r);
    prof.d.push_back(D / r);
    prof.ell_over_r.push_back(ell / r);
    prof.F.push_back(2.0 * D / r + ell / r);
    prof.N.push_back(n);
  }
  auto annotate = [](const std::vector<double>& v, const std::vector<double>& r,
                     std::vector<bool>& flags, std::vector<std::pair<double, double>>& intervals) {
    flags.assign(v.empty() ? 0 : v.size() - 1, false);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      flags[i] = v[i + 1] < v[i] - 1e-7 * std::max(1.0, std::abs(v[i]));
    for (std::size_t i = 0; i < flags.size();) {
      if (!flags[i]) { ++i; continue; }
      std::size_t j = i;
      while (j < flags.size() && flags[j]) ++j;
      intervals.push_back({r[i], r[j]});
      i = j;
    }
  };
  annotate(prof.d, prof.r, prof.d_decreasing, prof.d_decreasing_intervals);
  annotate(prof.F, prof.r, prof.F_decreasing, prof.F_decreasing_intervals);
  return prof;
}

void write_csv(const RadialProfile& prof, std::ostream& out) {
  out << "r,d,ell_over_r,F,N,violation_flag\n";
  char buf[160];
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    const bool viol = (i > 0 && (prof.d_decreasing[i - 1] || prof.F_decreasing[i - 1]));
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d,%d\n", prof.r[i], prof.d[i],
                  prof.ell_over_r[i], prof.F[i], prof.N[i], viol ? 1 : 0);
    out << buf;
  }
}

}  // namespace mslab
