#include "mslab/identities.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mslab/energy.hpp"
#include "mslab/quadrature.hpp"

namespace mslab {

std::string IdentityResidual::to_json() const {
  nlohmann::json doc;
  doc["lhs"] = lhs;
  doc["rhs"] = rhs;
  doc["residual"] = residual;
  doc["terms"] = terms;
  doc["quadrature"] = {{"nodes", quadrature_nodes}, {"estimated_error", quadrature_error}};
  return doc.dump(2);
}

namespace {

struct CircleField {
  const PairView& p;
  Vec2 y;
  double r;
  Vec2 point(double theta) const { return y + r * Vec2(std::cos(theta), std::sin(theta)); }
  Vec2 normal(double theta) const { return {std::cos(theta), std::sin(theta)}; }
  Vec2 grad(double theta) const { return p.eval(point(theta)).grad; }
};

std::vector<double> crossing_angles(const std::vector<CircleCrossing>& cs) {
  std::vector<double> out;
  for (const auto& c : cs) out.push_back(c.angle);
  return out;
}

double grid_buffer(const PairView& p) { return p.is_model() ? 0.0 : 10.0; }

// ∫_{B_r(y)\K} (u−g) ∇u·w dx for a vector weight w(x)
double lambda_bulk(const PairView& p, Vec2 y, double r, const std::function<Vec2(Vec2)>& w,
                   double tol) {
  if (p.lambda() == 0.0) return 0.0;
  if (!p.is_model()) {
    const ScalarField& u = p.field();
    const double h = u.spacing();
    const Disk d{y, r};
    double total = 0.0;
    for (int j = 0; j + 1 < u.ny(); ++j) {
      for (int i = 0; i + 1 < u.nx(); ++i) {
        if (u.cell_excluded(i, j)) continue;
        const double area = box_disk_area(u.node(i, j), u.node(i + 1, j + 1), d);
        if (area <= 0) continue;
        const Vec2 c = u.node(i, j) + Vec2(0.5 * h, 0.5 * h);
        const Vec2 g = u.cell_cut(i, j) ? u.gradient(c) : u.cell_gradient(i, j);
        const double uval = 0.25 * (u.at(i, j) + u.at(i + 1, j) + u.at(i, j + 1) + u.at(i + 1, j + 1));
        total += area * (uval - p.g_at(c)) * g.dot(w(c));
      }
    }
    return total;
  }
  // model: polar around y, radial panels refined dyadically toward ρ=0
  // (u−g)∇u is integrable at the tip and smooth along each ray off K)
  auto f_theta = [&](double theta) {
    const Vec2 e{std::cos(theta), std::sin(theta)};
    auto integrand = [&](double rho) {
      const Vec2 x = y + rho * e;
      if (p.distance_to_jumps(x) < 1e-9) return 0.0;
      const EvalResult ev = p.eval(x);
      return (ev.u - p.g_at(x)) * ev.grad.dot(w(x)) * rho;
    };
    double acc = 0.0;
    double hi = r;
    for (int piece = 0; piece < 40 && hi > 1e-12 * r; ++piece) {
      const double lo = hi * 0.5;
      acc += gauss_panels(integrand, lo, hi, 4);
      hi = lo;
    }
    return acc;
  };
  return adaptive_simpson(f_theta, 0.0, 2.0 * M_PI, tol).value;
}

// ∫_{K∩B_r(y)} (|u⁺−g_K|² − |u⁻−g_K|²) w(x)·ν dH¹
double lambda_trace(const PairView& p, Vec2 y, double r, const std::function<Vec2(Vec2)>& w,
                    double spacing) {
  if (p.lambda() == 0.0) return 0.0;
  const Disk d{y, r};
  double total = 0.0;
  p.jumps().for_each_segment([&](Vec2 a, Vec2 b) {
    const double len = segment_length_in_disk(a, b, d);
    if (len <= 0) return;
    const Vec2 e = (b - a).normalized();
    const Vec2 nu = e.perp();
    const int n = std::max(2, static_cast<int>(std::ceil(len / spacing)));
    // resample only the part of the segment inside the disk
    const Vec2 dir = b - a;
    const double seg_len = dir.norm();
    double t0 = 0.0, t1 = 1.0;
    {
      const Vec2 m = a - d.center;
      const double bq = m.dot(dir), cq = m.norm2() - r * r;
      const double disc = bq * bq - dir.norm2() * cq;
      if (disc <= 0) return;
      const double sq = std::sqrt(disc);
      t0 = std::max(0.0, (-bq - sq) / dir.norm2());
      t1 = std::min(1.0, (-bq + sq) / dir.norm2());
      if (t1 <= t0) return;
    }
    const double delta = 1e-7 * std::max(1.0, seg_len);
    for (int i = 0; i < n; ++i) {
      const double t = t0 + (t1 - t0) * (i + 0.5) / n;
      const Vec2 x = a + t * dir;
      const double up = p.eval(x + delta * nu).u;
      const double um = p.eval(x - delta * nu).u;
      const double gp = p.g_at(x + delta * nu), gm = p.g_at(x - delta * nu);
      const double gk = 0.5 * (gp + gm);
      const double val = (up - gk) * (up - gk) - (um - gk) * (um - gk);
      total += val * w(x).dot(nu) * (t1 - t0) * seg_len / n;
    }
  });
  return total;
}

}  // namespace

ELResiduals euler_lagrange_residuals(const PairView& p, const std::vector<Vec2>& arc, double h) {
  if (arc.size() < 2) throw NotAJumpArc("arc needs at least two points");
  const std::vector<Vec2> pts = densify_chain(arc, false, h);
  ELResiduals out;
  out.h = h;
  const double delta = 1e-9 * std::max(1.0, h);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Vec2 y = pts[i];
    if (p.distance_to_jumps(y) > 0.5 * h)
      throw NotAJumpArc("arc point is not on the jump set");
    const Vec2 tau = (pts[i + 1] - pts[i - 1]).normalized();
    const Vec2 nu = tau.perp();

    auto val = [&](Vec2 q) { return p.eval(q).u; };
    const double up0 = val(y + delta * nu), um0 = val(y - delta * nu);

    // Neumann: first-order one-sided normal differences
    const double dnp = (val(y + h * nu) - up0) / h;
    const double dnm = (um0 - val(y - h * nu)) / h;
    out.neumann.push_back(std::max(std::abs(dnp), std::abs(dnm)));

    // curvature condition with forward/backward one-sided tangential stencils
    const double dtp = (val(pts[i + 1] + delta * nu) - up0) / dist(pts[i + 1], y);
    const double dtm = (um0 - val(pts[i - 1] - delta * nu)) / dist(y, pts[i - 1]);
    const double grad_p_sq = dtp * dtp + dnp * dnp;
    const double grad_m_sq = dtm * dtm + dnm * dnm;
    const double kappa = curvature_profile_chain({pts[i - 1], pts[i], pts[i + 1]}, false)[1];
    double lam_term = 0.0;
    if (p.lambda() > 0) {
      const double gk = 0.5 * (p.g_at(y + delta * nu) + p.g_at(y - delta * nu));
      lam_term = (up0 - gk) * (up0 - gk) - (um0 - gk) * (um0 - gk);
    }
    out.curvature.push_back(kappa + (grad_p_sq - grad_m_sq) + p.lambda() * lam_term);

    // Δu − λ(u−g), probed off the arc with a 5-point stencil
    double worst = 0.0;
    for (double s : {+1.0, -1.0}) {
      const Vec2 q = y + s * 2.0 * h * nu;
      const double lap = (val(q + Vec2(h, 0)) + val(q - Vec2(h, 0)) + val(q + Vec2(0, h)) +
                          val(q - Vec2(0, h)) - 4.0 * val(q)) /
                         (h * h);
      worst = std::max(worst, std::abs(lap - p.lambda() * (val(q) - p.g_at(q))));
    }
    out.harmonic.push_back(worst);
    out.points.push_back(y);
  }
  return out;
}

IdentityResidual dlms_residual(const PairView& p, Vec2 y, double r, double tol) {
  p.ensure_extent((y.norm() + r) * 2.0 + 1.0);
  const Disk disk{y, r};
  const auto cross = circle_crossings(p.jumps(), disk);
  const auto angles = crossing_angles(cross);
  const CircleField cf{p, y, r};

  const auto qn = integrate_circle(
      [&](double t) { const double v = cf.grad(t).dot(cf.normal(t)); return v * v; }, angles, tol,
      1 << 14, grid_buffer(p));
  const auto qt = integrate_circle(
      [&](double t) { const double v = cf.grad(t).dot(cf.normal(t).perp()); return v * v; },
      angles, tol, 1 << 14, grid_buffer(p));

  IdentityResidual out;
  const double ell = length_in_disk(p.jumps(), disk);
  double crossing_sum = 0.0;
  for (const auto& c : cross) crossing_sum += c.incidence;

  const double bulk =
      (2.0 * p.lambda() / r) * lambda_bulk(p, y, r, [&](Vec2 x) { return x - y; }, tol);
  const double trace =
      (p.lambda() / r) *
      lambda_trace(p, y, r, [&](Vec2 x) { return x - y; },
                   p.is_model() ? r / 256.0 : p.field().spacing() * 0.5);

  out.lhs = r * qn.value;
  out.rhs = r * qt.value - ell / r + crossing_sum + bulk + trace;
  out.residual = out.lhs - out.rhs;
  out.terms = {{"normal_sq", r * qn.value},     {"tangential_sq", r * qt.value},
               {"length_over_r", ell / r},      {"crossing_sum", crossing_sum},
               {"lambda_bulk", bulk},           {"lambda_trace", trace},
               {"crossings", double(cross.size())}};
  out.quadrature_nodes = qn.evals + qt.evals;
  out.quadrature_error = r * (qn.est_error + qt.est_error);
  return out;
}

IdentityResidual boundary_identity_residual(const PairView& p, Vec2 y, double r,
                                            BoundaryVariationKind kind, Vec2 v, double tol) {
  p.ensure_extent((y.norm() + r) * 2.0 + 1.0);
  const Disk disk{y, r};
  const auto cross = circle_crossings(p.jumps(), disk);
  const auto angles = crossing_angles(cross);
  const CircleField cf{p, y, r};

  IdentityResidual out;
  if (kind == BoundaryVariationKind::Translation) {
    const auto q = integrate_circle(
        [&](double t) {
          const Vec2 g = cf.grad(t);
          const Vec2 n = cf.normal(t);
          return g.norm2() * v.dot(n) - 2.0 * g.dot(n) * g.dot(v);
        },
        angles, tol, 1 << 14, grid_buffer(p));
    double crossing_sum = 0.0;
    for (const auto& c : cross) crossing_sum += c.tangent.dot(v);
    const double bulk = 2.0 * p.lambda() * lambda_bulk(p, y, r, [&](Vec2) { return v; }, tol);
    const double trace = p.lambda() * lambda_trace(p, y, r, [&](Vec2) { return v; },
                                                   p.is_model() ? r / 256.0
                                                                : p.field().spacing() * 0.5);
    out.lhs = r * q.value + bulk + trace;
    out.rhs = -crossing_sum;
    out.terms = {{"boundary", r * q.value},
                 {"crossing_sum", crossing_sum},
                 {"lambda_bulk", bulk},
                 {"lambda_trace", trace}};
    out.quadrature_nodes = q.evals;
    out.quadrature_error = r * q.est_error;
  } else {
    const auto q = integrate_circle(
        [&](double t) {
          const Vec2 g = cf.grad(t);
          const Vec2 n = cf.normal(t);
          return g.dot(n) * g.dot(n.perp());
        },
        angles, tol, 1 << 14, grid_buffer(p));
    double crossing_sum = 0.0;
    for (const auto& c : cross)
      crossing_sum += c.tangent.dot((c.point - y).perp() / r);
    const double bulk = (2.0 * p.lambda() / r) *
                        lambda_bulk(p, y, r, [&](Vec2 x) { return (x - y).perp(); }, tol);
    const double trace = (p.lambda() / r) *
                         lambda_trace(p, y, r, [&](Vec2 x) { return (x - y).perp(); },
                                      p.is_model() ? r / 256.0 : p.field().spacing() * 0.5);
    out.lhs = -2.0 * r * q.value + bulk + trace;
    out.rhs = -crossing_sum;
    out.terms = {{"boundary", -2.0 * r * q.value},
                 {"crossing_sum", crossing_sum},
                 {"lambda_bulk", bulk},
                 {"lambda_trace", trace}};
    out.quadrature_nodes = q.evals;
    out.quadrature_error = 2.0 * r * q.est_error;
  }
  out.residual = out.lhs - out.rhs;
  return out;
}

IdentityResidual am_identity_residual(const PairView& p, double r, Vec2 y, double tol) {
  p.ensure_extent((y.norm() + r) * 2.0 + 1.0);
  const Disk disk{y, r};
  const auto cross = circle_crossings(p.jumps(), disk);
  if (cross.size() != 1) throw WrongCrossingCount(static_cast<int>(cross.size()));
  const Vec2 taup = (cross[0].point - y).perp() / r;
  const auto angles = crossing_angles(cross);
  const CircleField cf{p, y, r};

  const auto q = integrate_circle(
      [&](double t) {
        const Vec2 g = cf.grad(t);
        const Vec2 n = cf.normal(t);
        const Vec2 tau = n.perp();
        return g.norm2() * n.dot(taup) + 2.0 * g.dot(n) * g.dot(tau - taup);
      },
      angles, tol, 1 << 14, grid_buffer(p));

  auto wfun = [&](Vec2 x) { return taup - (x - y).perp() / r; };
  const double bulk = 2.0 * p.lambda() * lambda_bulk(p, y, r, wfun, tol);
  const double trace = p.lambda() * lambda_trace(p, y, r, wfun,
                                                 p.is_model() ? r / 256.0
                                                              : p.field().spacing() * 0.5);

  IdentityResidual out;
  out.lhs = r * q.value + bulk + trace;
  out.rhs = 0.0;
  out.residual = out.lhs;
  out.terms = {{"boundary", r * q.value}, {"lambda_bulk", bulk}, {"lambda_trace", trace}};
  out.quadrature_nodes = q.evals;
  out.quadrature_error = r * q.est_error;
  return out;
}

IdentityResidual am_identity_residual(const PairView& p, double r, double tol) {
  const Vec2 y = p.is_model() && p.model().kind == ModelKind::Cracktip
                     ? p.model().pose.center
                     : Vec2{0, 0};
  return am_identity_residual(p, r, y, tol);
}

CracktipFactorResult cracktipfactor_impl(int circle_nodes, bool negative) {
  // unit-amplitude cracktip: the translation identity reads 1 = b²·Q
  const auto m = ModelMinimizer::cracktip(0.0, {0, 0}, 1.0, false);
  const Vec2 v{1, 0};
  const auto q = integrate_circle_fixed(
      [&](double t) {
        const Vec2 pnt{std::cos(t), std::sin(t)};
        const Vec2 g = eval(m, pnt).grad;
        const Vec2 n = pnt;
        return 2.0 * g.dot(n) * g.dot(v) - g.norm2() * v.dot(n);
      },
      {0.0}, circle_nodes);
  CracktipFactorResult out;
  const double Q = q.value;
  out.b_squared = 1.0 / Q;
  out.b = (negative ? -1.0 : 1.0) * std::sqrt(out.b_squared);
  out.deviation = std::abs(out.b_squared - kCracktipFactorSq);
  out.nodes = q.evals;
  out.quadrature_error = q.est_error / (Q * Q);
  return out;
}

CracktipFactorResult cracktip_factor_solve(int circle_nodes, bool negative) {
  return cracktipfactor_impl(circle_nodes, negative);
}

namespace {

// ∫_a^b dt/(t−z)² along the real axis, panels split until well-separated from z
std::complex<double> complex_line_integral(double a, double b, std::complex<double> z) {
  const double mid = 0.5 * (a + b);
  const double dist_z = std::abs(std::complex<double>(std::clamp(z.real(), a, b), 0.0) - z);
  if (b - a > 0.5 * std::max(dist_z, 1e-9)) {
    return complex_line_integral(a, mid, z) + complex_line_integral(mid, b, z);
  }
  // 8-point Gauss, complex values
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  std::complex<double> s = 0.0;
  const double c = 0.5 * (a + b), w = 0.5 * (b - a);
  for (int i = 0; i < 8; ++i) {
    const std::complex<double> t(c + w * gx[i], 0.0);
    const std::complex<double> d = t - z;
    s += gw[i] / (d * d);
  }
  return w * s;
}

}  // namespace

IdentityResidual magic_formula_residual(const ModelMinimizer& m, std::complex<double> z0,
                                        double truncation_R) {
  if (m.kind != ModelKind::Cracktip && m.kind != ModelKind::PureJump)
    throw Error("magic formula applies to the cracktip and line models");
  const double zdist = distance_to_jump_set(m, {z0.real(), z0.imag()});
  if (zdist <= 1e-6) throw TooCloseToK("z0 within 1e-6 of K");
  if (!(truncation_R > 10.0 * std::abs(z0))) throw Error("truncation R must exceed 10|z0|");

  // canonical frame: K = [0,∞) (cracktip) or ℝ (line)
  const Vec2 q = m.pose.to_canonical({z0.real(), z0.imag()});
  const std::complex<double> zc(q.x, q.y);
  const double R = truncation_R;

  auto rhs_at = [&](double Rt) {
    std::complex<double> numeric;
    std::complex<double> tail;
    if (m.kind == ModelKind::Cracktip) {
      numeric = complex_line_integral(0.0, Rt, zc);
      tail = 1.0 / (Rt - zc);
    } else {
      numeric = complex_line_integral(-Rt, Rt, zc);
      tail = 1.0 / (Rt - zc) + 1.0 / (Rt + zc);
    }
    return std::make_pair(-(numeric + tail) / (8.0 * M_PI), tail);
  };

  const auto [rhs, tail] = rhs_at(R);
  const auto [rhs2, tail2] = rhs_at(2.0 * R);
  const double tail_bound = (1.0 / (8.0 * M_PI)) * 2.0 / (R - std::abs(zc));
  if (std::abs(rhs2 - rhs) > tail_bound)
    throw Error("magic formula tail bound violated (quadrature fault)");

  std::complex<double> lhs = 0.0;
  if (m.kind == ModelKind::Cracktip) lhs = m.b * m.b / (16.0 * zc);

  IdentityResidual out;
  out.lhs = lhs.real();
  out.rhs = rhs.real();
  out.residual = std::abs(lhs - rhs);
  out.terms = {{"lhs_re", lhs.real()},
               {"lhs_im", lhs.imag()},
               {"rhs_re", rhs.real()},
               {"rhs_im", rhs.imag()},
               {"tail_re", (-tail / (8.0 * M_PI)).real()},
               {"tail_im", (-tail / (8.0 * M_PI)).imag()},
               {"abs_residual", std::abs(lhs - rhs)},
               {"rel_error", std::abs(lhs) > 0 ? std::abs(lhs - rhs) / std::abs(lhs)
                                               : std::abs(lhs - rhs)},
               {"tail_refresh_delta", std::abs(rhs2 - rhs)},
               {"tail_bound", tail_bound}};
  return out;
}

namespace {

double disk_disk_area(const Disk& a, const Disk& b) {
  const double d = dist(a.center, b.center);
  const double r1 = a.radius, r2 = b.radius;
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double rm = std::min(r1, r2);
    return M_PI * rm * rm;
  }
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0));
  return r1 * r1 * (a1 - 0.5 * std::sin(2 * a1)) + r2 * r2 * (a2 - 0.5 * std::sin(2 * a2));
}

}  // namespace

LweakProfile lweak_profile(const PairView& p, const Disk& U, const std::vector<double>& M_grid) {
  LweakProfile out;
  for (double M : M_grid) {
    double measure = 0.0;
    if (p.is_model()) {
      if (p.model().kind == ModelKind::Cracktip && M > 0) {
        // {|∇u|⁴ ≥ M} = disk of radius b²/(4√M) around the tip
        const double rho = p.model().b * p.model().b / (4.0 * std::sqrt(M));
        measure = disk_disk_area(Disk{p.model().pose.center, rho}, U);
      }
    } else {
      const ScalarField& u = p.field();
      for (int j = 0; j + 1 < u.ny(); ++j) {
        for (int i = 0; i + 1 < u.nx(); ++i) {
          if (u.cell_excluded(i, j)) continue;
          const Vec2 g = u.cell_cut(i, j)
                             ? u.gradient(u.node(i, j) + Vec2(0.5, 0.5) * u.spacing())
                             : u.cell_gradient(i, j);
          const double g4 = g.norm2() * g.norm2();
          if (g4 >= M) measure += box_disk_area(u.node(i, j), u.node(i + 1, j + 1), U);
        }
      }
    }
    out.M.push_back(M);
    out.measure.push_back(measure);
    out.M_times_measure.push_back(M * measure);
    out.sup = std::max(out.sup, M * measure);
  }
  return out;
}

}  // namespace mslab
