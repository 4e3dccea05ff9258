#include "mslab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mslab {

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGX[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                           -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                           0.7966664774136267,  0.9602898564975363};
constexpr double kGW[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                           0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                           0.2223810344533745, 0.1012285362903763};

double simpson(const std::function<double(double)>& f, double a, double fa, double m, double fm,
               double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

void simpson_rec(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                 double m, double fm, double whole, double tol, int depth, QuadResult& out) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  out.evals += 2;
  const double left = simpson(f, a, fa, lm, flm, m, fm);
  const double right = simpson(f, m, fm, rm, frm, b, fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) {
    out.value += left + right + err;
    out.est_error += std::abs(err);
    return;
  }
  simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1, out);
  simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1, out);
}

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_depth) {
  QuadResult out;
  if (a == b) return out;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  out.evals = 3;
  const double whole = simpson(f, a, fa, m, fm, b, fb);
  simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth, out);
  return out;
}

double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels) {
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * w;
    const double c = lo + 0.5 * w;
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += kGW[i] * f(c + 0.5 * w * kGX[i]);
    total += 0.5 * w * s;
  }
  return total;
}

namespace {

// arcs of [0, 2π) delimited by the (sorted) crossing angles
std::vector<std::pair<double, double>> circle_arcs(std::vector<double> cross) {
  std::vector<std::pair<double, double>> arcs;
  if (cross.empty()) {
    arcs.push_back({0.0, 2.0 * M_PI});
    return arcs;
  }
  std::sort(cross.begin(), cross.end());
  for (std::size_t i = 0; i + 1 < cross.size(); ++i) arcs.push_back({cross[i], cross[i + 1]});
  arcs.push_back({cross.back(), cross.front() + 2.0 * M_PI});
  return arcs;
}

double arc_with_buffer(const std::function<double(double)>& f, double a, double b, int panels,
                       double buffer_factor, long& evals) {
  const double len = b - a;
  const double h_angle = len / (panels * 8.0);
  double delta = buffer_factor * h_angle;
  if (delta * 2.0 >= 0.5 * len) delta = 0.25 * len / buffer_factor;  // degenerate thin arc
  double value = 0.0;
  if (buffer_factor > 0.0) {
    // excluded buffers next to the crossings, one-sided linear extrapolation
    const double fa1 = f(a + delta), fa2 = f(a + 2.0 * delta);
    const double fb1 = f(b - delta), fb2 = f(b - 2.0 * delta);
    evals += 4;
    value += delta * (fa1 - 0.5 * (fa2 - fa1));
    value += delta * (fb1 - 0.5 * (fb2 - fb1));
    value += gauss_panels(f, a + delta, b - delta, panels);
  } else {
    value += gauss_panels(f, a, b, panels);
  }
  evals += panels * 8;
  return value;
}

}  // namespace

QuadResult integrate_circle(const std::function<double(double)>& f,
                            const std::vector<double>& crossing_angles, double tol,
                            int max_panels_per_arc, double buffer_factor) {
  QuadResult out;
  for (auto [a, b] : circle_arcs(crossing_angles)) {
    int panels = 4;
    double prev = arc_with_buffer(f, a, b, panels, buffer_factor, out.evals);
    double cur = prev;
    double err = std::abs(prev);
    while (panels < max_panels_per_arc) {
      panels *= 2;
      cur = arc_with_buffer(f, a, b, panels, buffer_factor, out.evals);
      err = std::abs(cur - prev);
      if (err <= tol * std::max(1.0, std::abs(cur))) break;
      prev = cur;
    }
    out.value += cur;
    out.est_error += err;
  }
  return out;
}

QuadResult integrate_circle_fixed(const std::function<double(double)>& f,
                                  const std::vector<double>& crossing_angles, int total_nodes) {
  QuadResult out;
  const auto arcs = circle_arcs(crossing_angles);
  double half_value = 0.0;
  for (auto [a, b] : arcs) {
    const double share = (b - a) / (2.0 * M_PI);
    const int panels = std::max(1, static_cast<int>(std::lround(share * total_nodes / 8.0)));
    out.value += gauss_panels(f, a, b, panels);
    out.evals += panels * 8;
    half_value += gauss_panels(f, a, b, std::max(1, panels / 2));
  }
  out.est_error = std::abs(out.value - half_value);
  return out;
}

}  // namespace mslab
