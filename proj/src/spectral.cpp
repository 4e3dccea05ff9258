#include "mslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mslab {

double ventsel_psi(double x) {
  return 8.0 * x * std::cos(x) - (M_PI * M_PI - 4.0 * x * x) * std::sin(x);
}

double ventsel_psi_prime(double x) {
  return (4.0 * x * x + 8.0 - M_PI * M_PI) * std::cos(x);
}

double zeta_norm_sq_raw(double nu) {
  return M_PI * (nu * nu - 0.25) +
         std::sin(2.0 * M_PI * nu) * (0.5 * nu + 1.0 / (8.0 * nu));
}

VentselSpectrum ventsel_eigenvalues(int n) {
  if (n < 1) throw Error("ventsel_eigenvalues needs n >= 1");
  VentselSpectrum sp;
  sp.nu.reserve(n);
  for (int k = 1; k <= n; ++k) {
    double lo, hi;
    if (k == 1) {
      // Ψ(π/2) = 0 exactly: both factors vanish
      sp.nu.push_back(0.5);
      sp.bracket.push_back({M_PI / 2, M_PI / 2});
      sp.psi_residual.push_back(std::abs(ventsel_psi(M_PI / 2)));
      continue;
    }
    if (k == 2) {
      lo = 1.5 * M_PI;
      hi = 2.0 * M_PI;
    } else {
      lo = (k - 1) * M_PI;
      hi = k * M_PI;
    }
    double flo = ventsel_psi(lo), fhi = ventsel_psi(hi);
    if (flo == 0.0) flo = ventsel_psi(lo += 1e-12);
    if (fhi == 0.0) fhi = ventsel_psi(hi -= 1e-12);
    if (flo * fhi > 0) throw BracketFailure("Ψ does not change sign on the bracket");
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = ventsel_psi(m);
      if (fm == 0.0) { a = b = m; break; }
      if (flo * fm < 0) { b = m; }
      else { a = m; flo = fm; }
    }
    double x = 0.5 * (a + b);
    double best = x, best_res = std::abs(ventsel_psi(x));
    for (int it = 0; it < 16; ++it) {
      const double f = ventsel_psi(x);
      const double fp = ventsel_psi_prime(x);
      if (fp == 0.0) break;
      const double xn = x - f / fp;
      if (xn <= lo || xn >= hi) break;
      x = xn;
      const double res = std::abs(ventsel_psi(x));
      if (res < best_res) {
        best_res = res;
        best = x;
      }
      if (res == 0.0) break;
    }
    x = best;
    sp.nu.push_back(x / M_PI);
    sp.bracket.push_back({lo, hi});
    sp.psi_residual.push_back(std::abs(ventsel_psi(x)));
  }
  sp.c.assign(n, 1.0);
  for (int k = 2; k <= n; ++k) sp.c[k - 1] = 1.0 / std::sqrt(zeta_norm_sq_raw(sp.nu[k - 1]));
  return sp;
}

std::string VentselSpectrum::to_csv() const {
  std::string out = "k,nu_k,bracket_lo,bracket_hi,psi_residual\n";
  char buf[200];
  for (int k = 1; k <= count(); ++k) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", k, nu[k - 1],
                  bracket[k - 1].first, bracket[k - 1].second, psi_residual[k - 1]);
    out += buf;
  }
  return out;
}

SampledFunction SampledFunction::from_callables(PhiGrid g, const std::function<double(double)>& f,
                                                const std::function<double(double)>& fp,
                                                const std::function<double(double)>& fpp) {
  SampledFunction out;
  out.grid = g;
  out.value.resize(g.samples());
  out.d1.resize(g.samples());
  out.d2.resize(g.samples());
  for (int i = 0; i < g.samples(); ++i) {
    const double phi = g.phi(i);
    out.value[i] = f(phi);
    out.d1[i] = fp(phi);
    out.d2[i] = fpp(phi);
  }
  return out;
}

SampledFunction SampledFunction::zeros(PhiGrid g) {
  SampledFunction out;
  out.grid = g;
  out.value.assign(g.samples(), 0.0);
  out.d1.assign(g.samples(), 0.0);
  out.d2.assign(g.samples(), 0.0);
  return out;
}

void SampledFunction::axpy(double a, const SampledFunction& x) {
  if (!(grid == x.grid)) throw GridMismatch("axpy: sampled functions on different grids");
  for (std::size_t i = 0; i < value.size(); ++i) {
    value[i] += a * x.value[i];
    d1[i] += a * x.d1[i];
    d2[i] += a * x.d2[i];
  }
}

bool SampledFunction::is_odd(double tol) const {
  const int n = grid.intervals;
  const double scale = std::max(1.0, max_abs());
  for (int i = 0; i <= n; ++i)
    if (std::abs(value[i] + value[n - i]) > tol * scale) return false;
  return true;
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : value) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction zeta(int k, const VentselSpectrum& sp, PhiGrid grid) {
  if (k == 0) {
    return SampledFunction::from_callables(
        grid, [](double p) { return (p - M_PI) * std::sin(0.5 * p); },
        [](double p) { return std::sin(0.5 * p) + 0.5 * (p - M_PI) * std::cos(0.5 * p); },
        [](double p) { return std::cos(0.5 * p) - 0.25 * (p - M_PI) * std::sin(0.5 * p); });
  }
  if (k == 1) {
    return SampledFunction::from_callables(
        grid, [](double p) { return std::cos(0.5 * p); },
        [](double p) { return -0.5 * std::sin(0.5 * p); },
        [](double p) { return -0.25 * std::cos(0.5 * p); });
  }
  if (k > sp.count()) throw Error("zeta: spectrum holds too few eigenvalues");
  const double nu = sp.nu[k - 1];
  const double c = sp.c[k - 1];
  return SampledFunction::from_callables(
      grid, [=](double p) { return c * std::sin(nu * (p - M_PI)); },
      [=](double p) { return c * nu * std::cos(nu * (p - M_PI)); },
      [=](double p) { return -c * nu * nu * std::sin(nu * (p - M_PI)); });
}

SampledFunction even_basis(int k, PhiGrid grid) {
  const double m = k + 0.5;
  const double s = 1.0 / std::sqrt(M_PI);
  return SampledFunction::from_callables(
      grid, [=](double p) { return s * std::sin(m * p); },
      [=](double p) { return s * m * std::cos(m * p); },
      [=](double p) { return -s * m * m * std::sin(m * p); });
}

namespace {

// trapezoid with the h²/12 Euler-Maclaurin endpoint correction; fprime are
// the analytic endpoint derivatives of the integrand
double corrected_trapezoid(const std::vector<double>& f, double h, double fp_lo, double fp_hi) {
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return h * s - h * h / 12.0 * (fp_hi - fp_lo);
}

}  // namespace

double bilinear_form(const SampledFunction& u, const SampledFunction& v) {
  if (!(u.grid == v.grid)) throw GridMismatch("bilinear_form: different φ-grids");
  const int n = u.grid.samples();
  const double h = u.grid.h();
  std::vector<double> f1(n), f2(n);
  for (int i = 0; i < n; ++i) {
    f1[i] = u.d1[i] * v.d1[i];
    f2[i] = u.value[i] * v.value[i];
  }
  auto dprod1 = [&](int i) { return u.d2[i] * v.d1[i] + u.d1[i] * v.d2[i]; };
  auto dprod2 = [&](int i) { return u.d1[i] * v.value[i] + u.value[i] * v.d1[i]; };
  const double i1 = corrected_trapezoid(f1, h, dprod1(0), dprod1(n - 1));
  const double i2 = corrected_trapezoid(f2, h, dprod2(0), dprod2(n - 1));
  return i1 - 0.25 * i2;
}

double l2_product(const SampledFunction& u, const SampledFunction& v) {
  if (!(u.grid == v.grid)) throw GridMismatch("l2_product: different φ-grids");
  const int n = u.grid.samples();
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = u.value[i] * v.value[i];
  const double dlo = u.d1[0] * v.value[0] + u.value[0] * v.d1[0];
  const double dhi = u.d1[n - 1] * v.value[n - 1] + u.value[n - 1] * v.d1[n - 1];
  return corrected_trapezoid(f, u.grid.h(), dlo, dhi);
}

OddProjection project_odd(const SampledFunction& f, const VentselSpectrum& sp, int kmax) {
  if (!f.is_odd()) throw NotOdd("project_odd: input is not odd about φ = π");
  if (kmax < 1) throw Error("project_odd needs kmax >= 1");
  if (kmax > sp.count()) throw Error("project_odd: spectrum holds too few eigenvalues");
  OddProjection out;
  out.a.assign(kmax + 1, 0.0);

  const SampledFunction z0 = zeta(0, sp, f.grid);
  out.a[0] = bilinear_form(z0, f) / bilinear_form(z0, z0);

  for (int k = 2; k <= kmax; ++k) out.a[k] = bilinear_form(f, zeta(k, sp, f.grid));

  // remainder is a multiple of cos(φ/2); recover it in the L² product
  SampledFunction rem = f;
  rem.axpy(-out.a[0], z0);
  for (int k = 2; k <= kmax; ++k) rem.axpy(-out.a[k], zeta(k, sp, f.grid));
  const SampledFunction z1 = zeta(1, sp, f.grid);
  out.a[1] = l2_product(rem, z1) / l2_product(z1, z1);

  SampledFunction recon = synthesize_odd(out.a, sp, f.grid);
  double err = 0.0;
  for (std::size_t i = 0; i < recon.value.size(); ++i)
    err = std::max(err, std::abs(recon.value[i] - f.value[i]));
  out.reconstruction_error = err;
  return out;
}

SampledFunction synthesize_odd(const std::vector<double>& coeffs, const VentselSpectrum& sp,
                               PhiGrid grid) {
  SampledFunction out = SampledFunction::zeros(grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) out.axpy(coeffs[k], zeta(static_cast<int>(k), sp, grid));
  return out;
}

// --- ExpPoly ----------------------------------------------------------------

void ExpPoly::add_term(double coef, int pow, double rate) {
  if (coef == 0.0) return;
  for (auto& t : terms_) {
    if (t.pow == pow && std::abs(t.rate - rate) <= 1e-12 * std::max(1.0, std::abs(rate))) {
      t.coef += coef;
      return;
    }
  }
  terms_.push_back({coef, pow, rate});
}

ExpPoly ExpPoly::term(double coef, int pow, double rate) {
  ExpPoly p;
  p.add_term(coef, pow, rate);
  return p;
}

ExpPoly ExpPoly::operator+(const ExpPoly& o) const {
  ExpPoly p = *this;
  for (const auto& t : o.terms_) p.add_term(t.coef, t.pow, t.rate);
  return p;
}

ExpPoly ExpPoly::operator-(const ExpPoly& o) const {
  ExpPoly p = *this;
  for (const auto& t : o.terms_) p.add_term(-t.coef, t.pow, t.rate);
  return p;
}

ExpPoly ExpPoly::operator*(const ExpPoly& o) const {
  ExpPoly p;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) p.add_term(a.coef * b.coef, a.pow + b.pow, a.rate + b.rate);
  return p;
}

ExpPoly ExpPoly::operator*(double s) const {
  ExpPoly p = *this;
  for (auto& t : p.terms_) t.coef *= s;
  return p;
}

ExpPoly ExpPoly::derivative() const {
  ExpPoly p;
  for (const auto& t : terms_) {
    p.add_term(t.coef * t.rate, t.pow, t.rate);
    if (t.pow > 0) p.add_term(t.coef * t.pow, t.pow - 1, t.rate);
  }
  return p;
}

double ExpPoly::value(double t) const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.coef * std::pow(t, term.pow) * std::exp(term.rate * t);
  return s;
}

namespace {

// antiderivative of t^p e^{γt} evaluated at t
double antider(int pow, double rate, double t) {
  if (rate == 0.0) return std::pow(t, pow + 1) / (pow + 1);
  double acc = 0.0;
  double factor = 1.0 / rate;
  int p = pow;
  double falling = 1.0;  // p·(p−1)···
  // ∫t^p e^{γt} = e^{γt} Σ_{j=0..p} (−1)^j p!/(p−j)! t^{p−j} / γ^{j+1}
  for (int j = 0; j <= pow; ++j) {
    acc += falling * factor * std::pow(t, p);
    falling *= -p;
    factor /= rate;
    --p;
  }
  return acc * std::exp(rate * t);
}

}  // namespace

double ExpPoly::integral(double a, double b) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += t.coef * (antider(t.pow, t.rate, b) - antider(t.pow, t.rate, a));
  return s;
}

double ExpPoly::coefficient(int pow, double rate) const {
  for (const auto& t : terms_)
    if (t.pow == pow && std::abs(t.rate - rate) <= 1e-12 * std::max(1.0, std::abs(rate)))
      return t.coef;
  return 0.0;
}

double ExpPoly::min_on(double a, double b, int samples) const {
  double m = value(a);
  for (int i = 1; i <= samples; ++i) m = std::min(m, value(a + (b - a) * i / samples));
  return m;
}

double ExpPoly::max_abs_on(double a, double b, int samples) const {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) m = std::max(m, std::abs(value(a + (b - a) * i / samples)));
  return m;
}

ExpPoly ExpPoly::solve_theta(double theta_dot0) const {
  // ψ = θ̇ satisfies ψ − ψ̇ = f, i.e. (e^{−t}ψ)' = −e^{−t} f
  ExpPoly g;  // e^{−t} f
  for (const auto& t : terms_) g = g + ExpPoly::term(t.coef, t.pow, t.rate - 1.0);
  // G(t) = ∫₀ᵗ g
  ExpPoly G;
  for (const auto& t : g.terms()) {
    // antiderivative as an ExpPoly, minus its value at 0
    if (t.rate == 0.0) {
      G = G + ExpPoly::term(t.coef / (t.pow + 1), t.pow + 1, 0.0);
    } else {
      double factor = 1.0 / t.rate;
      double falling = 1.0;
      int p = t.pow;
      for (int j = 0; j <= t.pow; ++j) {
        G = G + ExpPoly::term(t.coef * falling * factor, p, t.rate);
        falling *= -p;
        factor /= t.rate;
        --p;
      }
      G = G - ExpPoly::constant(t.coef * antider(t.pow, t.rate, 0.0));
    }
  }
  // ψ = e^t (ψ₀ − G)
  ExpPoly psi = ExpPoly::term(theta_dot0, 0, 1.0);
  for (const auto& t : G.terms()) psi = psi - ExpPoly::term(t.coef, t.pow, t.rate + 1.0);
  // θ = ∫₀ᵗ ψ
  ExpPoly theta;
  for (const auto& t : psi.terms()) {
    if (t.rate == 0.0) {
      theta = theta + ExpPoly::term(t.coef / (t.pow + 1), t.pow + 1, 0.0);
    } else {
      double factor = 1.0 / t.rate;
      double falling = 1.0;
      int p = t.pow;
      for (int j = 0; j <= t.pow; ++j) {
        theta = theta + ExpPoly::term(t.coef * falling * factor, p, t.rate);
        falling *= -p;
        factor /= t.rate;
        --p;
      }
      theta = theta - ExpPoly::constant(t.coef * antider(t.pow, t.rate, 0.0));
    }
  }
  return theta;
}

// --- SpectralSolution --------------------------------------------------------

SpectralSolution SpectralSolution::even(std::vector<Mode> modes) {
  SpectralSolution s;
  s.parity = Parity::Even;
  s.modes = std::move(modes);
  return s;
}

double SpectralSolution::growth_exponent(int k) const {
  if (parity == Parity::Even) return k + 1.0;
  return 0.5 + spectrum->nu[k - 1];
}

double SpectralSolution::decay_exponent(int k) const {
  if (parity == Parity::Even) return -static_cast<double>(k);
  return 0.5 - spectrum->nu[k - 1];
}

ExpPoly SpectralSolution::coefficient_poly(int k) const {
  if (parity == Parity::Odd && k == 0)
    return ExpPoly::constant(A) + ExpPoly::term(B, 0, 1.0);
  if (parity == Parity::Odd && k == 1)
    return ExpPoly::constant(P) + ExpPoly::term(Q, 0, 1.0) + ExpPoly::term(A, 1, 0.0) +
           ExpPoly::term(-B, 1, 1.0);
  for (const auto& m : modes) {
    if (m.k == k)
      return ExpPoly::term(m.C, 0, growth_exponent(k)) + ExpPoly::term(m.D, 0, decay_exponent(k));
  }
  return ExpPoly{};
}

namespace {

ExpPoly theta_source(const SpectralSolution& s) {
  // 2√(2/π)·ζ_φ(0,t) with ζ₀'(0) = −π/2, ζ₁'(0) = 0, ζ_k'(0) = c_k ν_k cos(ν_k π)
  const double pref = 2.0 * std::sqrt(2.0 / M_PI);
  ExpPoly f = s.coefficient_poly(0) * (-0.5 * M_PI * pref);
  for (const auto& m : s.modes) {
    const double nu = s.spectrum->nu[m.k - 1];
    const double zp0 = s.spectrum->c[m.k - 1] * nu * std::cos(nu * M_PI);
    f = f + s.coefficient_poly(m.k) * (pref * zp0);
  }
  return f;
}

// side condition ∫v_φ sin(φ/2) dφ scaled by 2/π:
// a₀ − a₁ − θ/√(2π) + Σ c_k sin(ν_k π) a_k
ExpPoly side_condition_poly(const SpectralSolution& s) {
  ExpPoly S = s.coefficient_poly(0) - s.coefficient_poly(1);
  S = S - s.theta() * (1.0 / std::sqrt(2.0 * M_PI));
  for (const auto& m : s.modes) {
    const double nu = s.spectrum->nu[m.k - 1];
    S = S + s.coefficient_poly(m.k) * (s.spectrum->c[m.k - 1] * std::sin(nu * M_PI));
  }
  return S;
}

}  // namespace

ExpPoly SpectralSolution::theta() const {
  if (parity != Parity::Odd) throw Error("theta: even solutions carry no θ channel");
  return theta_source(*this).solve_theta(theta_dot0);
}

SpectralSolution SpectralSolution::odd_admissible(std::vector<Mode> modes, double A, double B,
                                                  double theta_dot0,
                                                  std::shared_ptr<const VentselSpectrum> sp) {
  SpectralSolution s;
  s.parity = Parity::Odd;
  s.modes = std::move(modes);
  s.spectrum = std::move(sp);
  for (const auto& m : s.modes) {
    if (m.k < 2) throw Error("odd modes start at k = 2");
    if (m.k > s.spectrum->count()) throw Error("spectrum holds too few eigenvalues");
  }
  s.A = A;
  s.B = B;
  s.theta_dot0 = theta_dot0;
  s.P = 0.0;
  s.Q = 0.0;
  // the a₁ channel enters the side condition with coefficient −1 at rates
  // {1, e^t}; everything else is fixed, so P and Q read off directly
  const ExpPoly S0 = side_condition_poly(s);
  s.P = S0.coefficient(0, 0.0);
  s.Q = S0.coefficient(0, 1.0);
  return s;
}

std::vector<int> SpectralSolution::mode_indices() const {
  std::vector<int> idx;
  if (parity == Parity::Odd) {
    idx.push_back(0);
    idx.push_back(1);
  }
  for (const auto& m : modes) idx.push_back(m.k);
  return idx;
}

std::vector<double> SpectralSolution::coefficients_at(double t) const {
  std::vector<double> out;
  for (int k : mode_indices()) out.push_back(coefficient_poly(k).value(t));
  return out;
}

SampledFunction SpectralSolution::evolve(double t, PhiGrid grid) const {
  SampledFunction out = SampledFunction::zeros(grid);
  if (parity == Parity::Even) {
    for (const auto& m : modes) out.axpy(coefficient_poly(m.k).value(t), even_basis(m.k, grid));
    return out;
  }
  for (int k : mode_indices()) out.axpy(coefficient_poly(k).value(t), zeta(k, *spectrum, grid));
  return out;
}

double SpectralSolution::ode_residual_fd(const std::vector<double>& tgrid, double dt) const {
  double worst = 0.0;
  auto probe = [&](const ExpPoly& a, double cconst, const ExpPoly* forcing) {
    for (double t : tgrid) {
      const double add = forcing ? forcing->value(t) : 0.0;
      const double second = (a.value(t + dt) - 2.0 * a.value(t) + a.value(t - dt)) / (dt * dt);
      const double first = (a.value(t + dt) - a.value(t - dt)) / (2.0 * dt);
      const double scale = std::max(1.0, (1.0 + cconst) * std::abs(a.value(t)));
      worst = std::max(worst, std::abs(second - first - cconst * a.value(t) + add) / scale);
    }
  };
  if (parity == Parity::Even) {
    for (const auto& m : modes) {
      const ExpPoly a = coefficient_poly(m.k);
      probe(a, static_cast<double>(m.k) * m.k + m.k, nullptr);
    }
    return worst;
  }
  for (const auto& m : modes) {
    const double nu = spectrum->nu[m.k - 1];
    probe(coefficient_poly(m.k), nu * nu - 0.25, nullptr);
  }
  probe(coefficient_poly(0), 0.0, nullptr);
  const ExpPoly a0 = coefficient_poly(0);  // ä₁ − ȧ₁ + a₀ = 0
  probe(coefficient_poly(1), 0.0, &a0);
  return worst;
}

double SpectralSolution::theta_coupling_residual(const std::vector<double>& tgrid) const {
  const ExpPoly th = theta();
  const ExpPoly lhs = th.derivative() - th.derivative().derivative();
  const ExpPoly f = theta_source(*this);
  double worst = 0.0;
  for (double t : tgrid) worst = std::max(worst, std::abs(lhs.value(t) - f.value(t)));
  return worst;
}

double SpectralSolution::side_condition_residual() const {
  if (parity != Parity::Odd) throw Error("side condition applies to odd solutions");
  return side_condition_poly(*this).max_abs_on(0.0, 3.0) * (M_PI / 2.0);
}

ThreeAnnuliReport three_annuli_check(const SpectralSolution& sol, double eta, double c0) {
  ThreeAnnuliReport rep;
  rep.eta = eta;
  auto fill = [&](auto&& G) {
    rep.G01 = G(0.0, 1.0);
    rep.G12 = G(1.0, 2.0);
    rep.G23 = G(2.0, 3.0);
  };
  if (sol.parity == Parity::Even) {
    ExpPoly h;
    for (const auto& m : sol.modes) {
      const double w = std::pow(m.k + 0.5, 4);
      h = h + sol.coefficient_poly(m.k).squared() * w;
    }
    fill([&](double a, double b) { return h.integral(a, b); });
    const ExpPoly witness = h.derivative().derivative() - h;
    const double scale = std::max(1.0, h.max_abs_on(0.0, 3.0));
    rep.convexity_ok = witness.min_on(0.0, 3.0, 512) >= -1e-9 * scale;
  } else {
    ExpPoly hE;
    for (const auto& m : sol.modes) {
      const double nu = sol.spectrum->nu[m.k - 1];
      const ExpPoly a = sol.coefficient_poly(m.k);
      hE = hE + a.squared() * std::pow(nu, 4) + a.derivative().derivative().squared();
    }
    const ExpPoly th = sol.theta();
    const ExpPoly a0 = sol.coefficient_poly(0);
    const ExpPoly a1 = sol.coefficient_poly(1);
    ExpPoly hF = th.derivative().squared() + th.derivative().derivative().squared() +
                 a0.squared() + a1.squared() + a0.derivative().derivative().squared() +
                 a1.derivative().derivative().squared();
    fill([&](double a, double b) {
      return std::max(hE.integral(a, b), c0 * hF.integral(a, b));
    });
  }
  const double slack = 1e-12 * std::max({1.0, rep.G01, rep.G12, rep.G23});
  rep.hypothesis = rep.G12 >= (1.0 - eta) * rep.G01 - slack;
  rep.conclusion = rep.G23 >= (1.0 + eta) * rep.G12 - slack;
  rep.implication_holds = !rep.hypothesis || rep.conclusion;
  return rep;
}

}  // namespace mslab
