#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mslab/errors.hpp"

namespace mslab {

// Ψ(x) = 8x·cos x − (π²−4x²)·sin x; the Ventsel eigenvalues are ν_k = x_k/π
// over the positive roots of Ψ
double ventsel_psi(double x);
double ventsel_psi_prime(double x);

struct VentselSpectrum {
  std::vector<double> nu;                          // ν₁ = 1/2, ν₂ ∈ (3/2,2), ν_k ∈ (k−1,k)
  std::vector<double> c;                           // ⟨ζ_k,ζ_k⟩ = 1 normalizations (k ≥ 2)
  std::vector<std::pair<double, double>> bracket;  // root brackets used (in x = πν)
  std::vector<double> psi_residual;                // |Ψ(πν_k)|

  int count() const { return static_cast<int>(nu.size()); }
  std::string to_csv() const;  // k, nu_k, bracket_lo, bracket_hi, psi_residual
};

VentselSpectrum ventsel_eigenvalues(int n);

// ⟨g,g⟩ for g = sin(ν(φ−π)) in closed form
double zeta_norm_sq_raw(double nu);

// Uniform φ-grid on [0, 2π] (n intervals, n+1 samples).
struct PhiGrid {
  int intervals = 4096;
  double h() const { return 2.0 * M_PI / intervals; }
  int samples() const { return intervals + 1; }
  double phi(int i) const { return 2.0 * M_PI * i / intervals; }
  bool operator==(const PhiGrid& o) const { return intervals == o.intervals; }
};

// Sampled function on the φ-grid carrying analytic first and second
// derivatives: the degenerate bilinear form needs the derivative channel to
// keep cancellations like ⟨ζ₁,ζ₁⟩ = 0 at machine precision (numerical
// differencing loses them).
struct SampledFunction {
  PhiGrid grid;
  std::vector<double> value, d1, d2;

  static SampledFunction from_callables(PhiGrid g, const std::function<double(double)>& f,
                                        const std::function<double(double)>& fp,
                                        const std::function<double(double)>& fpp);
  static SampledFunction zeros(PhiGrid g);
  void axpy(double a, const SampledFunction& x);  // this += a·x
  bool is_odd(double tol = 1e-8) const;           // about φ = π
  double max_abs() const;
};

// ζ basis: ζ₀ = (φ−π)sin(φ/2), ζ₁ = cos(φ/2), ζ_k = c_k sin(ν_k(φ−π))
SampledFunction zeta(int k, const VentselSpectrum& sp, PhiGrid grid = {});
// even basis element sin((k+½)φ)/√π
SampledFunction even_basis(int k, PhiGrid grid = {});

// ⟨u,v⟩ = ∫u′v′ − ¼∫uv, trapezoid with Euler-Maclaurin endpoint correction
double bilinear_form(const SampledFunction& u, const SampledFunction& v);

// plain L² product (same corrected trapezoid)
double l2_product(const SampledFunction& u, const SampledFunction& v);

struct OddProjection {
  std::vector<double> a;  // a_0 ... a_kmax
  double reconstruction_error = 0.0;
};

// a_k = ⟨f,ζ_k⟩ for k ≥ 2, a₀ = ⟨ζ₀,f⟩/⟨ζ₀,ζ₀⟩, a₁ from the remainder's
// cos(φ/2) component in the L² product
OddProjection project_odd(const SampledFunction& f, const VentselSpectrum& sp, int kmax);
SampledFunction synthesize_odd(const std::vector<double>& coeffs, const VentselSpectrum& sp,
                               PhiGrid grid = {});

// --- closed-form time evolution -------------------------------------------

// sum of c · t^p · e^{γt} terms; exact derivatives/integrals/products
class ExpPoly {
 public:
  struct Term {
    double coef;
    int pow;
    double rate;
  };

  ExpPoly() = default;
  static ExpPoly term(double coef, int pow, double rate);
  static ExpPoly constant(double c) { return term(c, 0, 0.0); }

  ExpPoly operator+(const ExpPoly& o) const;
  ExpPoly operator-(const ExpPoly& o) const;
  ExpPoly operator*(const ExpPoly& o) const;
  ExpPoly operator*(double s) const;
  ExpPoly derivative() const;
  ExpPoly squared() const { return (*this) * (*this); }
  double value(double t) const;
  double integral(double a, double b) const;
  // solves θ̇ − θ̈ = f with θ(0) = 0 and given θ̇(0) (this object is f)
  ExpPoly solve_theta(double theta_dot0) const;
  double coefficient(int pow, double rate) const;
  double min_on(double a, double b, int samples = 256) const;
  double max_abs_on(double a, double b, int samples = 256) const;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  void add_term(double coef, int pow, double rate);
  std::vector<Term> terms_;
};

enum class Parity { Even, Odd };

struct Mode {
  int k = 0;
  double C = 0.0;  // coefficient of the growing exponent (k+1, resp. μ_{k,+})
  double D = 0.0;  // coefficient of the decaying exponent (−k, resp. μ_{k,−})
};

// Modal solution of the linearized system: even modes evolve as
// a_k(t) = C e^{(k+1)t} + D e^{−kt}; odd modes (k ≥ 2) with exponents
// μ_{k,±} = 1/2 ± ν_k. Odd solutions additionally carry the ζ₀/ζ₁ Jordan
// block (ä₀−ȧ₀ = 0, ä₁−ȧ₁+a₀ = 0) and the θ channel, which is not an
// evolution unknown: it is recovered post-hoc from θ̇−θ̈ = 2√(2/π)·ζ_φ(0,t),
// θ(0) = 0.
struct SpectralSolution {
  Parity parity = Parity::Even;
  std::vector<Mode> modes;
  std::shared_ptr<const VentselSpectrum> spectrum;  // required for odd

  // odd channel: a₀(t) = A + B e^t, a₁(t) = P + Q e^t + A t − B t e^t
  double A = 0, B = 0, P = 0, Q = 0;
  double theta_dot0 = 0;

  static SpectralSolution even(std::vector<Mode> modes);
  // P and Q are solved from the integral side condition (the mode terms drop
  // out of it identically through the eigenvalue relation)
  static SpectralSolution odd_admissible(std::vector<Mode> modes, double A, double B,
                                         double theta_dot0,
                                         std::shared_ptr<const VentselSpectrum> sp);

  ExpPoly coefficient_poly(int k) const;  // a_k(t); odd k ∈ {0,1} are the channel coefficients
  ExpPoly theta() const;                  // odd only
  double growth_exponent(int k) const;
  double decay_exponent(int k) const;

  std::vector<int> mode_indices() const;  // modes plus {0,1} channel for odd
  std::vector<double> coefficients_at(double t) const;
  SampledFunction evolve(double t, PhiGrid grid = {}) const;

  // max relative |ä_k − ȧ_k − c_k a_k| over a finite-difference probe of the
  // closed form (normalized by the local solution scale)
  double ode_residual_fd(const std::vector<double>& tgrid, double dt = 3e-5) const;
  // residual of θ̇ − θ̈ = 2√(2/π) ζ_φ(0,t) on a t-grid (post-hoc consistency)
  double theta_coupling_residual(const std::vector<double>& tgrid) const;
  // residual of the integral side condition ∫v_φ sin(φ/2)dφ = 0 over [0,3]
  double side_condition_residual() const;
};

struct ThreeAnnuliReport {
  double G01 = 0, G12 = 0, G23 = 0;
  bool hypothesis = false;  // G(1,2) ≥ (1−η)·G(0,1)
  bool conclusion = false;  // G(2,3) ≥ (1+η)·G(1,2)
  bool implication_holds = true;
  double eta = 0;
  bool convexity_ok = true;  // ḧ ≥ h for the even witness h = Σ(k+½)⁴a_k²
};

// even: G_e = ∫‖v_φφ‖²; odd: G_o = max{E, c₀·F} over the three unit
// time-annuli, by closed-form integration of the exponentials
ThreeAnnuliReport three_annuli_check(const SpectralSolution& sol, double eta, double c0 = 0.01);

}  // namespace mslab
