#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mslab/field.hpp"
#include "mslab/geometry.hpp"

namespace mslab {

inline constexpr double kCracktipFactorSq = 2.0 / M_PI;  // b² of the critical cracktip

enum class ModelKind { Constant, PureJump, TripleJunction, Cracktip };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct Pose {
  double theta = 0.0;
  Vec2 center{};

  Vec2 to_canonical(Vec2 p) const { return (p - center).rotated(-theta); }
  Vec2 from_canonical(Vec2 q) const { return q.rotated(theta) + center; }
  Vec2 rotate_out(Vec2 v) const { return v.rotated(theta); }
};

struct EvalResult {
  double u = 0.0;
  Vec2 grad{};
};

// Exact elementary global minimizers plus the cracktip. Jump amplitudes of the
// piecewise-constant models are display metadata: the paper's elementary
// minimizers carry infinite jumps, so the values never enter the Dirichlet
// energy (the gradient is identically zero off K).
struct ModelMinimizer {
  ModelKind kind = ModelKind::Constant;
  Pose pose;
  std::vector<double> sector_values;          // Constant: 1, PureJump: 2, Triple: 3
  double b = std::sqrt(kCracktipFactorSq);    // cracktip amplitude
  bool negative = false;                      // cracktip sign flag

  static ModelMinimizer constant(double value = 0.0);
  static ModelMinimizer pure_jump(double theta = 0.0, Vec2 center = {}, double lo = 0.0,
                                  double hi = 1.0);
  static ModelMinimizer triple_junction(double theta = 0.0, Vec2 center = {},
                                        std::vector<double> values = {0.0, 1.0, 2.0});
  static ModelMinimizer cracktip(double theta = 0.0, Vec2 tip = {},
                                 double b = std::sqrt(kCracktipFactorSq), bool negative = false);

  bool critical_cracktip(double tol = 1e-12) const {
    return kind == ModelKind::Cracktip && std::abs(b * b - kCracktipFactorSq) <= tol;
  }

  double signed_b() const { return negative ? -b : b; }

  std::string to_json() const;
  static ModelMinimizer from_json(const std::string& text);
};

// closed-form value and gradient; throws OnJumpSet within 1e-12 of K
EvalResult eval(const ModelMinimizer& m, Vec2 p);

// |∇u|² (0 for the piecewise-constant kinds, b²/(4|p−tip|) for cracktip)
double gradient_sq(const ModelMinimizer& m, Vec2 p);

double distance_to_jump_set(const ModelMinimizer& m, Vec2 p);

// polyline representation of K, arms truncated at `extent` from the pose center
JumpSet model_jump_set(const ModelMinimizer& m, double extent = 16.0);

// Harmonic conjugate: ∇v = ∇u⊥, v(0)=0 on the cracktip's K; identically zero
// for constant and (off K) for the piecewise-constant kinds.
struct HarmonicConjugate {
  ModelMinimizer base;
  EvalResult eval(Vec2 p) const;
};
HarmonicConjugate conjugate(const ModelMinimizer& m);

// Admissible pair view: an analytic model or a (ScalarField, JumpSet) couple,
// together with the fidelity datum g and weight λ.
class PairView {
 public:
  static PairView of_model(ModelMinimizer m, double lambda = 0.0, double g = 0.0);
  static PairView of_field(std::shared_ptr<const ScalarField> u,
                           std::shared_ptr<const JumpSet> k, double lambda = 0.0, double g = 0.0);
  static PairView of_field(std::shared_ptr<const ScalarField> u,
                           std::shared_ptr<const JumpSet> k, double lambda,
                           std::shared_ptr<const ScalarField> g);

  bool is_model() const { return model_.has_value(); }
  const ModelMinimizer& model() const { return *model_; }
  const ScalarField& field() const { return *field_; }
  const std::shared_ptr<const ScalarField>& field_ptr() const { return field_; }
  const JumpSet& jumps() const;

  double lambda() const { return lambda_; }
  double g_at(Vec2 p) const;
  double g_sup() const;
  bool has_field_g() const { return static_cast<bool>(g_field_); }

  EvalResult eval(Vec2 p) const;
  double gradient_sq(Vec2 p) const;
  double distance_to_jumps(Vec2 p) const;
  bool disk_inside_domain(const Disk& d) const;

  // model jump sets are truncated polylines; widen when big disks are probed
  void ensure_extent(double extent) const;

 private:
  std::optional<ModelMinimizer> model_;
  std::shared_ptr<const ScalarField> field_;
  mutable std::shared_ptr<const JumpSet> jumps_;
  mutable double extent_ = 16.0;
  double lambda_ = 0.0;
  double g_const_ = 0.0;
  std::shared_ptr<const ScalarField> g_field_;
};

// (K_{x,r}, u_{x,r}) with u_{x,r}(y) = r^{-1/2} u(x + r y); the fidelity weight
// becomes λ·r² so that E_λ(B_r(x)) = r · E_{λr²}(rescaled, B₁)
PairView rescale(const PairView& p, Vec2 x, double r);

}  // namespace mslab
