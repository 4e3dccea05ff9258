#include "mslab/models.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace mslab {

namespace {
constexpr double kOnSetTol = 1e-12;
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Constant: return "constant";
    case ModelKind::PureJump: return "pure-jump";
    case ModelKind::TripleJunction: return "triple-junction";
    case ModelKind::Cracktip: return "cracktip";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "constant") return ModelKind::Constant;
  if (s == "pure-jump" || s == "jump") return ModelKind::PureJump;
  if (s == "triple-junction" || s == "triple") return ModelKind::TripleJunction;
  if (s == "cracktip") return ModelKind::Cracktip;
  throw Error("unknown model kind: " + s);
}

ModelMinimizer ModelMinimizer::constant(double value) {
  ModelMinimizer m;
  m.kind = ModelKind::Constant;
  m.sector_values = {value};
  return m;
}

ModelMinimizer ModelMinimizer::pure_jump(double theta, Vec2 center, double lo, double hi) {
  ModelMinimizer m;
  m.kind = ModelKind::PureJump;
  m.pose = {theta, center};
  m.sector_values = {lo, hi};
  return m;
}

ModelMinimizer ModelMinimizer::triple_junction(double theta, Vec2 center,
                                               std::vector<double> values) {
  ModelMinimizer m;
  m.kind = ModelKind::TripleJunction;
  m.pose = {theta, center};
  if (values.size() != 3) throw Error("triple junction takes three sector values");
  m.sector_values = std::move(values);
  return m;
}

ModelMinimizer ModelMinimizer::cracktip(double theta, Vec2 tip, double b, bool negative) {
  ModelMinimizer m;
  m.kind = ModelKind::Cracktip;
  m.pose = {theta, tip};
  m.b = b;
  m.negative = negative;
  return m;
}

std::string ModelMinimizer::to_json() const {
  nlohmann::json doc;
  doc["kind"] = to_string(kind);
  doc["theta"] = pose.theta;
  doc["center"] = {pose.center.x, pose.center.y};
  nlohmann::json params;
  switch (kind) {
    case ModelKind::Constant: params["value"] = sector_values[0]; break;
    case ModelKind::PureJump:
      params["lo"] = sector_values[0];
      params["hi"] = sector_values[1];
      break;
    case ModelKind::TripleJunction: params["values"] = sector_values; break;
    case ModelKind::Cracktip:
      params["b"] = b;
      params["negative"] = negative;
      break;
  }
  doc["params"] = params;
  return doc.dump(2);
}

ModelMinimizer ModelMinimizer::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const ModelKind kind = model_kind_from_string(doc.at("kind").get<std::string>());
  const double theta = doc.value("theta", 0.0);
  Vec2 center{};
  if (doc.contains("center")) center = {doc["center"].at(0), doc["center"].at(1)};
  const auto params = doc.value("params", nlohmann::json::object());
  switch (kind) {
    case ModelKind::Constant: return constant(params.value("value", 0.0));
    case ModelKind::PureJump:
      return pure_jump(theta, center, params.value("lo", 0.0), params.value("hi", 1.0));
    case ModelKind::TripleJunction: {
      std::vector<double> values = {0.0, 1.0, 2.0};
      if (params.contains("values")) values = params["values"].get<std::vector<double>>();
      return triple_junction(theta, center, values);
    }
    case ModelKind::Cracktip:
      return cracktip(theta, center, params.value("b", std::sqrt(kCracktipFactorSq)),
                      params.value("negative", false));
  }
  throw Error("unreachable");
}

double distance_to_jump_set(const ModelMinimizer& m, Vec2 p) {
  const Vec2 q = m.pose.to_canonical(p);
  switch (m.kind) {
    case ModelKind::Constant:
      return std::numeric_limits<double>::infinity();
    case ModelKind::PureJump:
      return std::abs(q.y);
    case ModelKind::Cracktip:
      return q.x >= 0 ? std::abs(q.y) : q.norm();
    case ModelKind::TripleJunction: {
      double best = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 3; ++a) {
        const Vec2 e = Vec2(1, 0).rotated(2.0 * M_PI * a / 3.0);
        const double t = std::max(0.0, q.dot(e));
        best = std::min(best, (q - t * e).norm());
      }
      return best;
    }
  }
  return 0.0;
}

namespace {

// canonical cracktip value/gradient, u = s·b·√ρ·cos(θ/2) with θ ∈ (0, 2π)
EvalResult cracktip_canonical(const ModelMinimizer& m, Vec2 q) {
  const double rho = q.norm();
  double theta = std::atan2(q.y, q.x);
  if (theta < 0) theta += 2.0 * M_PI;
  const double sb = m.signed_b();
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double sr = std::sqrt(rho);
  EvalResult out;
  out.u = sb * sr * c;
  const double ur = 0.5 * sb * c / sr;          // ∂u/∂ρ
  const double ut_over_r = -0.5 * sb * s / sr;  // (1/ρ)∂u/∂θ
  const Vec2 er{std::cos(theta), std::sin(theta)};
  const Vec2 et{-std::sin(theta), std::cos(theta)};
  out.grad = ur * er + ut_over_r * et;
  return out;
}

int triple_sector(Vec2 q) {
  double theta = std::atan2(q.y, q.x);
  if (theta < 0) theta += 2.0 * M_PI;
  return std::min(2, static_cast<int>(theta / (2.0 * M_PI / 3.0)));
}

}  // namespace

EvalResult eval(const ModelMinimizer& m, Vec2 p) {
  if (m.kind != ModelKind::Constant && distance_to_jump_set(m, p) <= kOnSetTol)
    throw OnJumpSet("eval point within 1e-12 of the jump set");
  const Vec2 q = m.pose.to_canonical(p);
  switch (m.kind) {
    case ModelKind::Constant:
      return {m.sector_values[0], {0, 0}};
    case ModelKind::PureJump:
      return {q.y > 0 ? m.sector_values[1] : m.sector_values[0], {0, 0}};
    case ModelKind::TripleJunction:
      return {m.sector_values[triple_sector(q)], {0, 0}};
    case ModelKind::Cracktip: {
      EvalResult out = cracktip_canonical(m, q);
      out.grad = m.pose.rotate_out(out.grad);
      return out;
    }
  }
  return {};
}

double gradient_sq(const ModelMinimizer& m, Vec2 p) {
  if (m.kind != ModelKind::Cracktip) return 0.0;
  const double rho = (p - m.pose.center).norm();
  return 0.25 * m.b * m.b / rho;
}

JumpSet model_jump_set(const ModelMinimizer& m, double extent) {
  JumpSet k;
  const Pose& pose = m.pose;
  switch (m.kind) {
    case ModelKind::Constant:
      break;
    case ModelKind::PureJump:
      k.add_chain({pose.from_canonical({-extent, 0}), pose.from_canonical({extent, 0})});
      break;
    case ModelKind::TripleJunction:
      for (int a = 0; a < 3; ++a) {
        const Vec2 e = Vec2(1, 0).rotated(2.0 * M_PI * a / 3.0);
        k.add_chain({pose.from_canonical({0, 0}), pose.from_canonical(extent * e)});
      }
      break;
    case ModelKind::Cracktip:
      k.add_chain({pose.from_canonical({0, 0}), pose.from_canonical({extent, 0})});
      break;
  }
  return k;
}

EvalResult HarmonicConjugate::eval(Vec2 p) const {
  if (base.kind != ModelKind::Cracktip) return {0.0, {0, 0}};
  const Vec2 q = base.pose.to_canonical(p);
  const double rho = q.norm();
  double theta = std::atan2(q.y, q.x);
  if (theta < 0) theta += 2.0 * M_PI;
  const double sb = base.signed_b();
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const double sr = std::sqrt(rho);
  EvalResult out;
  out.u = sb * sr * s;
  const double vr = 0.5 * sb * s / sr;
  const double vt_over_r = 0.5 * sb * c / sr;
  const Vec2 er{std::cos(theta), std::sin(theta)};
  const Vec2 et{-std::sin(theta), std::cos(theta)};
  out.grad = base.pose.rotate_out(vr * er + vt_over_r * et);
  return out;
}

HarmonicConjugate conjugate(const ModelMinimizer& m) { return {m}; }

PairView PairView::of_model(ModelMinimizer m, double lambda, double g) {
  PairView v;
  v.model_ = std::move(m);
  v.lambda_ = lambda;
  v.g_const_ = g;
  return v;
}

PairView PairView::of_field(std::shared_ptr<const ScalarField> u,
                            std::shared_ptr<const JumpSet> k, double lambda, double g) {
  PairView v;
  v.field_ = std::move(u);
  v.jumps_ = std::move(k);
  v.lambda_ = lambda;
  v.g_const_ = g;
  return v;
}

PairView PairView::of_field(std::shared_ptr<const ScalarField> u,
                            std::shared_ptr<const JumpSet> k, double lambda,
                            std::shared_ptr<const ScalarField> g) {
  PairView v;
  v.field_ = std::move(u);
  v.jumps_ = std::move(k);
  v.lambda_ = lambda;
  v.g_field_ = std::move(g);
  return v;
}

const JumpSet& PairView::jumps() const {
  if (!jumps_) jumps_ = std::make_shared<JumpSet>(model_jump_set(*model_, extent_));
  return *jumps_;
}

void PairView::ensure_extent(double extent) const {
  if (!is_model()) return;
  if (extent > extent_ || !jumps_) {
    extent_ = std::max(extent, extent_);
    jumps_ = std::make_shared<JumpSet>(model_jump_set(*model_, extent_));
  }
}

double PairView::g_at(Vec2 p) const { return g_field_ ? g_field_->interp(p) : g_const_; }

double PairView::g_sup() const { return g_field_ ? g_field_->max_abs() : std::abs(g_const_); }

EvalResult PairView::eval(Vec2 p) const {
  if (is_model()) return mslab::eval(*model_, p);
  return {field_->interp(p), field_->gradient(p)};
}

double PairView::gradient_sq(Vec2 p) const {
  if (is_model()) return mslab::gradient_sq(*model_, p);
  return field_->gradient(p).norm2();
}

double PairView::distance_to_jumps(Vec2 p) const {
  if (is_model()) return distance_to_jump_set(*model_, p);
  return jumps_->empty() ? std::numeric_limits<double>::infinity() : jumps_->distance_to(p);
}

bool PairView::disk_inside_domain(const Disk& d) const {
  if (is_model()) return true;
  return field_->disk_inside(d);
}

PairView rescale(const PairView& p, Vec2 x, double r) {
  if (!(r > 0)) throw Error("rescale needs r > 0");
  const double amp = 1.0 / std::sqrt(r);
  const double lambda2 = p.lambda() * r * r;
  if (p.is_model()) {
    ModelMinimizer m = p.model();
    m.pose.center = (m.pose.center - x) / r;
    for (double& v : m.sector_values) v *= amp;
    // cracktip amplitude is invariant: u is 1/2-homogeneous about the tip
    return PairView::of_model(std::move(m), lambda2, p.g_at(x) * amp);
  }
  const ScalarField& u = p.field();
  auto su = std::make_shared<ScalarField>((u.origin() - x) / r, u.spacing() / r, u.nx(), u.ny());
  for (int j = 0; j < u.ny(); ++j)
    for (int i = 0; i < u.nx(); ++i) su->at(i, j) = amp * u.at(i, j);
  auto sk = std::make_shared<JumpSet>();
  for (std::size_t c = 0; c < p.jumps().chain_count(); ++c) {
    std::vector<Vec2> pts;
    for (Vec2 v : p.jumps().chains()[c]) pts.push_back((v - x) / r);
    sk->add_chain(std::move(pts), p.jumps().closed_flags()[c]);
  }
  su->attach_jumps(sk, 2.0 * su->spacing(), p.field().exclusion_band() / r);
  return PairView::of_field(std::move(su), std::move(sk), lambda2, 0.0);
}

}  // namespace mslab
