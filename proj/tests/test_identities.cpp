#include <complex>
#include <random>

#include "doctest.h"
#include "mslab/energy.hpp"
#include "mslab/identities.hpp"

using namespace mslab;

TEST_SUITE_BEGIN("identities");

TEST_CASE("Euler-Lagrange residuals vanish on a straight pure jump") {
  const auto p = PairView::of_model(ModelMinimizer::pure_jump());
  const auto res = euler_lagrange_residuals(p, {{-0.8, 0}, {0.8, 0}}, 0.05);
  for (double v : res.neumann) CHECK(std::abs(v) < 1e-12);
  for (double v : res.curvature) CHECK(std::abs(v) < 1e-12);
  for (double v : res.harmonic) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("cracktip EL residuals decay at first order away from the tip") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const std::vector<Vec2> arc = {{0.3, 0}, {1.0, 0}};
  double prev_n = 0, prev_c = 0;
  int step = 0;
  for (double h : {0.02, 0.01, 0.005, 0.0025}) {
    const auto res = euler_lagrange_residuals(p, arc, h);
    double n = 0, c = 0;
    for (double v : res.neumann) n = std::max(n, std::abs(v));
    for (double v : res.curvature) c = std::max(c, std::abs(v));
    if (step > 0) {
      CHECK(std::log2(prev_n / n) > 0.9);
      CHECK(std::log2(prev_c / c) > 0.9);
    }
    prev_n = n;
    prev_c = c;
    ++step;
  }
}

TEST_CASE("a non-critical pair is detected: u = x against a vertical arc") {
  // Neumann residual = |∂u/∂ν| = 1 exactly for the linear field
  auto f = std::make_shared<ScalarField>(
      ScalarField::sample({-1, -1}, 0.05, 41, 41, [](Vec2 p) { return p.x; }));
  auto k = std::make_shared<JumpSet>();
  k->add_chain({{0.0, -0.6}, {0.0, 0.6}});
  f->attach_jumps(k, 0.1);
  const auto p = PairView::of_field(f, k, 0.0, 0.0);
  const auto res = euler_lagrange_residuals(p, {{0.0, -0.4}, {0.0, 0.4}}, 0.1);
  for (double v : res.neumann) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("arc off the jump set is rejected") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  CHECK_THROWS_AS(euler_lagrange_residuals(p, {{0.3, 0.5}, {1.0, 0.5}}, 0.05), NotAJumpArc);
}

TEST_CASE("DLMS identity for the cracktip at the tip") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto res = dlms_residual(p, {0, 0}, 1.0);
  // ∮(∂u/∂n)² = πb²/4 = 1/2; rhs = 1/2 − 1 + 1
  CHECK(res.lhs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.terms.at("tangential_sq") == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.terms.at("length_over_r") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.terms.at("crossing_sum") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.residual) < 1e-8);
}

TEST_CASE("DLMS identity across radii and for the length-only models") {
  const auto ct = PairView::of_model(ModelMinimizer::cracktip());
  for (double r : {0.2, 0.5, 0.8, 1.0})
    CHECK(std::abs(dlms_residual(ct, {0, 0}, r).residual) < 1e-8);
  const auto pj = PairView::of_model(ModelMinimizer::pure_jump());
  const auto tj = PairView::of_model(ModelMinimizer::triple_junction());
  for (double r : {0.3, 1.0, 1.4}) {
    CHECK(std::abs(dlms_residual(pj, {0, 0}, r).residual) < 1e-12);
    CHECK(std::abs(dlms_residual(tj, {0, 0}, r).residual) < 1e-12);
  }
}

TEST_CASE("translation identity on the cracktip: boundary −1, crossing +1") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto res =
      boundary_identity_residual(p, {0, 0}, 1.0, BoundaryVariationKind::Translation, {1, 0});
  CHECK(res.terms.at("boundary") == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(res.terms.at("crossing_sum") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.residual) < 1e-9);
}

TEST_CASE("rotation identity on the cracktip") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto res = boundary_identity_residual(p, {0, 0}, 1.0, BoundaryVariationKind::Rotation);
  CHECK(std::abs(res.terms.at("boundary")) < 1e-10);
  CHECK(std::abs(res.terms.at("crossing_sum")) < 1e-12);
  CHECK(std::abs(res.residual) < 1e-9);
}

TEST_CASE("translation along a pure jump contributes nothing") {
  const auto p = PairView::of_model(ModelMinimizer::pure_jump());
  const auto res =
      boundary_identity_residual(p, {0, 0}, 1.0, BoundaryVariationKind::Translation, {1, 0});
  CHECK(std::abs(res.terms.at("boundary")) < 1e-14);
  // the two crossings have opposite tangents e(p) = ±(1,0) pointing outward
  CHECK(std::abs(res.residual) < 1e-12);
}

TEST_CASE("AM identity at the loose end") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  CHECK(std::abs(am_identity_residual(p, 1.0).residual) < 1e-9);
  CHECK(std::abs(am_identity_residual(p, 0.3).residual) < 1e-9);
  const auto pj = PairView::of_model(ModelMinimizer::pure_jump());
  CHECK_THROWS_AS(am_identity_residual(pj, 1.0), WrongCrossingCount);
  try {
    am_identity_residual(pj, 1.0);
  } catch (const WrongCrossingCount& e) {
    CHECK(e.count == 2);
  }
}

TEST_CASE("cracktip factor from the translation identity") {
  const auto res = cracktip_factor_solve(2048);
  CHECK(res.deviation <= 1e-8);
  CHECK(res.b_squared == doctest::Approx(2.0 / M_PI).epsilon(1e-10));
  CHECK(res.b > 0);

  // the translation-identity integrand for the cracktip is constant in the
  // angle, so even the 16-node budget is already converged
  const auto coarse = cracktip_factor_solve(16);
  CHECK(coarse.deviation <= 1e-6);
  CHECK(coarse.nodes < res.nodes);

  const auto neg = cracktip_factor_solve(2048, true);
  CHECK(neg.b == doctest::Approx(-res.b));
  CHECK(neg.b_squared == doctest::Approx(res.b_squared));
}

TEST_CASE("magic formula on the cracktip and the full line") {
  const auto ct = ModelMinimizer::cracktip();
  // z₀ = −1: both sides equal −1/(8π)
  auto res = magic_formula_residual(ct, {-1.0, 0.0}, 1e4);
  CHECK(res.terms.at("lhs_re") == doctest::Approx(-1.0 / (8.0 * M_PI)).epsilon(1e-12));
  CHECK(res.terms.at("rel_error") < 1e-10);
  // z₀ = i: both sides equal −i/(8π)
  res = magic_formula_residual(ct, {0.0, 1.0}, 1e4);
  CHECK(res.terms.at("lhs_im") == doctest::Approx(-1.0 / (8.0 * M_PI)).epsilon(1e-12));
  CHECK(std::abs(res.terms.at("lhs_re")) < 1e-14);
  CHECK(res.terms.at("rel_error") < 1e-10);
  // full line: the integral of (t−z₀)⁻² over ℝ vanishes, as does ∇u
  const auto line = ModelMinimizer::pure_jump();
  res = magic_formula_residual(line, {0.0, 1.0}, 1e4);
  CHECK(std::abs(res.terms.at("lhs_re")) == 0.0);
  CHECK(std::abs(res.terms.at("rhs_re")) < 1e-12);
  CHECK(std::abs(res.terms.at("rhs_im")) < 1e-12);

  CHECK_THROWS_AS(magic_formula_residual(ct, {0.5, 1e-9}, 1e4), TooCloseToK);
  CHECK_THROWS_AS(magic_formula_residual(ct, {0.0, 1.0}, 5.0), Error);
}

TEST_CASE("magic formula carries the tail refresh bound") {
  const auto res = magic_formula_residual(ModelMinimizer::cracktip(), {0.4, 1.2}, 1e4);
  CHECK(res.terms.at("tail_refresh_delta") <= res.terms.at("tail_bound"));
}

TEST_CASE("weak-L4 superlevel profile of the cracktip plateaus at 1/(4π)") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto prof = lweak_profile(p, Disk{{0, 0}, 1.0}, {1.0, 10.0, 100.0, 1000.0});
  for (double v : prof.M_times_measure)
    CHECK(v == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
  CHECK(prof.sup == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));

  const auto c = PairView::of_model(ModelMinimizer::constant(3.0));
  const auto pj = PairView::of_model(ModelMinimizer::pure_jump());
  for (const auto* q : {&c, &pj}) {
    const auto pr = lweak_profile(*q, Disk{{0, 0}, 1.0}, {1.0, 10.0});
    CHECK(pr.sup == 0.0);
  }
}

TEST_CASE("identities are invariant under rigid motions") {
  const double theta = 0.7;
  const Vec2 shift{1.3, -0.8};
  const auto base = PairView::of_model(ModelMinimizer::cracktip());
  const auto moved = PairView::of_model(ModelMinimizer::cracktip(theta, shift));
  const Vec2 y{0.2, 0.1};
  const Vec2 y2 = y.rotated(theta) + shift;
  for (double r : {0.7, 1.1}) {
    CHECK(std::abs(dlms_residual(base, y, r).lhs - dlms_residual(moved, y2, r).lhs) < 1e-9);
    CHECK(std::abs(dlms_residual(base, y, r).residual - dlms_residual(moved, y2, r).residual) <
          1e-9);
    // translation vector rotates along
    const Vec2 v{0.6, -0.3};
    const auto a = boundary_identity_residual(base, y, r, BoundaryVariationKind::Translation, v);
    const auto b = boundary_identity_residual(moved, y2, r, BoundaryVariationKind::Translation,
                                              v.rotated(theta));
    CHECK(std::abs(a.lhs - b.lhs) < 1e-9);
    CHECK(std::abs(a.rhs - b.rhs) < 1e-9);
  }
}

TEST_CASE("residuals shrink as the quadrature tolerance tightens") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto loose = dlms_residual(p, {0, 0}, 0.9, 1e-4);
  const auto tight = dlms_residual(p, {0, 0}, 0.9, 1e-10);
  CHECK(std::abs(tight.residual) <= std::abs(loose.residual) + 1e-12);
  CHECK(std::abs(tight.residual) < 1e-9);
  CHECK(tight.quadrature_nodes >= loose.quadrature_nodes);
}

TEST_CASE("identity reports serialize with their term breakdown") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto res = dlms_residual(p, {0, 0}, 1.0);
  const std::string js = res.to_json();
  CHECK(js.find("\"crossing_sum\"") != std::string::npos);
  CHECK(js.find("\"quadrature\"") != std::string::npos);
}

TEST_SUITE_END();
