#include <random>

#include "doctest.h"
#include "mslab/energy.hpp"
#include "mslab/models.hpp"

using namespace mslab;

TEST_SUITE_BEGIN("models");

TEST_CASE("cracktip closed form") {
  const auto m = ModelMinimizer::cracktip();
  // u(0,1) = (1/√π)·sign(x₂)·√(x₁+√(x₁²+x₂²))
  CHECK(eval(m, {0, 1}).u == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(eval(m, {0, -1}).u == doctest::Approx(-1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  // on the negative axis u vanishes
  CHECK(eval(m, {-0.7, 0}).u == doctest::Approx(0.0));
}

TEST_CASE("cracktip gradient magnitude law |∇u|² = 1/(2π|p − tip|)") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto m = ModelMinimizer::cracktip(0.4, {0.3, -0.1});
  for (int i = 0; i < 200; ++i) {
    const Vec2 p{u(rng), u(rng)};
    if (distance_to_jump_set(m, p) < 1e-6) continue;
    const double g2 = eval(m, p).grad.norm2();
    const double want = 1.0 / (2.0 * M_PI * dist(p, m.pose.center));
    CHECK(g2 == doctest::Approx(want).epsilon(1e-12));
    CHECK(gradient_sq(m, p) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("piecewise-constant models carry zero gradient") {
  for (const auto& m : {ModelMinimizer::constant(2.5), ModelMinimizer::pure_jump(),
                        ModelMinimizer::triple_junction()}) {
    const auto r = eval(m, {0.3, 0.8});
    CHECK(r.grad.x == 0.0);
    CHECK(r.grad.y == 0.0);
  }
}

TEST_CASE("eval throws on the jump set") {
  CHECK_THROWS_AS(eval(ModelMinimizer::cracktip(), Vec2{0.5, 0.0}), OnJumpSet);
  CHECK_THROWS_AS(eval(ModelMinimizer::pure_jump(), Vec2{-1.0, 1e-13}), OnJumpSet);
}

TEST_CASE("harmonic conjugate of the cracktip") {
  const auto m = ModelMinimizer::cracktip();
  const auto v = conjugate(m);
  // (r,θ) = (1,π) is the point (−1, 0)
  CHECK(v.eval({-1, 0}).u == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
  // v vanishes on K (θ = 0) and at the tip
  CHECK(v.eval({0.5, 0}).u == doctest::Approx(0.0));
  CHECK(v.eval({0, 0}).u == doctest::Approx(0.0));
  // constant model conjugate is identically zero
  CHECK(conjugate(ModelMinimizer::constant(3.0)).eval({0.7, -0.4}).u == 0.0);
}

TEST_CASE("∇v = ∇u⊥ analytically and under finite differences") {
  const auto m = ModelMinimizer::cracktip(0.7, {0.1, 0.2});
  const auto v = conjugate(m);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  for (int i = 0; i < 100 && checked < 40; ++i) {
    const Vec2 p{u(rng), u(rng)};
    if (distance_to_jump_set(m, p) < 0.1) continue;
    ++checked;
    const Vec2 gu = eval(m, p).grad;
    const Vec2 gv = v.eval(p).grad;
    CHECK(dist(gv, gu.perp()) < 1e-12);
    // O(h²) finite-difference check of ∇v
    const double h = 1e-5;
    const double vx = (v.eval(p + Vec2{h, 0}).u - v.eval(p - Vec2{h, 0}).u) / (2 * h);
    const double vy = (v.eval(p + Vec2{0, h}).u - v.eval(p - Vec2{0, h}).u) / (2 * h);
    CHECK(std::abs(vx - gv.x) < 1e-7);
    CHECK(std::abs(vy - gv.y) < 1e-7);
  }
  CHECK(checked >= 40);
}

TEST_CASE("models are harmonic off K (5-point residual O(h²))") {
  const auto m = ModelMinimizer::cracktip();
  auto lap = [&](Vec2 p, double h) {
    return (eval(m, p + Vec2{h, 0}).u + eval(m, p - Vec2{h, 0}).u + eval(m, p + Vec2{0, h}).u +
            eval(m, p - Vec2{0, h}).u - 4.0 * eval(m, p).u) /
           (h * h);
  };
  for (Vec2 p : {Vec2{0.5, 0.5}, Vec2{-0.8, 0.2}, Vec2{0.1, -0.9}}) {
    const double r1 = std::abs(lap(p, 1e-3));
    const double r2 = std::abs(lap(p, 5e-4));
    CHECK(r1 < 1e-4);
    CHECK(r2 < 0.3 * r1 + 1e-10);  // at least ~O(h²) decay
  }
}

TEST_CASE("cracktip Neumann trace vanishes to O(h)") {
  const auto m = ModelMinimizer::cracktip();
  for (double x : {0.3, 0.7, 1.2}) {
    for (double h : {1e-3, 5e-4}) {
      const double up = eval(m, {x, 1e-12 * 10}).u;
      const double dn = (eval(m, {x, h}).u - up) / h;
      CHECK(std::abs(dn) < 2.0 * h / std::pow(x, 1.5));
    }
  }
}

TEST_CASE("triple junction arms meet at 120 degrees exactly") {
  const auto k = model_jump_set(ModelMinimizer::triple_junction(0.37, {1, -2}));
  REQUIRE(k.chain_count() == 3);
  std::vector<Vec2> dirs;
  for (const auto& chain : k.chains()) dirs.push_back((chain[1] - chain[0]).normalized());
  for (int a = 0; a < 3; ++a)
    CHECK(dirs[a].dot(dirs[(a + 1) % 3]) == doctest::Approx(std::cos(2.0 * M_PI / 3)).epsilon(1e-14));
}

TEST_CASE("rescale fixes the centered cracktip (½-homogeneity)") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  for (double r : {0.3, 2.0, 7.5}) {
    const auto q = rescale(p, {0, 0}, r);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 20; ++i) {
      const Vec2 y{u(rng), u(rng)};
      if (distance_to_jump_set(q.model(), y) < 1e-6) continue;
      CHECK(q.eval(y).u == doctest::Approx(p.eval(y).u).epsilon(1e-12));
    }
  }
}

TEST_CASE("rescale scales jump amplitudes by r^{-1/2}") {
  const auto p = PairView::of_model(ModelMinimizer::pure_jump(0.0, {0, 0}, 0.0, 1.0));
  const auto q = rescale(p, {0, 0}, 2.0);
  CHECK(q.model().sector_values[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(q.eval({0.4, 0.5}).u == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("rescaled Dirichlet energy obeys the change of variables") {
  // D(rescaled pair, B₁) = r⁻¹ · D(original, B_r(x))
  const auto p = PairView::of_model(ModelMinimizer::cracktip(0.2, {0.1, 0.05}));
  const Vec2 x{0.4, -0.3};
  for (double r : {0.5, 1.7}) {
    const double direct = dirichlet(p, Disk{x, r});
    const double rescaled = dirichlet(rescale(p, x, r), Disk{{0, 0}, 1.0});
    CHECK(rescaled == doctest::Approx(direct / r).epsilon(1e-7));
  }
}

TEST_CASE("rescale transforms the fidelity weight as λr²") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip(), 0.5, 0.0);
  CHECK(rescale(p, {0, 0}, 3.0).lambda() == doctest::Approx(0.5 * 9.0));
}

TEST_CASE("model JSON round trip") {
  for (const auto& m :
       {ModelMinimizer::cracktip(0.3, {1, 2}, 0.9, true), ModelMinimizer::constant(4.0),
        ModelMinimizer::pure_jump(1.1, {-1, 0}, -1, 3),
        ModelMinimizer::triple_junction(2.0, {0, 1}, {5, 6, 7})}) {
    const auto back = ModelMinimizer::from_json(m.to_json());
    CHECK(back.kind == m.kind);
    CHECK(back.pose.theta == doctest::Approx(m.pose.theta));
    CHECK(back.sector_values == m.sector_values);
    CHECK(back.b == doctest::Approx(m.b));
    CHECK(back.negative == m.negative);
  }
}

TEST_CASE("cracktip sign flag flips u and the conjugate") {
  const auto plus = ModelMinimizer::cracktip();
  const auto minus = ModelMinimizer::cracktip(0.0, {0, 0}, std::sqrt(kCracktipFactorSq), true);
  CHECK(eval(minus, {0, 1}).u == doctest::Approx(-eval(plus, {0, 1}).u));
  CHECK(conjugate(minus).eval({-1, 0}).u == doctest::Approx(-conjugate(plus).eval({-1, 0}).u));
}

TEST_SUITE_END();
