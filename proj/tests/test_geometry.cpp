#include <algorithm>
#include <random>

#include "doctest.h"
#include "mslab/geometry.hpp"
#include "mslab/models.hpp"

using namespace mslab;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("length_in_disk on the elementary jump sets") {
  const Disk unit{{0, 0}, 1.0};
  CHECK(length_in_disk(model_jump_set(ModelMinimizer::pure_jump()), unit) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(length_in_disk(model_jump_set(ModelMinimizer::triple_junction()), unit) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(length_in_disk(model_jump_set(ModelMinimizer::cracktip()), Disk{{0, 0}, 0.5}) ==
        doctest::Approx(0.5).epsilon(1e-14));
  JumpSet far;
  far.add_chain({{5, 5}, {6, 5}});
  CHECK(length_in_disk(far, unit) == 0.0);
}

TEST_CASE("length_in_disk is monotone in r") {
  JumpSet j;
  j.add_chain({{-2, 0.3}, {2, 0.3}});
  j.add_chain({{0.1, -2}, {0.1, 2}});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec2 c{u(rng), u(rng)};
    double prev = 0.0;
    for (double r = 0.1; r < 2.0; r += 0.13) {
      const double len = length_in_disk(j, Disk{c, r});
      CHECK(len >= prev - 1e-13);
      prev = len;
    }
  }
}

TEST_CASE("circle_crossings of the canonical models") {
  const auto ct = model_jump_set(ModelMinimizer::cracktip());
  auto cs = circle_crossings(ct, Disk{{0, 0}, 1.0});
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].point.x == doctest::Approx(1.0));
  CHECK(cs[0].point.y == doctest::Approx(0.0));
  CHECK(cs[0].incidence == doctest::Approx(1.0));

  const auto line = model_jump_set(ModelMinimizer::pure_jump());
  cs = circle_crossings(line, Disk{{0, 0}, 1.0});
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].incidence == doctest::Approx(1.0));
  CHECK(cs[1].incidence == doctest::Approx(1.0));
}

TEST_CASE("crossing incidence is the cosine of the crossing angle") {
  // horizontal line at height 0.6 against the unit circle: e·n = √(1−0.36)
  JumpSet j;
  j.add_chain({{-4, 0.6}, {4, 0.6}});
  const auto cs = circle_crossings(j, Disk{{0, 0}, 1.0});
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].incidence == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(cs[1].incidence == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("tangential segments are rejected") {
  JumpSet j;
  j.add_chain({{-2, 1.0}, {2, 1.0}});  // tangent to the unit circle
  CHECK_THROWS_AS(circle_crossings(j, Disk{{0, 0}, 1.0}), TangentialCrossing);
}

TEST_CASE("crossing count is stable under small radius perturbations") {
  const auto tj = model_jump_set(ModelMinimizer::triple_junction(0.3, {0.05, -0.02}));
  const int n = crossing_count(tj, Disk{{0.05, -0.02}, 0.7});
  for (double d : {-1e-4, -1e-6, 1e-6, 1e-4})
    CHECK(crossing_count(tj, Disk{{0.05, -0.02}, 0.7 * (1.0 + d)}) == n);
}

TEST_CASE("hausdorff_distance examples") {
  std::vector<Vec2> a, b;
  for (int i = 0; i <= 1000; ++i) a.push_back({i / 1000.0, 0.0});
  CHECK(hausdorff_distance(a, a) == 0.0);
  for (Vec2 p : a) b.push_back({p.x, 0.25});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.25).epsilon(1e-12));
  b.clear();
  for (int i = 0; i <= 2000; ++i) b.push_back({i / 1000.0, 0.0});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hausdorff_distance(a, {}), EmptySet);
}

TEST_CASE("curvature of a straight polyline is zero") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 20; ++i) pts.push_back({0.1 * i, 0.05 * i});
  for (double k : curvature_profile_chain(pts, false)) CHECK(k == 0.0);
}

TEST_CASE("curvature of an inscribed polygon approaches 1/R") {
  const double R = 2.5;
  for (int n : {64, 128}) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * M_PI * i / n;
      pts.push_back({R * std::cos(a), R * std::sin(a)});
    }
    const auto ks = curvature_profile_chain(pts, true);
    const double h = 2.0 * M_PI * R / n;
    for (double k : ks) CHECK(std::abs(k - 1.0 / R) < 2.0 * h * h);
  }
}

TEST_CASE("curvature sign flips with orientation") {
  std::vector<Vec2> pts = {{1, 0}, {0.8, 0.6}, {0.2, 0.95}};
  const auto fwd = curvature_profile_chain(pts, false);
  std::reverse(pts.begin(), pts.end());
  const auto bwd = curvature_profile_chain(pts, false);
  CHECK(fwd[1] == doctest::Approx(-bwd[1]).epsilon(1e-12));
  CHECK(fwd[1] != 0.0);
}

TEST_CASE("collinear triples report zero curvature") {
  const auto ks = curvature_profile_chain({{0, 0}, {1, 1e-16}, {2, 0}}, false);
  CHECK(ks[1] == 0.0);
}

TEST_CASE("discrete density ratio at polyline vertices") {
  // at a vertex, length_in_disk(x,r)/r >= 1 − O(h/r) below the injectivity scale
  const double h = 0.01;
  std::vector<Vec2> pts;
  for (int i = 0; i <= 100; ++i) {
    const double t = h * i;
    pts.push_back({t, 0.2 * std::sin(3.0 * t)});
  }
  JumpSet j;
  j.add_chain(pts, false);
  for (std::size_t vi : {20u, 50u, 80u}) {
    for (double r : {0.05, 0.1, 0.2}) {
      const double ratio = length_in_disk(j, Disk{pts[vi], r}) / r;
      CHECK(ratio >= 1.0 - 4.0 * h / r);
    }
  }
}

TEST_CASE("JSON round trip preserves the jump set") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  JumpSet j;
  j.add_chain({{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}}, false);
  j.add_chain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
  const JumpSet back = JumpSet::from_json(j.to_json());
  REQUIRE(back.chain_count() == j.chain_count());
  CHECK(back.total_length() == doctest::Approx(j.total_length()).epsilon(1e-15));
  CHECK(back.closed_flags() == j.closed_flags());
  for (std::size_t c = 0; c < j.chain_count(); ++c)
    for (std::size_t k = 0; k < j.chains()[c].size(); ++k)
      CHECK(dist(back.chains()[c][k], j.chains()[c][k]) == 0.0);
}

TEST_CASE("chain validation") {
  JumpSet j;
  CHECK_THROWS_AS(j.add_chain({{0, 0}}), Error);
  CHECK_THROWS_AS(j.add_chain({{0, 0}, {0, 0}}), Error);
}

TEST_SUITE_END();
