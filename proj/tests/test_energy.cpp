#include <random>
#include <sstream>

#include "doctest.h"
#include "mslab/energy.hpp"

using namespace mslab;

TEST_SUITE_BEGIN("energy");

TEST_CASE("box and polygon disk clipping against a midpoint oracle") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const Disk d{{u(rng), u(rng)}, 0.3 + 0.5 * std::abs(u(rng))};
    const Vec2 lo{u(rng), u(rng)};
    const Vec2 hi = lo + Vec2{0.4 + std::abs(u(rng)), 0.4 + std::abs(u(rng))};
    // midpoint oracle on a fine subgrid
    const int n = 250;
    double oracle = 0.0;
    const double dx = (hi.x - lo.x) / n, dy = (hi.y - lo.y) / n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d.contains({lo.x + (i + 0.5) * dx, lo.y + (j + 0.5) * dy})) oracle += dx * dy;
    CHECK(std::abs(box_disk_area(lo, hi, d) - oracle) < 0.01);
  }
  // exact cases
  CHECK(box_disk_area({-3, -3}, {3, 3}, Disk{{0, 0}, 1.0}) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(box_disk_area({2, 2}, {3, 3}, Disk{{0, 0}, 1.0}) == 0.0);
  CHECK(box_disk_area({-0.1, -0.1}, {0.1, 0.1}, Disk{{0, 0}, 1.0}) ==
        doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("cracktip Dirichlet energy at the tip: D(0,r) = r") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  for (double r : {0.1, 0.5, 1.0, 2.0})
    CHECK(dirichlet(p, Disk{{0, 0}, r}) == doctest::Approx(r).epsilon(1e-9));
}

TEST_CASE("off-center cracktip Dirichlet against a 2-D midpoint oracle") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const Disk d{{0.3, 0.2}, 0.4};
  // |∇u|² = 1/(2πρ) integrated over the disk with a fine Cartesian grid
  const int n = 900;
  const double hx = 2.0 * d.radius / n;
  double oracle = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec2 q{d.center.x - d.radius + (i + 0.5) * hx,
                   d.center.y - d.radius + (j + 0.5) * hx};
      if (!d.contains(q)) continue;
      oracle += hx * hx / (2.0 * M_PI * q.norm());
    }
  CHECK(dirichlet(p, d) == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("piecewise-constant models carry no Dirichlet energy") {
  CHECK(dirichlet(PairView::of_model(ModelMinimizer::pure_jump()), Disk{{0.2, 0.1}, 1.5}) == 0.0);
  CHECK(dirichlet(PairView::of_model(ModelMinimizer::constant(4.0)), Disk{{0, 0}, 1.0}) == 0.0);
}

TEST_CASE("energy_total examples") {
  // cracktip on B₁ with λ=0: D = 1, ℓ = 1, total 2 ≤ 2π
  auto rep = energy_total(PairView::of_model(ModelMinimizer::cracktip()), Disk{{0, 0}, 1.0});
  CHECK(rep.total == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.F == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.upper_bound_ok);

  rep = energy_total(PairView::of_model(ModelMinimizer::triple_junction()), Disk{{0, 0}, 1.0});
  CHECK(rep.total == doctest::Approx(3.0).epsilon(1e-12));

  // constant u≡0 against g≡1 at λ=1: total = fidelity = πr²
  rep = energy_total(PairView::of_model(ModelMinimizer::constant(0.0), 1.0, 1.0),
                     Disk{{0, 0}, 1.0});
  CHECK(rep.fidelity == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(rep.total == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(rep.upper_bound_ok);
}

TEST_CASE("piecewise-constant fidelity splits by sector area") {
  // pure jump with values {0,1}, g = 0, λ = 1, centered disk: ℱ = πr²/2
  auto rep = energy_total(PairView::of_model(ModelMinimizer::pure_jump(), 1.0, 0.0),
                          Disk{{0, 0}, 2.0});
  CHECK(rep.fidelity == doctest::Approx(M_PI * 4.0 / 2.0).epsilon(1e-8));
}

TEST_CASE("radial profile of the centered cracktip: d ≡ 1, F ≡ 3") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto prof = radial_profile(p, {0, 0}, linspace(0.1, 1.0, 50));
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    CHECK(std::abs(prof.d[i] - 1.0) < 1e-6);
    CHECK(std::abs(prof.F[i] - 3.0) < 1e-6);
    CHECK(prof.N[i] == 1);
  }
  CHECK(prof.d_decreasing_intervals.empty());
  CHECK(prof.F_decreasing_intervals.empty());
}

TEST_CASE("pure jump and triple junction radial profiles are exact") {
  auto prof = radial_profile(PairView::of_model(ModelMinimizer::pure_jump()), {0, 0},
                             linspace(0.2, 1.5, 20));
  for (std::size_t i = 0; i < prof.r.size(); ++i) {
    CHECK(std::abs(prof.F[i] - 2.0) < 1e-12);
    CHECK(prof.N[i] == 2);
  }
  CHECK(prof.F_decreasing_intervals.empty());

  prof = radial_profile(PairView::of_model(ModelMinimizer::triple_junction()), {0, 0},
                        linspace(0.2, 1.5, 20));
  for (std::size_t i = 0; i < prof.r.size(); ++i) CHECK(std::abs(prof.F[i] - 3.0) < 1e-12);
}

TEST_CASE("F loses monotonicity for the shifted cracktip") {
  // tip at (−0.05, 0), profile centered at the origin (a point of K ahead of
  // the tip): F decreases on a sub-interval of [0.75, 1.25]
  const auto p = PairView::of_model(ModelMinimizer::cracktip(0.0, {-0.05, 0}));
  const auto prof = radial_profile(p, {0, 0}, linspace(0.75, 1.25, 26));
  CHECK(!prof.F_decreasing_intervals.empty());
  // with the center behind the tip F increases instead
  const auto q = PairView::of_model(ModelMinimizer::cracktip(0.0, {0.05, 0}));
  const auto prof2 = radial_profile(q, {0, 0}, linspace(0.75, 1.25, 26));
  CHECK(prof2.F_decreasing_intervals.empty());
}

TEST_CASE("nested disks: D and ℓ are monotone") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (const auto& m : {ModelMinimizer::cracktip(0.3, {0.1, 0}),
                        ModelMinimizer::triple_junction(0.9, {-0.1, 0.2})}) {
    const auto p = PairView::of_model(m);
    const Vec2 x{u(rng), u(rng)};
    double prevD = 0, prevL = 0;
    for (double r = 0.2; r <= 1.4; r += 0.2) {
      const double D = dirichlet(p, Disk{x, r});
      const double L = length_in_disk(p.jumps(), Disk{x, r});
      CHECK(D >= prevD - 1e-12);
      CHECK(L >= prevL - 1e-12);
      prevD = D;
      prevL = L;
    }
  }
}

TEST_CASE("Bonnet monotonicity of d at points of K") {
  // centers on K for the three nonconstant models; d(x,·) nondecreasing
  struct Case { ModelMinimizer m; Vec2 x; };
  const Case cases[] = {
      {ModelMinimizer::cracktip(), {0.3, 0}},
      {ModelMinimizer::pure_jump(), {0.2, 0}},
      {ModelMinimizer::triple_junction(), {0, 0}},
  };
  for (const auto& c : cases) {
    const auto prof = radial_profile(PairView::of_model(c.m), c.x, linspace(0.1, 1.0, 30));
    for (std::size_t i = 0; i + 1 < prof.d.size(); ++i)
      CHECK(prof.d[i + 1] >= prof.d[i] - 1e-6 * std::max(1.0, prof.d[i]));
  }
}

TEST_CASE("energy upper bound over random disks") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> uc(-2, 2), ur(0.1, 2.0);
  for (const auto& p :
       {PairView::of_model(ModelMinimizer::cracktip()),
        PairView::of_model(ModelMinimizer::pure_jump()),
        PairView::of_model(ModelMinimizer::triple_junction()),
        PairView::of_model(ModelMinimizer::constant(0.0), 1.0, 1.0)}) {
    for (int i = 0; i < 25; ++i) {
      const auto rep = energy_total(p, Disk{{uc(rng), uc(rng)}, ur(rng)});
      CHECK(rep.upper_bound_ok);
    }
  }
}

TEST_CASE("grid Dirichlet matches the closed form and converges") {
  const auto m = ModelMinimizer::cracktip();
  auto make_pair = [&](double h) {
    const int n = static_cast<int>(std::round(4.0 / h)) + 1;
    auto f = std::make_shared<ScalarField>(ScalarField::sample(
        {-2, -2}, h, n, n, [&](Vec2 p) {
          if (distance_to_jump_set(m, p) < 1e-12) p.y += 1e-9;
          return eval(m, p).u;
        }));
    auto k = std::make_shared<JumpSet>(model_jump_set(m, 8.0));
    f->attach_jumps(k, 2.0 * h);
    return PairView::of_field(f, k, 0.0, 0.0);
  };
  // near K (disk straddles the crack): first-order convergence to D = r
  const Disk near{{0, 0}, 1.0};
  double e_prev = 0.0;
  std::vector<double> errs_near, errs_far;
  for (double h : {0.04, 0.02, 0.01}) {
    const auto p = make_pair(h);
    errs_near.push_back(std::abs(dirichlet(p, near) - 1.0));
  }
  // slope within ±0.3 of 1
  const double slope_near = std::log2(errs_near[0] / errs_near[2]) / 2.0;
  CHECK(slope_near > 0.7);

  // away from K: disk in the upper half plane, second order
  const Disk far{{-0.5, 1.2}, 0.5};
  const auto exactP = PairView::of_model(m);
  const double exact = dirichlet(exactP, far);
  for (double h : {0.04, 0.02, 0.01}) {
    const auto p = make_pair(h);
    errs_far.push_back(std::abs(dirichlet(p, far) - exact));
  }
  const double slope_far = std::log2(errs_far[0] / errs_far[2]) / 2.0;
  CHECK(slope_far > 1.7);
  (void)e_prev;
}

TEST_CASE("grid operations demand the disk inside the domain") {
  auto f = std::make_shared<ScalarField>(Vec2{0, 0}, 0.1, 11, 11);
  auto k = std::make_shared<JumpSet>();
  const auto p = PairView::of_field(f, k, 0.0, 0.0);
  CHECK_THROWS_AS(dirichlet(p, Disk{{0.5, 0.5}, 0.8}), OutOfDomain);
  CHECK_THROWS_AS(radial_profile(p, {0.5, 0.5}, {0.2, 0.8}), OutOfDomain);
}

TEST_CASE("profile CSV has the documented shape") {
  const auto p = PairView::of_model(ModelMinimizer::cracktip());
  const auto prof = radial_profile(p, {0, 0}, linspace(0.2, 0.4, 3));
  std::ostringstream os;
  write_csv(prof, os);
  const std::string text = os.str();
  CHECK(text.substr(0, text.find('\n')) == "r,d,ell_over_r,F,N,violation_flag");
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_SUITE_END();
