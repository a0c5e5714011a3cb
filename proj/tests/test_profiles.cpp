#include <doctest.h>

#include <cmath>
#include <random>

#include "upsharp/errors.hpp"
#include "upsharp/profiles.hpp"

using namespace upsharp;

TEST_CASE("mode eigenvalues") {
  CHECK(make_mode(3, 2).eigenvalue() == 6);
  CHECK(make_mode(5, 0).eigenvalue() == 0);
  CHECK(make_mode(2, 4).eigenvalue() == 16);
  CHECK(make_mode(1, 0).eigenvalue() == 0);
  CHECK_THROWS_AS(make_mode(0, 0), domain_error);
  CHECK_THROWS_AS(make_mode(3, -1), domain_error);
  CHECK_THROWS_AS(make_mode(1, 1), domain_error);
}

TEST_CASE("analytic families evaluate") {
  auto g = AnalyticProfile::gaussian(1.0, 1.0);
  CHECK(g.eval(0.5) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  auto h = AnalyticProfile::hydrogen_second(1.0, 1.0);
  CHECK(h.eval(1.0, 1) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
  auto z = AnalyticProfile::exponential(0.0, 2.0);
  CHECK(z.eval(0.7) == 0.0);
  CHECK(z.eval(0.7, 2) == 0.0);
  CHECK_THROWS_AS(g.eval(0.0), domain_error);
  CHECK_THROWS_AS(g.eval(1.0, 3), domain_error);
  CHECK_THROWS_AS(AnalyticProfile::gaussian(1.0, 0.0), domain_error);
}

TEST_CASE("analytic derivatives match central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.1, 10.0), ub(0.2, 2.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const double beta = ub(rng);
    for (const auto& f : {AnalyticProfile::gaussian(1.3, beta * 0.1), AnalyticProfile::exponential(0.7, beta),
                          AnalyticProfile::hydrogen_second(1.1, beta)}) {
      const double r = ur(rng);
      for (int d = 1; d <= 2; ++d) {
        const double fd = (f.eval(r + h, d - 1) - f.eval(r - h, d - 1)) / (2 * h);
        const double exact = f.eval(r, d);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::max(std::abs(exact), 1e-8));
      }
    }
  }
}

TEST_CASE("dilation and scaling of exp-polynomials") {
  auto h = AnalyticProfile::hydrogen_second(2.0, 1.5);
  auto d = h.dilated(0.5);
  CHECK(d.eval(2.0) == doctest::Approx(h.eval(1.0)).epsilon(1e-14));
  CHECK(d.eval(2.0, 1) == doctest::Approx(0.5 * h.eval(1.0, 1)).epsilon(1e-14));
  auto m = AnalyticProfile::monomial_cutoff(1.0, 1.0, 3.0);
  CHECK(m.dilated(2.0).eval(0.5) == doctest::Approx(m.eval(1.0)).epsilon(1e-14));
  CHECK(h.scaled(-3.0).eval(0.4, 2) == doctest::Approx(-3.0 * h.eval(0.4, 2)).epsilon(1e-14));
}

TEST_CASE("sampled profile differentiation reproduces polynomials") {
  const Eigen::VectorXd grid = uniform_grid(0.5, 2.5, 41);
  for (auto scheme : {DiffScheme::cd4, DiffScheme::cd6, DiffScheme::cd8}) {
    const int p = scheme_order(scheme);
    Eigen::VectorXd v(grid.size()), d1(grid.size()), d2(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      const double r = grid[i];
      v[i] = std::pow(r, p) - 2.0 * r * r + 1.0;
      d1[i] = p * std::pow(r, p - 1) - 4.0 * r;
      d2[i] = p * (p - 1) * std::pow(r, p - 2) - 4.0;
    }
    SampledProfile s(grid, v, scheme);
    for (Eigen::Index i = p / 2; i + p / 2 < grid.size(); ++i) {
      CHECK(std::abs(s.nodal(1)[i] - d1[i]) <= 1e-10 * std::abs(d1[i]) + 1e-10);
      CHECK(std::abs(s.nodal(2)[i] - d2[i]) <= 1e-10 * std::abs(d2[i]) + 1e-10);
    }
  }
}

TEST_CASE("cd4 boundary stencils are second order") {
  const Eigen::VectorXd grid = uniform_grid(0.5, 2.5, 41);
  Eigen::VectorXd v = grid.array().square();
  SampledProfile s(grid, v, DiffScheme::cd4);
  for (Eigen::Index i : {Eigen::Index(0), Eigen::Index(1), grid.size() - 2, grid.size() - 1}) {
    CHECK(s.nodal(1)[i] == doctest::Approx(2.0 * grid[i]).epsilon(1e-11));
    CHECK(s.nodal(2)[i] == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("sampled profile evaluation and zero extension") {
  const Eigen::VectorXd grid = uniform_grid(0.01, 4.0, 400);
  auto g = AnalyticProfile::gaussian(1.0, 1.0);
  auto s = SampledProfile::sample(g, grid, DiffScheme::cd6);
  CHECK(s.eval(grid[17]) == g.eval(grid[17]));
  CHECK(s.eval(1.2345) == doctest::Approx(g.eval(1.2345)).epsilon(1e-9));
  CHECK(s.eval(1.2345, 1) == doctest::Approx(g.eval(1.2345, 1)).epsilon(1e-7));
  CHECK(s.eval(5.0) == 0.0);
  CHECK(s.eval(0.005, 1) == 0.0);
  CHECK_THROWS_AS(s.eval(-1.0), domain_error);
  Profile p = s;
  CHECK(eval_profile(p, 2.0, 2) == s.eval(2.0, 2));
}

TEST_CASE("sampled profile invariants are enforced") {
  Eigen::VectorXd g = uniform_grid(0.1, 1.0, 7);
  CHECK_THROWS_AS(SampledProfile(g, Eigen::VectorXd::Zero(7)), domain_error);
  Eigen::VectorXd bad = uniform_grid(0.1, 1.0, 10);
  bad[4] = bad[3];
  CHECK_THROWS_AS(SampledProfile(bad, Eigen::VectorXd::Zero(10)), domain_error);
  Eigen::VectorXd neg = Eigen::VectorXd::LinSpaced(10, -0.1, 1.0);
  CHECK_THROWS_AS(SampledProfile(neg, Eigen::VectorXd::Zero(10)), domain_error);
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(10);
  vals[2] = std::nan("");
  CHECK_THROWS_AS(SampledProfile(uniform_grid(0.1, 1.0, 10), vals), domain_error);
}

TEST_CASE("v_k substitution") {
  const Eigen::VectorXd grid = uniform_grid(0.1, 3.0, 30);
  SampledProfile u(grid, grid.array().square().matrix());
  auto v = substitute_vk(make_mode(3, 2), u);
  CHECK((v.values().array() - 1.0).abs().maxCoeff() < 1e-14);
  auto same = substitute_vk(make_mode(3, 0), u);
  CHECK(same.values() == u.values());

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Eigen::VectorXd vals(grid.size());
  for (auto& x : vals) x = nd(rng);
  SampledProfile w(grid, vals);
  for (int k = 0; k <= 6; ++k) {
    auto back = unsubstitute_vk(make_mode(4, k), substitute_vk(make_mode(4, k), w));
    CHECK(((back.values() - vals).array().abs() / vals.array().abs()).maxCoeff() < 1e-12);
  }
  auto a = substitute_vk(make_mode(3, 1), AnalyticProfile::monomial_cutoff(1.0, 1.0, 1.0));
  CHECK(a.eval(0.8) == doctest::Approx(std::exp(-0.64)).epsilon(1e-15));
}

TEST_CASE("Fornberg weights") {
  Eigen::VectorXd x(3);
  x << -1.0, 0.0, 1.0;
  auto w = fornberg_weights(0.0, x, 2);
  CHECK(w(0, 1) == doctest::Approx(-0.5));
  CHECK(w(2, 1) == doctest::Approx(0.5));
  CHECK(w(1, 2) == doctest::Approx(-2.0));
  CHECK(w(1, 0) == doctest::Approx(1.0));
}
