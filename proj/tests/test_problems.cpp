#include "doctest.h"

#include <cmath>

#include "apgd/problems.hpp"
#include "apgd/projections.hpp"
#include "apgd/solvers.hpp"
#include "oracles.hpp"

using namespace apgd;
using namespace apgd::testing;

namespace {

void check_gradient_fd(const SmoothObjective& f, const Vec& x, double tol = 1e-5) {
  Vec g = f.grad(x);
  Vec fd = finite_difference_gradient(f, x, 1e-6);
  CHECK(dist(g, fd) / std::max(1.0, nrm2(g)) <= tol);
}

} // namespace

TEST_CASE("example1: values, gradient, reference point") {
  auto p = example1();
  CHECK(p.objective.eval({0.8922, 1.7957}) == doctest::Approx(0.4094).epsilon(5e-4));
  CHECK(p.objective.eval({1.0, 2.0}) == doctest::Approx(8.0 / 19.0).epsilon(1e-15));
  check_gradient_fd(p.objective, {1.0, 2.0});
  CHECK(p.feasible_set->contains(p.x0_default, 1e-8));
  CHECK(p.feasible_set->contains(*p.reference_point, 1e-3));

  // denominator zero is a domain error
  CHECK_THROWS_AS((void)p.objective.gradient(Vec{0.0, -0.125}), EvaluationError);
}

TEST_CASE("example1: solve reaches the reference and certifies stationarity") {
  auto p = example1();
  AdaptiveConfig cfg;
  cfg.max_iter = 5000;
  auto r = gda_solve(p.objective, *p.feasible_set, cfg, p.x0_default);
  CHECK(std::abs(r.f_star - *p.reference_value) <= 1e-3);
  CHECK(stationarity_residual(p.objective, *p.feasible_set, r.x_star, 1.0) <= 1e-3);
}

TEST_CASE("example2: values and gradient") {
  auto p = example2();
  CHECK(p.objective.eval({-1.0649, 0.4160, -0.5343, 0.0002}) ==
        doctest::Approx(-3.0908).epsilon(5e-4));
  CHECK(p.objective.eval({0.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx((std::exp(3.0) - 30.0) / 4.0).epsilon(1e-15));
  check_gradient_fd(p.objective, {-1.0, 0.5, -0.5, 0.0});
  CHECK(p.feasible_set->contains(p.x0_default, 1e-8));
  CHECK(p.feasible_set->contains(*p.reference_point, 1e-3));
  CHECK_THROWS_AS((void)p.objective.gradient(Vec{0.0, 3.0, 0.0, 0.0}), EvaluationError);
}

TEST_CASE("examples 1-2: solves from distinct feasible starts agree") {
  {
    auto p = example1();
    std::vector<Vec> starts{{1.0, 2.0}, {2.0, 2.0}, {0.5, 4.0}, {3.0, 1.0}, {1.5, 1.5}};
    AdaptiveConfig cfg;
    cfg.max_iter = 5000;
    std::vector<double> finals;
    for (const auto& x0 : starts) {
      REQUIRE(p.feasible_set->contains(x0, 1e-8));
      finals.push_back(gda_solve(p.objective, *p.feasible_set, cfg, x0).f_star);
    }
    for (double f : finals) CHECK(std::abs(f - finals[0]) <= 1e-3);
  }
  {
    auto p = example2();
    // starts solve 2 x1 + 4 x2 + x3 = -1 for chosen (x2, x3, x4)
    auto make = [](double x2, double x3, double x4) {
      return Vec{(-1.0 - 4.0 * x2 - x3) / 2.0, x2, x3, x4};
    };
    std::vector<Vec> starts{make(0.5, 0.0, 0.0), make(1.0, 0.5, 0.5), make(0.0, -1.0, -1.0),
                            make(2.0, 1.0, 0.3), make(1.5, -0.5, -0.2)};
    AdaptiveConfig cfg;
    cfg.max_iter = 5000;
    std::vector<double> finals;
    for (const auto& x0 : starts) {
      REQUIRE(p.feasible_set->contains(x0, 1e-8));
      finals.push_back(gda_solve(p.objective, *p.feasible_set, cfg, x0).f_star);
    }
    for (double f : finals) CHECK(std::abs(f - finals[0]) <= 1e-3);
  }
}

TEST_CASE("example3: parameter condition, gradient, convexity, cross-solver agreement") {
  for (std::size_t n : {2ul, 10ul, 100ul, 1000ul}) {
    const double beta = 0.741271;
    double alpha = 3.0 * std::pow(beta, 1.5) * std::sqrt(double(n + 1));
    CHECK(2.0 * alpha > 3.0 * std::pow(beta, 1.5) * std::sqrt(double(n)));
  }

  auto p = example3(10, 7);
  CHECK(p.feasible_set->contains(p.x0_default, 1e-8));
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    Vec x = p.feasible_set->project(random_vec(rng, 10, 0.2, 2.0));
    check_gradient_fd(p.objective, x);
  }

  // midpoint convexity on feasible pairs
  for (int rep = 0; rep < 1000; ++rep) {
    Vec x = p.feasible_set->project(random_vec(rng, 10, 0.2, 2.0));
    Vec y = p.feasible_set->project(random_vec(rng, 10, 0.2, 2.0));
    Vec mid(10);
    for (int i = 0; i < 10; ++i) mid[i] = 0.5 * (x[i] + y[i]);
    CHECK(p.objective.eval(mid) <=
          0.5 * (p.objective.eval(x) + p.objective.eval(y)) + 1e-9);
  }

  double lips = *p.objective.lipschitz_estimate;
  AdaptiveConfig cfg;
  cfg.lambda0 = 5.0 / lips;
  cfg.max_iter = 20000;
  cfg.step_tol = 1e-9;
  auto rg = gda_solve(p.objective, *p.feasible_set, cfg, p.x0_default);
  auto rd = gd_solve(p.objective, *p.feasible_set, 1.0 / lips, 20000, 1e-9, p.x0_default);
  CHECK(std::abs(rg.f_star - rd.f_star) <= 1e-6 * std::max(1.0, std::abs(rd.f_star)));
  CHECK(rg.trace.size() <= rd.trace.size());
}

TEST_CASE("example4: values, gradient, transform, quick convergence") {
  auto p10 = example4(10, Vec(10, 1.0));
  CHECK(p10.objective.eval(Vec(10, 0.0)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p10.transform_for_report(-1.0) == doctest::Approx(0.0));
  CHECK(p10.feasible_set->contains(p10.x0_default, 1e-8));

  std::mt19937_64 rng(9);
  auto pd = example4(10);
  for (int rep = 0; rep < 10; ++rep) {
    Vec x = pd.feasible_set->project(random_vec(rng, 10, -1.0, 1.0));
    check_gradient_fd(pd.objective, x);
  }

  // unit-parameter instance converges fast once the step matches the tiny
  // curvature of the flat well
  AdaptiveConfig cfg;
  cfg.lambda0 = 50.0;
  cfg.max_iter = 100;
  auto r = gda_solve(p10.objective, *p10.feasible_set, cfg, p10.x0_default);
  CHECK(r.stationarity <= 1e-6);

  CHECK_THROWS_AS((void)example4(10, Vec(10, -1.0)), InvalidArgument);
  CHECK_THROWS_AS((void)example4(7), InvalidArgument);
  CHECK_THROWS_AS((void)example3(1, 0), InvalidArgument);
}

TEST_CASE("example4 at n=600 uses the endpoint-only trace") {
  auto p = example4(600);
  AdaptiveConfig cfg;
  cfg.max_iter = 20;
  auto r = gda_solve(p.objective, *p.feasible_set, cfg, p.x0_default);
  CHECK_FALSE(r.trace.stores_full_iterates());
  CHECK(r.trace.first_iterate().size() == 600);
  CHECK(r.x_star == r.trace.last_iterate());
}
