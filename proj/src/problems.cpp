#include "apgd/problems.hpp"

#include <cmath>
#include <limits>

#include "apgd/projections.hpp"

namespace apgd {

BenchmarkProblem example1() {
  SmoothObjective f;
  f.dimension = 2;
  f.value = [](const Vec& x) {
    double num = x[0] * x[0] + x[1] * x[1] + 3.0;
    double den = 1.0 + 2.0 * x[0] + 8.0 * x[1];
    return num / den;
  };
  f.gradient = [](const Vec& x) {
    double num = x[0] * x[0] + x[1] * x[1] + 3.0;
    double den = 1.0 + 2.0 * x[0] + 8.0 * x[1];
    if (den == 0.0) throw EvaluationError("example1: gradient undefined on 1 + 2x1 + 8x2 = 0", 0);
    double d2 = den * den;
    return Vec{(2.0 * x[0] * den - 2.0 * num) / d2, (2.0 * x[1] * den - 8.0 * num) / d2};
  };

  BenchmarkProblem p;
  p.name = "example1";
  p.objective = std::move(f);
  p.feasible_set = std::make_shared<QuadSuperlevelSet2D>();
  p.x0_default = {1.0, 2.0};
  p.reference_value = 0.4094;
  p.reference_point = Vec{0.8922, 1.7957};
  return p;
}

BenchmarkProblem example2() {
  SmoothObjective f;
  f.dimension = 4;
  auto denom = [](const Vec& x) {
    return x[0] * x[0] + x[2] * x[2] + 2.0 * x[3] * x[3] + 4.0;
  };
  f.value = [denom](const Vec& x) { return (std::exp(std::abs(x[1] - 3.0)) - 30.0) / denom(x); };
  f.gradient = [denom](const Vec& x) {
    double t = x[1] - 3.0;
    if (t == 0.0) throw EvaluationError("example2: gradient undefined at x2 = 3", 0);
    double num = std::exp(std::abs(t)) - 30.0;
    double den = denom(x);
    double d2 = den * den;
    Vec g(4);
    g[0] = -num * 2.0 * x[0] / d2;
    g[1] = std::exp(std::abs(t)) * (t > 0.0 ? 1.0 : -1.0) / den;
    g[2] = -num * 2.0 * x[2] / d2;
    g[3] = -num * 4.0 * x[3] / d2;
    return g;
  };

  auto cap = std::make_shared<CubicQuadCapSet>(4, 0, 2, 3, 2.0, 10.0);
  const double inf = std::numeric_limits<double>::infinity();
  auto box = std::make_shared<BoxSet>(Vec{-inf, 0.0, -inf, -inf}, Vec{inf, 2.0, inf, inf});
  auto plane = std::make_shared<AffineSet>(std::vector<double>{2.0, 4.0, 1.0, 0.0}, 1, 4,
                                           Vec{-1.0});
  auto set = std::make_shared<IntersectionSet>(
      std::vector<std::shared_ptr<const ProjectableSet>>{cap, box, plane});

  BenchmarkProblem p;
  p.name = "example2";
  p.objective = std::move(f);
  p.feasible_set = std::move(set);
  p.x0_default = {-1.5, 0.5, 0.0, 0.0};
  p.reference_value = -3.0908;
  p.reference_point = Vec{-1.0649, 0.4160, -0.5343, 0.0002};
  return p;
}

BenchmarkProblem example3(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("example3: n must be at least 2");
  const double beta = 0.741271;
  const double alpha = 3.0 * std::pow(beta, 1.5) * std::sqrt(double(n + 1));
  const double lipschitz = 4.0 * std::pow(beta, 1.5) * std::sqrt(double(n)) + 3.0 * alpha;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto a = std::make_shared<Vec>(n);
  for (double& v : *a) v = 0.5 + unif(rng);
  auto e = std::make_shared<Vec>(n);
  for (std::size_t i = 0; i < n; ++i) (*e)[i] = double(i + 1);

  SmoothObjective f;
  f.dimension = n;
  f.lipschitz_estimate = lipschitz;
  f.value = [a, e, alpha, beta](const Vec& x) {
    double r = nrm2sq(x);
    return dot(*a, x) + alpha * r + beta / std::sqrt(1.0 + beta * r) * dot(*e, x);
  };
  f.gradient = [a, e, alpha, beta](const Vec& x) {
    double r = nrm2sq(x);
    double s = dot(*e, x);
    double phi = 1.0 / std::sqrt(1.0 + beta * r);
    double phi3 = phi * phi * phi;
    Vec g = *a;
    kernels::axpy(2.0 * alpha - beta * beta * s * phi3, x.data(), g.data(), x.size());
    kernels::axpy(beta * phi, e->data(), g.data(), x.size());
    return g;
  };

  BenchmarkProblem p;
  p.name = "example3(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
  p.objective = std::move(f);
  p.feasible_set = std::make_shared<LogProductSet>(n);
  p.x0_default = Vec(n, 1.0);
  return p;
}

BenchmarkProblem example4(std::size_t n, const Vec& rho) {
  if (n == 0 || n % 10 != 0) throw InvalidArgument("example4: n must be a positive multiple of 10");
  if (rho.size() != n) throw InvalidArgument("example4: rho dimension mismatch");
  for (double v : rho)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("example4: rho must be positive");

  auto inv_rho2 = std::make_shared<Vec>(n);
  for (std::size_t i = 0; i < n; ++i) (*inv_rho2)[i] = 1.0 / (rho[i] * rho[i]);

  SmoothObjective f;
  f.dimension = n;
  f.value = [inv_rho2](const Vec& x) {
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) q += x[i] * x[i] * (*inv_rho2)[i];
    return -std::exp(-q);
  };
  f.gradient = [inv_rho2](const Vec& x) {
    double q = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) q += x[i] * x[i] * (*inv_rho2)[i];
    double fv = -std::exp(-q);
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = fv * (-2.0 * x[i] * (*inv_rho2)[i]);
    return g;
  };

  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (i < n / 2) ? 1.0 : 3.0;
  auto plane = std::make_shared<AffineSet>(std::move(a), 1, n, Vec{16.0});
  std::vector<std::shared_ptr<const ProjectableSet>> members{plane};
  for (std::size_t b = 0; b < n / 10; ++b)
    members.push_back(std::make_shared<BallSet>(n, 10 * b, Vec(10, 0.0), std::sqrt(20.0)));
  auto set = std::make_shared<IntersectionSet>(std::move(members));

  BenchmarkProblem p;
  p.name = "example4(n=" + std::to_string(n) + ")";
  p.objective = std::move(f);
  p.x0_default = set->project(Vec(n, 16.0 / (2.0 * double(n))));
  p.feasible_set = std::move(set);
  p.transform_for_report = [](double v) { return -std::log(-v); };
  return p;
}

BenchmarkProblem example4(std::size_t n) {
  Vec rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = 1.0 + double(i + 1) / double(n);
  return example4(n, rho);
}

} // namespace apgd
