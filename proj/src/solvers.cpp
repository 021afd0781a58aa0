#include "apgd/solvers.hpp"

#include <chrono>
#include <cmath>

namespace apgd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec prepare_start(const ProjectableSet& C, const Vec& x0, SolveTrace& trace) {
  if (x0.size() != C.dimension()) throw InvalidArgument("solve: x0 dimension mismatch");
  require_finite(x0, "solve x0");
  if (C.contains(x0, 1e-8)) return x0;
  trace.x0_projected = true;
  return C.project(x0);
}

double checked_eval(const SmoothObjective& f, const Vec& x, std::size_t iter) {
  double v = f.value(x);
  if (!std::isfinite(v))
    throw EvaluationError("objective became non-finite at iteration " + std::to_string(iter), iter);
  return v;
}

Vec checked_grad(const SmoothObjective& f, const Vec& x, std::size_t iter) {
  Vec g = f.gradient(x);
  if (g.size() != f.dimension || !all_finite(g))
    throw EvaluationError("gradient became non-finite at iteration " + std::to_string(iter), iter);
  return g;
}

} // namespace

SolveResult gda_solve(const SmoothObjective& f, const ProjectableSet& C,
                      const AdaptiveConfig& cfg, const Vec& x0) {
  cfg.validate();
  if (f.dimension != C.dimension()) throw InvalidArgument("solve: objective/set dimension mismatch");

  SolveTrace trace(f.dimension);
  trace.solver_name = "gda";
  trace.config_echo = cfg;
  const auto t0 = Clock::now();

  Vec x = prepare_start(C, x0, trace);
  double fx = checked_eval(f, x, 0);
  double lambda = cfg.lambda0;
  trace.record(x, fx, lambda, true);
  trace.stop_reason = StopReason::MaxIter;

  for (std::size_t k = 0; k < cfg.max_iter; ++k) {
    Vec g = checked_grad(f, x, k);
    Vec x_next = C.project(sub_scaled(x, lambda, g));
    double f_next = checked_eval(f, x_next, k + 1);

    Vec d(x.size());
    kernels::sub_scaled(x.data(), 1.0, x_next.data(), d.data(), x.size());
    double inner = dot(g, d);
    bool accepted = f_next <= fx - cfg.sigma * inner;
    if (!accepted) lambda *= cfg.kappa;

    double step = nrm2(d);
    trace.record(x_next, f_next, lambda, accepted);
    x = std::move(x_next);
    fx = f_next;
    if (step <= cfg.step_tol) {
      trace.stop_reason = StopReason::StepBelowTol;
      break;
    }
  }

  trace.elapsed_seconds = seconds_since(t0);
  double residual = stationarity_residual(f, C, x, lambda);
  return SolveResult{std::move(x), fx, std::move(trace), residual};
}

SolveResult gd_solve(const SmoothObjective& f, const ProjectableSet& C, double lambda,
                     std::size_t max_iter, double step_tol, const Vec& x0) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("gd: lambda must be positive");
  if (max_iter == 0) throw InvalidArgument("gd: max_iter must be positive");
  if (f.dimension != C.dimension()) throw InvalidArgument("solve: objective/set dimension mismatch");

  SolveTrace trace(f.dimension);
  trace.solver_name = "gd";
  if (f.lipschitz_estimate && lambda >= 2.0 / *f.lipschitz_estimate)
    trace.warnings.push_back("step size is outside (0, 2/L); convergence is not guaranteed");
  const auto t0 = Clock::now();

  Vec x = prepare_start(C, x0, trace);
  double fx = checked_eval(f, x, 0);
  trace.record(x, fx, lambda, true);
  trace.stop_reason = StopReason::MaxIter;

  for (std::size_t k = 0; k < max_iter; ++k) {
    Vec g = checked_grad(f, x, k);
    Vec x_next = C.project(sub_scaled(x, lambda, g));
    double f_next = checked_eval(f, x_next, k + 1);
    double step = dist(x_next, x);
    trace.record(x_next, f_next, lambda, true);
    x = std::move(x_next);
    fx = f_next;
    if (step <= step_tol) {
      trace.stop_reason = StopReason::StepBelowTol;
      break;
    }
  }

  trace.elapsed_seconds = seconds_since(t0);
  double residual = stationarity_residual(f, C, x, lambda);
  return SolveResult{std::move(x), fx, std::move(trace), residual};
}

namespace {

double oracle_eval(const StochasticOracle& oracle, std::uint64_t id, const Vec& x,
                   std::size_t iter) {
  double v = oracle.value_at(id, x);
  if (!std::isfinite(v))
    throw EvaluationError("sample objective became non-finite at iteration " + std::to_string(iter),
                          iter);
  return v;
}

Vec oracle_grad(const StochasticOracle& oracle, std::uint64_t id, const Vec& x, std::size_t iter) {
  Vec g = oracle.gradient_at(id, x);
  if (g.size() != oracle.dimension || !all_finite(g))
    throw EvaluationError("sample gradient became non-finite at iteration " + std::to_string(iter),
                          iter);
  return g;
}

} // namespace

SolveResult sgda_solve(const StochasticOracle& oracle, const ProjectableSet& C,
                       const AdaptiveConfig& cfg, const Vec& x0) {
  cfg.validate();
  if (!cfg.rng_seed) throw InvalidArgument("sgda: rng_seed is required");
  if (oracle.dimension != C.dimension())
    throw InvalidArgument("solve: oracle/set dimension mismatch");

  SolveTrace trace(oracle.dimension);
  trace.solver_name = "sgda";
  trace.config_echo = cfg;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(*cfg.rng_seed);

  Vec x = prepare_start(C, x0, trace);
  double lambda = cfg.lambda0;
  trace.per_sample_f = !oracle.full.has_value();
  // row 0: full objective when available, else sample id 0 by convention
  trace.record(x, oracle.full ? oracle.full->value(x) : oracle_eval(oracle, 0, x, 0), lambda, true);
  trace.stop_reason = StopReason::MaxIter;
  bool collapse_warned = false;

  for (std::size_t k = 0; k < cfg.max_iter; ++k) {
    std::uint64_t id = oracle.sample(rng);
    Vec g = oracle_grad(oracle, id, x, k);
    double f_cur = oracle_eval(oracle, id, x, k);
    Vec x_next = C.project(sub_scaled(x, lambda, g));
    double f_next = oracle_eval(oracle, id, x_next, k + 1);

    Vec d(x.size());
    kernels::sub_scaled(x.data(), 1.0, x_next.data(), d.data(), x.size());
    double inner = dot(g, d);
    bool accepted = f_next <= f_cur - cfg.sigma * inner;
    if (!accepted) lambda *= cfg.kappa;
    if (!collapse_warned && lambda < 1e-12 * cfg.lambda0) {
      trace.warnings.push_back("step size collapsed below 1e-12 * lambda0");
      collapse_warned = true;
    }

    double f_row = oracle.full ? oracle.full->value(x_next) : f_next;
    double step = nrm2(d);
    trace.record(x_next, f_row, lambda, accepted);
    x = std::move(x_next);
    if (step <= cfg.step_tol) {
      trace.stop_reason = StopReason::StepBelowTol;
      break;
    }
  }

  trace.elapsed_seconds = seconds_since(t0);
  double f_star = trace.f_values().back();
  double residual = 0.0;
  if (oracle.full) {
    residual = stationarity_residual(*oracle.full, C, x, lambda);
  } else {
    // no full objective: certify with a fresh sample's gradient
    std::uint64_t id = oracle.sample(rng);
    Vec g = oracle_grad(oracle, id, x, trace.size());
    residual = dist(x, C.project(sub_scaled(x, lambda, g)));
  }
  return SolveResult{std::move(x), f_star, std::move(trace), residual};
}

SolveResult sgd_solve(const StochasticOracle& oracle, const ProjectableSet& C, double lambda,
                      std::size_t max_iter, double step_tol, std::uint64_t seed, const Vec& x0) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("sgd: lambda must be positive");
  if (oracle.dimension != C.dimension())
    throw InvalidArgument("solve: oracle/set dimension mismatch");

  SolveTrace trace(oracle.dimension);
  trace.solver_name = "sgd";
  const auto t0 = Clock::now();
  std::mt19937_64 rng(seed);

  Vec x = prepare_start(C, x0, trace);
  bool per_sample = !oracle.full.has_value();
  trace.per_sample_f = per_sample;
  trace.record(x, per_sample ? oracle_eval(oracle, 0, x, 0) : oracle.full->value(x), lambda, true);
  trace.stop_reason = StopReason::MaxIter;

  for (std::size_t k = 0; k < max_iter; ++k) {
    std::uint64_t id = oracle.sample(rng);
    Vec g = oracle_grad(oracle, id, x, k);
    Vec x_next = C.project(sub_scaled(x, lambda, g));
    double f_next = oracle_eval(oracle, id, x_next, k + 1);
    double f_row = oracle.full ? oracle.full->value(x_next) : f_next;
    double step = dist(x_next, x);
    trace.record(x_next, f_row, lambda, true);
    x = std::move(x_next);
    if (step <= step_tol) {
      trace.stop_reason = StopReason::StepBelowTol;
      break;
    }
  }

  trace.elapsed_seconds = seconds_since(t0);
  double f_star = trace.f_values().back();
  double residual = 0.0;
  if (oracle.full) residual = stationarity_residual(*oracle.full, C, x, lambda);
  return SolveResult{std::move(x), f_star, std::move(trace), residual};
}

SolveResult nesterov_solve(const SmoothObjective& f, const ProjectableSet& C, double L,
                           std::size_t max_iter, double step_tol, const Vec& x0) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("nesterov: L must be positive");
  if (max_iter == 0) throw InvalidArgument("nesterov: max_iter must be positive");
  if (f.dimension != C.dimension()) throw InvalidArgument("solve: objective/set dimension mismatch");

  SolveTrace trace(f.dimension);
  trace.solver_name = "nesterov";
  const auto t0 = Clock::now();
  const double lambda = 1.0 / L;

  Vec x = prepare_start(C, x0, trace);
  Vec y = x;
  double t = 1.0;
  trace.record(x, checked_eval(f, x, 0), lambda, true);
  trace.stop_reason = StopReason::MaxIter;

  for (std::size_t k = 0; k < max_iter; ++k) {
    Vec g = checked_grad(f, y, k);
    Vec x_next = C.project(sub_scaled(y, lambda, g));
    double f_next = checked_eval(f, x_next, k + 1);
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x_next[i] + beta * (x_next[i] - x[i]);

    double step = dist(x_next, x);
    trace.record(x_next, f_next, lambda, true);
    x = std::move(x_next);
    t = t_next;
    if (step <= step_tol) {
      trace.stop_reason = StopReason::StepBelowTol;
      break;
    }
  }

  trace.elapsed_seconds = seconds_since(t0);
  double f_star = trace.f_values().back();
  double residual = stationarity_residual(f, C, x, lambda);
  return SolveResult{std::move(x), f_star, std::move(trace), residual};
}

SolveResult nesterov_solve(const SmoothObjective& f, double L, std::size_t max_iter,
                           const Vec& x0) {
  RnSet C(f.dimension);
  return nesterov_solve(f, C, L, max_iter, 1e-10, x0);
}

double stationarity_residual(const SmoothObjective& f, const ProjectableSet& C, const Vec& x,
                             double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("stationarity: lambda must be positive");
  Vec g = f.grad(x);
  return dist(x, C.project(sub_scaled(x, lambda, g)));
}

} // namespace apgd
