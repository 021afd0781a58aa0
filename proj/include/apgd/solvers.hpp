#pragma once

#include "apgd/core.hpp"

namespace apgd {

struct SolveResult {
  Vec x_star;
  double f_star = 0.0;
  SolveTrace trace;
  double stationarity = 0.0; // ||x* - P_C(x* - lambda_final grad f(x*))||
};

// Projected gradient iteration with the self-adaptive step rule: after each
// step x+ = P_C(x - lambda grad f(x)), keep lambda when
//   f(x+) <= f(x) - sigma <grad f(x), x - x+>
// and shrink it to kappa*lambda otherwise. The move is taken either way and
// lambda never increases.
SolveResult gda_solve(const SmoothObjective& f, const ProjectableSet& C,
                      const AdaptiveConfig& cfg, const Vec& x0);

// Fixed-step projected gradient. Warns (on the trace) when a Lipschitz
// estimate is known and lambda is outside (0, 2/L).
SolveResult gd_solve(const SmoothObjective& f, const ProjectableSet& C, double lambda,
                     std::size_t max_iter, double step_tol, const Vec& x0);

// Stochastic variant: one sample per iteration drives both the step and the
// acceptance test. Requires cfg.rng_seed.
SolveResult sgda_solve(const StochasticOracle& oracle, const ProjectableSet& C,
                       const AdaptiveConfig& cfg, const Vec& x0);

// Fixed-step stochastic baseline with the same sampling discipline as
// sgda_solve (one draw per iteration), for like-for-like comparisons.
SolveResult sgd_solve(const StochasticOracle& oracle, const ProjectableSet& C, double lambda,
                      std::size_t max_iter, double step_tol, std::uint64_t seed, const Vec& x0);

// Accelerated baseline with step 1/L and momentum t_{k+1} = (1+sqrt(1+4t_k^2))/2.
SolveResult nesterov_solve(const SmoothObjective& f, const ProjectableSet& C, double L,
                           std::size_t max_iter, double step_tol, const Vec& x0);
// unconstrained overload
SolveResult nesterov_solve(const SmoothObjective& f, double L, std::size_t max_iter,
                           const Vec& x0);

// ||x - P_C(x - lambda grad f(x))||; zero exactly at stationary points.
double stationarity_residual(const SmoothObjective& f, const ProjectableSet& C, const Vec& x,
                             double lambda);

} // namespace apgd
