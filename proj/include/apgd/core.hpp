#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "apgd/errors.hpp"
#include "apgd/kernels.hpp"

namespace apgd {

using Vec = std::vector<double>;

bool all_finite(std::span<const double> x);
// throws InvalidArgument naming `what` if any entry is NaN/Inf
void require_finite(std::span<const double> x, const char* what);
void require_finite(double v, const char* what);

inline double dot(const Vec& a, const Vec& b) { return kernels::dot(a.data(), b.data(), a.size()); }
inline double nrm2sq(const Vec& x) { return kernels::nrm2sq(x.data(), x.size()); }
double nrm2(const Vec& x);
double dist(const Vec& a, const Vec& b);
// x - c*g
Vec sub_scaled(const Vec& x, double c, const Vec& g);

// Value + gradient oracle for a differentiable objective.
struct SmoothObjective {
  std::size_t dimension = 0;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::optional<double> lipschitz_estimate;

  // checked evaluation: finite input, finite output, matching dimension
  double eval(const Vec& x) const;
  Vec grad(const Vec& x) const;
};

// Exact-projection oracle for a closed convex feasible set.
class ProjectableSet {
public:
  virtual ~ProjectableSet() = default;
  virtual std::size_t dimension() const = 0;
  virtual Vec project(const Vec& x) const = 0;
  virtual bool contains(const Vec& x, double tol) const = 0;
};

// The whole space: projection is the identity.
class RnSet final : public ProjectableSet {
public:
  explicit RnSet(std::size_t dim) : dim_(dim) {}
  std::size_t dimension() const override { return dim_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;

private:
  std::size_t dim_;
};

struct AdaptiveConfig {
  double lambda0 = 1.0;
  double sigma = 0.5;
  double kappa = 0.75;
  std::size_t max_iter = 10000;
  double step_tol = 1e-10;
  std::optional<std::uint64_t> rng_seed;

  void validate() const; // throws InvalidArgument
};

// Sampler producing per-sample value/gradient pairs for the stochastic solver.
// A SampleId must identify its sample deterministically: value_at/gradient_at
// called twice with the same id and point return the same result.
struct StochasticOracle {
  std::size_t dimension = 0;
  std::function<std::uint64_t(std::mt19937_64&)> sample;
  std::function<double(std::uint64_t, const Vec&)> value_at;
  std::function<Vec(std::uint64_t, const Vec&)> gradient_at;
  // full objective, when one exists; used for trace f-values and the final
  // stationarity residual
  std::optional<SmoothObjective> full;
};

enum class StopReason { StepBelowTol, MaxIter };
const char* to_string(StopReason r);

// Per-iteration record of a solve. One row per iterate, row 0 being the
// starting point. Step sizes never increase; each row's step size is the
// current value after that iteration's update.
class SolveTrace {
public:
  // Iterate history is kept in full only up to this dimension; above it only
  // the first and last iterates are retained (f/lambda/step columns always).
  static constexpr std::size_t kFullIterateDimLimit = 512;

  SolveTrace() : SolveTrace(0) {}
  explicit SolveTrace(std::size_t dimension);

  void record(const Vec& x, double fx, double lambda, bool accepted);

  std::size_t size() const { return f_values_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<double>& f_values() const { return f_values_; }
  const std::vector<double>& step_sizes() const { return step_sizes_; }
  const std::vector<std::uint8_t>& accepted() const { return accepted_; }
  const std::vector<double>& step_norms() const { return step_norms_; }

  bool stores_full_iterates() const { return store_iterates_; }
  const std::vector<Vec>& iterates() const { return iterates_; }
  const Vec& first_iterate() const { return first_; }
  const Vec& last_iterate() const { return last_; }

  StopReason stop_reason = StopReason::MaxIter;
  double elapsed_seconds = 0.0;
  bool x0_projected = false;  // starting point was repaired onto C
  bool per_sample_f = false;  // f column holds per-sample values (stochastic)
  std::vector<std::string> warnings;
  // echoed into the JSON record by the solver that produced the trace
  std::string solver_name;
  std::optional<AdaptiveConfig> config_echo;

  // columns: iter, f, lambda, accepted, step_norm
  void write_csv(std::ostream& os) const;
  std::string to_json_string(int indent = -1) const;

private:
  std::size_t dimension_;
  bool store_iterates_;
  std::vector<Vec> iterates_;
  Vec first_, last_;
  std::vector<double> f_values_;
  std::vector<double> step_sizes_;
  std::vector<std::uint8_t> accepted_;
  std::vector<double> step_norms_;
};

// Central-difference gradient, the test oracle for analytic gradients.
Vec finite_difference_gradient(const SmoothObjective& f, const Vec& x, double h);

} // namespace apgd
