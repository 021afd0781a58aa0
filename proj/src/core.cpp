#include "apgd/core.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace apgd {

bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_finite(std::span<const double> x, const char* what) {
  if (!all_finite(x)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite value");
}

double nrm2(const Vec& x) { return std::sqrt(kernels::nrm2sq(x.data(), x.size())); }

double dist(const Vec& a, const Vec& b) {
  return std::sqrt(kernels::diff_nrm2sq(a.data(), b.data(), a.size()));
}

Vec sub_scaled(const Vec& x, double c, const Vec& g) {
  Vec out(x.size());
  kernels::sub_scaled(x.data(), c, g.data(), out.data(), x.size());
  return out;
}

double SmoothObjective::eval(const Vec& x) const {
  if (x.size() != dimension) throw InvalidArgument("objective: dimension mismatch");
  require_finite(x, "objective input");
  double v = value(x);
  if (!std::isfinite(v)) throw EvaluationError("objective value is non-finite", 0);
  return v;
}

Vec SmoothObjective::grad(const Vec& x) const {
  if (x.size() != dimension) throw InvalidArgument("gradient: dimension mismatch");
  require_finite(x, "gradient input");
  Vec g = gradient(x);
  if (g.size() != dimension) throw ContractViolation("gradient dimension mismatch");
  if (!all_finite(g)) throw EvaluationError("gradient is non-finite", 0);
  return g;
}

Vec RnSet::project(const Vec& x) const {
  if (x.size() != dim_) throw InvalidArgument("project: dimension mismatch");
  require_finite(x, "project input");
  return x;
}

bool RnSet::contains(const Vec& x, double) const { return x.size() == dim_ && all_finite(x); }

void AdaptiveConfig::validate() const {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
    throw InvalidArgument("config: lambda0 must be positive");
  if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidArgument("config: sigma must be in (0,1)");
  if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidArgument("config: kappa must be in (0,1)");
  if (max_iter == 0) throw InvalidArgument("config: max_iter must be positive");
  if (!(step_tol >= 0.0) || !std::isfinite(step_tol))
    throw InvalidArgument("config: step_tol must be nonnegative");
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::StepBelowTol: return "StepBelowTol";
    case StopReason::MaxIter: return "MaxIter";
  }
  return "unknown";
}

SolveTrace::SolveTrace(std::size_t dimension)
    : dimension_(dimension), store_iterates_(dimension <= kFullIterateDimLimit) {}

void SolveTrace::record(const Vec& x, double fx, double lambda, bool accepted) {
  if (x.size() != dimension_) throw InvalidArgument("trace: dimension mismatch");
  require_finite(x, "trace iterate");
  require_finite(fx, "trace f value");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("trace: step size must be positive");
  if (!step_sizes_.empty() && lambda > step_sizes_.back())
    throw ContractViolation("trace: step sizes must be nonincreasing");

  step_norms_.push_back(f_values_.empty() ? 0.0 : dist(x, last_));
  if (f_values_.empty()) first_ = x;
  last_ = x;
  if (store_iterates_) iterates_.push_back(x);
  f_values_.push_back(fx);
  step_sizes_.push_back(lambda);
  accepted_.push_back(accepted ? 1 : 0);
}

static void put_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void SolveTrace::write_csv(std::ostream& os) const {
  os << "iter,f,lambda,accepted,step_norm\n";
  for (std::size_t k = 0; k < f_values_.size(); ++k) {
    os << k << ',';
    put_double(os, f_values_[k]);
    os << ',';
    put_double(os, step_sizes_[k]);
    os << ',' << int(accepted_[k]) << ',';
    put_double(os, step_norms_[k]);
    os << '\n';
  }
}

std::string SolveTrace::to_json_string(int indent) const {
  nlohmann::json j;
  j["dimension"] = dimension_;
  j["iterations"] = f_values_.empty() ? 0 : f_values_.size() - 1;
  j["stop_reason"] = to_string(stop_reason);
  j["elapsed_seconds"] = elapsed_seconds;
  j["x0_projected"] = x0_projected;
  j["per_sample_f"] = per_sample_f;
  j["solver"] = solver_name;
  if (config_echo) {
    nlohmann::json c;
    c["lambda0"] = config_echo->lambda0;
    c["sigma"] = config_echo->sigma;
    c["kappa"] = config_echo->kappa;
    c["max_iter"] = config_echo->max_iter;
    c["step_tol"] = config_echo->step_tol;
    if (config_echo->rng_seed) c["rng_seed"] = *config_echo->rng_seed;
    j["config"] = c;
  }
  j["f"] = f_values_;
  j["lambda"] = step_sizes_;
  j["accepted"] = accepted_;
  j["step_norm"] = step_norms_;
  j["x_first"] = first_;
  j["x_last"] = last_;
  if (store_iterates_) j["iterates"] = iterates_;
  if (!warnings.empty()) j["warnings"] = warnings;
  return j.dump(indent);
}

Vec finite_difference_gradient(const SmoothObjective& f, const Vec& x, double h) {
  if (x.size() != f.dimension) throw InvalidArgument("finite differences: dimension mismatch");
  require_finite(x, "finite differences input");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("finite differences: h must be positive");

  Vec g(x.size());
  Vec xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    double fp = f.value(xp);
    xp[i] = x[i] - h;
    double fm = f.value(xp);
    xp[i] = x[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw EvaluationError("finite differences: non-finite objective at coordinate " + std::to_string(i), i);
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

} // namespace apgd
