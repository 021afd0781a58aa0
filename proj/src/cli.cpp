#include "apgd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "apgd/mlapps.hpp"
#include "apgd/problems.hpp"
#include "apgd/projections.hpp"
#include "apgd/solvers.hpp"

namespace apgd::cli {

std::optional<Command> parse_command(const std::string& name) {
  if (name == "example1") return Command::Example1;
  if (name == "example2") return Command::Example2;
  if (name == "example3") return Command::Example3;
  if (name == "example4") return Command::Example4;
  if (name == "featsel") return Command::FeatSel;
  if (name == "logreg") return Command::LogReg;
  if (name == "ratecheck") return Command::RateCheck;
  return std::nullopt;
}

std::optional<Solver> parse_solver(const std::string& name) {
  if (name == "gda") return Solver::Gda;
  if (name == "gd") return Solver::Gd;
  if (name == "sgda") return Solver::Sgda;
  if (name == "nesterov") return Solver::Nesterov;
  return std::nullopt;
}

const char* to_string(Command c) {
  switch (c) {
    case Command::Example1: return "example1";
    case Command::Example2: return "example2";
    case Command::Example3: return "example3";
    case Command::Example4: return "example4";
    case Command::FeatSel: return "featsel";
    case Command::LogReg: return "logreg";
    case Command::RateCheck: return "ratecheck";
  }
  return "unknown";
}

const char* to_string(Solver s) {
  switch (s) {
    case Solver::Gda: return "gda";
    case Solver::Gd: return "gd";
    case Solver::Sgda: return "sgda";
    case Solver::Nesterov: return "nesterov";
  }
  return "unknown";
}

std::string default_output_dir() {
  const char* dir = std::getenv("APGD_OUTPUT_DIR");
  return dir && *dir ? std::string(dir) : std::string(".");
}

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string trace_path(const RunSpec& spec) {
  if (!spec.output_path.empty()) return spec.output_path;
  std::string name = std::string(to_string(spec.command)) + "_" + to_string(spec.solver) +
                     "_trace." + spec.format;
  return default_output_dir() + "/" + name;
}

void write_trace(const SolveTrace& trace, const RunSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open trace file '" + path + "'");
  if (spec.format == "json")
    out << trace.to_json_string(2) << '\n';
  else
    trace.write_csv(out);
  if (!out.good()) throw Error("failed writing trace file '" + path + "'");
}

AdaptiveConfig make_config(const RunSpec& spec, std::optional<double> lambda0_default) {
  AdaptiveConfig cfg;
  cfg.lambda0 = spec.lambda0.value_or(lambda0_default.value_or(1.0));
  if (spec.sigma) cfg.sigma = *spec.sigma;
  if (spec.kappa) cfg.kappa = *spec.kappa;
  if (spec.max_iter) cfg.max_iter = *spec.max_iter;
  if (spec.step_tol) cfg.step_tol = *spec.step_tol;
  cfg.rng_seed = spec.seed.value_or(42);
  return cfg;
}

struct RunOutput {
  SolveResult result;
  double lambda_final = 0.0;
  std::function<double(double)> transform;
  nlohmann::json extra; // application-specific payload for json summaries
};

SolveResult dispatch_solver(const RunSpec& spec, const SmoothObjective& f,
                            const ProjectableSet& set, const Vec& x0,
                            std::optional<double> lambda0_default) {
  AdaptiveConfig cfg = make_config(spec, lambda0_default);
  switch (spec.solver) {
    case Solver::Gda: return gda_solve(f, set, cfg, x0);
    case Solver::Gd: {
      double lambda = spec.lambda0
                          ? *spec.lambda0
                          : (f.lipschitz_estimate ? 1.0 / *f.lipschitz_estimate : 1.0);
      return gd_solve(f, set, lambda, cfg.max_iter, cfg.step_tol, x0);
    }
    case Solver::Sgda: {
      StochasticOracle oracle = make_single_sample_oracle(f);
      return sgda_solve(oracle, set, cfg, x0);
    }
    case Solver::Nesterov: {
      if (!f.lipschitz_estimate)
        throw NumericFailure("nesterov needs a Lipschitz estimate and this objective has none");
      return nesterov_solve(f, set, *f.lipschitz_estimate, cfg.max_iter, cfg.step_tol, x0);
    }
  }
  throw UsageError("unknown solver");
}

RunOutput run_benchmark(const RunSpec& spec) {
  BenchmarkProblem p;
  switch (spec.command) {
    case Command::Example1: p = example1(); break;
    case Command::Example2: p = example2(); break;
    case Command::Example3:
      if (!spec.n) throw UsageError("example3 requires --n");
      p = example3(*spec.n, spec.seed.value_or(42));
      break;
    case Command::Example4:
      if (!spec.n) throw UsageError("example4 requires --n");
      p = example4(*spec.n);
      break;
    default: throw UsageError("not a benchmark command");
  }
  // adaptive runs start at 5/L when a Lipschitz estimate exists
  std::optional<double> lambda0_default;
  if (p.objective.lipschitz_estimate) lambda0_default = 5.0 / *p.objective.lipschitz_estimate;

  RunOutput out{dispatch_solver(spec, p.objective, *p.feasible_set, p.x0_default, lambda0_default),
                0.0, p.transform_for_report, {}};
  out.lambda_final = out.result.trace.step_sizes().back();
  return out;
}

RunOutput run_featsel(const RunSpec& spec) {
  if (spec.dataset_path.empty()) throw UsageError("featsel requires --dataset");
  if (spec.solver != Solver::Gda) throw UsageError("featsel runs with --solver gda only");
  std::ifstream in(spec.dataset_path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset '" + spec.dataset_path + "'", 0);

  // label column: "status" when present, otherwise the last column
  std::string header_line;
  std::getline(in, header_line);
  std::string label = "status";
  if (header_line.find("status") == std::string::npos) {
    auto pos = header_line.rfind(',');
    label = pos == std::string::npos ? header_line : header_line.substr(pos + 1);
    while (!label.empty() && (label.back() == '\r' || label.back() == '\n')) label.pop_back();
  }
  in.clear();
  in.seekg(0);

  TabularDataset ds = parse_csv_dataset(in, label);
  AdaptiveConfig cfg = make_config(spec, std::nullopt);
  FeatureSelectResult fs = feature_select(ds, spec.delta.value_or(1.0), cfg);

  RunOutput out{std::move(fs.solve), 0.0, nullptr, {}};
  out.lambda_final = out.result.trace.step_sizes().back();
  out.extra["w_star"] = fs.w_star;
  out.extra["fisher_scores"] = fs.rho;
  out.extra["feature_names"] = ds.feature_names;
  return out;
}

RunOutput run_logreg(const RunSpec& spec) {
  if (spec.dataset_path.empty()) throw UsageError("logreg requires --dataset");
  std::ifstream in(spec.dataset_path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset '" + spec.dataset_path + "'", 0);
  LogisticProblem p = parse_libsvm(in);
  SmoothObjective f = logistic_objective(p);
  RnSet space(p.n_features);
  Vec x0(p.n_features, 0.0);

  RunOutput out{{Vec{}, 0.0, SolveTrace(0), 0.0}, 0.0, nullptr, {}};
  if (spec.solver == Solver::Sgda) {
    AdaptiveConfig cfg = make_config(spec, 5.0 / p.l_estimate);
    StochasticOracle oracle = make_minibatch_oracle(p, std::min<std::size_t>(32, p.n_samples));
    out.result = sgda_solve(oracle, space, cfg, x0);
  } else {
    RunSpec adjusted = spec;
    if (!adjusted.max_iter) adjusted.max_iter = 500;
    out.result = dispatch_solver(adjusted, f, space, x0, 5.0 / p.l_estimate);
  }
  out.lambda_final = out.result.trace.step_sizes().back();
  out.extra["l_estimate"] = p.l_estimate;
  out.extra["n_samples"] = p.n_samples;
  out.extra["n_features"] = p.n_features;
  for (const auto& w : p.warnings) out.result.trace.warnings.push_back(w);
  return out;
}

int run_ratecheck(const RunSpec& spec, std::ostream& out_stream) {
  const std::size_t n = spec.n.value_or(10);
  const std::size_t max_iter = spec.max_iter.value_or(1000);
  std::mt19937_64 rng(spec.seed.value_or(42));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // diagonal quadratic with known minimum: f(x) = 1/2 sum d_i (x_i - c_i)^2
  auto d = std::make_shared<Vec>(n);
  auto c = std::make_shared<Vec>(n);
  Vec x0(n);
  double lmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (*d)[i] = 1.0 + 9.0 * unif(rng);
    (*c)[i] = 2.0 * unif(rng) - 1.0;
    x0[i] = (*c)[i] + 2.0 * unif(rng) - 1.0;
    lmax = std::max(lmax, (*d)[i]);
  }
  SmoothObjective f;
  f.dimension = n;
  f.lipschitz_estimate = lmax;
  f.value = [d, c](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double t = x[i] - (*c)[i];
      s += 0.5 * (*d)[i] * t * t;
    }
    return s;
  };
  f.gradient = [d, c](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = (*d)[i] * (x[i] - (*c)[i]);
    return g;
  };

  AdaptiveConfig cfg;
  cfg.lambda0 = 0.999 * 2.0 * (1.0 - cfg.sigma) / lmax;
  cfg.max_iter = max_iter;
  cfg.step_tol = 0.0;
  RnSet space(n);
  SolveResult res = gda_solve(f, space, cfg, x0);

  std::string path = spec.output_path.empty() ? default_output_dir() + "/ratecheck.csv"
                                              : spec.output_path;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  file << "k,delta\n";
  const auto& fv = res.trace.f_values();
  char buf[40];
  for (std::size_t k = 0; k < fv.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", fv[k]); // f* = 0 by construction
    file << k << ',' << buf << '\n';
  }

  double ratio = 0.0;
  if (fv.size() > 10 && fv[10] > 0.0) {
    double base = 10.0 * fv[10];
    for (std::size_t k = 10; k < fv.size(); ++k)
      ratio = std::max(ratio, double(k) * fv[k] / base);
  }
  bool pass = ratio <= 10.0;
  std::snprintf(buf, sizeof buf, "%.6g", ratio);
  out_stream << "command=ratecheck n=" << n << " max_iter=" << max_iter << " ratio=" << buf
             << " pass=" << (pass ? 1 : 0) << " output=" << path << "\n";
  return pass ? 0 : 2;
}

void print_summary(const RunSpec& spec, const RunOutput& out, const std::string& path,
                   std::ostream& os) {
  const SolveResult& r = out.result;
  std::size_t iters = r.trace.size() == 0 ? 0 : r.trace.size() - 1;
  if (spec.format == "json") {
    nlohmann::json j;
    j["command"] = to_string(spec.command);
    j["solver"] = to_string(spec.solver);
    j["f_star"] = r.f_star;
    if (out.transform) j["f_star_report"] = out.transform(r.f_star);
    j["iters"] = iters;
    j["time_s"] = r.trace.elapsed_seconds;
    j["stationarity"] = r.stationarity;
    j["stop_reason"] = apgd::to_string(r.trace.stop_reason);
    j["trace"] = path;
    if (!out.extra.is_null()) j["extra"] = out.extra;
    os << j.dump() << "\n";
    return;
  }
  char fbuf[40], sbuf[40], tbuf[40];
  std::snprintf(fbuf, sizeof fbuf, "%.10g", r.f_star);
  std::snprintf(sbuf, sizeof sbuf, "%.3e", r.stationarity);
  std::snprintf(tbuf, sizeof tbuf, "%.4f", r.trace.elapsed_seconds);
  os << "command=" << to_string(spec.command) << " solver=" << to_string(spec.solver)
     << " f_star=" << fbuf;
  if (out.transform) {
    char rbuf[40];
    std::snprintf(rbuf, sizeof rbuf, "%.10g", out.transform(r.f_star));
    os << " f_star_report=" << rbuf;
  }
  os << " iters=" << iters << " time_s=" << tbuf << " stationarity=" << sbuf
     << " stop=" << apgd::to_string(r.trace.stop_reason) << " trace=" << path << "\n";
  for (const auto& w : r.trace.warnings) os << "warning: " << w << "\n";
}

} // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.format != "csv" && spec.format != "json")
      throw UsageError("format must be csv or json");
    if (spec.command == Command::RateCheck) return run_ratecheck(spec, out);

    RunOutput result = [&] {
      switch (spec.command) {
        case Command::FeatSel: return run_featsel(spec);
        case Command::LogReg: return run_logreg(spec);
        default: return run_benchmark(spec);
      }
    }();

    std::string path = trace_path(spec);
    write_trace(result.result.trace, spec, path);
    print_summary(spec, result, path, out);
    return 0;
  } catch (const ParseError& e) {
    err << "error[parse]: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return 3;
  } catch (const EvaluationError& e) {
    err << "error[numeric]: " << e.what() << "\n";
    return 2;
  } catch (const NumericFailure& e) {
    err << "error[numeric]: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceFailure& e) {
    err << "error[numeric]: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error[usage]: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error[io]: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 2;
  }
}

} // namespace apgd::cli
