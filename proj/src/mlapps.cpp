#include "apgd/mlapps.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "apgd/projections.hpp"

namespace apgd {

// ---------------------------------------------------------------------------
// datasets

int TabularDataset::n_classes() const {
  int m = 0;
  for (int l : labels) m = std::max(m, l);
  return m;
}

DiscretizedDataset discretize_equal_frequency(const TabularDataset& ds, int bins) {
  if (bins < 2) throw InvalidArgument("discretize: need at least 2 bins");
  if (ds.n_samples == 0) throw InvalidArgument("discretize: empty dataset");

  DiscretizedDataset out;
  out.n_samples = ds.n_samples;
  out.n_features = ds.n_features;
  out.bin_count = bins;
  out.labels = ds.labels;
  out.bins.resize(ds.n_samples * ds.n_features);

  Vec col(ds.n_samples);
  for (std::size_t j = 0; j < ds.n_features; ++j) {
    for (std::size_t i = 0; i < ds.n_samples; ++i) col[i] = ds.at(i, j);
    Vec sorted = col;
    std::sort(sorted.begin(), sorted.end());
    // quantile edges; ties collapse into the same bin
    Vec edges;
    for (int k = 1; k < bins; ++k)
      edges.push_back(sorted[std::min(ds.n_samples - 1, ds.n_samples * std::size_t(k) / bins)]);
    for (std::size_t i = 0; i < ds.n_samples; ++i) {
      int b = int(std::upper_bound(edges.begin(), edges.end(), col[i]) - edges.begin());
      out.bins[i * ds.n_features + j] = b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// information measures

double entropy(const std::vector<double>& counts) {
  if (counts.empty()) throw InvalidArgument("entropy: empty histogram");
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0 || !std::isfinite(c)) throw InvalidArgument("entropy: negative or non-finite count");
    total += c;
  }
  if (!(total > 0.0)) throw InvalidArgument("entropy: histogram total must be positive");
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) {
      double p = c / total;
      h -= p * std::log(p);
    }
  return h;
}

double mutual_information(const Hist2D& joint) {
  if (joint.counts.size() != joint.nx * joint.ny || joint.counts.empty())
    throw InvalidArgument("mutual information: bad histogram shape");
  double total = 0.0;
  for (double c : joint.counts) {
    if (c < 0.0 || !std::isfinite(c)) throw InvalidArgument("mutual information: bad count");
    total += c;
  }
  if (!(total > 0.0)) throw InvalidArgument("mutual information: histogram total must be positive");

  Vec px(joint.nx, 0.0), py(joint.ny, 0.0);
  for (std::size_t x = 0; x < joint.nx; ++x)
    for (std::size_t y = 0; y < joint.ny; ++y) {
      px[x] += joint.at(x, y);
      py[y] += joint.at(x, y);
    }
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.nx; ++x)
    for (std::size_t y = 0; y < joint.ny; ++y) {
      double c = joint.at(x, y);
      if (c > 0.0) mi += (c / total) * std::log(c * total / (px[x] * py[y]));
    }
  return mi;
}

double conditional_mi(const Hist3D& joint) {
  if (joint.counts.size() != joint.nx * joint.ny * joint.nz || joint.counts.empty())
    throw InvalidArgument("conditional mi: bad histogram shape");
  double total = 0.0;
  for (double c : joint.counts) {
    if (c < 0.0 || !std::isfinite(c)) throw InvalidArgument("conditional mi: bad count");
    total += c;
  }
  if (!(total > 0.0)) throw InvalidArgument("conditional mi: histogram total must be positive");

  Vec pz(joint.nz, 0.0);
  std::vector<double> pxz(joint.nx * joint.nz, 0.0), pyz(joint.ny * joint.nz, 0.0);
  for (std::size_t x = 0; x < joint.nx; ++x)
    for (std::size_t y = 0; y < joint.ny; ++y)
      for (std::size_t z = 0; z < joint.nz; ++z) {
        double c = joint.at(x, y, z);
        pz[z] += c;
        pxz[x * joint.nz + z] += c;
        pyz[y * joint.nz + z] += c;
      }
  double cmi = 0.0;
  for (std::size_t x = 0; x < joint.nx; ++x)
    for (std::size_t y = 0; y < joint.ny; ++y)
      for (std::size_t z = 0; z < joint.nz; ++z) {
        double c = joint.at(x, y, z);
        if (c > 0.0)
          cmi += (c / total) *
                 std::log(c * pz[z] / (pxz[x * joint.nz + z] * pyz[y * joint.nz + z]));
      }
  return cmi;
}

double multi_information(const Hist3D& joint) {
  Hist2D xy{joint.nx, joint.ny, std::vector<double>(joint.nx * joint.ny, 0.0)};
  for (std::size_t x = 0; x < joint.nx; ++x)
    for (std::size_t y = 0; y < joint.ny; ++y)
      for (std::size_t z = 0; z < joint.nz; ++z) xy.counts[x * joint.ny + y] += joint.at(x, y, z);
  return mutual_information(xy) - conditional_mi(joint);
}

// ---------------------------------------------------------------------------
// feature selection

SimilarityMatrix build_similarity(const DiscretizedDataset& ds, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidArgument("similarity: delta must be positive");
  if (ds.n_samples == 0 || ds.n_features == 0)
    throw InvalidArgument("similarity: empty dataset");

  const std::size_t p = ds.n_features;
  const std::size_t b = std::size_t(ds.bin_count);
  int m = 0;
  for (int l : ds.labels) m = std::max(m, l);
  if (m <= 0) throw InvalidArgument("similarity: labels must be in {1, ..., m}");
  const std::size_t nz = std::size_t(m);

  // per-feature entropies
  Vec h(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> counts(b, 0.0);
    for (std::size_t i = 0; i < ds.n_samples; ++i) counts[ds.at(i, j)] += 1.0;
    h[j] = entropy(counts);
    if (h[j] <= 0.0)
      throw InvalidArgument("similarity: feature " + std::to_string(j) + " has zero entropy");
  }

  SimilarityMatrix sim;
  sim.p = p;
  sim.delta = delta;
  sim.q.assign(p * p, 0.0);
  Hist3D joint{b, b, nz, {}};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      joint.counts.assign(b * b * nz, 0.0);
      for (std::size_t r = 0; r < ds.n_samples; ++r) {
        std::size_t x = std::size_t(ds.at(r, i));
        std::size_t y = std::size_t(ds.at(r, j));
        std::size_t z = std::size_t(ds.labels[r] - 1);
        joint.counts[(x * b + y) * nz + z] += 1.0;
      }
      double s = std::max(0.0, multi_information(joint) / (h[i] + h[j]));
      sim.q[i * p + j] = s;
      sim.q[j * p + i] = s;
    }
  for (std::size_t i = 0; i < p; ++i) sim.q[i * p + i] += delta;

  // positive definiteness check
  std::vector<double> chol = sim.q;
  for (std::size_t j = 0; j < p; ++j) {
    double d = chol[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= chol[j * p + k] * chol[j * p + k];
    if (!(d > 0.0)) throw NumericFailure("similarity: Q = delta I + S is not positive definite");
    double dj = std::sqrt(d);
    chol[j * p + j] = dj;
    for (std::size_t r = j + 1; r < p; ++r) {
      double s = chol[r * p + j];
      for (std::size_t k = 0; k < j; ++k) s -= chol[r * p + k] * chol[j * p + k];
      chol[r * p + j] = s / dj;
    }
  }
  return sim;
}

Vec fisher_scores(const TabularDataset& ds) {
  const int m = ds.n_classes();
  if (m < 1) throw InvalidArgument("fisher: labels must be in {1, ..., m}");
  std::vector<std::size_t> nj(m, 0);
  for (int l : ds.labels) {
    if (l < 1 || l > m) throw InvalidArgument("fisher: label out of range");
    ++nj[l - 1];
  }
  for (int j = 0; j < m; ++j)
    if (nj[j] < 2)
      throw InvalidArgument("fisher: class " + std::to_string(j + 1) + " has fewer than 2 samples");

  Vec scores(ds.n_features);
  for (std::size_t f = 0; f < ds.n_features; ++f) {
    Vec mu_j(m, 0.0);
    double mu = 0.0;
    for (std::size_t i = 0; i < ds.n_samples; ++i) {
      mu_j[ds.labels[i] - 1] += ds.at(i, f);
      mu += ds.at(i, f);
    }
    mu /= double(ds.n_samples);
    for (int j = 0; j < m; ++j) mu_j[j] /= double(nj[j]);

    Vec var_j(m, 0.0);
    for (std::size_t i = 0; i < ds.n_samples; ++i) {
      double d = ds.at(i, f) - mu_j[ds.labels[i] - 1];
      var_j[ds.labels[i] - 1] += d * d;
    }
    double num = 0.0, den = 0.0;
    for (int j = 0; j < m; ++j) {
      num += double(nj[j]) * (mu_j[j] - mu) * (mu_j[j] - mu);
      den += var_j[j]; // sum_i (x - mu_j)^2 = n_j * population variance
    }
    if (!(den > 0.0))
      throw InvalidArgument("fisher: feature " + std::to_string(f) +
                            " has zero within-class variance in every class");
    scores[f] = num / den;
  }
  return scores;
}

SmoothObjective fractional_objective(const SimilarityMatrix& q, const Vec& rho) {
  if (rho.size() != q.p) throw InvalidArgument("fractional objective: dimension mismatch");
  auto qm = std::make_shared<std::vector<double>>(q.q);
  auto r = std::make_shared<Vec>(rho);
  const std::size_t p = q.p;

  SmoothObjective f;
  f.dimension = p;
  f.value = [qm, r, p](const Vec& w) {
    Vec qw(p);
    kernels::matvec(qm->data(), p, p, w.data(), qw.data());
    double denom = dot(*r, w);
    return dot(w, qw) / denom;
  };
  f.gradient = [qm, r, p](const Vec& w) {
    Vec qw(p);
    kernels::matvec(qm->data(), p, p, w.data(), qw.data());
    double denom = dot(*r, w);
    double num = dot(w, qw);
    Vec g(p);
    for (std::size_t i = 0; i < p; ++i)
      g[i] = (2.0 * qw[i] * denom - num * (*r)[i]) / (denom * denom);
    return g;
  };
  return f;
}

FeatureSelectResult feature_select(const TabularDataset& ds, double delta,
                                   const AdaptiveConfig& cfg) {
  DiscretizedDataset disc = discretize_equal_frequency(ds, 10);
  SimilarityMatrix q = build_similarity(disc, delta);
  Vec rho = fisher_scores(ds);
  bool any_positive = std::any_of(rho.begin(), rho.end(), [](double v) { return v > 0.0; });
  if (!any_positive) throw InvalidArgument("feature selection: relevancy vector is zero");

  SmoothObjective f = fractional_objective(q, rho);
  SimplexSet simplex(ds.n_features);
  Vec w0(ds.n_features, 1.0 / double(ds.n_features));
  SolveResult res = gda_solve(f, simplex, cfg, w0);

  FeatureSelectResult out;
  out.w_star = res.x_star;
  out.value = res.f_star;
  out.rho = std::move(rho);
  out.solve = std::move(res);
  return out;
}

// ---------------------------------------------------------------------------
// logistic regression

namespace {

inline double softplus(double u) {
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

void check_logistic(const LogisticProblem& p, const Vec& x) {
  if (p.n_samples == 0 || p.a.size() != p.n_samples * p.n_features ||
      p.labels.size() != p.n_samples)
    throw InvalidArgument("logistic: bad problem shape");
  if (x.size() != p.n_features) throw InvalidArgument("logistic: dimension mismatch");
  require_finite(x, "logistic input");
}

} // namespace

double logistic_loss(const LogisticProblem& p, const Vec& x) {
  check_logistic(p, x);
  Vec t(p.n_samples);
  kernels::matvec(p.a.data(), p.n_samples, p.n_features, x.data(), t.data());
  double j = 0.0;
  for (std::size_t i = 0; i < p.n_samples; ++i) {
    // -log sigma(-t) = softplus(t), -log sigma(t) = softplus(-t)
    j += p.labels[i] == 1 ? softplus(t[i]) : softplus(-t[i]);
  }
  return j + nrm2sq(x) / (2.0 * double(p.n_samples));
}

Vec logistic_gradient(const LogisticProblem& p, const Vec& x) {
  check_logistic(p, x);
  Vec t(p.n_samples);
  kernels::matvec(p.a.data(), p.n_samples, p.n_features, x.data(), t.data());
  for (std::size_t i = 0; i < p.n_samples; ++i) t[i] = sigmoid(t[i]) - 1.0 + double(p.labels[i]);
  Vec g(p.n_features);
  kernels::matvec_t(p.a.data(), p.n_samples, p.n_features, t.data(), g.data());
  kernels::axpy(1.0 / double(p.n_samples), x.data(), g.data(), p.n_features);
  return g;
}

SmoothObjective logistic_objective(const LogisticProblem& p) {
  auto shared = std::make_shared<LogisticProblem>(p);
  SmoothObjective f;
  f.dimension = p.n_features;
  f.lipschitz_estimate = p.l_estimate;
  f.value = [shared](const Vec& x) { return logistic_loss(*shared, x); };
  f.gradient = [shared](const Vec& x) { return logistic_gradient(*shared, x); };
  return f;
}

StochasticOracle make_minibatch_oracle(const LogisticProblem& p, std::size_t batch_size) {
  if (batch_size == 0 || batch_size > p.n_samples)
    throw InvalidArgument("minibatch oracle: bad batch size");
  auto shared = std::make_shared<LogisticProblem>(p);
  const std::size_t d = p.n_features;
  const std::size_t n = p.n_samples;
  const double scale = double(n) / double(batch_size);

  auto batch_of = [n, batch_size](std::uint64_t id) {
    std::mt19937_64 g(id);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> idx(batch_size);
    for (auto& i : idx) i = pick(g);
    return idx;
  };

  StochasticOracle oracle;
  oracle.dimension = d;
  oracle.sample = [](std::mt19937_64& rng) { return rng(); };
  oracle.value_at = [shared, batch_of, scale, d, n](std::uint64_t id, const Vec& x) {
    if (x.size() != d) throw InvalidArgument("minibatch oracle: dimension mismatch");
    double j = 0.0;
    for (std::size_t i : batch_of(id)) {
      double t = kernels::dot(shared->a.data() + i * d, x.data(), d);
      j += shared->labels[i] == 1 ? softplus(t) : softplus(-t);
    }
    return scale * j + nrm2sq(x) / (2.0 * double(n));
  };
  oracle.gradient_at = [shared, batch_of, scale, d, n](std::uint64_t id, const Vec& x) {
    if (x.size() != d) throw InvalidArgument("minibatch oracle: dimension mismatch");
    Vec g(d, 0.0);
    for (std::size_t i : batch_of(id)) {
      double t = kernels::dot(shared->a.data() + i * d, x.data(), d);
      double s = sigmoid(t) - 1.0 + double(shared->labels[i]);
      kernels::axpy(scale * s, shared->a.data() + i * d, g.data(), d);
    }
    kernels::axpy(1.0 / double(n), x.data(), g.data(), d);
    return g;
  };
  oracle.full = logistic_objective(p);
  return oracle;
}

StochasticOracle make_single_sample_oracle(const SmoothObjective& f) {
  auto shared = std::make_shared<SmoothObjective>(f);
  StochasticOracle oracle;
  oracle.dimension = f.dimension;
  oracle.sample = [](std::mt19937_64&) -> std::uint64_t { return 0; };
  oracle.value_at = [shared](std::uint64_t, const Vec& x) { return shared->value(x); };
  oracle.gradient_at = [shared](std::uint64_t, const Vec& x) { return shared->gradient(x); };
  oracle.full = f;
  return oracle;
}

double spectral_norm(const std::vector<double>& a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols || rows == 0 || cols == 0)
    throw InvalidArgument("spectral norm: bad shape");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vec v(cols);
  for (double& x : v) x = unif(rng);
  double nv = nrm2(v);
  for (double& x : v) x /= nv;

  Vec av(rows), atav(cols);
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    kernels::matvec(a.data(), rows, cols, v.data(), av.data());
    kernels::matvec_t(a.data(), rows, cols, av.data(), atav.data());
    double norm = nrm2(atav);
    if (norm == 0.0) return 0.0;
    double lambda_new = dot(v, atav); // Rayleigh quotient for A^T A
    for (std::size_t i = 0; i < cols; ++i) v[i] = atav[i] / norm;
    if (std::abs(lambda_new - lambda) <= 1e-8 * std::max(1.0, std::abs(lambda_new))) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  return std::sqrt(std::max(0.0, lambda));
}

// ---------------------------------------------------------------------------
// parsers

namespace {

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

double finalize_l_estimate(const LogisticProblem& p) {
  double norm = spectral_norm(p.a, p.n_samples, p.n_features);
  return (norm * norm / 2.0 + 1.0) / (2.0 * double(p.n_samples));
}

} // namespace

LogisticProblem parse_libsvm(std::istream& in) {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<double> raw_labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue; // blank line
    double label;
    if (!parse_double(tok, label))
      throw ParseError("libsvm: bad label on line " + std::to_string(line_no), line_no);
    raw_labels.push_back(label);

    std::vector<std::pair<std::size_t, double>> row;
    std::size_t prev = 0;
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
        throw ParseError("libsvm: bad feature token on line " + std::to_string(line_no), line_no);
      double idx_val, val;
      if (!parse_double(tok.substr(0, colon), idx_val) || idx_val < 1.0 ||
          idx_val != std::floor(idx_val))
        throw ParseError("libsvm: bad feature index on line " + std::to_string(line_no), line_no);
      if (!parse_double(tok.substr(colon + 1), val))
        throw ParseError("libsvm: bad feature value on line " + std::to_string(line_no), line_no);
      std::size_t idx = std::size_t(idx_val);
      if (idx <= prev)
        throw ParseError("libsvm: feature indices must be strictly increasing on line " +
                             std::to_string(line_no),
                         line_no);
      prev = idx;
      max_index = std::max(max_index, idx);
      row.emplace_back(idx, val);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("libsvm: no samples", 0);
  if (max_index == 0) throw ParseError("libsvm: no features", 0);

  std::set<double> distinct(raw_labels.begin(), raw_labels.end());
  auto subset_of = [&](std::initializer_list<double> s) {
    return std::all_of(distinct.begin(), distinct.end(),
                       [&](double v) { return std::find(s.begin(), s.end(), v) != s.end(); });
  };
  std::function<int(double)> map_label;
  if (subset_of({0.0, 1.0}))
    map_label = [](double v) { return int(v); };
  else if (subset_of({-1.0, 1.0}))
    map_label = [](double v) { return v < 0.0 ? 0 : 1; };
  else if (subset_of({1.0, 2.0}))
    map_label = [](double v) { return int(v) - 1; };
  else
    throw ParseError("libsvm: labels must be {-1,+1}, {1,2} or {0,1}", 0);

  LogisticProblem p;
  p.n_samples = rows.size();
  p.n_features = max_index;
  p.a.assign(p.n_samples * p.n_features, 0.0);
  p.labels.resize(p.n_samples);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p.labels[i] = map_label(raw_labels[i]);
    for (auto [idx, val] : rows[i]) p.a[i * p.n_features + (idx - 1)] = val;
  }
  if (p.n_samples * p.n_features > 100'000'000ull)
    p.warnings.push_back("dense design matrix exceeds 1e8 entries");
  p.l_estimate = finalize_l_estimate(p);
  return p;
}

namespace {

// RFC-4180-style record reader; returns false at end of input
bool read_csv_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line_no) {
  fields.clear();
  std::string field;
  bool in_quotes = false, any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_no;
        field.push_back(char(c));
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line_no;
      break;
    } else if (c != '\r') {
      field.push_back(char(c));
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  if (fields.size() == 1 && fields[0].empty()) return read_csv_record(in, fields, line_no);
  return true;
}

} // namespace

TabularDataset parse_csv_dataset(std::istream& in, const std::string& label_column) {
  std::size_t line_no = 0;
  std::vector<std::string> header;
  if (!read_csv_record(in, header, line_no)) throw ParseError("csv: empty input", 0);
  const std::size_t ncol = header.size();

  std::size_t label_idx = ncol;
  for (std::size_t j = 0; j < ncol; ++j)
    if (header[j] == label_column) label_idx = j;
  if (label_idx == ncol) throw ParseError("csv: label column '" + label_column + "' not found", 1);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  while (read_csv_record(in, rec, line_no)) {
    if (rec.size() != ncol)
      throw ParseError("csv: ragged row " + std::to_string(records.size() + 2) + " (" +
                           std::to_string(rec.size()) + " fields, expected " +
                           std::to_string(ncol) + ")",
                       records.size() + 2);
    records.push_back(rec);
  }
  if (records.empty()) throw ParseError("csv: no data rows", 1);

  // classify columns: entirely non-numeric, non-empty columns are treated as
  // identifiers and dropped; anything else must parse as a number cell by cell
  std::vector<bool> is_identifier(ncol, false);
  for (std::size_t j = 0; j < ncol; ++j) {
    if (j == label_idx) continue;
    bool all_text = true;
    double tmp;
    for (const auto& r : records)
      if (r[j].empty() || parse_double(r[j], tmp)) {
        all_text = false;
        break;
      }
    is_identifier[j] = all_text;
  }

  TabularDataset ds;
  for (std::size_t j = 0; j < ncol; ++j)
    if (j != label_idx && !is_identifier[j]) ds.feature_names.push_back(header[j]);
  ds.n_samples = records.size();
  ds.n_features = ds.feature_names.size();
  if (ds.n_features == 0) throw ParseError("csv: no numeric feature columns", 1);
  ds.features.resize(ds.n_samples * ds.n_features);

  std::vector<std::string> raw_labels(ds.n_samples);
  for (std::size_t i = 0; i < ds.n_samples; ++i) {
    std::size_t f = 0;
    for (std::size_t j = 0; j < ncol; ++j) {
      const std::string& cell = records[i][j];
      if (j == label_idx) {
        if (cell.empty())
          throw ParseError("csv: missing label in row " + std::to_string(i + 2), i + 2);
        raw_labels[i] = cell;
      } else if (!is_identifier[j]) {
        double v;
        if (cell.empty())
          throw ParseError("csv: missing cell at row " + std::to_string(i + 2) + ", column '" +
                               header[j] + "'",
                           i + 2);
        if (!parse_double(cell, v) || !std::isfinite(v))
          throw ParseError("csv: non-numeric cell at row " + std::to_string(i + 2) +
                               ", column '" + header[j] + "'",
                           i + 2);
        ds.features[i * ds.n_features + f] = v;
        ++f;
      }
    }
  }

  std::vector<std::string> classes(raw_labels);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::map<std::string, int> class_id;
  for (std::size_t k = 0; k < classes.size(); ++k) class_id[classes[k]] = int(k + 1);
  ds.labels.resize(ds.n_samples);
  for (std::size_t i = 0; i < ds.n_samples; ++i) ds.labels[i] = class_id[raw_labels[i]];
  return ds;
}

} // namespace apgd
