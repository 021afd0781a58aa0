#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "apgd/core.hpp"
#include "apgd/solvers.hpp"

namespace apgd {

// ---------------------------------------------------------------------------
// datasets

struct TabularDataset {
  std::vector<double> features; // n x p row-major
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::vector<int> labels; // values in {1, ..., m}
  std::vector<std::string> feature_names;

  double at(std::size_t i, std::size_t j) const { return features[i * n_features + j]; }
  int n_classes() const;
};

struct DiscretizedDataset {
  std::vector<int> bins; // n x p row-major, values in [0, bin_count)
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  int bin_count = 0;
  std::vector<int> labels;

  int at(std::size_t i, std::size_t j) const { return bins[i * n_features + j]; }
};

// equal-frequency binning of continuous features
DiscretizedDataset discretize_equal_frequency(const TabularDataset& ds, int bins = 10);

struct SimilarityMatrix {
  std::vector<double> q; // p x p row-major, Q = delta I + S
  std::size_t p = 0;
  double delta = 0.0;

  double at(std::size_t i, std::size_t j) const { return q[i * p + j]; }
};

struct LogisticProblem {
  std::vector<double> a; // n x d row-major design matrix
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::vector<int> labels; // in {0, 1}
  double l_estimate = 0.0; // (||A||^2/2 + 1) / (2 N), spectral norm
  std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// information measures (all in nats)

struct Hist2D {
  std::size_t nx = 0, ny = 0;
  std::vector<double> counts; // nx x ny row-major
  double at(std::size_t x, std::size_t y) const { return counts[x * ny + y]; }
};

struct Hist3D {
  std::size_t nx = 0, ny = 0, nz = 0;
  std::vector<double> counts; // x-major, then y, then z
  double at(std::size_t x, std::size_t y, std::size_t z) const {
    return counts[(x * ny + y) * nz + z];
  }
};

double entropy(const std::vector<double>& counts);
double mutual_information(const Hist2D& joint);
double conditional_mi(const Hist3D& joint);
// I(X;Y) - I(X;Y|Z); may be negative
double multi_information(const Hist3D& joint);

// ---------------------------------------------------------------------------
// feature selection

// s_ij = max(0, multi_information(F_i, F_j, y) / (H(F_i) + H(F_j))), Q = delta I + S
SimilarityMatrix build_similarity(const DiscretizedDataset& ds, double delta);

// per-feature ratio of between-class to within-class variance
Vec fisher_scores(const TabularDataset& ds);

// w^T Q w / rho^T w with its closed-form gradient
SmoothObjective fractional_objective(const SimilarityMatrix& q, const Vec& rho);

struct FeatureSelectResult {
  Vec w_star;
  double value = 0.0;
  Vec rho;
  SolveResult solve;
};

// full pipeline: discretize, build Q and rho, minimize the ratio on the simplex
FeatureSelectResult feature_select(const TabularDataset& ds, double delta,
                                   const AdaptiveConfig& cfg);

// ---------------------------------------------------------------------------
// logistic regression

// regularized cross-entropy J(x) + ||x||^2 / (2N) with the label convention
// P(b=1 | a) = sigmoid(-x^T a)
double logistic_loss(const LogisticProblem& p, const Vec& x);
Vec logistic_gradient(const LogisticProblem& p, const Vec& x);
SmoothObjective logistic_objective(const LogisticProblem& p);

// one minibatch per SampleId, indices derived deterministically from the id
StochasticOracle make_minibatch_oracle(const LogisticProblem& p, std::size_t batch_size);
// degenerate oracle around a deterministic objective (every sample is f itself)
StochasticOracle make_single_sample_oracle(const SmoothObjective& f);

// spectral norm by power iteration (50 iterations, tol 1e-8)
double spectral_norm(const std::vector<double>& a, std::size_t rows, std::size_t cols);

// ---------------------------------------------------------------------------
// parsers

// LIBSVM text: "label idx:val idx:val ..." with 1-based strictly increasing
// indices; labels {-1,+1}, {1,2} or {0,1} map onto {0,1}
LogisticProblem parse_libsvm(std::istream& in);

// rectangular CSV with header (RFC-4180-style quoting); label_column is the
// header name of the categorical label
TabularDataset parse_csv_dataset(std::istream& in, const std::string& label_column);

} // namespace apgd
