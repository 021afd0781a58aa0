#include "apgd/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace apgd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const Vec& x, std::size_t dim, const char* op) {
  if (x.size() != dim) throw InvalidArgument(std::string(op) + ": dimension mismatch");
  require_finite(x, op);
}

// lower-triangular Cholesky of a dense SPD matrix, row-major, in place
void cholesky(std::vector<double>& g, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = g[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d))
      throw IllPosedSet("affine set: A A^T is singular after preprocessing");
    double dj = std::sqrt(d);
    g[j * n + j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = g[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= g[i * n + k] * g[j * n + k];
      g[i * n + j] = s / dj;
    }
  }
}

Vec chol_solve(const std::vector<double>& l, std::size_t n, Vec rhs) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * rhs[k];
    rhs[i] = s / l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * rhs[k];
    rhs[ii] = s / l[ii * n + ii];
  }
  return rhs;
}

} // namespace

// ---------------------------------------------------------------------------
// BoxSet

BoxSet::BoxSet(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.empty())
    throw InvalidArgument("box: bound dimensions mismatch");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i]))
      throw InvalidArgument("box: NaN bound");
    if (!(lower_[i] <= upper_[i])) throw InvalidArgument("box: lower > upper");
  }
}

Vec BoxSet::project(const Vec& x) const {
  check_dim(x, lower_.size(), "box project");
  Vec out(x.size());
  kernels::clamp(x.data(), lower_.data(), upper_.data(), out.data(), x.size());
  return out;
}

bool BoxSet::contains(const Vec& x, double tol) const {
  if (x.size() != lower_.size() || !all_finite(x)) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// SimplexSet

SimplexSet::SimplexSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("simplex: dimension must be positive");
}

Vec SimplexSet::project(const Vec& x) const {
  check_dim(x, dim_, "simplex project");
  // sort-and-threshold: w_i = max(0, x_i - tau)
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    css += u[j];
    double t = (css - 1.0) / double(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  Vec w(dim_);
  for (std::size_t i = 0; i < dim_; ++i) w[i] = std::max(0.0, x[i] - tau);
  return w;
}

bool SimplexSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  double s = kernels::sum(x.data(), dim_);
  if (std::abs(s - 1.0) > tol) return false;
  for (double v : x)
    if (v < -tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// BallSet

BallSet::BallSet(Vec center, double radius)
    : ambient_dim_(center.size()), block_begin_(0), center_(std::move(center)), radius_(radius) {
  validate();
}

BallSet::BallSet(std::size_t ambient_dim, std::size_t block_begin, Vec center, double radius)
    : ambient_dim_(ambient_dim), block_begin_(block_begin), center_(std::move(center)),
      radius_(radius) {
  validate();
}

void BallSet::validate() const {
  if (center_.empty() || block_begin_ + center_.size() > ambient_dim_)
    throw InvalidArgument("ball: block out of range");
  require_finite(center_, "ball center");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw InvalidArgument("ball: radius must be positive");
}

Vec BallSet::project(const Vec& x) const {
  check_dim(x, ambient_dim_, "ball project");
  const std::size_t m = center_.size();
  double d2 = kernels::diff_nrm2sq(x.data() + block_begin_, center_.data(), m);
  Vec out = x;
  if (d2 > radius_ * radius_) {
    double scale = radius_ / std::sqrt(d2);
    for (std::size_t i = 0; i < m; ++i)
      out[block_begin_ + i] = center_[i] + scale * (x[block_begin_ + i] - center_[i]);
  }
  return out;
}

bool BallSet::contains(const Vec& x, double tol) const {
  if (x.size() != ambient_dim_ || !all_finite(x)) return false;
  double d = std::sqrt(kernels::diff_nrm2sq(x.data() + block_begin_, center_.data(), center_.size()));
  return d <= radius_ + tol;
}

// ---------------------------------------------------------------------------
// AffineSet

AffineSet::AffineSet(std::vector<double> a, std::size_t rows, std::size_t cols, Vec b) {
  if (rows == 0 || cols == 0 || a.size() != rows * cols || b.size() != rows)
    throw InvalidArgument("affine set: bad shape");
  require_finite(a, "affine A");
  require_finite(b, "affine b");
  cols_ = cols;

  // Modified Gram-Schmidt over the rows; dependent rows are dropped after an
  // inconsistency check against the rows already kept.
  std::vector<Vec> q;       // orthonormal basis of the kept row space
  std::vector<double> qb;   // b transformed alongside
  const double rank_tol = 1e-12;
  for (std::size_t r = 0; r < rows; ++r) {
    Vec row(a.begin() + r * cols, a.begin() + (r + 1) * cols);
    double row_norm = nrm2(row);
    Vec res = row;
    double res_b = b[r];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        double c = dot(q[j], res);
        kernels::axpy(-c, q[j].data(), res.data(), cols);
        res_b -= c * qb[j];
      }
    }
    double res_norm = nrm2(res);
    if (row_norm > 0.0 && res_norm > rank_tol * row_norm) {
      a_.insert(a_.end(), row.begin(), row.end());
      b_.push_back(b[r]);
      double inv = 1.0 / res_norm;
      for (double& v : res) v *= inv;
      q.push_back(std::move(res));
      qb.push_back(res_b * inv);
    } else if (std::abs(res_b) > 1e-8 * (1.0 + std::abs(b[r]))) {
      throw IllPosedSet("affine set: inconsistent dependent row " + std::to_string(r));
    }
  }
  rows_ = b_.size();
  if (rows_ == 0) throw IllPosedSet("affine set: A has rank zero");
  b_norm_ = nrm2(b_);

  chol_.assign(rows_ * rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double g = kernels::dot(a_.data() + i * cols_, a_.data() + j * cols_, cols_);
      chol_[i * rows_ + j] = g;
      chol_[j * rows_ + i] = g;
    }
  cholesky(chol_, rows_);
}

Vec AffineSet::residual(const Vec& x) const {
  Vec r(rows_);
  kernels::matvec(a_.data(), rows_, cols_, x.data(), r.data());
  for (std::size_t i = 0; i < rows_; ++i) r[i] -= b_[i];
  return r;
}

Vec AffineSet::project(const Vec& x) const {
  check_dim(x, cols_, "affine project");
  Vec y = chol_solve(chol_, rows_, residual(x));
  Vec z = x;
  for (std::size_t r = 0; r < rows_; ++r)
    kernels::axpy(-y[r], a_.data() + r * cols_, z.data(), cols_);
  return z;
}

bool AffineSet::contains(const Vec& x, double tol) const {
  if (x.size() != cols_ || !all_finite(x)) return false;
  return nrm2(residual(x)) <= tol * (1.0 + b_norm_);
}

// ---------------------------------------------------------------------------
// LogProductSet

LogProductSet::LogProductSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("log-product set: dimension must be positive");
}

namespace {

// z_i(mu) without cancellation for negative x_i
inline double logprod_z(double xi, double mu) {
  double s = std::sqrt(xi * xi + 4.0 * mu);
  return xi >= 0.0 ? 0.5 * (xi + s) : 2.0 * mu / (s - xi);
}

double logprod_phi(const Vec& x, double mu, Vec& z) {
  double phi = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = logprod_z(x[i], mu);
    phi += std::log(z[i]);
  }
  return phi;
}

} // namespace

Vec LogProductSet::project(const Vec& x) const {
  check_dim(x, dim_, "log-product project");
  bool positive = std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
  if (positive) {
    double logsum = 0.0;
    for (double v : x) logsum += std::log(v);
    if (logsum >= 0.0) return x;
  }

  Vec z(dim_);
  double hi = 1.0;
  int doublings = 0;
  while (logprod_phi(x, hi, z) < 0.0) {
    hi *= 2.0;
    if (++doublings > 200)
      throw NumericFailure("log-product projection: bracket expansion exceeded 200 doublings");
  }
  double lo = 0.0;
  for (int it = 0; it < 500 && hi - lo > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (logprod_phi(x, mid, z) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  logprod_phi(x, hi, z); // feasible side
  return z;
}

bool LogProductSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  double logsum = 0.0;
  for (double v : x) {
    if (v <= 0.0) return false;
    logsum += std::log(v);
  }
  return logsum >= -tol;
}

// ---------------------------------------------------------------------------
// QuadSuperlevelSet2D

bool QuadSuperlevelSet2D::contains(const Vec& x, double tol) const {
  if (x.size() != 2 || !all_finite(x)) return false;
  return x[0] >= -tol && x[1] >= -tol && gvalue(x) >= 4.0 - tol;
}

namespace {

// solution of the linear KKT system for a fixed multiplier:
//   z1 = x1 + mu (2 z1 + 2 z2),  z2 = x2 + 2 mu z1
inline Vec quad_kkt_point(const Vec& x, double mu) {
  double denom = 1.0 - 2.0 * mu - 4.0 * mu * mu;
  double z1 = (x[0] + 2.0 * mu * x[1]) / denom;
  double z2 = x[1] + 2.0 * mu * z1;
  return {z1, z2};
}

inline double quad_h(const Vec& x, double mu) {
  Vec z = quad_kkt_point(x, mu);
  return QuadSuperlevelSet2D::gvalue(z) - 4.0;
}

// bisect for g(z(mu)) = 4 on [lo, hi] with h(lo) < 0 <= h(hi); returns the
// feasible-side point
Vec quad_bisect(const Vec& x, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (quad_h(x, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return quad_kkt_point(x, hi);
}

} // namespace

Vec QuadSuperlevelSet2D::project(const Vec& x) const {
  check_dim(x, 2, "quad superlevel project");
  if (contains(x, 0.0)) return x;

  // projecting onto the orthant alone may already land inside
  Vec clamped{std::max(0.0, x[0]), std::max(0.0, x[1])};
  if (gvalue(clamped) >= 4.0) return clamped;

  const double mu_sing = (std::sqrt(5.0) - 1.0) / 4.0; // det of the KKT system vanishes here
  std::vector<Vec> candidates;

  // branch below the singular multiplier
  if (quad_h(x, 0.0) < 0.0) {
    double prev = 0.0;
    for (int j = 1; j <= 60; ++j) {
      double mu = mu_sing * (1.0 - std::ldexp(1.0, -j));
      if (quad_h(x, mu) >= 0.0) {
        candidates.push_back(quad_bisect(x, prev, mu));
        break;
      }
      prev = mu;
    }
  }
  // branch above it: h -> +inf at the singularity and -> -4 at infinity
  {
    double lo_mu = mu_sing * (1.0 + std::ldexp(1.0, -40));
    if (quad_h(x, lo_mu) > 0.0) {
      double hi_mu = lo_mu;
      bool bracketed = false;
      for (int j = 0; j < 200; ++j) {
        hi_mu = std::max(hi_mu * 2.0, mu_sing + 1.0);
        if (quad_h(x, hi_mu) <= 0.0) {
          bracketed = true;
          break;
        }
      }
      if (!bracketed)
        throw NumericFailure("quad superlevel projection: bisection failed to bracket");
      // swap roles: h decreases from + to - on this branch
      double lo = lo_mu, hi = hi_mu;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (quad_h(x, mid) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      candidates.push_back(quad_kkt_point(x, lo));
    }
  }

  // keep KKT candidates only when the sign constraints stay inactive
  std::vector<Vec> valid;
  for (auto& z : candidates) {
    if (z[0] >= -1e-12 && z[1] >= -1e-12) {
      z[0] = std::max(z[0], 0.0);
      z[1] = std::max(z[1], 0.0);
      if (gvalue(z) >= 4.0 - 1e-9) valid.push_back(z);
    }
  }
  // active-set fallback on the z2 = 0 edge: {(t, 0) : t >= 2}
  valid.push_back(Vec{std::max(2.0, x[0]), 0.0});

  const Vec* best = nullptr;
  double best_d = kInf;
  for (const auto& z : valid) {
    double d = kernels::diff_nrm2sq(z.data(), x.data(), 2);
    if (d < best_d) {
      best_d = d;
      best = &z;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// CubicQuadCapSet

CubicQuadCapSet::CubicQuadCapSet(std::size_t ambient_dim, std::size_t i1, std::size_t i2,
                                 std::size_t iq, double quad_coeff, double rhs)
    : dim_(ambient_dim), i1_(i1), i2_(i2), iq_(iq), quad_coeff_(quad_coeff), rhs_(rhs) {
  if (i1 >= ambient_dim || i2 >= ambient_dim || iq >= ambient_dim || i1 == i2 || i1 == iq ||
      i2 == iq)
    throw InvalidArgument("cubic cap: bad coordinate indices");
  if (!(quad_coeff > 0.0)) throw InvalidArgument("cubic cap: quad coefficient must be positive");
}

double CubicQuadCapSet::hvalue(const Vec& x) const {
  double s = x[i1_] + x[i2_];
  return s * s * s + quad_coeff_ * x[iq_] * x[iq_];
}

bool CubicQuadCapSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  return hvalue(x) <= rhs_ + tol;
}

Vec CubicQuadCapSet::project(const Vec& x) const {
  check_dim(x, dim_, "cubic cap project");
  if (hvalue(x) <= rhs_) return x;

  const double sum0 = x[i1_] + x[i2_];
  const double q0 = x[iq_];
  // s(mu) solves 6 mu s^2 + s = sum0 on the branch through s(0) = sum0
  auto s_of = [&](double mu) { return 2.0 * sum0 / (1.0 + std::sqrt(1.0 + 24.0 * mu * sum0)); };
  auto psi = [&](double mu) {
    double s = s_of(mu);
    double zq = q0 / (1.0 + 2.0 * quad_coeff_ * mu);
    return s * s * s + quad_coeff_ * zq * zq - rhs_;
  };

  double mu_cap = kInf;
  if (sum0 < 0.0) mu_cap = (1.0 - 1e-12) / (24.0 * (-sum0)); // branch vanishes past this
  double hi = std::min(1.0, mu_cap);
  int doublings = 0;
  while (psi(hi) > 0.0) {
    if (hi >= mu_cap || ++doublings > 200)
      throw NumericFailure("cubic cap projection: multiplier bracket failed");
    hi = std::min(hi * 2.0, mu_cap);
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (psi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double s = s_of(hi);
  Vec z = x;
  z[i1_] += 0.5 * (s - sum0);
  z[i2_] += 0.5 * (s - sum0);
  z[iq_] = q0 / (1.0 + 2.0 * quad_coeff_ * hi);
  return z;
}

// ---------------------------------------------------------------------------
// IntersectionSet / Dykstra

IntersectionSet::IntersectionSet(std::vector<std::shared_ptr<const ProjectableSet>> members,
                                 std::size_t max_cycles, double tol)
    : members_(std::move(members)), max_cycles_(max_cycles), tol_(tol) {
  if (members_.empty()) throw InvalidArgument("intersection: no members");
  if (max_cycles_ == 0 || !(tol_ > 0.0)) throw InvalidArgument("intersection: bad controls");
  for (const auto& m : members_)
    if (!m || m->dimension() != members_[0]->dimension())
      throw InvalidArgument("intersection: member dimensions mismatch");
}

std::size_t IntersectionSet::dimension() const { return members_[0]->dimension(); }

Vec dykstra(const IntersectionSet& s, const Vec& x) {
  if (x.size() != s.dimension()) throw InvalidArgument("dykstra: dimension mismatch");
  require_finite(x, "dykstra input");

  const auto& members = s.members();
  const std::size_t n = x.size();
  Vec cur = x;
  std::vector<Vec> increments(members.size(), Vec(n, 0.0));
  double displacement = kInf;

  for (std::size_t cycle = 0; cycle < s.max_cycles(); ++cycle) {
    displacement = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m) {
      Vec shifted = cur;
      kernels::axpy(1.0, increments[m].data(), shifted.data(), n);
      Vec next = members[m]->project(shifted);
      displacement += dist(next, cur);
      for (std::size_t i = 0; i < n; ++i) increments[m][i] = shifted[i] - next[i];
      cur = std::move(next);
    }
    if (displacement <= s.tol()) return cur;
  }
  throw ConvergenceFailure("dykstra: cycle budget exhausted", displacement);
}

Vec IntersectionSet::project(const Vec& x) const { return dykstra(*this, x); }

bool IntersectionSet::contains(const Vec& x, double tol) const {
  for (const auto& m : members_)
    if (!m->contains(x, tol)) return false;
  return true;
}

} // namespace apgd
