#pragma once

#include <memory>
#include <vector>

#include "apgd/core.hpp"

namespace apgd {

// Axis-aligned box; bounds may be +/-inf.
class BoxSet final : public ProjectableSet {
public:
  BoxSet(Vec lower, Vec upper);
  std::size_t dimension() const override { return lower_.size(); }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

private:
  Vec lower_, upper_;
};

// Probability simplex {w >= 0, sum w = 1}, projected by sort-and-threshold.
class SimplexSet final : public ProjectableSet {
public:
  explicit SimplexSet(std::size_t dim);
  std::size_t dimension() const override { return dim_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;

private:
  std::size_t dim_;
};

// Euclidean ball over a contiguous coordinate block; other coordinates pass
// through untouched.
class BallSet final : public ProjectableSet {
public:
  // full-dimension ball
  BallSet(Vec center, double radius);
  // ball on coordinates [block_begin, block_begin + center.size())
  BallSet(std::size_t ambient_dim, std::size_t block_begin, Vec center, double radius);
  std::size_t dimension() const override { return ambient_dim_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;

private:
  void validate() const;
  std::size_t ambient_dim_, block_begin_;
  Vec center_;
  double radius_;
};

// Affine subspace {x : A x = b}. Dependent rows are dropped up front; the
// projection uses a Cholesky factor of A A^T.
class AffineSet final : public ProjectableSet {
public:
  // a: p x n row-major
  AffineSet(std::vector<double> a, std::size_t rows, std::size_t cols, Vec b);
  std::size_t dimension() const override { return cols_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;
  std::size_t reduced_rows() const { return rows_; }

private:
  Vec residual(const Vec& x) const;
  std::vector<double> a_;  // reduced, row-major
  std::size_t rows_ = 0, cols_ = 0;
  Vec b_;
  std::vector<double> chol_;  // lower factor of A A^T, row-major rows_ x rows_
  double b_norm_ = 0.0;
};

// {x > 0 : x_1 * ... * x_n >= 1}. Projection solves the multiplier equation
// sum log z_i(mu) = 0 with z_i(mu) = (x_i + sqrt(x_i^2 + 4 mu)) / 2.
class LogProductSet final : public ProjectableSet {
public:
  explicit LogProductSet(std::size_t dim);
  std::size_t dimension() const override { return dim_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;

private:
  std::size_t dim_;
};

// {z >= 0 : z1^2 + 2 z1 z2 >= 4}, the planar superlevel set with a convex
// complement boundary. Projection runs a multiplier bisection on the KKT
// system with an active-set fallback onto the z2 = 0 edge.
class QuadSuperlevelSet2D final : public ProjectableSet {
public:
  QuadSuperlevelSet2D() = default;
  std::size_t dimension() const override { return 2; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;
  static double gvalue(const Vec& z) { return z[0] * z[0] + 2.0 * z[0] * z[1]; }
};

// {x : (x_i1 + x_i2)^3 + quad_coeff * x_iq^2 <= rhs}; all other coordinates
// pass through. Projection bisects the KKT multiplier of the boundary system.
class CubicQuadCapSet final : public ProjectableSet {
public:
  CubicQuadCapSet(std::size_t ambient_dim, std::size_t i1, std::size_t i2, std::size_t iq,
                  double quad_coeff, double rhs);
  std::size_t dimension() const override { return dim_; }
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;
  double hvalue(const Vec& x) const;

private:
  std::size_t dim_, i1_, i2_, iq_;
  double quad_coeff_, rhs_;
};

// Intersection of convex sets, projected by Dykstra's correction-vector
// iteration over the members' exact projections.
class IntersectionSet final : public ProjectableSet {
public:
  IntersectionSet(std::vector<std::shared_ptr<const ProjectableSet>> members,
                  std::size_t max_cycles = 10000, double tol = 1e-10);
  std::size_t dimension() const override;
  Vec project(const Vec& x) const override;
  bool contains(const Vec& x, double tol) const override;
  const std::vector<std::shared_ptr<const ProjectableSet>>& members() const { return members_; }
  std::size_t max_cycles() const { return max_cycles_; }
  double tol() const { return tol_; }

private:
  std::vector<std::shared_ptr<const ProjectableSet>> members_;
  std::size_t max_cycles_;
  double tol_;
};

// Dykstra's alternating projections; IntersectionSet::project forwards here.
Vec dykstra(const IntersectionSet& s, const Vec& x);

} // namespace apgd
