#pragma once

#include <memory>
#include <string>

#include "apgd/core.hpp"

namespace apgd {

// A benchmark instance: objective, feasible set, default start, and the
// reference solution when one is known.
struct BenchmarkProblem {
  std::string name;
  SmoothObjective objective;
  std::shared_ptr<const ProjectableSet> feasible_set;
  Vec x0_default;
  std::optional<double> reference_value;
  std::optional<Vec> reference_point;
  // applied to f* for reporting (e.g. v -> -ln(-v))
  std::function<double(double)> transform_for_report;
};

// minimize (x1^2 + x2^2 + 3) / (1 + 2 x1 + 8 x2)
// over {z >= 0 : z1^2 + 2 z1 z2 >= 4}
BenchmarkProblem example1();

// minimize (exp(|x2 - 3|) - 30) / (x1^2 + x3^2 + 2 x4^2 + 4)
// over {(x1+x3)^3 + 2 x4^2 <= 10, (x2-1)^2 <= 1, 2 x1 + 4 x2 + x3 = -1}
BenchmarkProblem example2();

// minimize a^T x + alpha x^T x + beta (1 + beta x^T x)^{-1/2} e^T x
// over {x > 0 : x1 ... xn >= 1}, with e = (1, ..., n) and seeded a
BenchmarkProblem example3(std::size_t n, std::uint64_t seed);

// minimize -exp(-sum x_i^2 / rho_i^2)
// over {a^T x = 16} intersected with width-10 coordinate-block balls of
// radius sqrt(20); a_i = 1 on the first half, 3 on the second
BenchmarkProblem example4(std::size_t n, const Vec& rho);
// rho_i = 1 + i/n default
BenchmarkProblem example4(std::size_t n);

} // namespace apgd
