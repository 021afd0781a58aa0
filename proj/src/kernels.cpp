#include "apgd/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace apgd::kernels {

static std::atomic<bool> g_force_scalar{false};

static bool env_forced() {
  static const bool forced = [] {
    const char* e = std::getenv("APGD_FORCE_SCALAR");
    return e && *e && *e != '0';
  }();
  return forced;
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }
bool scalar_forced() { return env_forced() || g_force_scalar.load(std::memory_order_relaxed); }

#if defined(__x86_64__) || defined(_M_X64)
static bool use_avx2() {
  static const bool have = detail::avx2_available();
  return have && !scalar_forced();
}
#else
static bool use_avx2() { return false; }
#endif

const char* active_backend() { return use_avx2() ? "avx2" : "scalar"; }

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double diff_nrm2sq_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void sub_scaled_scalar(const double* x, double c, const double* g, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - c * g[i];
}

void axpy_scalar(double c, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

void clamp_scalar(const double* x, const double* lo, const double* hi, double* out, std::size_t n) {
  // same select order as the AVX2 max/min lanes, so the two paths agree bitwise
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] > lo[i] ? x[i] : lo[i];
    out[i] = v < hi[i] ? v : hi[i];
  }
}

} // namespace detail

double dot(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::dot_avx2(a, b, n);
#endif
  return detail::dot_scalar(a, b, n);
}

double sum(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::sum_avx2(x, n);
#endif
  return detail::sum_scalar(x, n);
}

double nrm2sq(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::nrm2sq_avx2(x, n);
#endif
  return detail::nrm2sq_scalar(x, n);
}

double diff_nrm2sq(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return detail::diff_nrm2sq_avx2(a, b, n);
#endif
  return detail::diff_nrm2sq_scalar(a, b, n);
}

void sub_scaled(const double* x, double c, const double* g, double* out, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) { detail::sub_scaled_avx2(x, c, g, out, n); return; }
#endif
  detail::sub_scaled_scalar(x, c, g, out, n);
}

void axpy(double c, const double* x, double* y, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) { detail::axpy_avx2(c, x, y, n); return; }
#endif
  detail::axpy_scalar(c, x, y, n);
}

void clamp(const double* x, const double* lo, const double* hi, double* out, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) { detail::clamp_avx2(x, lo, hi, out, n); return; }
#endif
  detail::clamp_scalar(x, lo, hi, out, n);
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(a + r * cols, x, cols);
}

void matvec_t(const double* a, std::size_t rows, std::size_t cols, const double* y, double* out) {
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) axpy(y[r], a + r * cols, out, cols);
}

} // namespace apgd::kernels
