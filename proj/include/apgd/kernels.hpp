#pragma once

#include <cstddef>

// Dense double-precision kernels behind every inner loop of the library.
// Each entry point dispatches at runtime between a scalar reference
// implementation and an AVX2+FMA variant when the CPU supports it.
//
// Elementwise kernels (sub_scaled, axpy, clamp) are bit-identical across
// backends: the SIMD variants use the same mul/add/compare sequence per lane.
// Reduction kernels (dot, sum, nrm2sq, diff_nrm2sq) accumulate in a different
// order under SIMD and agree with the scalar reference only up to rounding;
// the equivalence tests pin that gap.

namespace apgd::kernels {

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
double diff_nrm2sq(const double* a, const double* b, std::size_t n);

// out[i] = x[i] - c * g[i]
void sub_scaled(const double* x, double c, const double* g, double* out, std::size_t n);
// y[i] += c * x[i]
void axpy(double c, const double* x, double* y, std::size_t n);
// out[i] = min(max(x[i], lo[i]), hi[i]); bounds may be +/-inf
void clamp(const double* x, const double* lo, const double* hi, double* out, std::size_t n);

// Row-major dense matrix helpers built on the kernels above.
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out);
void matvec_t(const double* a, std::size_t rows, std::size_t cols, const double* y, double* out);

// Force the scalar reference path (tests, A/B timing).
void force_scalar(bool on);
bool scalar_forced();
// "avx2" or "scalar", after force_scalar is taken into account.
const char* active_backend();

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* x, std::size_t n);
double nrm2sq_scalar(const double* x, std::size_t n);
double diff_nrm2sq_scalar(const double* a, const double* b, std::size_t n);
void sub_scaled_scalar(const double* x, double c, const double* g, double* out, std::size_t n);
void axpy_scalar(double c, const double* x, double* y, std::size_t n);
void clamp_scalar(const double* x, const double* lo, const double* hi, double* out, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
double nrm2sq_avx2(const double* x, std::size_t n);
double diff_nrm2sq_avx2(const double* a, const double* b, std::size_t n);
void sub_scaled_avx2(const double* x, double c, const double* g, double* out, std::size_t n);
void axpy_avx2(double c, const double* x, double* y, std::size_t n);
void clamp_avx2(const double* x, const double* lo, const double* hi, double* out, std::size_t n);
#endif

} // namespace detail

} // namespace apgd::kernels
