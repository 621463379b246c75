#pragma once

#include <cstddef>
#include <span>

// Inner loops shared by the solvers: dot products, axpy updates, max norms
// and the two difference stencils. Scalar reference kernels are always built;
// on x86-64 an AVX2+FMA variant is selected once at startup (override with
// FRONTLAB_KERNELS=scalar in the environment). The variants are
// equivalence-tested against each other in tests/test_kernels.cpp.

namespace frontlab::kernels {

enum class Backend { scalar, avx2 };

/// Backend chosen at startup for the dispatched entry points below.
Backend active_backend();
const char* backend_name();

double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// out[k] = (u[k-stride] - 2 u[k] + u[k+stride]) * inv_h2 for k in
/// [stride, n-stride); the first and last `stride` entries are zeroed.
void second_difference(std::span<const double> u, std::size_t stride, double inv_h2,
                       std::span<double> out);

/// out[k] = (u[k+stride] - u[k-stride]) * inv_2h, same edge handling.
void centered_difference(std::span<const double> u, std::size_t stride, double inv_2h,
                         std::span<double> out);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void second_difference(const double* u, std::size_t n, std::size_t stride, double inv_h2,
                       double* out);
void centered_difference(const double* u, std::size_t n, std::size_t stride, double inv_2h,
                         double* out);
}  // namespace scalar

#if defined(FRONTLAB_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void second_difference(const double* u, std::size_t n, std::size_t stride, double inv_h2,
                       double* out);
void centered_difference(const double* u, std::size_t n, std::size_t stride, double inv_2h,
                         double* out);
}  // namespace avx2
#endif

}  // namespace frontlab::kernels
