#include "frontlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace frontlab::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void second_difference(const double* u, std::size_t n, std::size_t stride, double inv_h2,
                       double* out) {
    for (std::size_t k = 0; k < std::min(stride, n); ++k) out[k] = 0.0;
    for (std::size_t k = stride; k + stride < n; ++k)
        out[k] = (u[k - stride] - 2.0 * u[k] + u[k + stride]) * inv_h2;
    for (std::size_t k = n > stride ? n - stride : 0; k < n; ++k) out[k] = 0.0;
}

void centered_difference(const double* u, std::size_t n, std::size_t stride, double inv_2h,
                         double* out) {
    for (std::size_t k = 0; k < std::min(stride, n); ++k) out[k] = 0.0;
    for (std::size_t k = stride; k + stride < n; ++k)
        out[k] = (u[k + stride] - u[k - stride]) * inv_2h;
    for (std::size_t k = n > stride ? n - stride : 0; k < n; ++k) out[k] = 0.0;
}

}  // namespace scalar

namespace {

Backend detect_backend() {
#if defined(FRONTLAB_HAVE_AVX2)
    const char* force = std::getenv("FRONTLAB_KERNELS");
    if (force != nullptr && std::strcmp(force, "scalar") == 0) return Backend::scalar;
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#endif
    return Backend::scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend b = detect_backend();
    return b;
}

const char* backend_name() {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) {
#if defined(FRONTLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) return avx2::dot(a.data(), b.data(), a.size());
#endif
    return scalar::dot(a.data(), b.data(), a.size());
}

double max_abs(std::span<const double> a) {
#if defined(FRONTLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) return avx2::max_abs(a.data(), a.size());
#endif
    return scalar::max_abs(a.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#if defined(FRONTLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::axpy(alpha, x.data(), y.data(), x.size());
        return;
    }
#endif
    scalar::axpy(alpha, x.data(), y.data(), x.size());
}

void second_difference(std::span<const double> u, std::size_t stride, double inv_h2,
                       std::span<double> out) {
#if defined(FRONTLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::second_difference(u.data(), u.size(), stride, inv_h2, out.data());
        return;
    }
#endif
    scalar::second_difference(u.data(), u.size(), stride, inv_h2, out.data());
}

void centered_difference(std::span<const double> u, std::size_t stride, double inv_2h,
                         std::span<double> out) {
#if defined(FRONTLAB_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        avx2::centered_difference(u.data(), u.size(), stride, inv_2h, out.data());
        return;
    }
#endif
    scalar::centered_difference(u.data(), u.size(), stride, inv_2h, out.data());
}

}  // namespace frontlab::kernels
