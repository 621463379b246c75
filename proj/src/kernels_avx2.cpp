#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace frontlab::kernels::avx2 {

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    double buf[4];
    _mm256_storeu_pd(buf, acc);
    double s = (buf[0] + buf[2]) + (buf[1] + buf[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const double* a, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i)));
    double buf[4];
    _mm256_storeu_pd(buf, m);
    double r = std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
    return r;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void second_difference(const double* u, std::size_t n, std::size_t stride, double inv_h2,
                       double* out) {
    for (std::size_t k = 0; k < std::min(stride, n); ++k) out[k] = 0.0;
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d s = _mm256_set1_pd(inv_h2);
    std::size_t k = stride;
    if (n >= stride) {
        const std::size_t end = n - stride;
        for (; k + 4 <= end; k += 4) {
            const __m256d lo = _mm256_loadu_pd(u + k - stride);
            const __m256d mi = _mm256_loadu_pd(u + k);
            const __m256d hi = _mm256_loadu_pd(u + k + stride);
            _mm256_storeu_pd(out + k,
                             _mm256_mul_pd(_mm256_fnmadd_pd(two, mi, _mm256_add_pd(lo, hi)), s));
        }
        for (; k < end; ++k) out[k] = (u[k - stride] - 2.0 * u[k] + u[k + stride]) * inv_h2;
    }
    for (std::size_t j = n > stride ? n - stride : 0; j < n; ++j) out[j] = 0.0;
}

void centered_difference(const double* u, std::size_t n, std::size_t stride, double inv_2h,
                         double* out) {
    for (std::size_t k = 0; k < std::min(stride, n); ++k) out[k] = 0.0;
    const __m256d s = _mm256_set1_pd(inv_2h);
    std::size_t k = stride;
    if (n >= stride) {
        const std::size_t end = n - stride;
        for (; k + 4 <= end; k += 4) {
            const __m256d lo = _mm256_loadu_pd(u + k - stride);
            const __m256d hi = _mm256_loadu_pd(u + k + stride);
            _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_sub_pd(hi, lo), s));
        }
        for (; k < end; ++k) out[k] = (u[k + stride] - u[k - stride]) * inv_2h;
    }
    for (std::size_t j = n > stride ? n - stride : 0; j < n; ++j) out[j] = 0.0;
}

}  // namespace frontlab::kernels::avx2
