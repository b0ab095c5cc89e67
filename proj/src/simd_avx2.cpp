// Built with -mavx2 -mfma; only called after a runtime CPU check.
#include "flmm/simd.hpp"

#include <immintrin.h>

namespace flmm::simd::detail {
namespace {

inline double hsum(__m256d v) {
    // (s0 + s2) + (s1 + s3), matching the scalar reduction
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d p = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(p) + _mm_cvtsd_f64(_mm_unpackhi_pd(p, p));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) s = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s);
    double r = hsum(s);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double decay_dot(double* y, const double* d, const double* c, double inc, std::size_t q) {
    const __m256d vi = _mm256_set1_pd(inc);
    __m256d s = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= q; j += 4) {
        __m256d v = _mm256_mul_pd(_mm256_loadu_pd(d + j), _mm256_add_pd(_mm256_loadu_pd(y + j), vi));
        _mm256_storeu_pd(y + j, v);
        s = _mm256_fmadd_pd(_mm256_loadu_pd(c + j), v, s);
    }
    double r = hsum(s);
    for (; j < q; ++j) {
        y[j] = d[j] * (y[j] + inc);
        r += c[j] * y[j];
    }
    return r;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void decay_axpy(double* y, double d, double c, const double* inc, double* h, std::size_t n) {
    const __m256d vd = _mm256_set1_pd(d), vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_mul_pd(vd, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(inc + i)));
        _mm256_storeu_pd(y + i, v);
        _mm256_storeu_pd(h + i, _mm256_fmadd_pd(vc, v, _mm256_loadu_pd(h + i)));
    }
    for (; i < n; ++i) {
        y[i] = d * (y[i] + inc[i]);
        h[i] += c * y[i];
    }
}

}  // namespace

const Kernels avx2_kernels{dot, decay_dot, axpy, decay_axpy};

}  // namespace flmm::simd::detail
