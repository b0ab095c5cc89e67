#include "flmm/simd.hpp"

#include <arm_neon.h>

namespace flmm::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t s02 = vdupq_n_f64(0), s13 = vdupq_n_f64(0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2x2_t va = vld2q_f64(a + i), vb = vld2q_f64(b + i);
        s02 = vfmaq_f64(s02, va.val[0], vb.val[0]);
        s13 = vfmaq_f64(s13, va.val[1], vb.val[1]);
    }
    double r = vaddvq_f64(s02) + vaddvq_f64(s13);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double decay_dot(double* y, const double* d, const double* c, double inc, std::size_t q) {
    const float64x2_t vi = vdupq_n_f64(inc);
    float64x2_t s01 = vdupq_n_f64(0), s23 = vdupq_n_f64(0);
    std::size_t j = 0;
    for (; j + 4 <= q; j += 4) {
        float64x2_t v0 = vmulq_f64(vld1q_f64(d + j), vaddq_f64(vld1q_f64(y + j), vi));
        float64x2_t v1 = vmulq_f64(vld1q_f64(d + j + 2), vaddq_f64(vld1q_f64(y + j + 2), vi));
        vst1q_f64(y + j, v0);
        vst1q_f64(y + j + 2, v1);
        s01 = vfmaq_f64(s01, vld1q_f64(c + j), v0);
        s23 = vfmaq_f64(s23, vld1q_f64(c + j + 2), v1);
    }
    float64x2_t s = vaddq_f64(s01, s23);
    double r = vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
    for (; j < q; ++j) {
        y[j] = d[j] * (y[j] + inc);
        r += c[j] * y[j];
    }
    return r;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void decay_axpy(double* y, double d, double c, const double* inc, double* h, std::size_t n) {
    const float64x2_t vd = vdupq_n_f64(d), vc = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vmulq_f64(vd, vaddq_f64(vld1q_f64(y + i), vld1q_f64(inc + i)));
        vst1q_f64(y + i, v);
        vst1q_f64(h + i, vfmaq_f64(vld1q_f64(h + i), vc, v));
    }
    for (; i < n; ++i) {
        y[i] = d * (y[i] + inc[i]);
        h[i] += c * y[i];
    }
}

}  // namespace

const Kernels neon_kernels{dot, decay_dot, axpy, decay_axpy};

}  // namespace flmm::simd::detail
