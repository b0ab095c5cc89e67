#include "flmm/simd.hpp"

namespace flmm::simd::detail {
namespace {

// Four interleaved partial sums so the vector variants see the same association.
double dot(const double* a, const double* b, std::size_t n) {
    double s[4] = {0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
    double r = (s[0] + s[2]) + (s[1] + s[3]);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

double decay_dot(double* y, const double* d, const double* c, double inc, std::size_t q) {
    double s[4] = {0, 0, 0, 0};
    std::size_t j = 0;
    for (; j + 4 <= q; j += 4)
        for (int l = 0; l < 4; ++l) {
            y[j + l] = d[j + l] * (y[j + l] + inc);
            s[l] += c[j + l] * y[j + l];
        }
    double r = (s[0] + s[2]) + (s[1] + s[3]);
    for (; j < q; ++j) {
        y[j] = d[j] * (y[j] + inc);
        r += c[j] * y[j];
    }
    return r;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void decay_axpy(double* y, double d, double c, const double* inc, double* h, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = d * (y[i] + inc[i]);
        h[i] += c * y[i];
    }
}

}  // namespace

const Kernels scalar_kernels{dot, decay_dot, axpy, decay_axpy};

}  // namespace flmm::simd::detail
