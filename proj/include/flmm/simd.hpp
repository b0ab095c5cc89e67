#pragma once

#include <cstddef>

// Inner kernels of the convolvers. A scalar reference version is always built;
// AVX2 (x86-64) and NEON (aarch64) variants are selected at runtime.
namespace flmm::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Best available, unless FLMM_SIMD=scalar|avx2|neon is set.
Isa detected();
Isa active();
// Throws std::invalid_argument if isa is not available here.
void set_active(Isa isa);

struct Kernels {
    // sum a[i] b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[j] = d[j] (y[j] + inc); returns sum c[j] y[j] (updated y)
    double (*decay_dot)(double* y, const double* d, const double* c, double inc, std::size_t q);
    // y[i] += a x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y[i] = d (y[i] + inc[i]); h[i] += c y[i]
    void (*decay_axpy)(double* y, double d, double c, const double* inc, double* h, std::size_t n);
};

const Kernels& kernels(Isa isa);
inline const Kernels& kernels() { return kernels(active()); }

namespace detail {
extern const Kernels scalar_kernels;
#if defined(FLMM_HAVE_AVX2)
extern const Kernels avx2_kernels;
#endif
#if defined(FLMM_HAVE_NEON)
extern const Kernels neon_kernels;
#endif
}  // namespace detail

}  // namespace flmm::simd
