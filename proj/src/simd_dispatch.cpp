#include "flmm/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flmm::simd {

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
        default: return "scalar";
    }
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(FLMM_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(FLMM_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detected() {
    if (const char* env = std::getenv("FLMM_SIMD")) {
        std::string s(env);
        if (s == "scalar") return Isa::Scalar;
        if (s == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
        if (s == "neon" && isa_available(Isa::Neon)) return Isa::Neon;
    }
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

namespace {
std::atomic<int>& current() {
    static std::atomic<int> isa{static_cast<int>(detected())};
    return isa;
}
}  // namespace

Isa active() { return static_cast<Isa>(current().load(std::memory_order_relaxed)); }

void set_active(Isa isa) {
    if (!isa_available(isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
    current().store(static_cast<int>(isa), std::memory_order_relaxed);
}

const Kernels& kernels(Isa isa) {
    switch (isa) {
#if defined(FLMM_HAVE_AVX2)
        case Isa::Avx2: return detail::avx2_kernels;
#endif
#if defined(FLMM_HAVE_NEON)
        case Isa::Neon: return detail::neon_kernels;
#endif
        default: return detail::scalar_kernels;
    }
}

}  // namespace flmm::simd
