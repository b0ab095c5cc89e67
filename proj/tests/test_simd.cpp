#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/simd.hpp"

using namespace flmm;

namespace {

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = U(g);
    return v;
}

std::vector<simd::Isa> vector_isas() {
    std::vector<simd::Isa> r;
    for (auto i : {simd::Isa::Avx2, simd::Isa::Neon})
        if (simd::isa_available(i)) r.push_back(i);
    return r;
}

struct IsaGuard {
    simd::Isa saved = simd::active();
    ~IsaGuard() { simd::set_active(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match plain loops") {
    const auto& K = simd::kernels(simd::Isa::Scalar);
    std::mt19937_64 g(7);
    for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 5UL, 17UL, 64UL}) {
        const auto a = random_vec(g, n, -1, 1), b = random_vec(g, n, -1, 1);
        double ref = 0, mag = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ref += a[i] * b[i];
            mag += std::abs(a[i] * b[i]);
        }
        CHECK(std::abs(K.dot(a.data(), b.data(), n) - ref) <= 1e-15 * (mag + 1));
    }
}

TEST_CASE("vector kernels agree with the scalar reference") {
    const auto& S = simd::kernels(simd::Isa::Scalar);
    const auto isas = vector_isas();
    if (isas.empty()) MESSAGE("no vector ISA available; only the scalar path is exercised");
    std::mt19937_64 g(11);
    for (auto isa : isas) {
        const auto& V = simd::kernels(isa);
        for (std::size_t n = 0; n <= 37; ++n) {
            const auto a = random_vec(g, n, -1, 1), b = random_vec(g, n, -1, 1);
            double mag = 0;
            for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
            CHECK(std::abs(V.dot(a.data(), b.data(), n) - S.dot(a.data(), b.data(), n)) <= 4e-16 * (mag + 1e-300) * 4);

            auto y1 = random_vec(g, n, -1, 1), y2 = y1;
            const auto d = random_vec(g, n, 0, 1), c = random_vec(g, n, -2, 2);
            const double h1 = S.decay_dot(y1.data(), d.data(), c.data(), 0.3, n);
            const double h2 = V.decay_dot(y2.data(), d.data(), c.data(), 0.3, n);
            double hm = 0;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * (std::abs(y1[i]) + 1));
                hm += std::abs(c[i] * y1[i]);
            }
            CHECK(std::abs(h1 - h2) <= 1e-15 * (hm + 1) * 4);

            auto z1 = random_vec(g, n, -1, 1), z2 = z1;
            S.axpy(0.7, a.data(), z1.data(), n);
            V.axpy(0.7, a.data(), z2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) <= 1e-15 * (std::abs(z1[i]) + 1));

            auto w1 = random_vec(g, n, -1, 1), w2 = w1, s1 = random_vec(g, n, -1, 1), s2 = s1;
            S.decay_axpy(w1.data(), 0.9, 1.3, a.data(), s1.data(), n);
            V.decay_axpy(w2.data(), 0.9, 1.3, a.data(), s2.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(w1[i] - w2[i]) <= 1e-15 * (std::abs(w1[i]) + 1));
                CHECK(std::abs(s1[i] - s2[i]) <= 1e-15 * (std::abs(s1[i]) + 1) * 2);
            }
        }
    }
}

TEST_CASE("fast convolver output is independent of the ISA") {
    IsaGuard guard;
    const auto gf = GeneratingFunction::gngf(2);
    const auto wt = convolution_weights(gf, 0.5, 0.1, 0.01, 3000);
    EngineConfig e;
    auto run = [&] {
        auto c = make_convolver(gf, wt, e, 3000);
        std::vector<double> out;
        for (int n = 0; n <= 3000; ++n) out.push_back(c->step(std::sin(0.01 * n) + 1));
        return out;
    };
    simd::set_active(simd::Isa::Scalar);
    const auto ref = run();
    for (auto isa : vector_isas()) {
        simd::set_active(isa);
        const auto v = run();
        for (std::size_t n = 0; n < v.size(); ++n) CHECK(std::abs(v[n] - ref[n]) <= 1e-13 * (1 + std::abs(ref[n])));
    }
}

TEST_CASE("ISA selection") {
    IsaGuard guard;
    CHECK(simd::isa_available(simd::Isa::Scalar));
    CHECK(simd::isa_available(simd::detected()));
    simd::set_active(simd::Isa::Scalar);
    CHECK(simd::active() == simd::Isa::Scalar);
    for (auto i : {simd::Isa::Avx2, simd::Isa::Neon})
        if (!simd::isa_available(i)) CHECK_THROWS_AS(simd::set_active(i), std::invalid_argument);
}
