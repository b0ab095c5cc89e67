#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "flmm/errors.hpp"
#include "flmm/fode.hpp"
#include "oracles.hpp"

using namespace flmm;

TEST_CASE("mittag_leffler") {
    CHECK(mittag_leffler(0.5, 0.0) == 1.0);
    for (double t : {0.1, 1.0, 7.0, 30.0}) CHECK(mittag_leffler(1.0, -t) == doctest::Approx(std::exp(-t)).epsilon(1e-13));
    CHECK(mittag_leffler(0.5, -1.0) == doctest::Approx(0.4275836).epsilon(1e-7));
    for (double x : {0.01, 0.5, 0.999, 1.001, 2.0, 3.1623, 5.0, 10.0})
        CHECK(mittag_leffler(0.5, -x) == doctest::Approx(oracle::ml_half(x)).epsilon(1e-12));
    // continuity across the series / integral switch
    for (double a : {0.3, 0.5, 0.8}) {
        const double l = mittag_leffler(a, -1.0 + 1e-12), r = mittag_leffler(a, -1.0 - 1e-12);
        CHECK(std::abs(l - r) <= 1e-10);
    }
    CHECK_THROWS_AS(mittag_leffler(1.5, -1.0), UnsupportedOrder);
    CHECK_THROWS_AS(mittag_leffler(0.0, -1.0), UnsupportedOrder);
}

TEST_CASE("alpha = 1, f = 0 is BDF2 for u' = -u") {
    // m = 1 makes the first step exact on t, otherwise the start is O(tau)
    double prev = 0;
    for (double tau : {0.02, 0.01, 0.005}) {
        auto p = case_one(1.0, 0.0, tau, 2.0, 1);
        p.engine.engine = Engine::Direct;
        const auto tr = solve(p);
        double err = 0;
        for (std::size_t n = 2; n < tr.t.size(); ++n) err = std::max(err, std::abs(tr.u[n] - std::exp(-tr.t[n])));
        if (prev > 0) CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("Case I, sigma = 0, m = 3 reference error") {
    double e8 = 0, e9 = 0;
    for (int lv : {8, 9}) {
        auto p = case_one(0.5, 0, std::ldexp(1.0, -lv), 10, 3);
        p.startup = Startup::Exact;
        const auto tr = solve(p);
        (lv == 8 ? e8 : e9) = trajectory_error(tr, p.exact).max_err;
    }
    CHECK(e9 == doctest::Approx(2.1679e-7).epsilon(0.05));
    CHECK(std::log2(e8 / e9) == doctest::Approx(1.7353).epsilon(0.03));
}

TEST_CASE("Case I, error at t = 10, m = 1") {
    // reference block headed sigma = 0.5 is generated by sigma = 0.6
    double e8 = 0, e9 = 0;
    for (int lv : {8, 9}) {
        auto p = case_one(0.5, 0.6, std::ldexp(1.0, -lv), 10, 1);
        p.startup = Startup::Exact;
        (lv == 8 ? e8 : e9) = trajectory_error(solve(p), p.exact).end_err;
    }
    CHECK(e9 == doctest::Approx(2.5521e-7).epsilon(0.05));
    CHECK(std::log2(e8 / e9) == doctest::Approx(1.9866).epsilon(0.03));
}

TEST_CASE("fine-step startup converges") {
    double prev = 0;
    for (int lv : {5, 6, 7}) {
        auto p = case_one(0.5, 0.5, std::ldexp(1.0, -lv), 4, 2);
        const double e = trajectory_error(solve(p), p.exact).max_err;
        if (prev > 0) CHECK(prev / e > 2.5);
        prev = e;
    }
}

TEST_CASE("Case II: engine independence and boundedness") {
    for (double sigma : {0.0, 0.5, 1.0}) {
        auto p = case_two(0.5, sigma, 1.0 / 64, 20, 1);
        p.engine.engine = Engine::Direct;
        const auto d = solve(p);
        p.engine.engine = Engine::RealLine;
        const auto f = solve(p);
        double dev = 0;
        for (std::size_t n = 0; n < d.u.size(); ++n) {
            dev = std::max(dev, std::abs(d.u[n] - f.u[n]));
            CHECK(d.u[n] >= 0.0);
            CHECK(d.u[n] <= 1.05);
        }
        CHECK(dev <= 1e-8);
        if (sigma == 0) {
            for (std::size_t n = 2; n < d.u.size(); ++n) CHECK(d.u[n] <= d.u[n - 1] + 1e-12);
        } else {
            // tempering turns a constant into sigma^alpha (c - 1): u^3 = sigma^alpha (1 - u)
            const double s = std::pow(sigma, 0.5);
            double c = 0.5;
            for (int i = 0; i < 60; ++i) c -= (c * c * c - s * (1 - c)) / (3 * c * c + s);
            CHECK(std::abs(d.u.back() - c) <= 1e-3);
        }
    }
}

TEST_CASE("solver diagnostics and errors") {
    auto p = case_two(0.5, 0, 0.1, 1, 0);
    const auto tr = solve(p);
    CHECK(tr.u.size() == 11);
    for (std::size_t n = 1; n < tr.u.size(); ++n) CHECK(tr.iters[n] >= 1);
    std::ostringstream os;
    tr.write_csv(os);
    CHECK(os.str().rfind("t,u,newton_iters\n0,1,0\n", 0) == 0);

    auto bad = p;
    bad.f = [](double, double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(solve(bad), NonlinearSolveFailure);

    auto v = p;
    v.alpha = 1.2;
    CHECK_THROWS_AS(solve(v), ValidationError);
    v = p;
    v.T = 0.25;
    CHECK_THROWS_AS(solve(v), ValidationError);
    v = p;
    v.m = 1;
    v.startup = Startup::Exact;
    CHECK_THROWS_AS(solve(v), ValidationError);  // no reference solution

    auto fd = case_two(0.5, 0, 0.1, 1, 0);
    fd.dfdu = nullptr;
    const auto t2 = solve(fd);
    for (std::size_t n = 0; n < t2.u.size(); ++n) CHECK(t2.u[n] == doctest::Approx(tr.u[n]).epsilon(1e-12));
}
