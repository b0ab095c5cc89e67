#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/weights.hpp"

namespace flmm {

// E_alpha(z) for z <= 0, 0 < alpha <= 1.
double mittag_leffler(double alpha, double z);

enum class Startup {
    FineStep,  // solve to t_m with step tau / 2^fine_log2 and min(m,1) corrections
    Exact,     // U_1..U_m from FodeProblem::exact
    Implicit   // m <= 1 only: U_1 solved with its own correction term
};

// D^{sigma,alpha}(u - u0) = -u + f(u, t)
struct FodeProblem {
    double alpha = 0.5, sigma = 0, u0 = 1, T = 10, tau = 1.0 / 512;
    std::function<double(double, double)> f;
    std::function<double(double, double)> dfdu;  // optional
    int m = 0;
    std::vector<double> gamma;  // empty: k alpha
    GeneratingFunction gf = GeneratingFunction::gngf(2);
    EngineConfig engine;
    Startup startup = Startup::FineStep;
    std::function<double(double)> exact;  // reference solution, if known
    int fine_log2 = 7;
};

struct Trajectory {
    std::vector<double> t, u, residual;
    std::vector<int> iters;

    void write_csv(std::ostream& os) const;
};

Trajectory solve(const FodeProblem& p);

// f = 0 for sigma = 0. For sigma > 0 the forcing
//   -u0 e^{-sigma t} sum_{i>=1} sigma^i t^{i-alpha} / Gamma(i+1-alpha)
// makes u = u0 e^{-sigma t} E_alpha(-t^alpha) the exact solution.
FodeProblem case_one(double alpha, double sigma, double tau, double T, int m);
// f = u (1 - u^2), u0 = 1.
FodeProblem case_two(double alpha, double sigma, double tau, double T, int m);

struct ErrorSummary {
    double max_err = 0, end_err = 0;
};

ErrorSummary trajectory_error(const Trajectory& tr, const std::function<double(double)>& exact);

}  // namespace flmm
