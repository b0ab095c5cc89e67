#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/weights.hpp"

namespace flmm {

struct Kinetics {
    std::string name;
    std::function<double(double, double)> f1, f2;
    double u_star = 0, v_star = 0;
    double kappa1 = 1, kappa2 = 1;  // default stabilization
    double q_long = 0.5;            // long-wave perturbation wavenumber
};

Kinetics gierer_meinhardt();
Kinetics brusselator();
Kinetics no_reaction();  // f1 = f2 = 0 at (0, 0): plain subdiffusion
Kinetics kinetics_by_name(const std::string& name);

enum class IcType { Random, LongWave, ShortWave };
IcType parse_ic(const std::string& s);
const char* ic_name(IcType t);

struct InitialCondition {
    IcType type = IcType::Random;
    double epsilon = 0.01;
    double q = 0;  // 0: kinetics default (long wave) or 5 (short wave)
    std::uint64_t seed = 1;
    // Overrides type when set: r1 = r2 = shape(x).
    std::function<double(double)> shape;
};

struct RdProblem {
    Kinetics kin = brusselator();
    double alpha1 = 1, alpha2 = 1, d = 1, kappa = 1;
    double kappa1 = -1, kappa2 = -1;  // < 0: kinetics default
    double D = 100;
    int cells = 256;  // D / h
    double tau = 0.01, T = 1;
    InitialCondition ic;
    EngineConfig engine;
    GeneratingFunction gf = GeneratingFunction::gngf(2);
};

// Three-point Laplacian, reflection ghost points at both ends.
std::vector<double> spatial_operator(const std::vector<double>& f, double h);
void spatial_operator(const double* f, double* out, std::size_t n, double h);

// Solve a tridiagonal system (sub a[1..], diag b, super c[..n-2]); throws StepFailure.
void thomas_solve(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
                  std::vector<double>& x);

class RdSolver {
public:
    explicit RdSolver(const RdProblem& p);

    // Advances to the next time level.
    void step();
    std::size_t n() const { return n_; }
    std::size_t steps() const { return N_; }
    double t() const { return static_cast<double>(n_) * p_.tau; }
    const std::vector<double>& u() const { return u_[0]; }
    const std::vector<double>& v() const { return v_[0]; }
    const std::vector<double>& x() const { return x_; }

private:
    void init();
    void solve_field(std::vector<double>* f, FieldConvolver& conv, double coef, double k1,
                     const std::vector<double>& Fm1, const std::vector<double>& Fm2, std::vector<double>& out);

    RdProblem p_;
    std::size_t W_, N_, n_ = 0;
    double h_;
    std::vector<double> x_;
    std::vector<double> u_[3], v_[3];  // levels n, n-1, n-2
    std::vector<double> F1_[2], F2_[2];  // kinetics at n, n-1
    std::unique_ptr<FieldConvolver> cu_, cv_;
    std::vector<double> lap_, a_, b_, c_, rhs_;
};

struct Snapshot {
    double t = 0;
    std::vector<double> u, v;
};

struct FieldHistory {
    std::vector<double> x;
    std::vector<Snapshot> snaps;

    void write_snapshot_csv(std::ostream& os, std::size_t i) const;
    void write_long_csv(std::ostream& os) const;
};

FieldHistory run(const RdProblem& p, std::size_t save_stride);

double spatial_variance(const std::vector<double>& f);
// Index k >= 1 of the cosine mode cos(k pi x / D) with the largest amplitude.
int dominant_mode(const std::vector<double>& f);

}  // namespace flmm
