#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/weights.hpp"

namespace flmm {

using cplx = std::complex<double>;

struct TalbotContour {
    int N = 0;
    double T = 0;
    std::vector<cplx> lambda;
    // dz/dtheta / (2N): the 1/(2 pi i) and the midpoint spacing are folded in,
    // so an integral over the contour is 2 Im(sum_j w_j f(lambda_j)).
    std::vector<cplx> w;
};

TalbotContour talbot_nodes(int N, double T);

struct TalbotSchedule {
    int B = 0, n0 = 0;
    long n = 0;
    int L = 0;
    std::vector<long> b;  // b[0..L]
    std::vector<long> q;  // q[l] = b[l] / B^l, l = 1..L (q[0] unused)
};

TalbotSchedule level_schedule(long n, int B, int n0);

// T_l = (2 B^l - 2 + n0) tau.
double level_time(int level, int B, int n0, double tau);
// Smallest level whose contour time covers weight index m (m > n0).
int level_for_index(long m, int B, int n0);

// F_omega(lambda) = (tau lambda)^-alpha omega(1 - tau lambda), principal branch.
cplx talbot_F(const GeneratingFunction& gf, double alpha, double tau, cplx lambda);

double fast_weight_talbot(long n, const TalbotContour& c, const GeneratingFunction& gf, double alpha,
                          double sigma, double tau);

// Rows n,level,approx,exact,relerr for n0 < n <= n_max.
void write_talbot_diagnostics(std::ostream& os, const GeneratingFunction& gf, double alpha, double sigma,
                              double tau, int N, int B, int n0, long n_max);

class TalbotConvolver final : public Convolver {
public:
    TalbotConvolver(const GeneratingFunction& gf, const WeightTable& wt, int N, int B, int n0, std::size_t n_max);
    void commit(double u) override;

    int levels() const { return static_cast<int>(levels_.size()); }
    // Complex numbers currently held in block states.
    std::size_t state_size() const;

private:
    struct Level {
        long unit = 1;               // B^(l-1)
        std::vector<cplx> coef;      // w_j lambda_j^alpha F_j / (1 - tau lambda_j)
        std::vector<cplx> logd;      // log(e^{-sigma tau} / (1 - tau lambda_j))
        std::vector<cplx> d;
        std::vector<cplx> cur;       // state over the unit being filled
        long cur_fill = 0;
        std::vector<std::vector<cplx>> units;  // completed units, first_unit onward
        long first_unit = 0;
        long a = -1, e = -1;         // cached block [a, e)
        std::vector<cplx> block;     // state over [a, e)
    };

    double local_lag() const;
    double level_value(Level& lv, long a, long e, long n);

    int N_, B_, n0_;
    std::size_t n_max_;
    double tau_, scale_;
    std::vector<double> wrev_;  // omega_{n0}..omega_1
    SampleRing ring_;
    std::vector<Level> levels_;
};

}  // namespace flmm
