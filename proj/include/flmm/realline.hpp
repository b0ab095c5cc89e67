#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/weights.hpp"

namespace flmm {

struct PhiContext {
    GeneratingFunction gf;
    double alpha = 0, tau = 0;
    std::vector<double> g;  // F_omega(-e^x) = sum_k g_k (-tau e^x)^k
    double pref = 0;        // -sin(alpha pi) / pi
};

// Throws UnsupportedForMethodII unless gf is GNGF-p or FBDF-1 and alpha is a
// non-integer > -1.
PhiContext make_phi_context(const GeneratingFunction& gf, double alpha, double tau);

double phi(double x, const PhiContext& ctx);
double phi_n(double x, long n, const PhiContext& ctx);
// log of an upper envelope of |phi_n| (|g_k| in place of g_k), used for the window search.
double log_envelope(double x, long n, const PhiContext& ctx);

std::pair<double, double> support_window(const PhiContext& ctx, long n0, long nT, double epsilon = 1e-20);

struct RealLineRule {
    int Q = 0;
    double x_min = 0, x_max = 0, dx = 0, epsilon = 0;
    std::vector<double> x, lambda, w;

    void write_csv(std::ostream& os) const;
};

RealLineRule build_rule(const PhiContext& ctx, long n0, long nT, int Q, double epsilon = 1e-20);

// tau^{1+alpha} e^{-n sigma tau} sum_j w_j (1 + lambda_j tau)^{-1-n}
double realline_weight(const RealLineRule& rule, double alpha, double sigma, double tau, long n);

struct HistoryState {
    std::vector<double> y;  // y_n^{(j)}
    std::size_t n_processed = 0;
};

// Per-node decay e^{-sigma tau} / (1 + lambda_j tau).
std::vector<double> history_decay(const RealLineRule& rule, double sigma, double tau);
void history_step(HistoryState& st, const std::vector<double>& decay, double tau, double u_prev);

class RealLineConvolver final : public Convolver {
public:
    // The rule may be empty (integer order with finite weight support <= n0).
    RealLineConvolver(const WeightTable& wt, RealLineRule rule, int n0);
    void commit(double u) override;

    const RealLineRule& rule() const { return rule_; }
    const HistoryState& state() const { return st_; }
    std::uint64_t madds() const { return madds_; }

private:
    int n0_;
    double tau_, scale_, hist_ = 0;
    RealLineRule rule_;
    std::vector<double> wrev_, decay_, c_;
    HistoryState st_;
    SampleRing ring_;
    std::uint64_t madds_ = 0;
};

// Rule for a convolver over horizon n_max, or an empty rule when the weights
// vanish beyond n0 (integer order, polynomial generating function).
RealLineRule rule_for(const GeneratingFunction& gf, const WeightTable& wt, const EngineConfig& cfg,
                      std::size_t n_max);

}  // namespace flmm
