#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "flmm/convolver.hpp"
#include "flmm/weights.hpp"

namespace flmm {

struct OperatorConfig {
    GeneratingFunction gf = GeneratingFunction::gngf(2);
    double alpha = 0.5, sigma = 0, tau = 0.01;
    int m = 0;
    std::vector<double> gamma;  // empty: gamma_k = k alpha
    EngineConfig engine;
};

// Corrected operator
//   tau^-alpha sum_k omega_{n-k} u_k + tau^-alpha sum_{k<=m} w_{n,k} (u_k - u_0) - b_n u_0.
class FlmmOperator {
public:
    FlmmOperator(const OperatorConfig& cfg, std::size_t n_max, double u0);

    std::size_t count() const { return conv_->count(); }
    // Coefficient of u_n in apply(n, .).
    double lead(std::size_t n) const;
    // apply(n, u) - lead(n) u; needs samples 0..n-1 committed.
    double known(std::size_t n) const;
    double apply(std::size_t n, double u);
    void commit(double u);

    const WeightTable& table() const { return wt_; }
    const StartingWeights& starting() const { return sw_; }
    const Convolver& convolver() const { return *conv_; }

private:
    OperatorConfig cfg_;
    double u0_, scale_;
    WeightTable wt_;
    StartingWeights sw_;
    std::unique_ptr<Convolver> conv_;
    std::vector<double> first_;  // u_1..u_m once committed
};

}  // namespace flmm
