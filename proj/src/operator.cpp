#include "flmm/operator.hpp"

#include <algorithm>
#include <cmath>

#include "flmm/errors.hpp"

namespace flmm {

FlmmOperator::FlmmOperator(const OperatorConfig& cfg, std::size_t n_max, double u0)
    : cfg_(cfg), u0_(u0), scale_(std::pow(cfg.tau, -cfg.alpha)) {
    if (cfg.m < 0) throw ValidationError("m must be >= 0");
    if (cfg_.gamma.empty()) cfg_.gamma = default_gamma(cfg.alpha, cfg.m);
    if (static_cast<int>(cfg_.gamma.size()) != cfg.m) throw ValidationError("gamma list length must equal m");
    const std::size_t len = std::max<std::size_t>(n_max, static_cast<std::size_t>(cfg.engine.n0) + 1);
    wt_ = convolution_weights(cfg.gf, cfg.alpha, cfg.sigma, cfg.tau, len);
    sw_ = starting_weight_table(wt_, cfg_.gamma, n_max);
    conv_ = make_convolver(cfg.gf, wt_, cfg.engine, n_max);
}

double FlmmOperator::lead(std::size_t n) const {
    double c = conv_->lead();
    if (n >= 1 && n <= static_cast<std::size_t>(cfg_.m)) c += scale_ * sw_.row(n)[n - 1];
    return c;
}

double FlmmOperator::known(std::size_t n) const {
    if (n != conv_->count()) throw SequenceError("operator: sample " + std::to_string(n) + " out of order");
    double corr = 0;
    if (n >= 1 && cfg_.m > 0) {
        if (n < static_cast<std::size_t>(cfg_.m))
            throw SequenceError("operator: correction samples u_1..u_m not yet available at n = " + std::to_string(n));
        const double* w = sw_.row(n);
        for (std::size_t k = 1; k <= static_cast<std::size_t>(cfg_.m) && k < n; ++k) corr += w[k - 1] * (first_[k - 1] - u0_);
        if (n <= static_cast<std::size_t>(cfg_.m)) corr -= w[n - 1] * u0_;  // u_n itself goes to lead()
        corr *= scale_;
    }
    return conv_->lag() + corr - wt_.cumsum[n] * u0_;
}

double FlmmOperator::apply(std::size_t n, double u) {
    const double v = known(n) + lead(n) * u;
    commit(u);
    return v;
}

void FlmmOperator::commit(double u) {
    const std::size_t k = conv_->count();
    if (k >= 1 && k <= static_cast<std::size_t>(cfg_.m)) first_.push_back(u);
    conv_->commit(u);
}

}  // namespace flmm
