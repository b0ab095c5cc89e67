#include "flmm/convolver.hpp"

#include <algorithm>
#include <cmath>

#include "flmm/errors.hpp"
#include "flmm/realline.hpp"
#include "flmm/simd.hpp"
#include "flmm/talbot.hpp"

namespace flmm {

Engine parse_engine(const std::string& s) {
    if (s == "direct") return Engine::Direct;
    if (s == "talbot") return Engine::Talbot;
    if (s == "realline") return Engine::RealLine;
    throw ValidationError("unknown engine '" + s + "' (direct, talbot, realline)");
}

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Direct: return "direct";
        case Engine::Talbot: return "talbot";
        default: return "realline";
    }
}

DirectConvolver::DirectConvolver(const WeightTable& wt, std::size_t n_max)
    : scale_(std::pow(wt.tau, -wt.alpha)), cap_(n_max) {
    if (wt.size() < n_max + 1) throw ValidationError("direct: weight table shorter than n_max + 1");
    lead_ = scale_ * wt.weights[0];
    wrev_.assign(wt.weights.begin(), wt.weights.begin() + static_cast<long>(n_max) + 1);
    std::reverse(wrev_.begin(), wrev_.end());
    u_.reserve(n_max + 1);
}

void DirectConvolver::commit(double u) {
    if (count_ > cap_) throw SequenceError("direct convolver: horizon exceeded");
    u_.push_back(u);
    ++count_;
    lag_ = count_ <= cap_ ? scale_ * simd::kernels().dot(wrev_.data() + (cap_ - count_), u_.data(), count_) : NAN;
}

std::unique_ptr<Convolver> make_convolver(const GeneratingFunction& gf, const WeightTable& wt,
                                          const EngineConfig& cfg, std::size_t n_max) {
    switch (cfg.engine) {
        case Engine::Direct: return std::make_unique<DirectConvolver>(wt, n_max);
        case Engine::Talbot:
            return std::make_unique<TalbotConvolver>(gf, wt, cfg.talbot_N, cfg.B, cfg.n0, n_max);
        case Engine::RealLine:
            return std::make_unique<RealLineConvolver>(wt, rule_for(gf, wt, cfg, n_max), cfg.n0);
    }
    return nullptr;
}

namespace {

class DirectField final : public FieldConvolver {
public:
    DirectField(const WeightTable& wt, std::size_t n_max, std::size_t width)
        : scale_(std::pow(wt.tau, -wt.alpha)), cap_(n_max), w_(wt.weights) {
        if (wt.size() < n_max + 1) throw ValidationError("direct: weight table shorter than n_max + 1");
        width_ = width;
        lead_ = scale_ * wt.weights[0];
        lag_.assign(width, 0.0);
    }

    void commit(const double* u) override {
        if (count_ > cap_) throw SequenceError("direct field convolver: horizon exceeded");
        rows_.insert(rows_.end(), u, u + width_);
        ++count_;
        std::fill(lag_.begin(), lag_.end(), 0.0);
        if (count_ > cap_) return;
        const auto& K = simd::kernels();
        for (std::size_t k = 0; k < count_; ++k) K.axpy(w_[count_ - k], rows_.data() + k * width_, lag_.data(), width_);
        for (auto& v : lag_) v *= scale_;
    }

private:
    double scale_;
    std::size_t cap_;
    std::vector<double> w_, rows_;
};

class RealLineField final : public FieldConvolver {
public:
    RealLineField(const WeightTable& wt, const RealLineRule& rule, int n0, std::size_t width)
        : n0_(static_cast<std::size_t>(n0)), tau_(wt.tau), scale_(std::pow(wt.tau, -wt.alpha)),
          w_(wt.weights.begin(), wt.weights.begin() + n0 + 1), ring_((n0_ + 1) * width) {
        width_ = width;
        lead_ = scale_ * wt.weights[0];
        lag_.assign(width, 0.0);
        decay_ = history_decay(rule, wt.sigma, tau_);
        for (std::size_t j = 0; j < rule.w.size(); ++j)
            c_.push_back(rule.w[j] * std::exp(-n0 * tau_ * wt.sigma - (n0 + 1.0) * std::log1p(rule.lambda[j] * tau_)));
        Y_.assign(decay_.size() * width, 0.0);
        inc_.assign(width, 0.0);
        hist_.assign(width, 0.0);
    }

    void commit(const double* u) override {
        const std::size_t R = n0_ + 1;
        std::copy(u, u + width_, ring_.begin() + static_cast<long>((count_ % R) * width_));
        ++count_;
        const auto& K = simd::kernels();
        std::fill(lag_.begin(), lag_.end(), 0.0);
        const std::size_t len = std::min(count_, n0_);
        for (std::size_t j = len; j >= 1; --j)  // oldest first
            K.axpy(w_[j], row(count_ - j), lag_.data(), width_);
        for (auto& v : lag_) v *= scale_;
        if (count_ > n0_) {
            const double* old = row(count_ - n0_ - 1);
            for (std::size_t i = 0; i < width_; ++i) inc_[i] = tau_ * old[i];
            std::fill(hist_.begin(), hist_.end(), 0.0);
            for (std::size_t j = 0; j < decay_.size(); ++j)
                K.decay_axpy(Y_.data() + j * width_, decay_[j], c_[j], inc_.data(), hist_.data(), width_);
            for (std::size_t i = 0; i < width_; ++i) lag_[i] += hist_[i];
        }
    }

private:
    const double* row(std::size_t k) const { return ring_.data() + (k % (n0_ + 1)) * width_; }

    std::size_t n0_;
    double tau_, scale_;
    std::vector<double> w_, ring_, decay_, c_, Y_, inc_, hist_;
};

}  // namespace

std::unique_ptr<FieldConvolver> make_field_convolver(const GeneratingFunction& gf, const WeightTable& wt,
                                                     const EngineConfig& cfg, std::size_t n_max,
                                                     std::size_t width) {
    switch (cfg.engine) {
        case Engine::Direct: return std::make_unique<DirectField>(wt, n_max, width);
        case Engine::RealLine:
            return std::make_unique<RealLineField>(wt, rule_for(gf, wt, cfg, n_max), cfg.n0, width);
        case Engine::Talbot: break;
    }
    throw ValidationError("field convolution supports the direct and realline engines");
}

}  // namespace flmm
