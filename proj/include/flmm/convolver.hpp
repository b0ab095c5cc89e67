#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flmm/weights.hpp"

namespace flmm {

enum class Engine { Direct, Talbot, RealLine };

Engine parse_engine(const std::string& s);
const char* engine_name(Engine e);

struct EngineConfig {
    Engine engine = Engine::RealLine;
    int Q = 256;          // real-line nodes
    int talbot_N = 36;    // nodes per Talbot contour
    int B = 5;            // Talbot block base
    int n0 = 50;          // exact local window
    double epsilon = 1e-20;
};

// Streaming evaluator of tau^-alpha sum_{k<=n} omega_{n-k} u_k.
// Samples arrive in order through commit(); lag() is the part of the next
// value that depends on committed samples only.
class Convolver {
public:
    virtual ~Convolver() = default;

    double lag() const { return lag_; }
    double lead() const { return lead_; }
    std::size_t count() const { return count_; }
    virtual void commit(double u) = 0;

    double step(double u) {
        const double v = lag_ + lead_ * u;
        commit(u);
        return v;
    }

protected:
    double lag_ = 0, lead_ = 0;
    std::size_t count_ = 0;
};

class DirectConvolver final : public Convolver {
public:
    // wt must hold at least n_max + 1 weights.
    DirectConvolver(const WeightTable& wt, std::size_t n_max);
    void commit(double u) override;

private:
    double scale_;
    std::size_t cap_;
    std::vector<double> wrev_, u_;
};

// Last n0 + 1 samples, stored twice so any window of <= n0 + 1 is contiguous.
class SampleRing {
public:
    explicit SampleRing(std::size_t cap) : cap_(cap), buf_(2 * cap, 0.0) {}
    void push(double u) {
        const std::size_t p = n_ % cap_;
        buf_[p] = buf_[p + cap_] = u;
        ++n_;
    }
    // Pointer to the oldest of the last len samples.
    const double* tail(std::size_t len) const { return buf_.data() + (n_ - len) % cap_; }
    // Sample with global index k (must be among the last cap).
    double at(std::size_t k) const { return buf_[k % cap_]; }
    std::size_t size() const { return n_; }

private:
    std::size_t cap_, n_ = 0;
    std::vector<double> buf_;
};

std::unique_ptr<Convolver> make_convolver(const GeneratingFunction& gf, const WeightTable& wt,
                                          const EngineConfig& cfg, std::size_t n_max);

// Many independent convolvers sharing weights, one per grid point.
class FieldConvolver {
public:
    virtual ~FieldConvolver() = default;
    std::size_t width() const { return width_; }
    std::size_t count() const { return count_; }
    double lead() const { return lead_; }
    const std::vector<double>& lag() const { return lag_; }
    virtual void commit(const double* u) = 0;

protected:
    std::size_t width_ = 0, count_ = 0;
    double lead_ = 0;
    std::vector<double> lag_;
};

std::unique_ptr<FieldConvolver> make_field_convolver(const GeneratingFunction& gf, const WeightTable& wt,
                                                     const EngineConfig& cfg, std::size_t n_max,
                                                     std::size_t width);

}  // namespace flmm
