#include "flmm/realline.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "flmm/errors.hpp"
#include "flmm/simd.hpp"

namespace flmm {

PhiContext make_phi_context(const GeneratingFunction& gf, double alpha, double tau) {
    if (!(alpha > -1.0)) throw UnsupportedForMethodII("method II needs alpha > -1 (phi does not decay as x -> -inf)");
    if (alpha == std::round(alpha)) throw UnsupportedForMethodII("phi vanishes identically for integer alpha");
    PhiContext c;
    c.gf = gf;
    c.alpha = alpha;
    c.tau = tau;
    c.pref = -std::sin(alpha * std::numbers::pi) / std::numbers::pi;
    if (gf.kind == GeneratingFunction::Kind::GNGF)
        c.g = gngf_coeffs(alpha, gf.p);
    else if (gf.kind == GeneratingFunction::Kind::FBDF && gf.p == 1)
        c.g = {1.0};
    else
        throw UnsupportedForMethodII(gf.name() + ": F_omega(-e^x) is not real-analytic on the integration ray");
    return c;
}

namespace {
double F_real(double x, const PhiContext& c) {
    const double s = -c.tau * std::exp(x);
    double r = 0;
    for (auto it = c.g.rbegin(); it != c.g.rend(); ++it) r = r * s + *it;
    return r;
}
}  // namespace

double phi(double x, const PhiContext& c) { return c.pref * std::exp((1.0 + c.alpha) * x) * F_real(x, c); }

double phi_n(double x, long n, const PhiContext& c) {
    return c.pref * F_real(x, c) *
           std::exp((1.0 + c.alpha) * x - static_cast<double>(1 + n) * std::log1p(c.tau * std::exp(x)));
}

double log_envelope(double x, long n, const PhiContext& c) {
    const double s = c.tau * std::exp(x);
    double r = 0;
    for (auto it = c.g.rbegin(); it != c.g.rend(); ++it) r = r * s + std::abs(*it);
    return std::log(std::abs(c.pref)) + (1.0 + c.alpha) * x + std::log(r) - static_cast<double>(1 + n) * std::log1p(s);
}

std::pair<double, double> support_window(const PhiContext& c, long n0, long nT, double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) throw ValidationError("support_window: epsilon must be in (0,1)");
    if (n0 > nT) throw ValidationError("support_window: n0 > nT");
    double lo = INFINITY, hi = -INFINITY;
    for (long n : {n0, nT}) {
        auto f = [&](double x) { return log_envelope(x, n, c); };
        // coarse bracket around the asymptotic peak, then golden section
        const double xg = std::log((1.0 + c.alpha) / (c.tau * std::max(1.0, static_cast<double>(n) - c.alpha)));
        double best = xg, fbest = f(xg);
        for (double x = xg - 40; x <= xg + 40; x += 0.25)
            if (const double v = f(x); v > fbest) {
                fbest = v;
                best = x;
            }
        const double gr = (std::sqrt(5.0) - 1) / 2;
        double a = best - 0.25, b = best + 0.25;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a), f1 = f(x1), f2 = f(x2);
        while (b - a > 1e-9) {
            if (f1 > f2) {
                b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = f(x1);
            } else {
                a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = f(x2);
            }
        }
        const double xs = 0.5 * (a + b);
        const double target = std::max(f(xs), fbest) + std::log(epsilon);
        for (double dir : {-1.0, 1.0}) {
            double inside = xs, step = 1.0, outside = xs + dir * step;
            while (f(outside) >= target) {
                inside = outside;
                step *= 2;
                outside = xs + dir * step;
                if (step > 1e6) throw UnsupportedForMethodII("support_window: phi_n does not decay");
            }
            while (std::abs(outside - inside) > 1e-3) {
                const double mid = 0.5 * (inside + outside);
                (f(mid) >= target ? inside : outside) = mid;
            }
            if (dir < 0) lo = std::min(lo, outside);
            else hi = std::max(hi, outside);
        }
    }
    return {lo, hi};
}

RealLineRule build_rule(const PhiContext& ctx, long n0, long nT, int Q, double epsilon) {
    if (Q < 2) throw ValidationError("build_rule: Q must be >= 2");
    const auto [lo, hi] = support_window(ctx, n0, nT, epsilon);
    RealLineRule r;
    r.Q = Q;
    r.x_min = lo;
    r.x_max = hi;
    r.epsilon = epsilon;
    r.dx = (hi - lo) / (Q - 1);
    for (int j = 0; j < Q; ++j) {
        const double x = lo + j * r.dx;
        r.x.push_back(x);
        r.lambda.push_back(std::exp(x));
        r.w.push_back(r.dx * phi(x, ctx));
    }
    return r;
}

void RealLineRule::write_csv(std::ostream& os) const {
    os << "j,x,lambda,w\n";
    for (int j = 0; j < Q; ++j) {
        const auto i = static_cast<std::size_t>(j);
        os << j << ',' << format_double(x[i]) << ',' << format_double(lambda[i]) << ',' << format_double(w[i]) << '\n';
    }
}

double realline_weight(const RealLineRule& rule, double alpha, double sigma, double tau, long n) {
    double s = 0;
    for (std::size_t j = 0; j < rule.w.size(); ++j)
        s += rule.w[j] * std::exp(-static_cast<double>(1 + n) * std::log1p(rule.lambda[j] * tau));
    return std::pow(tau, 1.0 + alpha) * std::exp(-static_cast<double>(n) * sigma * tau) * s;
}

std::vector<double> history_decay(const RealLineRule& rule, double sigma, double tau) {
    std::vector<double> d(rule.lambda.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = std::exp(-sigma * tau) / (1.0 + rule.lambda[j] * tau);
    return d;
}

void history_step(HistoryState& st, const std::vector<double>& decay, double tau, double u_prev) {
    if (st.y.size() != decay.size()) st.y.assign(decay.size(), 0.0);
    for (std::size_t j = 0; j < decay.size(); ++j) st.y[j] = decay[j] * (st.y[j] + tau * u_prev);
    ++st.n_processed;
}

RealLineConvolver::RealLineConvolver(const WeightTable& wt, RealLineRule rule, int n0)
    : n0_(n0), tau_(wt.tau), scale_(std::pow(wt.tau, -wt.alpha)), rule_(std::move(rule)),
      ring_(static_cast<std::size_t>(n0) + 1) {
    if (n0 < 1) throw ValidationError("realline: n0 must be >= 1");
    if (wt.size() < static_cast<std::size_t>(n0) + 1) throw ValidationError("realline: weight table shorter than n0 + 1");
    lead_ = scale_ * wt.weights[0];
    for (int j = n0; j >= 1; --j) wrev_.push_back(wt.weights[static_cast<std::size_t>(j)]);
    decay_ = history_decay(rule_, wt.sigma, tau_);
    for (std::size_t j = 0; j < rule_.w.size(); ++j)
        c_.push_back(rule_.w[j] * std::exp(-n0 * tau_ * wt.sigma - (n0 + 1.0) * std::log1p(rule_.lambda[j] * tau_)));
    st_.y.assign(decay_.size(), 0.0);
}

void RealLineConvolver::commit(double u) {
    ring_.push(u);
    ++count_;
    const auto& K = simd::kernels();
    const std::size_t n0 = static_cast<std::size_t>(n0_);
    if (count_ > n0) {
        const double old = ring_.at(count_ - n0 - 1);
        hist_ = K.decay_dot(st_.y.data(), decay_.data(), c_.data(), tau_ * old, st_.y.size());
        ++st_.n_processed;
        madds_ += st_.y.size();
    }
    const std::size_t len = std::min(count_, n0);
    double v = scale_ * K.dot(wrev_.data() + (n0 - len), ring_.tail(len), len);
    madds_ += len;
    if (count_ > n0) v += hist_;
    lag_ = v;
}

RealLineRule rule_for(const GeneratingFunction& gf, const WeightTable& wt, const EngineConfig& cfg,
                      std::size_t n_max) {
    const double a = wt.alpha;
    if (a == std::round(a) && a >= 0 && gf.polynomial_base()) {
        const long support = gf.kind == GeneratingFunction::Kind::FBDF ? static_cast<long>(a) * gf.p
                                                                         : static_cast<long>(a) + gf.p - 1;
        if (support <= cfg.n0) return {};
        throw UnsupportedForMethodII("integer order with weight support beyond n0");
    }
    const auto ctx = make_phi_context(gf, a, wt.tau);
    const long nT = std::max<long>(static_cast<long>(n_max), cfg.n0 + 1);
    return build_rule(ctx, cfg.n0, nT, cfg.Q, cfg.epsilon);
}

}  // namespace flmm
