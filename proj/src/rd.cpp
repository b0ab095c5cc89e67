#include "flmm/rd.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "flmm/errors.hpp"

namespace flmm {

Kinetics gierer_meinhardt() {
    return {"gierer-meinhardt",
            [](double u, double v) { return 1 - u + 3 * u * u / v; },
            [](double u, double v) { return u * u - v; },
            4, 16, 10, 10, 0.4};
}

Kinetics brusselator() {
    return {"brusselator",
            [](double u, double v) { return 2 - 3 * u + u * u * v; },
            [](double u, double v) { return 2 * u - u * u * v; },
            2, 1, 2, 2, 0.5};
}

Kinetics no_reaction() {
    return {"none", [](double, double) { return 0.0; }, [](double, double) { return 0.0; }, 0, 0, 0, 0, 0.5};
}

Kinetics kinetics_by_name(const std::string& s) {
    if (s == "gierer-meinhardt" || s == "gm") return gierer_meinhardt();
    if (s == "brusselator") return brusselator();
    if (s == "none") return no_reaction();
    throw ValidationError("unknown kinetics '" + s + "' (gierer-meinhardt, brusselator, none)");
}

IcType parse_ic(const std::string& s) {
    if (s == "random") return IcType::Random;
    if (s == "long-wave") return IcType::LongWave;
    if (s == "short-wave") return IcType::ShortWave;
    throw ValidationError("unknown initial condition '" + s + "' (random, long-wave, short-wave)");
}

const char* ic_name(IcType t) {
    switch (t) {
        case IcType::LongWave: return "long-wave";
        case IcType::ShortWave: return "short-wave";
        default: return "random";
    }
}

void spatial_operator(const double* f, double* out, std::size_t n, double h) {
    const double s = 1.0 / (h * h);
    out[0] = 2.0 * (f[1] - f[0]) * s;
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * s;
    out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * s;
}

std::vector<double> spatial_operator(const std::vector<double>& f, double h) {
    if (f.size() < 3) throw ValidationError("spatial_operator: need at least 3 grid points");
    std::vector<double> out(f.size());
    spatial_operator(f.data(), out.data(), f.size(), h);
    return out;
}

void thomas_solve(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
                  std::vector<double>& x) {
    const std::size_t n = b.size();
    std::vector<double> cp(n), dp(n);
    double den = b[0];
    if (!(std::abs(den) > 1e-300)) throw StepFailure("tridiagonal solve: zero pivot");
    cp[0] = n > 1 ? c[0] / den : 0;
    dp[0] = x[0] / den;
    for (std::size_t i = 1; i < n; ++i) {
        den = b[i] - a[i] * cp[i - 1];
        if (!(std::abs(den) > 1e-300)) throw StepFailure("tridiagonal solve: zero pivot");
        cp[i] = i + 1 < n ? c[i] / den : 0;
        dp[i] = (x[i] - a[i] * dp[i - 1]) / den;
    }
    x[n - 1] = dp[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
}

RdSolver::RdSolver(const RdProblem& p) : p_(p) {
    if (p.cells < 2) throw ValidationError("rd: need at least 2 cells");
    for (double a : {p.alpha1, p.alpha2})
        if (!(a > 0 && a <= 1)) throw ValidationError("rd: alpha1, alpha2 must be in (0, 1]");
    if (!(p.tau > 0) || !(p.T >= p.tau) || !(p.D > 0) || !(p.d > 0) || !(p.kappa > 0))
        throw ValidationError("rd: tau, T, D, d, kappa must be positive with T >= tau");
    if (p_.kappa1 < 0) p_.kappa1 = p_.kin.kappa1;
    if (p_.kappa2 < 0) p_.kappa2 = p_.kin.kappa2;
    W_ = static_cast<std::size_t>(p.cells) + 1;
    h_ = p.D / p.cells;
    N_ = static_cast<std::size_t>(std::llround(p.T / p.tau));
    for (std::size_t i = 0; i < W_; ++i) x_.push_back(static_cast<double>(i) * h_);

    const std::size_t len = std::max<std::size_t>(N_, static_cast<std::size_t>(p.engine.n0) + 1);
    const auto wu = convolution_weights(p.gf, 1.0 - p.alpha1, 0.0, p.tau, len);
    const auto wv = convolution_weights(p.gf, 1.0 - p.alpha2, 0.0, p.tau, len);
    cu_ = make_field_convolver(p.gf, wu, p.engine, N_, W_);
    cv_ = make_field_convolver(p.gf, wv, p.engine, N_, W_);
    lap_.resize(W_);
    a_.resize(W_);
    b_.resize(W_);
    c_.resize(W_);
    init();
}

void RdSolver::init() {
    const auto& ic = p_.ic;
    for (auto& f : u_) f.assign(W_, 0.0);
    for (auto& f : v_) f.assign(W_, 0.0);
    std::vector<double> r1(W_), r2(W_);
    if (ic.shape) {
        for (std::size_t i = 0; i < W_; ++i) r1[i] = r2[i] = ic.shape(x_[i]);
    } else if (ic.type == IcType::Random) {
        std::mt19937_64 gen(ic.seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        for (auto& r : r1) r = U(gen);
        for (auto& r : r2) r = U(gen);
    } else {
        const double q = ic.q > 0 ? ic.q : (ic.type == IcType::LongWave ? p_.kin.q_long : 5.0);
        for (std::size_t i = 0; i < W_; ++i) r1[i] = r2[i] = std::sin(q * x_[i]);
    }
    for (std::size_t i = 0; i < W_; ++i) {
        u_[0][i] = p_.kin.u_star + ic.epsilon * r1[i];
        v_[0][i] = p_.kin.v_star + ic.epsilon * r2[i];
    }
    for (int k = 0; k < 2; ++k) {
        F1_[k].assign(W_, 0.0);
        F2_[k].assign(W_, 0.0);
    }
    for (std::size_t i = 0; i < W_; ++i) {
        F1_[0][i] = p_.kin.f1(u_[0][i], v_[0][i]);
        F2_[0][i] = p_.kin.f2(u_[0][i], v_[0][i]);
    }
    spatial_operator(u_[0].data(), lap_.data(), W_, h_);
    cu_->commit(lap_.data());
    spatial_operator(v_[0].data(), lap_.data(), W_, h_);
    cv_->commit(lap_.data());
}

void RdSolver::solve_field(std::vector<double>* f, FieldConvolver& conv, double coef, double k1,
                           const std::vector<double>& Fm1, const std::vector<double>& Fm2, std::vector<double>& out) {
    const double tau = p_.tau, kap = p_.kappa;
    const double lead = coef * conv.lead() / (h_ * h_);
    const auto& lag = conv.lag();
    const auto& f1 = f[0];  // level n-1
    const auto& f2 = f[1];  // level n-2
    out.resize(W_);
    for (std::size_t i = 0; i < W_; ++i)
        out[i] = (4 * f1[i] - f2[i]) / (2 * tau) + kap * (2 * Fm1[i] - Fm2[i]) + k1 * (2 * f1[i] - f2[i]) + coef * lag[i];
    const double diag = 3 / (2 * tau) + k1 + 2 * lead;
    std::fill(a_.begin(), a_.end(), -lead);
    std::fill(b_.begin(), b_.end(), diag);
    std::fill(c_.begin(), c_.end(), -lead);
    c_[0] = -2 * lead;
    a_[W_ - 1] = -2 * lead;
    thomas_solve(a_, b_, c_, out);
}

void RdSolver::step() {
    if (n_ >= N_) throw StepFailure("rd: horizon reached at step " + std::to_string(n_));
    std::vector<double> nu, nv;
    if (n_ == 0) {
        nu.resize(W_);
        nv.resize(W_);
        for (std::size_t i = 0; i < W_; ++i) {
            nu[i] = u_[0][i] + p_.tau * p_.kappa * F1_[0][i];
            nv[i] = v_[0][i] + p_.tau * p_.kappa * F2_[0][i];
        }
    } else {
        solve_field(u_, *cu_, 1.0, p_.kappa1, F1_[0], F1_[1], nu);
        solve_field(v_, *cv_, p_.d, p_.kappa2, F2_[0], F2_[1], nv);
    }
    for (double x : nu)
        if (!std::isfinite(x)) throw StepFailure("rd: non-finite value at step " + std::to_string(n_ + 1));
    u_[2].swap(u_[1]);
    u_[1].swap(u_[0]);
    u_[0].swap(nu);
    v_[2].swap(v_[1]);
    v_[1].swap(v_[0]);
    v_[0].swap(nv);
    F1_[1].swap(F1_[0]);
    F2_[1].swap(F2_[0]);
    for (std::size_t i = 0; i < W_; ++i) {
        F1_[0][i] = p_.kin.f1(u_[0][i], v_[0][i]);
        F2_[0][i] = p_.kin.f2(u_[0][i], v_[0][i]);
    }
    ++n_;
    if (n_ < N_) {
        spatial_operator(u_[0].data(), lap_.data(), W_, h_);
        cu_->commit(lap_.data());
        spatial_operator(v_[0].data(), lap_.data(), W_, h_);
        cv_->commit(lap_.data());
    }
}

void FieldHistory::write_snapshot_csv(std::ostream& os, std::size_t i) const {
    const auto& s = snaps.at(i);
    os << "x,u,v\n";
    for (std::size_t k = 0; k < x.size(); ++k)
        os << format_double(x[k]) << ',' << format_double(s.u[k]) << ',' << format_double(s.v[k]) << '\n';
}

void FieldHistory::write_long_csv(std::ostream& os) const {
    os << "t,x,u,v\n";
    for (const auto& s : snaps)
        for (std::size_t k = 0; k < x.size(); ++k)
            os << format_double(s.t) << ',' << format_double(x[k]) << ',' << format_double(s.u[k]) << ','
               << format_double(s.v[k]) << '\n';
}

FieldHistory run(const RdProblem& p, std::size_t save_stride) {
    if (save_stride == 0) throw ValidationError("rd: save stride must be positive");
    RdSolver s(p);
    FieldHistory h;
    h.x = s.x();
    h.snaps.push_back({s.t(), s.u(), s.v()});
    while (s.n() < s.steps()) {
        s.step();
        if (s.n() % save_stride == 0 || s.n() == s.steps()) h.snaps.push_back({s.t(), s.u(), s.v()});
    }
    return h;
}

double spatial_variance(const std::vector<double>& f) {
    double m = 0;
    for (double x : f) m += x;
    m /= static_cast<double>(f.size());
    double s = 0;
    for (double x : f) s += (x - m) * (x - m);
    return s / static_cast<double>(f.size());
}

int dominant_mode(const std::vector<double>& f) {
    const std::size_t M = f.size() - 1;
    double m = 0;
    for (double x : f) m += x;
    m /= static_cast<double>(f.size());
    int best = 1;
    double amax = -1;
    for (std::size_t k = 1; k <= M; ++k) {
        double a = 0;
        for (std::size_t i = 0; i <= M; ++i) {
            const double wgt = (i == 0 || i == M) ? 0.5 : 1.0;
            a += wgt * (f[i] - m) * std::cos(std::numbers::pi * static_cast<double>(k * i) / static_cast<double>(M));
        }
        if (std::abs(a) > amax) {
            amax = std::abs(a);
            best = static_cast<int>(k);
        }
    }
    return best;
}

}  // namespace flmm
