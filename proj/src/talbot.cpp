#include "flmm/talbot.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "flmm/errors.hpp"
#include "flmm/simd.hpp"

namespace flmm {

namespace {
constexpr double kSigma = -0.4814, kMu = 0.6443, kNu = 0.5653;

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
}  // namespace

TalbotContour talbot_nodes(int N, double T) {
    if (N < 1 || !(T > 0)) throw ValidationError("talbot_nodes: need N >= 1 and T > 0");
    TalbotContour c;
    c.N = N;
    c.T = T;
    const double s = N / T;
    for (int j = 0; j < N; ++j) {
        const double th = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * N);
        const double cot = std::cos(th) / std::sin(th);
        const double sn = std::sin(th);
        c.lambda.push_back(s * cplx(kSigma + kMu * th * cot, kMu * kNu * th));
        const cplx dz = s * kMu * cplx(cot - th / (sn * sn), kNu);
        c.w.push_back(dz / (2.0 * N));
    }
    return c;
}

TalbotSchedule level_schedule(long n, int B, int n0) {
    if (B < 2) throw ValidationError("level_schedule: B must be >= 2");
    if (n < n0) throw ScheduleNotNeeded("n < n0: use direct summation");
    TalbotSchedule s;
    s.B = B;
    s.n0 = n0;
    s.n = n;
    const long M = n - n0 + 1;
    // n = n0 has nothing to compress; for n > n0 at least one level is needed
    // so that k = 0 is covered.
    if (n > n0) {
        s.L = 1;
        long pw = B;
        while (M > 2 * pw) {
            ++s.L;
            pw *= B;
        }
    }
    s.b.assign(static_cast<std::size_t>(s.L) + 1, 0);
    s.q.assign(static_cast<std::size_t>(s.L) + 1, 0);
    s.b[0] = n - n0;
    // Smallest admissible q: M - b_l lands in [B^l, 2B^l - 1], so block l + 1
    // starts at lag >= B^l and stays inside its contour's window.
    for (int l = 1; l < s.L; ++l) {
        const long Bl = ipow(B, l);
        s.q[static_cast<std::size_t>(l)] = M / Bl - 1;
        s.b[static_cast<std::size_t>(l)] = s.q[static_cast<std::size_t>(l)] * Bl;
    }
    if (s.L > 0) s.b[static_cast<std::size_t>(s.L)] = 0;
    return s;
}

double level_time(int level, int B, int n0, double tau) {
    return static_cast<double>(2 * ipow(B, level) - 2 + n0) * tau;
}

int level_for_index(long m, int B, int n0) {
    int l = 1;
    while (m > 2 * ipow(B, l) + n0 - 2) ++l;
    return l;
}

cplx talbot_F(const GeneratingFunction& gf, double alpha, double tau, cplx lambda) {
    const cplx x = tau * lambda;
    switch (gf.kind) {
        case GeneratingFunction::Kind::FBDF: {
            cplx P = 0, xp = 1;
            for (int k = 1; k <= gf.p; ++k) {
                P += xp / static_cast<double>(k);
                xp *= x;
            }
            return std::pow(P, alpha);
        }
        case GeneratingFunction::Kind::GNGF: {
            const auto g = gngf_coeffs(alpha, gf.p);
            cplx s = 0, xp = 1;
            for (double gk : g) {
                s += gk * xp;
                xp *= x;
            }
            return s;
        }
        case GeneratingFunction::Kind::Custom: {
            const cplx zi = 1.0 / (1.0 - x);  // 1/zeta
            auto ev = [&](const std::vector<double>& c) {
                cplx r = 0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * zi + *it;
                return r;
            };
            return std::pow(ev(gf.rho_hat) / ev(gf.sigma_hat) / x, alpha);
        }
        case GeneratingFunction::Kind::FTrap: break;
    }
    throw UnsupportedForFastEngine(
        "ftrap: generating function is singular at z = -1, which the fast contour representations miss");
}

double fast_weight_talbot(long n, const TalbotContour& c, const GeneratingFunction& gf, double alpha,
                          double sigma, double tau) {
    cplx s = 0;
    for (int j = 0; j < c.N; ++j) {
        const cplx lam = c.lambda[static_cast<std::size_t>(j)];
        s += c.w[static_cast<std::size_t>(j)] * std::pow(lam, alpha) * talbot_F(gf, alpha, tau, lam) *
             std::exp(-static_cast<double>(1 + n) * std::log(1.0 - lam * tau));
    }
    return 2.0 * std::pow(tau, 1.0 + alpha) * std::exp(-static_cast<double>(n) * sigma * tau) * s.imag();
}

void write_talbot_diagnostics(std::ostream& os, const GeneratingFunction& gf, double alpha, double sigma,
                              double tau, int N, int B, int n0, long n_max) {
    const auto exact = untempered_weights(gf, alpha, static_cast<std::size_t>(n_max));
    std::vector<TalbotContour> contours;
    os << "n,level,approx,exact,relerr\n";
    for (long n = n0 + 1; n <= n_max; ++n) {
        const int l = level_for_index(n, B, n0);
        while (static_cast<int>(contours.size()) < l)
            contours.push_back(talbot_nodes(N, level_time(static_cast<int>(contours.size()) + 1, B, n0, tau)));
        const double ap = fast_weight_talbot(n, contours[static_cast<std::size_t>(l - 1)], gf, alpha, sigma, tau);
        const double ex = exact[static_cast<std::size_t>(n)] * std::exp(-static_cast<double>(n) * sigma * tau);
        os << n << ',' << l << ',' << format_double(ap) << ',' << format_double(ex) << ','
           << format_double(std::abs(ap - ex) / std::abs(ex)) << '\n';
    }
}

TalbotConvolver::TalbotConvolver(const GeneratingFunction& gf, const WeightTable& wt, int N, int B, int n0,
                                 std::size_t n_max)
    : N_(N), B_(B), n0_(n0), n_max_(n_max), tau_(wt.tau), scale_(std::pow(wt.tau, -wt.alpha)),
      ring_(static_cast<std::size_t>(n0) + 1) {
    if (n0 < 1 || B < 2 || N < 1) throw ValidationError("talbot: need n0 >= 1, B >= 2, N >= 1");
    if (wt.size() < static_cast<std::size_t>(n0) + 1) throw ValidationError("talbot: weight table shorter than n0 + 1");
    lead_ = scale_ * wt.weights[0];
    for (int j = n0; j >= 1; --j) wrev_.push_back(wt.weights[static_cast<std::size_t>(j)]);

    int L = 0;
    if (static_cast<long>(n_max) > n0) L = level_schedule(static_cast<long>(n_max), B, n0).L;
    for (int l = 1; l <= L; ++l) {
        Level lv;
        lv.unit = ipow(B, l - 1);
        const auto c = talbot_nodes(N, level_time(l, B, n0, tau_));
        for (int j = 0; j < N; ++j) {
            const cplx lam = c.lambda[static_cast<std::size_t>(j)];
            const cplx den = 1.0 - tau_ * lam;
            lv.coef.push_back(c.w[static_cast<std::size_t>(j)] * std::pow(lam, wt.alpha) *
                              talbot_F(gf, wt.alpha, tau_, lam) / den);
            lv.logd.push_back(-wt.sigma * tau_ - std::log(den));
            lv.d.push_back(std::exp(lv.logd.back()));
        }
        lv.cur.assign(static_cast<std::size_t>(N), 0.0);
        levels_.push_back(std::move(lv));
    }
}

double TalbotConvolver::local_lag() const {
    const std::size_t len = std::min<std::size_t>(count_, static_cast<std::size_t>(n0_));
    return simd::kernels().dot(wrev_.data() + (static_cast<std::size_t>(n0_) - len), ring_.tail(len), len);
}

double TalbotConvolver::level_value(Level& lv, long a, long e, long n) {
    const std::size_t N = static_cast<std::size_t>(N_);
    if (a != lv.a || e != lv.e) {
        lv.block.assign(N, 0.0);
        for (long i = a / lv.unit; i < e / lv.unit; ++i) {
            const auto& U = lv.units[static_cast<std::size_t>(i - lv.first_unit)];
            const double nu = static_cast<double>(e - (i + 1) * lv.unit);
            for (std::size_t j = 0; j < N; ++j) lv.block[j] += std::exp(nu * lv.logd[j]) * U[j];
        }
        lv.a = a;
        lv.e = e;
    }
    const double nu = static_cast<double>(n - e);
    cplx s = 0;
    for (std::size_t j = 0; j < N; ++j) s += lv.coef[j] * std::exp(nu * lv.logd[j]) * lv.block[j];
    return 2.0 * s.imag();
}

void TalbotConvolver::commit(double u) {
    if (count_ > n_max_) throw SequenceError("talbot convolver: horizon exceeded");
    ring_.push(u);
    ++count_;
    const double tu = tau_ * u;
    for (auto& lv : levels_) {
        for (std::size_t j = 0; j < lv.cur.size(); ++j) lv.cur[j] = lv.d[j] * (lv.cur[j] + tu);
        if (++lv.cur_fill == lv.unit) {
            lv.units.push_back(lv.cur);
            std::fill(lv.cur.begin(), lv.cur.end(), cplx(0.0));
            lv.cur_fill = 0;
        }
    }

    const long n = static_cast<long>(count_);
    double v = scale_ * local_lag();
    if (n > n0_ && count_ <= n_max_) {
        const auto s = level_schedule(n, B_, n0_);
        for (int l = 1; l <= s.L; ++l) {
            auto& lv = levels_[static_cast<std::size_t>(l - 1)];
            const long a = s.b[static_cast<std::size_t>(l)], e = s.b[static_cast<std::size_t>(l - 1)];
            v += level_value(lv, a, e, n);
            // units before the block start are never needed again
            const long keep = a / lv.unit;
            while (lv.first_unit < keep && !lv.units.empty()) {
                lv.units.erase(lv.units.begin());
                ++lv.first_unit;
            }
        }
    }
    lag_ = v;
}

std::size_t TalbotConvolver::state_size() const {
    std::size_t s = 0;
    for (const auto& lv : levels_) s += (lv.units.size() + 2) * lv.cur.size();
    return s;
}

}  // namespace flmm
