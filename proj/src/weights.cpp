#include "flmm/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>
#include <unsupported/Eigen/Polynomials>

#include "flmm/errors.hpp"
#include "flmm/simd.hpp"

namespace flmm {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<double> poly_deriv(const std::vector<double>& a) {
    if (a.size() <= 1) return {0.0};
    std::vector<double> r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = static_cast<double>(i) * a[i];
    return r;
}

void trim(std::vector<double>& a) {
    while (a.size() > 1 && a.back() == 0.0) a.pop_back();
}

// sum_{k=0}^{deg} a_k (1-z)^k expanded in powers of z
std::vector<double> shifted_poly(const std::vector<double>& a) {
    std::vector<double> r(a.size(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double binom = 1;  // C(k,i)
        for (std::size_t i = 0; i <= k; ++i) {
            r[i] += a[k] * binom * ((i % 2) ? -1.0 : 1.0);
            binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
        }
    }
    return r;
}

// reverse to a common degree: x(z) = z^deg x_hat(1/z)
std::vector<double> reversed(const std::vector<double>& a, std::size_t deg) {
    std::vector<double> r(deg + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[deg - i] = a[i];
    return r;
}

void check_order(int p) {
    if (p < 1 || p > 6) throw UnsupportedOrder("generating-function order must be in 1..6, got " + std::to_string(p));
}

}  // namespace

GeneratingFunction GeneratingFunction::fbdf(int p) {
    check_order(p);
    return {Kind::FBDF, p, {}, {}};
}

GeneratingFunction GeneratingFunction::gngf(int p) {
    check_order(p);
    return {Kind::GNGF, p, {}, {}};
}

GeneratingFunction GeneratingFunction::ftrap() { return {Kind::FTrap, 2, {}, {}}; }

GeneratingFunction GeneratingFunction::custom(std::vector<double> rho, std::vector<double> sig) {
    trim(rho);
    trim(sig);
    if (rho.size() < 2) throw ValidationError("custom: rho_hat must have degree >= 1");
    if (sig.empty() || (sig.size() == 1 && sig[0] == 0.0)) throw ValidationError("custom: sigma_hat is zero");
    if (sig.size() > rho.size()) throw ValidationError("custom: deg sigma_hat > deg rho_hat");
    if (std::abs(poly_eval(rho, 1.0)) > 1e-12) throw ValidationError("custom: rho_hat(1) != 0");
    if (std::abs(poly_eval(poly_deriv(rho), 1.0) - poly_eval(sig, 1.0)) > 1e-12)
        throw ValidationError("custom: rho_hat'(1) != sigma_hat(1)");
    if (sig.size() >= 2) {
        Eigen::VectorXd c(sig.size());
        for (std::size_t i = 0; i < sig.size(); ++i) c[static_cast<Eigen::Index>(i)] = sig[i];
        Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
        for (const auto& r : solver.roots())
            if (std::abs(r) >= 1.0) throw ValidationError("custom: sigma_hat has a root with |z| >= 1");
    }
    return {Kind::Custom, static_cast<int>(rho.size()) - 1, std::move(rho), std::move(sig)};
}

GeneratingFunction GeneratingFunction::parse(const std::string& s) {
    if (s == "ftrap") return ftrap();
    if (s.size() == 5 && (s.rfind("fbdf", 0) == 0 || s.rfind("gngf", 0) == 0) && s[4] >= '1' && s[4] <= '6') {
        int p = s[4] - '0';
        return s[0] == 'f' ? fbdf(p) : gngf(p);
    }
    throw ValidationError("unknown generating function '" + s + "' (fbdf1..6, gngf1..6, ftrap)");
}

std::string GeneratingFunction::name() const {
    switch (kind) {
        case Kind::FBDF: return "fbdf" + std::to_string(p);
        case Kind::GNGF: return "gngf" + std::to_string(p);
        case Kind::FTrap: return "ftrap";
        default: return "custom";
    }
}

std::vector<double> series_power_coeffs(const std::vector<double>& g, double alpha, std::size_t n_max) {
    if (g.empty() || g[0] == 0.0) throw DegenerateSeries("g[0] = 0: power series not expandable");
    if (g[0] < 0.0 && alpha != std::floor(alpha)) throw DegenerateSeries("g[0] < 0 with non-integer power");
    std::vector<double> c(n_max + 1, 0.0);
    c[0] = std::pow(g[0], alpha);
    const std::size_t deg = g.size() - 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double s = 0;
        const std::size_t kmax = std::min(n, deg);
        for (std::size_t k = 1; k <= kmax; ++k)
            s += ((alpha + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * g[k] * c[n - k];
        c[n] = s / (static_cast<double>(n) * g[0]);
    }
    return c;
}

std::vector<double> rational_power_coeffs(const std::vector<double>& P, const std::vector<double>& Q,
                                          double alpha, std::size_t n_max) {
    if (P.empty() || Q.empty() || P[0] == 0.0 || Q[0] == 0.0)
        throw DegenerateSeries("rational power: P(0) Q(0) = 0");
    const double y0 = P[0] / Q[0];
    if (y0 < 0.0 && alpha != std::floor(alpha)) throw DegenerateSeries("rational power: P(0)/Q(0) < 0");
    const auto A = poly_mul(P, Q);
    auto Bp = poly_mul(poly_deriv(P), Q);
    const auto PQd = poly_mul(P, poly_deriv(Q));
    Bp.resize(std::max(Bp.size(), PQd.size()), 0.0);
    for (std::size_t i = 0; i < PQd.size(); ++i) Bp[i] -= PQd[i];
    for (auto& b : Bp) b *= alpha;

    std::vector<double> y(n_max + 1, 0.0);
    y[0] = std::pow(y0, alpha);
    for (std::size_t n = 0; n < n_max; ++n) {
        // coefficient of z^n in A y' = Bp y
        double s = 0;
        for (std::size_t i = 0; i < Bp.size() && i <= n; ++i) s += Bp[i] * y[n - i];
        for (std::size_t i = 1; i < A.size() && i <= n; ++i)
            s -= A[i] * static_cast<double>(n + 1 - i) * y[n + 1 - i];
        y[n + 1] = s / (A[0] * static_cast<double>(n + 1));
    }
    return y;
}

std::vector<double> gngf_coeffs(double alpha, int p) {
    check_order(p);
    std::vector<double> base(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) base[static_cast<std::size_t>(j)] = 1.0 / (j + 1);
    return series_power_coeffs(base, alpha, static_cast<std::size_t>(p - 1));
}

std::vector<double> untempered_weights(const GeneratingFunction& gf, double alpha, std::size_t n_max) {
    switch (gf.kind) {
        case GeneratingFunction::Kind::FBDF: {
            check_order(gf.p);
            std::vector<double> a(static_cast<std::size_t>(gf.p) + 1, 0.0);
            for (int k = 1; k <= gf.p; ++k) a[static_cast<std::size_t>(k)] = 1.0 / k;
            return series_power_coeffs(shifted_poly(a), alpha, n_max);
        }
        case GeneratingFunction::Kind::GNGF: {
            const auto g = gngf_coeffs(alpha, gf.p);
            const auto poly = shifted_poly(g);
            const auto c = series_power_coeffs({1.0, -1.0}, alpha, n_max);
            std::vector<double> w(n_max + 1, 0.0);
            for (std::size_t n = 0; n <= n_max; ++n)
                for (std::size_t i = 0; i < poly.size() && i <= n; ++i) w[n] += poly[i] * c[n - i];
            return w;
        }
        case GeneratingFunction::Kind::FTrap:
            return rational_power_coeffs({2.0, -2.0}, {1.0, 1.0}, alpha, n_max);
        case GeneratingFunction::Kind::Custom: {
            const std::size_t deg = gf.rho_hat.size() - 1;
            return rational_power_coeffs(reversed(gf.rho_hat, deg), reversed(gf.sigma_hat, deg), alpha, n_max);
        }
    }
    return {};
}

WeightTable convolution_weights(const GeneratingFunction& gf, double alpha, double sigma, double tau,
                                std::size_t n_max) {
    if (!(tau > 0)) throw ValidationError("tau must be positive");
    if (sigma < 0) throw ValidationError("sigma must be non-negative");
    WeightTable t;
    t.alpha = alpha;
    t.sigma = sigma;
    t.tau = tau;
    t.weights = untempered_weights(gf, alpha, n_max);
    if (sigma != 0.0)
        for (std::size_t k = 0; k <= n_max; ++k) t.weights[k] *= std::exp(-static_cast<double>(k) * tau * sigma);
    t.cumsum.resize(n_max + 1);
    const double scale = std::pow(tau, -alpha);
    double s = 0, comp = 0;  // Kahan
    for (std::size_t k = 0; k <= n_max; ++k) {
        const double y = t.weights[k] - comp;
        const double u = s + y;
        comp = (u - s) - y;
        s = u;
        t.cumsum[k] = scale * s;
    }
    return t;
}

std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void WeightTable::write_csv(std::ostream& os) const {
    os << "k,omega,cumsum\n";
    for (std::size_t k = 0; k < weights.size(); ++k)
        os << k << ',' << format_double(weights[k]) << ',' << format_double(cumsum[k]) << '\n';
}

TemperedPowerSeries::TemperedPowerSeries(double alpha, double sigma, double gamma, int first_term)
    : alpha_(alpha), sigma_(sigma), gamma_(gamma), first_(first_term) {
    const int terms = sigma == 0.0 ? 1 : 200;
    if (sigma == 0.0 && first_term > 0) return;  // all terms carry sigma^i
    for (int i = 0; i < terms; ++i) {
        const double a = gamma + i + 1.0;
        const double b = a - alpha;
        if (b <= 0 && b == std::floor(b)) {  // 1/Gamma(b) = 0
            logc_.push_back(-std::numeric_limits<double>::infinity());
            sign_.push_back(0);
            continue;
        }
        int sb = 1;
        const double lb = boost::math::lgamma(b, &sb);
        logc_.push_back(boost::math::lgamma(a) - lb - std::lgamma(i + 1.0));
        sign_.push_back(sb);
    }
}

double TemperedPowerSeries::operator()(double t) const {
    if (!(t > 0)) throw ValidationError("tempered power derivative needs t > 0");
    const double lt = std::log(t);
    if (sigma_ == 0.0) {
        if (logc_.empty()) return 0.0;
        return sign_[0] * std::exp(logc_[0] + (gamma_ - alpha_) * lt);
    }
    const double ls = std::log(sigma_ * t);
    const double st = sigma_ * t;
    double sum = 0;
    for (std::size_t i = static_cast<std::size_t>(first_); i < logc_.size(); ++i) {
        if (sign_[i] == 0) continue;
        const double term = sign_[i] * std::exp(logc_[i] + static_cast<double>(i) * ls - st + (gamma_ - alpha_) * lt);
        sum += term;
        if (static_cast<double>(i) > st && std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
        if (sum == 0.0 && term == 0.0 && static_cast<double>(i) > st) return 0.0;
    }
    throw SeriesDivergence("tempered power series did not converge within 200 terms (sigma*t = " +
                           std::to_string(st) + ")");
}

double tempered_power_derivative(double alpha, double sigma, double gamma, double t) {
    if (!(gamma > 0)) throw ValidationError("gamma must be positive");
    return TemperedPowerSeries(alpha, sigma, gamma)(t);
}

std::vector<double> default_gamma(double alpha, int m) {
    std::vector<double> g(static_cast<std::size_t>(std::max(m, 0)));
    for (int k = 1; k <= m; ++k) g[static_cast<std::size_t>(k - 1)] = k * alpha;
    return g;
}

namespace {

struct StartingSystem {
    int m;
    Eigen::MatrixXd V;  // V(j, k-1) = k^gamma_j
    Eigen::FullPivLU<Eigen::MatrixXd> lu;
    Eigen::VectorXd colscale;
};

StartingSystem make_system(const std::vector<double>& gamma) {
    const int m = static_cast<int>(gamma.size());
    for (int j = 0; j < m; ++j) {
        if (!(gamma[static_cast<std::size_t>(j)] > 0)) throw ValidationError("starting weights: gamma must be positive");
        for (int i = 0; i < j; ++i)
            if (gamma[static_cast<std::size_t>(i)] == gamma[static_cast<std::size_t>(j)])
                throw IllConditionedStartingSystem("starting weights: repeated gamma");
    }
    StartingSystem s{m, Eigen::MatrixXd(m, m), {}, Eigen::VectorXd(m)};
    for (int j = 0; j < m; ++j)
        for (int k = 1; k <= m; ++k) s.V(j, k - 1) = std::pow(static_cast<double>(k), gamma[static_cast<std::size_t>(j)]);
    // column equilibration
    Eigen::MatrixXd A = s.V;
    for (int k = 0; k < m; ++k) {
        s.colscale[k] = 1.0 / A.col(k).cwiseAbs().maxCoeff();
        A.col(k) *= s.colscale[k];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto sv = svd.singularValues();
    const double cond = sv[m - 1] > 0 ? sv[0] / sv[m - 1] : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e14)) throw IllConditionedStartingSystem("starting-weight system condition estimate " + std::to_string(cond));
    s.lu.compute(A);
    return s;
}

}  // namespace

std::vector<double> starting_weights(const WeightTable& wt, const std::vector<double>& gamma, std::size_t n) {
    if (gamma.empty()) return {};
    if (n >= wt.size()) throw ValidationError("starting weights: n beyond weight table");
    auto tab = starting_weight_table(wt, gamma, n);
    return {tab.row(n), tab.row(n) + tab.m};
}

StartingWeights starting_weight_table(const WeightTable& wt, const std::vector<double>& gamma, std::size_t n_max) {
    StartingWeights sw;
    sw.m = static_cast<int>(gamma.size());
    sw.gamma = gamma;
    if (sw.m == 0) return sw;
    if (n_max >= wt.size()) throw ValidationError("starting weights: n_max beyond weight table");
    const int m = sw.m;
    const auto sys = make_system(gamma);
    const auto& K = simd::kernels();

    // reversed weights: wrev[i] = omega_{n_max - i}
    std::vector<double> wrev(wt.weights.begin(), wt.weights.begin() + static_cast<long>(n_max) + 1);
    std::reverse(wrev.begin(), wrev.end());
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(m), std::vector<double>(n_max + 1));
    std::vector<TemperedPowerSeries> deriv;
    for (int j = 0; j < m; ++j) {
        for (std::size_t k = 0; k <= n_max; ++k)
            pw[static_cast<std::size_t>(j)][k] = std::pow(static_cast<double>(k), gamma[static_cast<std::size_t>(j)]);
        deriv.emplace_back(wt.alpha, wt.sigma, gamma[static_cast<std::size_t>(j)]);
    }

    sw.w.assign((n_max + 1) * static_cast<std::size_t>(m), 0.0);
    Eigen::VectorXd rhs(m);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double tn = static_cast<double>(n) * wt.tau;
        for (int j = 0; j < m; ++j) {
            const double g = gamma[static_cast<std::size_t>(j)];
            const double conv = K.dot(wrev.data() + (n_max - n + 1), pw[static_cast<std::size_t>(j)].data() + 1, n);
            rhs[j] = std::pow(wt.tau, wt.alpha - g) * deriv[static_cast<std::size_t>(j)](tn) - conv;
        }
        Eigen::VectorXd x = sys.lu.solve(rhs);
        for (int k = 0; k < m; ++k) sw.w[n * static_cast<std::size_t>(m) + static_cast<std::size_t>(k)] = x[k] * sys.colscale[k];
    }
    return sw;
}

std::int64_t binomial_alternating_sum(int m, int j) {
    auto C = [](int a, int b) -> std::int64_t {
        if (b < 0 || b > a) return 0;
        std::int64_t r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::int64_t s = 0;
    for (int k = j; k <= m; ++k) s += C(m, k) * C(k, j) * (((k - j) % 2) ? -1 : 1);
    return s;
}

}  // namespace flmm
