#include "flmm/fode.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "flmm/errors.hpp"
#include "flmm/operator.hpp"

namespace flmm {

void Trajectory::write_csv(std::ostream& os) const {
    os << "t,u,newton_iters\n";
    for (std::size_t n = 0; n < t.size(); ++n)
        os << format_double(t[n]) << ',' << format_double(u[n]) << ',' << iters[n] << '\n';
}

Trajectory solve(const FodeProblem& p) {
    if (!(p.alpha > 0 && p.alpha <= 1)) throw ValidationError("fode: alpha must be in (0, 1]");
    if (!(p.tau > 0) || !(p.T >= p.tau)) throw ValidationError("fode: need tau > 0 and T >= tau");
    if (p.sigma < 0) throw ValidationError("fode: sigma must be >= 0");
    if (!p.f) throw ValidationError("fode: missing right-hand side");
    const double Nd = p.T / p.tau;
    const auto N = static_cast<std::size_t>(std::llround(Nd));
    if (std::abs(Nd - static_cast<double>(N)) > 1e-9 * Nd) throw ValidationError("fode: T must be a multiple of tau");

    OperatorConfig oc;
    oc.gf = p.gf;
    oc.alpha = p.alpha;
    oc.sigma = p.sigma;
    oc.tau = p.tau;
    oc.m = p.m;
    oc.gamma = p.gamma;
    oc.engine = p.engine;
    FlmmOperator op(oc, N, p.u0);

    Trajectory tr;
    tr.t.resize(N + 1);
    tr.u.assign(N + 1, 0.0);
    tr.iters.assign(N + 1, 0);
    tr.residual.assign(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) tr.t[n] = static_cast<double>(n) * p.tau;
    tr.u[0] = p.u0;
    op.commit(p.u0);

    std::size_t first = 1;
    if (p.m > 0) {
        const auto m = static_cast<std::size_t>(p.m);
        if (m > N) throw ValidationError("fode: m exceeds the number of steps");
        switch (p.startup) {
            case Startup::Exact:
                if (!p.exact) throw ValidationError("fode: exact startup needs a reference solution");
                for (std::size_t k = 1; k <= m; ++k) {
                    tr.u[k] = p.exact(tr.t[k]);
                    op.commit(tr.u[k]);
                }
                first = m + 1;
                break;
            case Startup::FineStep: {
                FodeProblem fine = p;
                const long r = 1L << p.fine_log2;
                fine.tau = p.tau / static_cast<double>(r);
                fine.T = static_cast<double>(p.m) * p.tau;
                fine.m = std::min(p.m, 1);
                fine.gamma = p.gamma.empty() ? std::vector<double>{} : std::vector<double>{p.gamma[0]};
                fine.startup = Startup::Implicit;
                fine.engine.engine = Engine::Direct;
                const auto ft = solve(fine);
                for (std::size_t k = 1; k <= m; ++k) {
                    tr.u[k] = ft.u[k * static_cast<std::size_t>(r)];
                    op.commit(tr.u[k]);
                }
                first = m + 1;
                break;
            }
            case Startup::Implicit:
                if (p.m > 1) throw ValidationError("fode: implicit startup supports m <= 1");
                break;
        }
    }

    for (std::size_t n = first; n <= N; ++n) {
        const double t = tr.t[n];
        const double c = op.lead(n), h = op.known(n);
        double U = tr.u[n - 1];
        int it = 0;
        double G = 0;
        for (;;) {
            const double fu = p.f(U, t);
            G = c * U + h + U - fu;
            if (!std::isfinite(G))
                throw NonlinearSolveFailure("fode: non-finite residual at step " + std::to_string(n), static_cast<long>(n));
            if (std::abs(G) <= 1e-12 * std::max({1.0, std::abs(h), std::abs(c * U)})) break;
            if (it == 50)
                throw NonlinearSolveFailure("fode: Newton did not converge at step " + std::to_string(n), static_cast<long>(n));
            double df;
            if (p.dfdu) {
                df = p.dfdu(U, t);
            } else {
                const double e = 1e-7 * (1 + std::abs(U));
                df = (p.f(U + e, t) - p.f(U - e, t)) / (2 * e);
            }
            U -= G / (c + 1.0 - df);
            ++it;
        }
        tr.u[n] = U;
        tr.iters[n] = it;
        tr.residual[n] = G;
        op.commit(U);
    }
    return tr;
}

FodeProblem case_one(double alpha, double sigma, double tau, double T, int m) {
    FodeProblem p;
    p.alpha = alpha;
    p.sigma = sigma;
    p.tau = tau;
    p.T = T;
    p.m = m;
    p.u0 = 1.0;
    if (sigma == 0.0) {
        p.f = [](double, double) { return 0.0; };
    } else {
        auto extra = std::make_shared<TemperedPowerSeries>(alpha, sigma, 0.0, 1);
        const double u0 = p.u0;
        p.f = [extra, u0](double, double t) { return -u0 * (*extra)(t); };
    }
    p.dfdu = [](double, double) { return 0.0; };
    const double u0 = p.u0;
    p.exact = [alpha, sigma, u0](double t) {
        return t == 0.0 ? u0 : u0 * std::exp(-sigma * t) * mittag_leffler(alpha, -std::pow(t, alpha));
    };
    return p;
}

FodeProblem case_two(double alpha, double sigma, double tau, double T, int m) {
    FodeProblem p;
    p.alpha = alpha;
    p.sigma = sigma;
    p.tau = tau;
    p.T = T;
    p.m = m;
    p.u0 = 1.0;
    p.f = [](double u, double) { return u * (1 - u * u); };
    p.dfdu = [](double u, double) { return 1 - 3 * u * u; };
    return p;
}

ErrorSummary trajectory_error(const Trajectory& tr, const std::function<double(double)>& exact) {
    ErrorSummary s;
    for (std::size_t n = 1; n < tr.t.size(); ++n) {
        const double e = std::abs(tr.u[n] - exact(tr.t[n]));
        s.max_err = std::max(s.max_err, e);
        s.end_err = e;
    }
    return s;
}

}  // namespace flmm
