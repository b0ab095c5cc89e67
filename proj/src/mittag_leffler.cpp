#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "flmm/errors.hpp"
#include "flmm/fode.hpp"

namespace flmm {

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0 && alpha <= 1)) throw UnsupportedOrder("mittag_leffler: alpha must be in (0, 1]");
    if (z > 0) throw ValidationError("mittag_leffler: argument must be <= 0");
    if (alpha == 1.0) return std::exp(z);
    if (z >= -1.0) {
        // terms stay below 1 here, so the alternating series loses nothing
        double s = 0, c = 0, zk = 1;
        for (int k = 0; k < 400; ++k) {
            const double term = zk / std::tgamma(alpha * k + 1.0);
            const double y = term - c, t = s + y;
            c = (t - s) - y;
            s = t;
            if (std::abs(term) < 1e-18) break;
            zk *= z;
        }
        return s;
    }
    const double ca = std::cos(alpha * std::numbers::pi), sa = std::sin(alpha * std::numbers::pi);
    auto f = [&](double r) { return std::exp(-std::pow(r, 1.0 / alpha)) / (r * r - 2.0 * r * z * ca + z * z); };
    boost::math::quadrature::exp_sinh<double> integrator;
    const double I = integrator.integrate(f, 1e-14);
    return -z * sa / (alpha * std::numbers::pi) * I;
}

}  // namespace flmm
