#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace flmm {

struct GeneratingFunction {
    enum class Kind { FBDF, GNGF, FTrap, Custom };

    Kind kind = Kind::FBDF;
    int p = 1;
    // Custom only: ascending coefficients of rho_hat(zeta) and sigma_hat(zeta).
    std::vector<double> rho_hat, sigma_hat;

    static GeneratingFunction fbdf(int p);
    static GeneratingFunction gngf(int p);
    static GeneratingFunction ftrap();
    // Validates the root condition on sigma_hat and consistency.
    static GeneratingFunction custom(std::vector<double> rho_hat, std::vector<double> sigma_hat);
    // "fbdf1".."fbdf6", "gngf1".."gngf6", "ftrap".
    static GeneratingFunction parse(const std::string& name);

    std::string name() const;
    // omega(z) is a polynomial raised to alpha (FBDF, GNGF).
    bool polynomial_base() const { return kind == Kind::FBDF || kind == Kind::GNGF; }
};

// Coefficients of g(z)^alpha up to z^n_max (Miller recurrence).
std::vector<double> series_power_coeffs(const std::vector<double>& g, double alpha, std::size_t n_max);

// Coefficients of (P(z)/Q(z))^alpha, from the linear ODE  P Q y' = alpha (P'Q - P Q') y.
std::vector<double> rational_power_coeffs(const std::vector<double>& P, const std::vector<double>& Q,
                                          double alpha, std::size_t n_max);

// g_0..g_{p-1}: coefficients of (-log(1-x)/x)^alpha.
std::vector<double> gngf_coeffs(double alpha, int p);

// Untempered omega_k, k = 0..n_max.
std::vector<double> untempered_weights(const GeneratingFunction& gf, double alpha, std::size_t n_max);

struct WeightTable {
    double alpha = 0, sigma = 0, tau = 0;
    std::vector<double> weights;  // omega_k^{(alpha,sigma)}
    std::vector<double> cumsum;   // b_n = tau^-alpha sum_{j<=n} omega_j

    std::size_t size() const { return weights.size(); }
    void write_csv(std::ostream& os) const;
};

WeightTable convolution_weights(const GeneratingFunction& gf, double alpha, double sigma, double tau,
                                std::size_t n_max);

// D^{sigma,alpha} t^gamma at t, via e^{-sigma t} D^alpha[e^{sigma t} t^gamma].
double tempered_power_derivative(double alpha, double sigma, double gamma, double t);

// Same series with precomputed coefficients; first_term skips leading terms
// (first_term = 1 with gamma = 0 gives the tempered minus untempered derivative of 1).
class TemperedPowerSeries {
public:
    TemperedPowerSeries(double alpha, double sigma, double gamma, int first_term = 0);
    double operator()(double t) const;

private:
    double alpha_, sigma_, gamma_;
    int first_;
    std::vector<double> logc_;
    std::vector<int> sign_;
};

struct StartingWeights {
    int m = 0;
    std::vector<double> gamma;
    std::vector<double> w;  // row-major, (n_max+1) x m

    const double* row(std::size_t n) const { return w.data() + n * static_cast<std::size_t>(m); }
    std::size_t rows() const { return m ? w.size() / m : 0; }
};

std::vector<double> default_gamma(double alpha, int m);

// One row w_{n,1..m}.
std::vector<double> starting_weights(const WeightTable& wt, const std::vector<double>& gamma, std::size_t n);

// All rows n = 0..n_max (row 0 is zero). O(n_max^2 m).
StartingWeights starting_weight_table(const WeightTable& wt, const std::vector<double>& gamma,
                                      std::size_t n_max);

// sum_{k=j}^{m} C(m,k) C(k,j) (-1)^{k-j}, in exact integer arithmetic.
std::int64_t binomial_alternating_sum(int m, int j);

// Shortest round-trip decimal.
std::string format_double(double x);

}  // namespace flmm
