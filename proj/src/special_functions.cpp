#include "tcts/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace tcts {

double hermite_phys(unsigned n, double y) {
    if (n == 0) return 1.0;
    double hm = 1.0;        // H_0
    double h = 2.0 * y;     // H_1
    for (unsigned k = 1; k < n; ++k) {
        const double hp = 2.0 * y * h - 2.0 * k * hm;
        hm = h;
        h = hp;
    }
    return h;
}

SignLog hermite_phys_log(unsigned n, double y) {
    // Same recurrence, with a running rescale so intermediates never overflow.
    double hm = 1.0;
    double h = (n == 0) ? 1.0 : 2.0 * y;
    double log_scale = 0.0;
    const double big = 1e250;
    for (unsigned k = 1; k < n; ++k) {
        const double hp = 2.0 * y * h - 2.0 * k * hm;
        hm = h;
        h = hp;
        const double mag = std::max(std::abs(h), std::abs(hm));
        if (mag > big) {
            h /= big;
            hm /= big;
            log_scale += std::log(big);
        }
    }
    if (h == 0.0) return {0, 0.0};
    return {h > 0.0 ? 1 : -1, std::log(std::abs(h)) + log_scale};
}

double laguerre(unsigned n, double y) {
    if (n == 0) return 1.0;
    double lm = 1.0;        // L_0
    double l = 1.0 - y;     // L_1
    for (unsigned k = 1; k < n; ++k) {
        const double lp = ((2.0 * k + 1.0 - y) * l - k * lm) / (k + 1.0);
        lm = l;
        l = lp;
    }
    return l;
}

double laguerre_log(unsigned n, double y) {
    // L_n(y) = sum_k C(n,k) (-y)^k / k!;  for y <= 0 every term is >= 0.
    if (y > 0.0)
        throw ValidationError("y", "laguerre_log requires y <= 0");
    if (n == 0 || y == 0.0) return 0.0;
    const double ly = std::log(-y);
    std::vector<double> log_terms(n + 1);
    double max_lt = 0.0;  // k = 0 term is 1
    for (unsigned k = 1; k <= n; ++k) {
        const double lt = std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0) -
                          2.0 * std::lgamma(k + 1.0) + k * ly;
        log_terms[k] = lt;
        max_lt = std::max(max_lt, lt);
    }
    log_terms[0] = 0.0;
    double s = 0.0;
    for (unsigned k = 0; k <= n; ++k) s += std::exp(log_terms[k] - max_lt);
    return max_lt + std::log(s);
}

double number_state_wavefunction(unsigned n, double x, const OscillatorConfig& osc) {
    const double scale = std::sqrt(osc.mass * osc.omega / osc.hbar);
    const double xi = scale * x;
    const double log_norm_ground = 0.25 * std::log(osc.mass * osc.omega /
                                                   (std::numbers::pi * osc.hbar));
    if (n <= 30) {
        const double norm = std::exp(log_norm_ground) /
                            std::sqrt(std::exp2(double(n)) * std::tgamma(n + 1.0));
        return norm * std::exp(-xi * xi / 2.0) * hermite_phys(n, xi);
    }
    const SignLog h = hermite_phys_log(n, xi);
    if (h.sign == 0) return 0.0;
    const double log_mag = log_norm_ground -
                           0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0)) -
                           xi * xi / 2.0 + h.log_mag;
    return h.sign * std::exp(log_mag);
}

std::vector<double> number_state_wavefunctions(unsigned n_max, double x,
                                               const OscillatorConfig& osc) {
    // psi_{k+1} = sqrt(2/(k+1)) xi psi_k - sqrt(k/(k+1)) psi_{k-1}; bounded, no overflow.
    const double xi = std::sqrt(osc.mass * osc.omega / osc.hbar) * x;
    std::vector<double> psi(n_max + 1);
    psi[0] = std::pow(osc.mass * osc.omega / (std::numbers::pi * osc.hbar), 0.25) *
             std::exp(-xi * xi / 2.0);
    if (n_max == 0) return psi;
    psi[1] = std::sqrt(2.0) * xi * psi[0];
    for (unsigned k = 1; k < n_max; ++k)
        psi[k + 1] = std::sqrt(2.0 / (k + 1.0)) * xi * psi[k] -
                     std::sqrt(double(k) / (k + 1.0)) * psi[k - 1];
    return psi;
}

QuadratureRule gauss_hermite_rule(unsigned order) {
    if (order < 1 || order > 512)
        throw ValidationError("order", "must be in [1, 512]");
    const unsigned n = order;
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.total_weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = std::sqrt(std::numbers::pi);
        rule.total_weights[0] = rule.weights[0];
        return rule;
    }

    // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix (zero diagonal,
    // off-diagonal sqrt(j/2)), weight_i = sqrt(pi) * (first eigenvector entry)^2.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (unsigned j = 1; j < n; ++j) {
        const double b = std::sqrt(j / 2.0);
        jacobi(j - 1, j) = b;
        jacobi(j, j - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    for (unsigned i = 0; i < n; ++i) {
        const double z = solver.eigenvalues()(i);  // ascending
        rule.nodes[i] = z;
        // w = 2 / p'_n(z)^2 with the orthonormal recurrence, in the log domain;
        // eigenvector-based weights lose relative accuracy once they underflow.
        double p1 = pim4, p2 = 0.0, log_scale = 0.0;
        for (unsigned j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            const double mag = std::max(std::abs(p1), std::abs(p2));
            if (mag > 1e250) {
                p1 /= 1e250;
                p2 /= 1e250;
                log_scale += std::log(1e250);
            }
        }
        const double pp = std::sqrt(2.0 * n) * p2;
        const double log_w = std::numbers::ln2 - 2.0 * (std::log(std::abs(pp)) + log_scale);
        rule.weights[i] = std::exp(log_w);
        rule.total_weights[i] = std::exp(log_w + z * z);
    }
    // enforce exact symmetry
    for (unsigned i = 0; i < n / 2; ++i) {
        const double z = (rule.nodes[n - 1 - i] - rule.nodes[i]) / 2.0;
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        const double w = (rule.weights[i] + rule.weights[n - 1 - i]) / 2.0;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
        const double tw = (rule.total_weights[i] + rule.total_weights[n - 1 - i]) / 2.0;
        rule.total_weights[i] = rule.total_weights[n - 1 - i] = tw;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (unsigned i = 0; i < order; ++i) s += weights[i] * f(nodes[i]);
    return s;
}

double QuadratureRule::integrate_about(double center, double scale,
                                       const std::function<double(double)>& g) const {
    const double h = std::numbers::sqrt2 * scale;
    double s = 0.0;
    for (unsigned i = 0; i < order; ++i)
        s += total_weights[i] * g(center + h * nodes[i]);
    return h * s;
}

complex QuadratureRule::integrate_about_complex(double center, double scale,
                                                const std::function<complex(double)>& g) const {
    const double h = std::numbers::sqrt2 * scale;
    complex s = 0.0;
    for (unsigned i = 0; i < order; ++i)
        s += total_weights[i] * g(center + h * nodes[i]);
    return h * s;
}

}  // namespace tcts
