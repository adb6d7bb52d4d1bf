#ifndef TCTS_SPECIAL_FUNCTIONS_HPP
#define TCTS_SPECIAL_FUNCTIONS_HPP

#include <functional>
#include <vector>

#include "tcts/core_model.hpp"

namespace tcts {

/// Value represented as sign * exp(log_mag); avoids overflow for large n.
struct SignLog {
    int sign = 0;          // -1, 0, +1
    double log_mag = 0.0;  // meaningless when sign == 0

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
};

/// Physicists' Hermite polynomial H_n(y) by the three-term recurrence.
double hermite_phys(unsigned n, double y);

/// H_n(y) as (sign, log magnitude); safe for n up to 512.
SignLog hermite_phys_log(unsigned n, double y);

/// Order-zero Laguerre polynomial L_n(y) by the three-term recurrence.
double laguerre(unsigned n, double y);

/// log L_n(y) for y <= 0, where every series term is nonnegative.
double laguerre_log(unsigned n, double y);

/// Position wavefunction <x|n> of the oscillator number state (real-valued).
double number_state_wavefunction(unsigned n, double x, const OscillatorConfig& osc);

/// <x|0>..<x|n_max> in one stable recurrence pass.
std::vector<double> number_state_wavefunctions(unsigned n_max, double x,
                                               const OscillatorConfig& osc);

/// Gauss-Hermite rule for integrals of the form  int e^{-y^2} f(y) dy.
struct QuadratureRule {
    std::vector<double> nodes;          // ascending
    std::vector<double> weights;        // w_i (may underflow to 0 for huge order)
    std::vector<double> total_weights;  // w_i * e^{node_i^2}, always representable
    unsigned order = 0;

    /// Sum of w_i f(node_i) ~= int e^{-y^2} f(y) dy.
    double integrate(const std::function<double(double)>& f) const;

    /// int g(x) dx for g decaying at least like exp(-(x-center)^2/(2 scale^2)).
    double integrate_about(double center, double scale,
                           const std::function<double(double)>& g) const;
    complex integrate_about_complex(double center, double scale,
                                    const std::function<complex(double)>& g) const;
};

/// Nodes from the Jacobi matrix eigenvalues, weights from the orthonormal
/// recurrence evaluated in the log domain.
QuadratureRule gauss_hermite_rule(unsigned order);

}  // namespace tcts

#endif
