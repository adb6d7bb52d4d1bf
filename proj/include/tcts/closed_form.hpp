#ifndef TCTS_CLOSED_FORM_HPP
#define TCTS_CLOSED_FORM_HPP

#include "tcts/core_model.hpp"

namespace tcts {
namespace closed_form {

/// A = e^{i omega t}; the rotating-frame amplitude alpha/A drives every
/// time-dependent quantity.
struct PhaseFactor {
    double t = 0.0;
    complex A{1.0, 0.0};

    static PhaseFactor at(double t, const OscillatorConfig& osc) {
        return {t, std::polar(1.0, osc.omega * t)};
    }
};

/// Scalar snapshot of all first and second moments at one time.
struct MomentsReport {
    double t = 0.0;
    double x_mean = 0.0;
    double p_mean = 0.0;
    double x_var = 0.0;
    double p_var = 0.0;
    double n_mean = 0.0;
    double n_var = 0.0;
    double uncertainty_product = 0.0;  // Dx * Dp
    double purity = 1.0;
};

/// Off-diagonal Gaussian factor of the density-matrix element. The widely
/// quoted form carries coth(2 Theta) where the derivation from the two-mode
/// wavefunction gives cosh(2 Theta); see ERRATA.md. Default is the corrected
/// form, which also stays regular at Theta = 0.
enum class OffDiagonalForm { corrected, verbatim };

complex coherent_wavefunction(double x, complex alpha, const OscillatorConfig& osc);

/// Two-mode wavefunction psi(x, x_tilde, t) of the full doubled system.
complex two_mode_wavefunction(double x, double x_tilde, double t, const StateSpec& spec);

/// rho(x', x) = int psi(x, xt) conj(psi(x', xt)) dxt, in closed form.
complex density_matrix_element(double x_prime, double x, double t, const StateSpec& spec,
                               OffDiagonalForm form = OffDiagonalForm::corrected);

double position_density(double x, double t, const StateSpec& spec);
std::pair<double, double> position_moments(double t, const StateSpec& spec);

double momentum_density(double p, double t, const StateSpec& spec);
std::pair<double, double> momentum_moments(double t, const StateSpec& spec);

/// Photon-number probability rho_nn (time-independent). Evaluated in the log
/// domain; falls back to the Poisson law below Theta = 1e-8.
double number_distribution(unsigned n, const StateSpec& spec);

std::pair<double, double> number_moments(const StateSpec& spec);

/// Tr rho^2 = 1 / cosh(2 Theta).
double purity(const StateSpec& spec);

MomentsReport moments_report(double t, const StateSpec& spec);

}  // namespace closed_form
}  // namespace tcts

#endif
