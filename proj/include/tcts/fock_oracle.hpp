#ifndef TCTS_FOCK_ORACLE_HPP
#define TCTS_FOCK_ORACLE_HPP

#include <vector>

#include "tcts/closed_form.hpp"
#include "tcts/core_model.hpp"

namespace tcts {
namespace fock_oracle {

/// Truncation too small for the requested operation.
class CutoffError : public std::runtime_error {
public:
    CutoffError(unsigned suggested, const std::string& message)
        : std::runtime_error(message), suggested_(suggested) {}

    unsigned suggested_cutoff() const noexcept { return suggested_; }

private:
    unsigned suggested_;
};

enum class Mode { physical, tilde };

/// Two-mode amplitude tensor c[n, nt] on Fock levels 0..cutoff-1 per mode.
struct TwoModeState {
    unsigned cutoff = 0;
    std::vector<complex> amplitudes;  // row-major, index n * cutoff + nt
    double tail_mass = 0.0;           // probability in the top-2-level shells

    static TwoModeState vacuum(unsigned cutoff);

    complex& at(unsigned n, unsigned nt) { return amplitudes[n * cutoff + nt]; }
    const complex& at(unsigned n, unsigned nt) const { return amplitudes[n * cutoff + nt]; }

    double norm_squared() const;
    /// Probability weight with n >= cutoff-2 or nt >= cutoff-2.
    double shell_mass() const;
};

/// Physical-mode density matrix rho_{mn} = sum_nt c[m,nt] conj(c[n,nt]).
struct ReducedDensity {
    unsigned cutoff = 0;
    std::vector<complex> matrix;  // row-major

    complex& at(unsigned m, unsigned n) { return matrix[m * cutoff + n]; }
    const complex& at(unsigned m, unsigned n) const { return matrix[m * cutoff + n]; }

    double trace() const;
    double purity() const;  // Tr rho^2
    double hermiticity_defect() const;
    double min_eigenvalue() const;
};

/// Dense N x N lowering operator a and its adjoint, for direct matrix checks.
std::pair<std::vector<complex>, std::vector<complex>> ladder_matrices(unsigned n);

/// Displaces the given mode by beta: exp(beta b^dag - conj(beta) b), applied
/// via scaled truncated series on the amplitude tensor.
TwoModeState apply_displacement(complex beta, const TwoModeState& state, Mode mode,
                                double tail_tolerance = 1e-10);

/// Two-mode Bogoliubov transformation exp(-theta (a at - a^dag at^dag)).
TwoModeState apply_thermal(double theta, const TwoModeState& state,
                           double tail_tolerance = 1e-10);

/// Full pipeline on vacuum: thermal(theta1), displace(alpha), tilde-displace
/// (conj(alpha)), thermal(theta2).
TwoModeState build_state(const StateSpec& spec, unsigned cutoff,
                         double tail_tolerance = 1e-10);

/// Exact phases e^{-i omega t (n - nt)} of H - H~.
TwoModeState evolve(const TwoModeState& state, double t, const OscillatorConfig& osc);

ReducedDensity reduced_density(const TwoModeState& state);

closed_form::MomentsReport oracle_observables(const ReducedDensity& rho,
                                              const OscillatorConfig& osc);

double oracle_position_density(const ReducedDensity& rho, double x,
                               const OscillatorConfig& osc);
complex oracle_density_element(const ReducedDensity& rho, double x_prime, double x,
                               const OscillatorConfig& osc);
double oracle_momentum_density(const ReducedDensity& rho, double p,
                               const OscillatorConfig& osc);

/// Number distribution rho_nn straight off the reduced-density diagonal.
std::vector<double> oracle_number_distribution(const ReducedDensity& rho, unsigned n_max);

/// Cutoff heuristic from the predicted number statistics; throws when the
/// parameters would need more than 256 levels.
unsigned choose_cutoff(const StateSpec& spec, double epsilon);

/// Default cutoff, overridable through the TCTS_DEFAULT_CUTOFF environment
/// variable.
unsigned default_cutoff();

}  // namespace fock_oracle
}  // namespace tcts

#endif
