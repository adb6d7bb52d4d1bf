#ifndef TCTS_CORE_MODEL_HPP
#define TCTS_CORE_MODEL_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tcts {

using complex = std::complex<double>;

/// Input validation failure; carries the name of the offending field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class UnitSystem { natural, custom };

/// Oscillator parameters m, omega, hbar (all 1 in natural units) plus the
/// Boltzmann constant used for temperature <-> Bogoliubov-angle conversions.
struct OscillatorConfig {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double kb = 1.0;
    UnitSystem units = UnitSystem::natural;

    static OscillatorConfig natural() { return {}; }

    double x_scale() const { return std::sqrt(hbar / (2.0 * mass * omega)); }
    double p_scale() const { return std::sqrt(mass * hbar * omega / 2.0); }

    void validate() const;
};

/// One thermal stage, parameterized by the dimensionless Bogoliubov angle.
struct ThermalChannel {
    double theta = 0.0;

    void validate(const std::string& name) const;
};

/// Mean occupancy sinh^2(theta) of a thermal channel.
double mean_occupancy(double theta);

/// theta = atanh(exp(-hbar*omega / (2 kb T))); T = 0 maps to theta = 0.
double theta_from_temperature(double temperature, const OscillatorConfig& osc);

/// Inverse of theta_from_temperature.
double temperature_from_theta(double theta, const OscillatorConfig& osc);

/// Full state specification: complex amplitude alpha, thermal channel applied
/// before the displacement (theta1) and after it (theta2), and the oscillator.
struct StateSpec {
    complex alpha{0.0, 0.0};
    ThermalChannel channel1;  // before displacement
    ThermalChannel channel2;  // after displacement
    OscillatorConfig osc;

    double theta1() const { return channel1.theta; }
    double theta2() const { return channel2.theta; }
    /// Combined angle governing all variances.
    double big_theta() const { return channel1.theta + channel2.theta; }

    void validate() const;
};

/// Validates and returns the spec; throws ValidationError naming the field.
StateSpec validate_spec(StateSpec spec);

void to_json(nlohmann::json& j, const StateSpec& spec);
void from_json(const nlohmann::json& j, StateSpec& spec);

}  // namespace tcts

#endif
