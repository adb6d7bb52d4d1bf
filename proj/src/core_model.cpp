#include "tcts/core_model.hpp"

#include <cmath>

namespace tcts {

namespace {

bool finite(double v) { return std::isfinite(v); }

void require_positive(double v, const char* name) {
    if (!finite(v) || v <= 0.0)
        throw ValidationError(name, "must be positive and finite, got " + std::to_string(v));
}

}  // namespace

void OscillatorConfig::validate() const {
    require_positive(mass, "mass");
    require_positive(omega, "omega");
    require_positive(hbar, "hbar");
    require_positive(kb, "kb");
    if (units == UnitSystem::natural && (mass != 1.0 || omega != 1.0 || hbar != 1.0))
        throw ValidationError("units", "natural units require mass = omega = hbar = 1");
}

void ThermalChannel::validate(const std::string& name) const {
    if (!finite(theta) || theta < 0.0)
        throw ValidationError(name, "theta must be >= 0 and finite, got " + std::to_string(theta));
}

double mean_occupancy(double theta) {
    if (!finite(theta) || theta < 0.0)
        throw ValidationError("theta", "must be >= 0 and finite");
    const double s = std::sinh(theta);
    return s * s;
}

double theta_from_temperature(double temperature, const OscillatorConfig& osc) {
    osc.validate();
    if (!finite(temperature) || temperature < 0.0)
        throw ValidationError("temperature", "must be >= 0 and finite");
    if (temperature == 0.0)
        return 0.0;  // beta -> infinity limit
    const double beta = 1.0 / (osc.kb * temperature);
    return std::atanh(std::exp(-beta * osc.hbar * osc.omega / 2.0));
}

double temperature_from_theta(double theta, const OscillatorConfig& osc) {
    osc.validate();
    if (!finite(theta) || theta < 0.0)
        throw ValidationError("theta", "must be >= 0 and finite");
    if (theta == 0.0)
        return 0.0;
    // tanh(theta) = exp(-beta hbar omega / 2)
    const double beta = -2.0 * std::log(std::tanh(theta)) / (osc.hbar * osc.omega);
    return 1.0 / (osc.kb * beta);
}

void StateSpec::validate() const {
    if (!finite(alpha.real()))
        throw ValidationError("alpha_re", "must be finite");
    if (!finite(alpha.imag()))
        throw ValidationError("alpha_im", "must be finite");
    channel1.validate("theta1");
    channel2.validate("theta2");
    osc.validate();
}

StateSpec validate_spec(StateSpec spec) {
    spec.validate();
    return spec;
}

void to_json(nlohmann::json& j, const StateSpec& spec) {
    j = nlohmann::json{{"alpha_re", spec.alpha.real()},
                       {"alpha_im", spec.alpha.imag()},
                       {"theta1", spec.channel1.theta},
                       {"theta2", spec.channel2.theta},
                       {"mass", spec.osc.mass},
                       {"omega", spec.osc.omega},
                       {"hbar", spec.osc.hbar},
                       {"units", spec.osc.units == UnitSystem::natural ? "natural" : "custom"}};
    if (spec.osc.kb != 1.0)
        j["kb"] = spec.osc.kb;
}

void from_json(const nlohmann::json& j, StateSpec& spec) {
    spec = StateSpec{};
    spec.alpha = {j.value("alpha_re", 0.0), j.value("alpha_im", 0.0)};
    spec.osc.mass = j.value("mass", 1.0);
    spec.osc.omega = j.value("omega", 1.0);
    spec.osc.hbar = j.value("hbar", 1.0);
    spec.osc.kb = j.value("kb", 1.0);
    if (j.contains("units")) {
        const std::string u = j.at("units").get<std::string>();
        if (u == "natural")
            spec.osc.units = UnitSystem::natural;
        else if (u == "custom")
            spec.osc.units = UnitSystem::custom;
        else
            throw ValidationError("units", "must be \"natural\" or \"custom\", got \"" + u + "\"");
    } else {
        spec.osc.units = (spec.osc.mass == 1.0 && spec.osc.omega == 1.0 && spec.osc.hbar == 1.0)
                             ? UnitSystem::natural
                             : UnitSystem::custom;
    }

    const bool has_theta = j.contains("theta1") || j.contains("theta2");
    const bool has_temp = j.contains("temp1") || j.contains("temp2");
    if (has_theta && has_temp)
        throw ValidationError("theta1", "theta and temp keys are mutually exclusive");
    if (has_temp) {
        spec.channel1.theta = theta_from_temperature(j.value("temp1", 0.0), spec.osc);
        spec.channel2.theta = theta_from_temperature(j.value("temp2", 0.0), spec.osc);
    } else {
        spec.channel1.theta = j.value("theta1", 0.0);
        spec.channel2.theta = j.value("theta2", 0.0);
    }
    spec.validate();
}

}  // namespace tcts
