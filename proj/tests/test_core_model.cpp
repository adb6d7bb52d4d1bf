#include <doctest.h>

#include <cmath>

#include "tcts/core_model.hpp"

using namespace tcts;

namespace {
const OscillatorConfig kNatural = OscillatorConfig::natural();
}

TEST_CASE("theta_from_temperature limits and known values") {
    CHECK(theta_from_temperature(0.0, kNatural) == 0.0);

    // beta hbar omega = 2 ln 2 makes exp(-beta hbar omega / 2) = 0.5
    const double T = 1.0 / (2.0 * std::log(2.0));
    CHECK(theta_from_temperature(T, kNatural) == doctest::Approx(0.5493061443340549).epsilon(1e-12));

    // beta hbar omega = ln 4: occupancy should be 1/(e^{ln 4} - 1) = 1/3
    const double T4 = 1.0 / std::log(4.0);
    const double theta = theta_from_temperature(T4, kNatural);
    CHECK(mean_occupancy(theta) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(theta_from_temperature(-1.0, kNatural), ValidationError);
    CHECK_THROWS_AS(theta_from_temperature(std::nan(""), kNatural), ValidationError);
}

TEST_CASE("temperature_from_theta inverts theta_from_temperature") {
    CHECK(temperature_from_theta(0.0, kNatural) == 0.0);
    CHECK(temperature_from_theta(0.5493061443340549, kNatural) ==
          doctest::Approx(1.0 / (2.0 * std::log(2.0))).epsilon(1e-10));

    for (double theta : {0.1, 0.5, 1.5}) {
        const double T = temperature_from_theta(theta, kNatural);
        CHECK(theta_from_temperature(T, kNatural) == doctest::Approx(theta).epsilon(1e-12));
    }

    CHECK_THROWS_AS(temperature_from_theta(-0.1, kNatural), ValidationError);
}

TEST_CASE("conversions are strictly increasing") {
    double prev = theta_from_temperature(0.05, kNatural);
    for (double T = 0.1; T <= 3.0; T += 0.1) {
        const double cur = theta_from_temperature(T, kNatural);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = 0.0;
    for (double theta = 0.1; theta <= 3.0; theta += 0.1) {
        const double cur = temperature_from_theta(theta, kNatural);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("mean_occupancy values and identity") {
    CHECK(mean_occupancy(0.0) == 0.0);
    CHECK(mean_occupancy(std::atanh(0.5)) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(mean_occupancy(1.0) == doctest::Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));

    for (double theta : {0.0, 0.2, 0.7, 1.3, 2.5}) {
        const double identity = (std::cosh(2.0 * theta) - 1.0) / 2.0;
        CHECK(mean_occupancy(theta) == doctest::Approx(identity).epsilon(1e-14));
    }
}

TEST_CASE("validate_spec accepts valid specs and names bad fields") {
    StateSpec spec;
    spec.alpha = {1.0, 0.0};
    CHECK_NOTHROW(validate_spec(spec));
    CHECK(spec.big_theta() == 0.0);

    spec.alpha = {1.0, 0.5};
    spec.channel1.theta = 0.5493;
    spec.channel2.theta = 0.3;
    CHECK_NOTHROW(validate_spec(spec));
    CHECK(spec.big_theta() == doctest::Approx(0.8493).epsilon(1e-15));

    spec.channel1.theta = -0.1;
    try {
        validate_spec(spec);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "theta1");
    }

    spec.channel1.theta = 0.0;
    spec.osc.mass = -2.0;
    spec.osc.units = UnitSystem::custom;
    CHECK_THROWS_AS(validate_spec(spec), ValidationError);
}

TEST_CASE("natural units pin the oscillator parameters") {
    OscillatorConfig osc;
    osc.mass = 2.0;  // still flagged natural
    CHECK_THROWS_AS(osc.validate(), ValidationError);
    osc.units = UnitSystem::custom;
    CHECK_NOTHROW(osc.validate());
    CHECK(osc.x_scale() == doctest::Approx(std::sqrt(1.0 / 4.0)));
    CHECK(osc.p_scale() == doctest::Approx(std::sqrt(1.0)));
}

TEST_CASE("json round trip") {
    StateSpec spec;
    spec.alpha = {1.0, -0.25};
    spec.channel1.theta = 0.4;
    spec.channel2.theta = 0.1;

    nlohmann::json j = spec;
    StateSpec back = j.get<StateSpec>();
    CHECK(back.alpha == spec.alpha);
    CHECK(back.theta1() == spec.theta1());
    CHECK(back.theta2() == spec.theta2());
    CHECK(back.osc.units == UnitSystem::natural);
}

TEST_CASE("json temperature keys") {
    nlohmann::json j{{"alpha_re", 1.0}, {"temp1", 1.0 / (2.0 * std::log(2.0))}, {"temp2", 0.0}};
    StateSpec spec = j.get<StateSpec>();
    CHECK(spec.theta1() == doctest::Approx(std::atanh(0.5)).epsilon(1e-12));
    CHECK(spec.theta2() == 0.0);

    nlohmann::json bad{{"theta1", 0.1}, {"temp2", 1.0}};
    CHECK_THROWS_AS(bad.get<StateSpec>(), ValidationError);

    nlohmann::json bad_units{{"units", "si"}};
    CHECK_THROWS_AS(bad_units.get<StateSpec>(), ValidationError);
}

TEST_CASE("rescaling units moves x and p scales but not dimensionless results") {
    OscillatorConfig osc;
    osc.units = UnitSystem::custom;
    osc.mass = 3.0;
    osc.omega = 0.5;
    osc.hbar = 2.0;
    CHECK(osc.x_scale() == doctest::Approx(std::sqrt(2.0 / (2.0 * 3.0 * 0.5))));
    CHECK(osc.p_scale() == doctest::Approx(std::sqrt(3.0 * 2.0 * 0.5 / 2.0)));
    // the dimensionless combination x_scale * p_scale = hbar / 2
    CHECK(osc.x_scale() * osc.p_scale() == doctest::Approx(osc.hbar / 2.0).epsilon(1e-14));
}
