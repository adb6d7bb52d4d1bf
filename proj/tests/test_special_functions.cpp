#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tcts/special_functions.hpp"

using namespace tcts;

namespace {

const OscillatorConfig kNatural = OscillatorConfig::natural();

// H_n coefficients by the explicit recurrence on coefficient vectors, used as
// an independent check of the value recurrence.
std::vector<double> hermite_coeffs(unsigned n) {
    std::vector<std::vector<double>> h(n + 1);
    h[0] = {1.0};
    if (n >= 1) h[1] = {0.0, 2.0};
    for (unsigned k = 2; k <= n; ++k) {
        h[k].assign(k + 1, 0.0);
        for (unsigned j = 0; j < h[k - 1].size(); ++j) h[k][j + 1] += 2.0 * h[k - 1][j];
        for (unsigned j = 0; j < h[k - 2].size(); ++j) h[k][j] -= 2.0 * (k - 1) * h[k - 2][j];
    }
    return h[n];
}

double eval_poly(const std::vector<double>& c, double y) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
    return v;
}

double laguerre_series(unsigned n, double y) {
    // sum_k C(n,k) (-y)^k / k!, all terms positive for y <= 0
    double sum = 0.0, binom = 1.0, fact = 1.0, pow_ = 1.0;
    for (unsigned k = 0; k <= n; ++k) {
        sum += binom * pow_ / fact;
        binom = binom * (n - k) / (k + 1.0);
        fact *= (k + 1.0);
        pow_ *= -y;
    }
    return sum;
}

}  // namespace

TEST_CASE("hermite_phys base cases and explicit values") {
    CHECK(hermite_phys(0, 3.7) == 1.0);
    CHECK(hermite_phys(0, -100.0) == 1.0);
    CHECK(hermite_phys(2, 1.0) == doctest::Approx(2.0));  // 4y^2 - 2
    CHECK(hermite_phys(10, 0.3) ==
          doctest::Approx(eval_poly(hermite_coeffs(10), 0.3)).epsilon(1e-10));
}

TEST_CASE("hermite recurrence matches coefficient expansion for n <= 15") {
    for (unsigned n = 0; n <= 15; ++n) {
        const auto coeffs = hermite_coeffs(n);
        for (double y = -5.0; y <= 5.0; y += 1.25) {
            const double direct = eval_poly(coeffs, y);
            const double rec = hermite_phys(n, y);
            CHECK(rec == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("hermite_phys_log agrees with plain evaluation and survives n = 512") {
    for (unsigned n : {0u, 1u, 5u, 20u}) {
        for (double y : {-2.3, 0.0, 0.4, 3.1}) {
            const SignLog sl = hermite_phys_log(n, y);
            CHECK(sl.value() == doctest::Approx(hermite_phys(n, y)).epsilon(1e-12));
        }
    }
    const SignLog big = hermite_phys_log(512, 1.5);
    CHECK(big.sign != 0);
    CHECK(std::isfinite(big.log_mag));
    CHECK(big.log_mag > 500.0);  // far beyond double range as a plain value
}

TEST_CASE("laguerre known values") {
    CHECK(laguerre(0, 17.0) == 1.0);
    CHECK(laguerre(1, -2.0) == doctest::Approx(3.0));
    CHECK(laguerre(5, -3.7) == doctest::Approx(laguerre_series(5, -3.7)).epsilon(1e-12));
    for (unsigned n : {0u, 1u, 3u, 10u, 40u}) CHECK(laguerre(n, 0.0) == 1.0);
}

TEST_CASE("laguerre_log matches log of the recurrence value") {
    for (unsigned n : {1u, 5u, 12u, 30u}) {
        for (double y : {-0.01, -1.0, -8.5}) {
            CHECK(laguerre_log(n, y) == doctest::Approx(std::log(laguerre(n, y))).epsilon(1e-12));
        }
    }
    CHECK(laguerre_log(3, 0.0) == 0.0);
    CHECK_THROWS_AS(laguerre_log(3, 0.5), ValidationError);
    // large n * |y| where the plain value overflows a double
    CHECK(std::isfinite(laguerre_log(400, -50.0)));
}

TEST_CASE("number_state_wavefunction ground and first excited state") {
    CHECK(number_state_wavefunction(0, 0.0, kNatural) ==
          doctest::Approx(std::pow(1.0 / std::numbers::pi, 0.25)).epsilon(1e-14));
    CHECK(number_state_wavefunction(1, 0.0, kNatural) == doctest::Approx(0.0));
}

TEST_CASE("number state normalization via quadrature") {
    const QuadratureRule rule = gauss_hermite_rule(200);
    const double norm7 = rule.integrate_about(0.0, 1.0, [](double x) {
        const double psi = number_state_wavefunction(7, x, kNatural);
        return psi * psi;
    });
    CHECK(norm7 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("number states are pairwise orthonormal up to n = 20") {
    const QuadratureRule rule = gauss_hermite_rule(200);
    const unsigned n_max = 20;
    // accumulate all pairwise products in one pass over the nodes
    std::vector<double> gram((n_max + 1) * (n_max + 1), 0.0);
    const double h = std::numbers::sqrt2;
    for (unsigned i = 0; i < rule.order; ++i) {
        const auto psi = number_state_wavefunctions(n_max, h * rule.nodes[i], kNatural);
        for (unsigned m = 0; m <= n_max; ++m)
            for (unsigned n = m; n <= n_max; ++n)
                gram[m * (n_max + 1) + n] += rule.total_weights[i] * psi[m] * psi[n];
    }
    for (unsigned m = 0; m <= n_max; ++m) {
        for (unsigned n = m; n <= n_max; ++n) {
            const double inner = h * gram[m * (n_max + 1) + n];
            CHECK(std::abs(inner - (m == n ? 1.0 : 0.0)) < 1e-9);
        }
    }
}

TEST_CASE("number_state_wavefunctions matches single-n evaluation") {
    for (double x : {-3.2, 0.0, 1.7}) {
        const auto psi = number_state_wavefunctions(40, x, kNatural);
        for (unsigned n : {0u, 3u, 17u, 40u}) {
            CHECK(psi[n] == doctest::Approx(number_state_wavefunction(n, x, kNatural))
                                .epsilon(1e-11));
        }
    }
}

TEST_CASE("gauss_hermite_rule structure") {
    CHECK_THROWS_AS(gauss_hermite_rule(0), ValidationError);
    CHECK_THROWS_AS(gauss_hermite_rule(513), ValidationError);

    const QuadratureRule one = gauss_hermite_rule(1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));

    for (unsigned order : {2u, 7u, 64u, 200u}) {
        const QuadratureRule rule = gauss_hermite_rule(order);
        REQUIRE(rule.nodes.size() == order);
        REQUIRE(rule.weights.size() == order);
        for (unsigned i = 1; i < order; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        for (double w : rule.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("quadrature integrates gaussian moments") {
    const QuadratureRule r20 = gauss_hermite_rule(20);
    CHECK(r20.integrate([](double y) { return y * y; }) ==
          doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-13));

    const QuadratureRule r64 = gauss_hermite_rule(64);
    CHECK(r64.integrate([](double y) { return std::cos(2.0 * y); }) ==
          doctest::Approx(std::sqrt(std::numbers::pi) * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("quadrature is exact for low-degree polynomials") {
    const QuadratureRule rule = gauss_hermite_rule(8);
    // int y^{2k} e^{-y^2} dy = Gamma(k + 1/2)
    const double sp = std::sqrt(std::numbers::pi);
    const double expected[] = {sp, sp / 2.0, 3.0 * sp / 4.0, 15.0 * sp / 8.0, 105.0 * sp / 16.0};
    for (unsigned k = 0; k <= 4; ++k) {
        const double got = rule.integrate([k](double y) { return std::pow(y, 2.0 * k); });
        CHECK(got == doctest::Approx(expected[k]).epsilon(1e-14));
        if (k < 4) {
            const double odd = rule.integrate([k](double y) { return std::pow(y, 2.0 * k + 1.0); });
            CHECK(std::abs(odd) < 1e-14);
        }
    }
}

TEST_CASE("integrate_about recenters and rescales") {
    const QuadratureRule rule = gauss_hermite_rule(40);
    const double mu = 1.7, sigma = 0.6;
    const double norm = rule.integrate_about(mu, sigma, [&](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-z * z / 2.0) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    });
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-13));

    const double mean = rule.integrate_about(mu, sigma, [&](double x) {
        const double z = (x - mu) / sigma;
        return x * std::exp(-z * z / 2.0) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    });
    CHECK(mean == doctest::Approx(mu).epsilon(1e-13));
}
