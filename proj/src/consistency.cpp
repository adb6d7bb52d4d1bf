#include "tcts/consistency.hpp"

#include <chrono>
#include <cmath>

#include "tcts/special_functions.hpp"

namespace tcts {
namespace consistency {

namespace {

double perturbation_for(const Perturbations& perturb, const std::string& name) {
    const auto it = perturb.find(name);
    return it == perturb.end() ? 0.0 : it->second;
}

ComparisonEntry scalar_entry(const std::string& name, double closed, double oracle,
                             double rel_tol, const Perturbations& perturb) {
    ComparisonEntry e;
    e.name = name;
    e.closed_value = closed + perturbation_for(perturb, name);
    e.oracle_value = oracle;
    e.abs_dev = std::abs(e.closed_value - oracle);
    e.rel_dev = e.abs_dev / std::max(std::abs(oracle), 1.0);
    e.tolerance = rel_tol;
    e.pass = std::isfinite(e.rel_dev) && e.rel_dev <= rel_tol;
    return e;
}

// Grid quantity: keep the worst-deviating sample pair.
ComparisonEntry grid_entry(const std::string& name,
                           const std::vector<std::pair<double, double>>& samples,
                           double abs_tol, const Perturbations& perturb) {
    const double delta = perturbation_for(perturb, name);
    ComparisonEntry e;
    e.name = name;
    e.tolerance = abs_tol;
    for (const auto& [closed, oracle] : samples) {
        const double c = closed + delta;
        const double ad = std::abs(c - oracle);
        if (ad >= e.abs_dev) {
            e.abs_dev = ad;
            e.closed_value = c;
            e.oracle_value = oracle;
        }
    }
    e.rel_dev = e.abs_dev / std::max(std::abs(e.oracle_value), 1.0);
    e.pass = std::isfinite(e.abs_dev) && e.abs_dev <= abs_tol;
    return e;
}

void finalize(ComparisonReport& report) {
    report.overall_pass = true;
    for (const auto& e : report.entries) report.overall_pass &= e.pass;
}

}  // namespace

const ComparisonEntry* ComparisonReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

ComparisonReport compare_point(const StateSpec& spec, double t, unsigned cutoff,
                               const Tolerances& tol, const Perturbations& perturb) {
    const auto start = std::chrono::steady_clock::now();
    spec.validate();

    ComparisonReport report;
    report.spec = spec;
    report.t = t;
    report.cutoff = cutoff;

    auto state = fock_oracle::build_state(spec, cutoff, tol.oracle_tail);
    state = fock_oracle::evolve(state, t, spec.osc);
    report.tail_mass = state.tail_mass;
    const auto rho = fock_oracle::reduced_density(state);

    const auto closed = closed_form::moments_report(t, spec);
    const auto oracle = fock_oracle::oracle_observables(rho, spec.osc);
    report.entries.push_back(scalar_entry("x_mean", closed.x_mean, oracle.x_mean,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("x_var", closed.x_var, oracle.x_var,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("p_mean", closed.p_mean, oracle.p_mean,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("p_var", closed.p_var, oracle.p_var,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("n_mean", closed.n_mean, oracle.n_mean,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("n_var", closed.n_var, oracle.n_var,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("purity", closed.purity, oracle.purity,
                                          tol.moments_rel, perturb));
    report.entries.push_back(scalar_entry("uncertainty_product", closed.uncertainty_product,
                                          oracle.uncertainty_product, tol.moments_rel,
                                          perturb));

    // Number distribution against the reduced-density diagonal.
    {
        const unsigned n_max = std::min(60u, cutoff - 4);
        std::vector<std::pair<double, double>> samples;
        double closed_sum = 0.0;
        for (unsigned n = 0; n <= n_max; ++n) {
            samples.emplace_back(closed_form::number_distribution(n, spec),
                                 rho.at(n, n).real());
            closed_sum += samples.back().first;
        }
        report.entries.push_back(grid_entry("number_distribution", samples,
                                            tol.distribution_abs, perturb));
        // tail-bounded normalization of the closed-form law
        for (unsigned n = n_max + 1; n <= 2048; ++n) {
            const double p = closed_form::number_distribution(n, spec);
            closed_sum += p;
            if (p < 1e-16 && n > 2 * n_max) break;
        }
        report.entries.push_back(
            scalar_entry("number_norm", closed_sum, 1.0, tol.normalization_abs, perturb));
    }

    // Densities on 11-point grids spanning mean +- 4 sigma.
    const auto [mu_x, var_x] = closed_form::position_moments(t, spec);
    const auto [mu_p, var_p] = closed_form::momentum_moments(t, spec);
    const double sx = std::sqrt(var_x), sp = std::sqrt(var_p);
    {
        std::vector<std::pair<double, double>> pos, mom;
        for (int i = 0; i < 11; ++i) {
            const double u = -4.0 + 0.8 * i;
            const double x = mu_x + u * sx;
            pos.emplace_back(closed_form::position_density(x, t, spec),
                             fock_oracle::oracle_position_density(rho, x, spec.osc));
            const double p = mu_p + u * sp;
            mom.emplace_back(closed_form::momentum_density(p, t, spec),
                             fock_oracle::oracle_momentum_density(rho, p, spec.osc));
        }
        report.entries.push_back(grid_entry("position_density", pos, tol.density_abs, perturb));
        report.entries.push_back(grid_entry("momentum_density", mom, tol.density_abs, perturb));
    }

    // Density-matrix elements at 9 (x', x) pairs around the mean; compare
    // moduli of complex deviations through their real and imaginary parts.
    {
        std::vector<std::pair<double, double>> samples;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                const double xp = mu_x + i * sx;
                const double x = mu_x + j * sx;
                const complex c = closed_form::density_matrix_element(xp, x, t, spec);
                const complex o = fock_oracle::oracle_density_element(rho, xp, x, spec.osc);
                samples.emplace_back(c.real(), o.real());
                samples.emplace_back(c.imag(), o.imag());
            }
        report.entries.push_back(grid_entry("density_matrix", samples, tol.density_abs, perturb));
    }

    // Normalization integrals of the closed-form densities by quadrature.
    {
        static const QuadratureRule rule = gauss_hermite_rule(200);
        const double ix = rule.integrate_about(
            mu_x, 1.25 * sx, [&](double x) { return closed_form::position_density(x, t, spec); });
        const double ip = rule.integrate_about(
            mu_p, 1.25 * sp, [&](double p) { return closed_form::momentum_density(p, t, spec); });
        report.entries.push_back(
            scalar_entry("position_norm", ix, 1.0, tol.normalization_abs, perturb));
        report.entries.push_back(
            scalar_entry("momentum_norm", ip, 1.0, tol.normalization_abs, perturb));
    }

    finalize(report);
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SweepResult sweep_compare(const std::vector<complex>& alphas,
                          const std::vector<double>& theta1s,
                          const std::vector<double>& theta2s,
                          const std::vector<double>& times, unsigned cutoff,
                          const Tolerances& tol) {
    if (alphas.empty() || theta1s.empty() || theta2s.empty() || times.empty())
        throw ValidationError("grid", "all parameter grids must be nonempty");
    SweepResult result;
    for (const complex& alpha : alphas)
        for (double th1 : theta1s)
            for (double th2 : theta2s)
                for (double t : times) {
                    StateSpec spec;
                    spec.alpha = alpha;
                    spec.channel1.theta = th1;
                    spec.channel2.theta = th2;
                    try {
                        result.reports.push_back(compare_point(spec, t, cutoff, tol));
                    } catch (const fock_oracle::CutoffError& err) {
                        ComparisonReport failed;
                        failed.spec = spec;
                        failed.t = t;
                        failed.cutoff = cutoff;
                        ComparisonEntry e;
                        e.name = std::string("cutoff_error: ") + err.what();
                        e.pass = false;
                        failed.entries.push_back(e);
                        failed.overall_pass = false;
                        result.reports.push_back(std::move(failed));
                    }
                }
    auto& s = result.summary;
    s.points = unsigned(result.reports.size());
    s.all_pass = true;
    for (const auto& r : result.reports) {
        if (!r.overall_pass) ++s.failed_points;
        s.all_pass &= r.overall_pass;
        for (const auto& e : r.entries) {
            auto& wa = s.worst_abs_dev[e.name];
            wa = std::max(wa, e.abs_dev);
            auto& wr = s.worst_rel_dev[e.name];
            wr = std::max(wr, e.rel_dev);
        }
    }
    return result;
}

ComparisonReport reduction_checks(const StateSpec& spec) {
    spec.validate();
    ComparisonReport report;
    report.spec = spec;
    report.cutoff = fock_oracle::default_cutoff();

    const double rel = 1e-8;
    const complex alpha = spec.alpha;
    const OscillatorConfig& osc = spec.osc;

    // (a) theta1 = 0: thermalized coherent state, oracle pipeline without the
    // first thermal stage must agree with the closed forms for (alpha, 0, th2).
    {
        StateSpec a = spec;
        a.channel1.theta = 0.0;
        const ComparisonReport sub = compare_point(a, 0.0, report.cutoff);
        ComparisonEntry e;
        e.name = "theta1_zero_reduction";
        e.pass = sub.overall_pass;
        e.tolerance = rel;
        report.entries.push_back(e);
    }

    // (b) theta2 = 0: coherent thermal state; mean loses the e^{theta2} factor
    // and the number variance reduces to cosh(2 th1)|alpha|^2 + sinh^2 th1 cosh^2 th1.
    {
        StateSpec b = spec;
        b.channel2.theta = 0.0;
        const double th1 = b.theta1();
        const auto [xm, xv] = closed_form::position_moments(0.0, b);
        report.entries.push_back(scalar_entry(
            "theta2_zero_x_mean", xm, osc.x_scale() * 2.0 * alpha.real(), rel, {}));
        report.entries.push_back(scalar_entry(
            "theta2_zero_x_var", xv, osc.x_scale() * osc.x_scale() * std::cosh(2.0 * th1),
            rel, {}));
        const auto [nm, nv] = closed_form::number_moments(b);
        const double sh = std::sinh(th1), ch = std::cosh(th1);
        report.entries.push_back(scalar_entry(
            "theta2_zero_n_var",
            nv, std::cosh(2.0 * th1) * std::norm(alpha) + sh * sh * ch * ch, rel, {}));
        (void)nm;
    }

    // (c) theta1 = theta2 = 0: exact coherent-state statistics.
    {
        StateSpec c = spec;
        c.channel1.theta = 0.0;
        c.channel2.theta = 0.0;
        const auto [nm, nv] = closed_form::number_moments(c);
        report.entries.push_back(scalar_entry("coherent_n_mean", nm, std::norm(alpha), rel, {}));
        report.entries.push_back(scalar_entry("coherent_n_var", nv, std::norm(alpha), rel, {}));
        const auto r = closed_form::moments_report(0.0, c);
        report.entries.push_back(scalar_entry("coherent_uncertainty", r.uncertainty_product,
                                              osc.hbar / 2.0, rel, {}));
        report.entries.push_back(scalar_entry("coherent_purity", r.purity, 1.0, rel, {}));
    }

    finalize(report);
    return report;
}

namespace {

nlohmann::json entry_json(const ComparisonEntry& e) {
    return {{"name", e.name},           {"closed_value", e.closed_value},
            {"oracle_value", e.oracle_value}, {"abs_dev", e.abs_dev},
            {"rel_dev", e.rel_dev},     {"tolerance", e.tolerance},
            {"pass", e.pass}};
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json spec_j;
    tcts::to_json(spec_j, report.spec);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) entries.push_back(entry_json(e));
    return {{"spec", spec_j},
            {"t", report.t},
            {"cutoff", report.cutoff},
            {"tail_mass", report.tail_mass},
            {"entries", entries},
            {"overall_pass", report.overall_pass},
            {"wall_time_seconds", report.wall_time_seconds}};
}

nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : result.reports) reports.push_back(to_json(r));
    return {{"reports", reports},
            {"summary",
             {{"points", result.summary.points},
              {"failed_points", result.summary.failed_points},
              {"all_pass", result.summary.all_pass},
              {"worst_abs_dev", result.summary.worst_abs_dev},
              {"worst_rel_dev", result.summary.worst_rel_dev}}}};
}

}  // namespace consistency
}  // namespace tcts
