#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcts/closed_form.hpp"
#include "tcts/consistency.hpp"
#include "tcts/core_model.hpp"
#include "tcts/fock_oracle.hpp"

namespace {

using namespace tcts;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonOpts {
    std::optional<double> alpha_re, alpha_im, theta1, theta2, temp1, temp2;
    std::optional<double> mass, omega, hbar, kb;
    std::string spec_file;
    std::string out_path;
    std::string format = "csv";
    int precision = 12;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha-re", o.alpha_re, "Real part of alpha");
    cmd->add_option("--alpha-im", o.alpha_im, "Imaginary part of alpha");
    cmd->add_option("--theta1", o.theta1, "Bogoliubov angle before displacement");
    cmd->add_option("--theta2", o.theta2, "Bogoliubov angle after displacement");
    cmd->add_option("--temp1", o.temp1, "Temperature before displacement (excludes --theta1)");
    cmd->add_option("--temp2", o.temp2, "Temperature after displacement (excludes --theta2)");
    cmd->add_option("--mass", o.mass, "Oscillator mass");
    cmd->add_option("--omega", o.omega, "Angular frequency");
    cmd->add_option("--hbar", o.hbar, "Reduced Planck constant");
    cmd->add_option("--kb", o.kb, "Boltzmann constant for temperature conversion");
    cmd->add_option("--spec", o.spec_file, "State specification JSON file");
    cmd->add_option("--out", o.out_path, "Output path (stdout when omitted)");
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--precision", o.precision, "Significant digits in output")
        ->check(CLI::Range(1, 17));
}

StateSpec resolve_spec(const CommonOpts& o) {
    StateSpec spec;
    if (!o.spec_file.empty()) {
        std::ifstream in(o.spec_file);
        if (!in) throw ValidationError("spec", "cannot open file " + o.spec_file);
        nlohmann::json j;
        in >> j;
        spec = j.get<StateSpec>();
    }
    if (o.mass) spec.osc.mass = *o.mass;
    if (o.omega) spec.osc.omega = *o.omega;
    if (o.hbar) spec.osc.hbar = *o.hbar;
    if (o.kb) spec.osc.kb = *o.kb;
    if (o.mass || o.omega || o.hbar)
        spec.osc.units = (spec.osc.mass == 1.0 && spec.osc.omega == 1.0 && spec.osc.hbar == 1.0)
                             ? UnitSystem::natural
                             : UnitSystem::custom;
    if (o.alpha_re || o.alpha_im)
        spec.alpha = {o.alpha_re.value_or(spec.alpha.real()),
                      o.alpha_im.value_or(spec.alpha.imag())};
    if ((o.temp1 && o.theta1) || (o.temp2 && o.theta2))
        throw ValidationError("theta1", "theta and temp flags are mutually exclusive");
    if (o.theta1) spec.channel1.theta = *o.theta1;
    if (o.theta2) spec.channel2.theta = *o.theta2;
    if (o.temp1) spec.channel1.theta = theta_from_temperature(*o.temp1, spec.osc);
    if (o.temp2) spec.channel2.theta = theta_from_temperature(*o.temp2, spec.osc);
    return validate_spec(spec);
}

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_output(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out_path, std::ios::binary);
        if (!out) throw ValidationError("out", "cannot open file " + o.out_path);
        out << text;
    }
}

std::string moments_csv(const closed_form::MomentsReport& r, int prec) {
    std::ostringstream os;
    os << "t,x_mean,p_mean,x_var,p_var,n_mean,n_var,uncertainty_product,purity\n"
       << fmt(r.t, prec) << ',' << fmt(r.x_mean, prec) << ',' << fmt(r.p_mean, prec) << ','
       << fmt(r.x_var, prec) << ',' << fmt(r.p_var, prec) << ',' << fmt(r.n_mean, prec) << ','
       << fmt(r.n_var, prec) << ',' << fmt(r.uncertainty_product, prec) << ','
       << fmt(r.purity, prec) << '\n';
    return os.str();
}

nlohmann::json moments_json(const closed_form::MomentsReport& r) {
    return {{"t", r.t},           {"x_mean", r.x_mean}, {"p_mean", r.p_mean},
            {"x_var", r.x_var},   {"p_var", r.p_var},   {"n_mean", r.n_mean},
            {"n_var", r.n_var},   {"uncertainty_product", r.uncertainty_product},
            {"purity", r.purity}};
}

int run_moments(const CommonOpts& o, double t) {
    const StateSpec spec = resolve_spec(o);
    const auto r = closed_form::moments_report(t, spec);
    if (o.format == "csv")
        write_output(o, moments_csv(r, o.precision));
    else
        write_output(o, moments_json(r).dump(2) + "\n");
    return kExitOk;
}

int run_density(const CommonOpts& o, const std::string& obs, double min, double max,
                unsigned points, int nmax, double t) {
    const StateSpec spec = resolve_spec(o);
    std::vector<std::pair<double, double>> rows;
    const char* header = "coordinate,density";
    if (obs == "n") {
        if (nmax < 0) throw ValidationError("nmax", "required for --obs n and must be >= 0");
        header = "n,probability";
        for (int n = 0; n <= nmax; ++n)
            rows.emplace_back(n, closed_form::number_distribution(unsigned(n), spec));
    } else {
        if (!(min < max)) throw ValidationError("grid", "requires min < max");
        if (points < 2) throw ValidationError("points", "must be >= 2");
        const double step = (max - min) / (points - 1);
        for (unsigned i = 0; i < points; ++i) {
            const double v = min + step * i;
            rows.emplace_back(v, obs == "x" ? closed_form::position_density(v, t, spec)
                                            : closed_form::momentum_density(v, t, spec));
        }
    }
    if (o.format == "csv") {
        std::ostringstream os;
        os << header << '\n';
        for (const auto& [coord, val] : rows)
            os << fmt(coord, o.precision) << ',' << fmt(val, o.precision) << '\n';
        write_output(o, os.str());
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [coord, val] : rows) j.push_back({coord, val});
        write_output(o, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_evolve(const CommonOpts& o, double t0, double t1, unsigned steps) {
    const StateSpec spec = resolve_spec(o);
    if (!(t0 < t1)) throw ValidationError("t0", "requires t0 < t1");
    if (steps < 2) throw ValidationError("steps", "must be >= 2");
    const double dt = (t1 - t0) / (steps - 1);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "t,x_mean,p_mean,x_var,p_var\n";
        for (unsigned i = 0; i < steps; ++i) {
            const double t = t0 + dt * i;
            const auto [xm, xv] = closed_form::position_moments(t, spec);
            const auto [pm, pv] = closed_form::momentum_moments(t, spec);
            os << fmt(t, o.precision) << ',' << fmt(xm, o.precision) << ','
               << fmt(pm, o.precision) << ',' << fmt(xv, o.precision) << ','
               << fmt(pv, o.precision) << '\n';
        }
        write_output(o, os.str());
    } else {
        nlohmann::json j = nlohmann::json::array();
        for (unsigned i = 0; i < steps; ++i) {
            const double t = t0 + dt * i;
            const auto [xm, xv] = closed_form::position_moments(t, spec);
            const auto [pm, pv] = closed_form::momentum_moments(t, spec);
            j.push_back({{"t", t}, {"x_mean", xm}, {"p_mean", pm}, {"x_var", xv}, {"p_var", pv}});
        }
        write_output(o, j.dump(2) + "\n");
    }
    return kExitOk;
}

int run_verify(const CommonOpts& o, unsigned cutoff, double t,
               const consistency::Tolerances& tol, const std::string& inject_name,
               double inject_delta) {
    const StateSpec spec = resolve_spec(o);
    consistency::Perturbations perturb;
    if (!inject_name.empty()) perturb[inject_name] = inject_delta;
    const auto report = consistency::compare_point(spec, t, cutoff, tol, perturb);
    write_output(o, consistency::to_json(report).dump(2) + "\n");
    return report.overall_pass ? kExitOk : kExitVerifyFailed;
}

int run_sweep(const CommonOpts& o, const std::vector<double>& are,
              const std::vector<double>& aim, const std::vector<double>& th1,
              const std::vector<double>& th2, const std::vector<double>& ts,
              unsigned cutoff) {
    if (!aim.empty() && aim.size() != are.size())
        throw ValidationError("alpha-im", "must be given once per --alpha-re");
    std::vector<complex> alphas;
    for (size_t i = 0; i < are.size(); ++i)
        alphas.emplace_back(are[i], i < aim.size() ? aim[i] : 0.0);
    if (alphas.empty()) alphas.emplace_back(0.0, 0.0);
    const auto one = [](std::vector<double> v) {
        if (v.empty()) v.push_back(0.0);
        return v;
    };
    const auto result =
        consistency::sweep_compare(alphas, one(th1), one(th2), one(ts), cutoff);
    write_output(o, consistency::to_json(result).dump(2) + "\n");
    return result.summary.all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermalized coherent thermal state of a 1-D harmonic oscillator: "
                 "closed-form evaluation, time sweeps, and oracle self-verification"};
    app.require_subcommand(1);

    CommonOpts o;
    double t = 0.0, t0 = 0.0, t1 = 1.0;
    unsigned steps = 2, points = 101;
    double grid_min = -5.0, grid_max = 5.0;
    int nmax = -1;
    std::string obs = "x";
    unsigned cutoff = fock_oracle::default_cutoff();
    consistency::Tolerances tol;
    std::vector<double> sweep_are, sweep_aim, sweep_th1, sweep_th2, sweep_t;

    auto* cmd_moments = app.add_subcommand("moments", "Means, variances, purity at a time t");
    add_common_flags(cmd_moments, o);
    cmd_moments->add_option("--t", t, "Time");

    auto* cmd_density = app.add_subcommand("density", "Position, momentum, or number density");
    add_common_flags(cmd_density, o);
    cmd_density->add_option("--obs", obs, "Observable: x, p, or n")
        ->check(CLI::IsMember({"x", "p", "n"}));
    cmd_density->add_option("--min", grid_min, "Grid minimum");
    cmd_density->add_option("--max", grid_max, "Grid maximum");
    cmd_density->add_option("--points", points, "Grid points (>= 2)");
    cmd_density->add_option("--nmax", nmax, "Largest n for --obs n");
    cmd_density->add_option("--t", t, "Time");

    auto* cmd_ndist = app.add_subcommand("number-dist", "Photon-number distribution");
    add_common_flags(cmd_ndist, o);
    cmd_ndist->add_option("--nmax", nmax, "Largest n")->required();

    auto* cmd_evolve = app.add_subcommand("evolve", "Moment trajectory over [t0, t1]");
    add_common_flags(cmd_evolve, o);
    cmd_evolve->add_option("--t0", t0, "Start time");
    cmd_evolve->add_option("--t1", t1, "End time");
    cmd_evolve->add_option("--steps", steps, "Samples, endpoints included (>= 2)");

    auto* cmd_verify = app.add_subcommand("verify", "Closed forms vs Fock-space oracle");
    add_common_flags(cmd_verify, o);
    cmd_verify->add_option("--t", t, "Time");
    cmd_verify->add_option("--cutoff", cutoff, "Fock truncation per mode");
    cmd_verify->add_option("--tol-moments", tol.moments_rel, "Relative tolerance for moments");
    cmd_verify->add_option("--tol-distribution", tol.distribution_abs,
                           "Absolute tolerance for the number distribution");
    cmd_verify->add_option("--tol-density", tol.density_abs,
                           "Absolute tolerance for densities");
    std::string inject_name;
    double inject_delta = 1e-5;
    cmd_verify->add_option("--inject-name", inject_name,
                           "Self-test hook: perturb the named closed-form quantity");
    cmd_verify->add_option("--inject-delta", inject_delta, "Perturbation size for --inject-name");

    auto* cmd_sweep = app.add_subcommand("sweep", "Verification over a parameter grid");
    add_common_flags(cmd_sweep, o);
    cmd_sweep->add_option("--alpha-re-grid", sweep_are, "alpha real parts");
    cmd_sweep->add_option("--alpha-im-grid", sweep_aim, "alpha imaginary parts (paired)");
    cmd_sweep->add_option("--theta1-grid", sweep_th1, "theta1 values");
    cmd_sweep->add_option("--theta2-grid", sweep_th2, "theta2 values");
    cmd_sweep->add_option("--t-grid", sweep_t, "time values");
    cmd_sweep->add_option("--cutoff", cutoff, "Fock truncation per mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cmd_moments->parsed()) return run_moments(o, t);
        if (cmd_density->parsed())
            return run_density(o, obs, grid_min, grid_max, points, nmax, t);
        if (cmd_ndist->parsed()) return run_density(o, "n", 0, 0, 0, nmax, t);
        if (cmd_evolve->parsed()) return run_evolve(o, t0, t1, steps);
        if (cmd_verify->parsed()) return run_verify(o, cutoff, t, tol, inject_name, inject_delta);
        if (cmd_sweep->parsed())
            return run_sweep(o, sweep_are, sweep_aim, sweep_th1, sweep_th2, sweep_t, cutoff);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const fock_oracle::CutoffError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
