#ifndef TCTS_CONSISTENCY_HPP
#define TCTS_CONSISTENCY_HPP

#include <map>
#include <string>
#include <vector>

#include "tcts/closed_form.hpp"
#include "tcts/core_model.hpp"
#include "tcts/fock_oracle.hpp"

namespace tcts {
namespace consistency {

struct Tolerances {
    double moments_rel = 1e-8;       // moments and purity, relative (floor 1)
    double distribution_abs = 1e-9;  // number distribution and its normalization
    double density_abs = 1e-8;       // position/momentum densities, matrix elements
    double normalization_abs = 1e-9;
    double oracle_tail = 1e-8;       // truncation leakage allowed in the oracle build
};

struct ComparisonEntry {
    std::string name;
    double closed_value = 0.0;  // worst-deviation sample for grid quantities
    double oracle_value = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ComparisonReport {
    StateSpec spec;
    double t = 0.0;
    unsigned cutoff = 0;
    double tail_mass = 0.0;
    std::vector<ComparisonEntry> entries;
    bool overall_pass = false;
    double wall_time_seconds = 0.0;

    const ComparisonEntry* find(const std::string& name) const;
};

/// Additive perturbations of closed-form values by entry name; test hook for
/// the harness fault-injection self-check.
using Perturbations = std::map<std::string, double>;

/// Full closed-form vs oracle comparison of one parameter point at one time.
ComparisonReport compare_point(const StateSpec& spec, double t, unsigned cutoff,
                               const Tolerances& tol = {},
                               const Perturbations& perturb = {});

struct SweepSummary {
    std::map<std::string, double> worst_abs_dev;
    std::map<std::string, double> worst_rel_dev;
    unsigned points = 0;
    unsigned failed_points = 0;
    bool all_pass = false;
};

struct SweepResult {
    std::vector<ComparisonReport> reports;
    SweepSummary summary;
};

/// Cartesian product of the parameter grids; hard failures (for example a
/// too-small cutoff) are recorded as failing entries, the sweep continues.
SweepResult sweep_compare(const std::vector<complex>& alphas,
                          const std::vector<double>& theta1s,
                          const std::vector<double>& theta2s,
                          const std::vector<double>& times, unsigned cutoff,
                          const Tolerances& tol = {});

/// Special-case reductions: theta1 = 0 (thermalized coherent state),
/// theta2 = 0 (coherent thermal state), theta1 = theta2 = 0 (coherent state).
ComparisonReport reduction_checks(const StateSpec& spec);

nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const SweepResult& result);

}  // namespace consistency
}  // namespace tcts

#endif
