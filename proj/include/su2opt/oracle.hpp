#pragma once

#include <optional>
#include <string>
#include <vector>

#include "su2opt/solver.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

struct OracleConfig {
    int param_grid_size{2001};
    double time_step{0.0};
    double hit_tolerance{2e-3};

    static OracleConfig defaults(const ModelParams& mp);
};

struct BruteResult {
    double t_hat{0.0};
    double param_hat{0.0};
};

/// Smallest grid time at which some grid extremal's disk point lies within
/// hit_tolerance of each target; nullopt if a target is never hit before
/// t_cap. Exhaustive over the alpha grid (three controls) or the
/// beta-compactified omega grid (two controls).
std::vector<std::optional<BruteResult>> brute_march(const std::vector<DiskPoint>& targets,
                                                    const ModelParams& mp,
                                                    const OracleConfig& cfg, double t_cap);

/// Throws if the target is not reached within 1.5x the closed-form diameter.
BruteResult brute_min_time(const DiskPoint& target, const ModelParams& mp,
                           const OracleConfig& cfg);

std::vector<BruteResult> brute_min_time_batch(const std::vector<DiskPoint>& targets,
                                              const ModelParams& mp, const OracleConfig& cfg);

/// Max of brute_min_time over a uniform polar grid (60 radii x 120 angles).
double brute_diameter(const ModelParams& mp, const OracleConfig& cfg);

struct VerifyReport {
    bool passed{false};
    double closed_form_residual{0.0};
    double replay_residual{0.0};
    std::optional<double> premature_hit_time;
    bool premature_check_applied{false};
    std::string failed_check;  // empty when passed
};

/// Three checks: the closed-form state at t_f projects onto the target
/// (1e-9), numeric replay of the synthesized pulse lands on it (1e-6), and
/// the oracle finds no hit before t_f - 2*time_step. The last check only
/// applies to interior targets: the front grazes unit-circle targets
/// within hit_tolerance well before reaching them exactly.
VerifyReport verify_solution(const Solution& sol, const DiskPoint& target, const ModelParams& mp,
                             const OracleConfig& cfg);
VerifyReport verify_solution(const Solution& sol, const DiskPoint& target, const ModelParams& mp);

}  // namespace su2opt
