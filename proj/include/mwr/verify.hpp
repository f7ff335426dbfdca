#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mwr/convolve.hpp"
#include "mwr/field.hpp"
#include "mwr/geometry.hpp"
#include "mwr/pde.hpp"
#include "mwr/rearrange.hpp"
#include "mwr/report.hpp"
#include "mwr/rng.hpp"

namespace mwr {

/// One experiment description. Bodies are kept as literal specs
/// ("square 1", "disc 0 0 1", "polygon x y ...", or a polygon file
/// path) so reports can echo them verbatim.
struct ExperimentConfig {
    std::string experiment = "theorem41";
    std::string body0 = "square 1";
    std::string body1 = "disc 0 0 1";
    std::string body = "square 1";  // single-domain experiments
    OperatorSpec op;
    double p = 0.5;
    double beta = std::numeric_limits<double>::infinity();
    bool p_auto_from_beta = false;
    double mu = 0.5;
    std::vector<double> r_list = {1.0, 2.0, std::numeric_limits<double>::infinity()};
    std::vector<double> q_list = {1.0, 2.0, std::numeric_limits<double>::infinity()};
    int m = 8;
    std::vector<int> m_list = {2, 4, 8, 16};
    double eps = -1.0;  // <= 0: derived slack budget
    std::uint64_t seed = 20240101;
    bool waive_precondition = false;
    int pair_subgrid = 17;
    int sweep_pairs = 200;
    SolveParams solver;

    double resolved_p() const { return p_auto_from_beta ? p_from_beta_value() : p; }
    double p_from_beta_value() const;
    nlohmann::json echo() const;
};

/// Solutions of (P_0), (P_1), (P_mu) for one combination experiment,
/// with the derived slack budget. Shared between the theorem and
/// norm-corollary checks so the solves are paid for once.
struct CombinationSolves {
    GridFunction u0, u1, umu;
    ConvexBody domain_mu;
    SlackBudget budget;
    double eps = 0.0;
};

CombinationSolves solve_combination(const ExperimentConfig& cfg);
void theorem41_checks(const ExperimentConfig& cfg, const CombinationSolves& s, ComparisonReport& rep);
void corollary42_checks(const ExperimentConfig& cfg, const CombinationSolves& s, ComparisonReport& rep);

ComparisonReport run_theorem41(const ExperimentConfig& cfg);
ComparisonReport run_corollary42(const ExperimentConfig& cfg);
ComparisonReport run_rearrangement65(const ExperimentConfig& cfg);
ComparisonReport run_torsion_urysohn(const ExperimentConfig& cfg);
ComparisonReport run_geometry_suite(const ExperimentConfig& cfg);
ComparisonReport run_assumption_check(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ComparisonReport run_experiment(const ExperimentConfig& cfg);

/// Shipped presets: square-circle-torsion, beta-concave-source,
/// pucci-urysohn, square-rearrangement (plus geometry-suite and
/// assumption-check defaults). Each preset expands to one or more
/// experiments.
std::vector<std::pair<std::string, ExperimentConfig>> preset_configs(const std::string& name);
std::vector<std::string> preset_names();

/// Build a config from a key=value map (see README for the keys).
ExperimentConfig config_from_kv(const std::map<std::string, std::string>& kv);

/// Seeded convex polygon with vertex count in [4, 10], hull of random
/// points; used by the randomized sweeps.
ConvexBody random_convex_polygon(Rng& rng);

}  // namespace mwr
