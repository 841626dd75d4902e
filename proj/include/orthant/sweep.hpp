#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "orthant/config.hpp"
#include "orthant/ergodicity.hpp"

namespace orthant {

/// Batch experiment description; see configs/SCHEMA.md.
struct ExperimentConfig {
    std::string kind;  // tandem2-load | tandem2-eta | tandem3-load | geo-constants
    std::vector<double> grid;
    std::set<std::string> methods{"lp-quadratic", "lp-linear", "comparison", "oracle"};

    // two-node family parameters
    double mu1 = 0.2;
    double eta = 2.0;         // mu1_star / mu1
    double mu2_factor = 2.0;  // mu2 / mu1
    double load = 0.8;        // fixed load for the eta sweep

    // three-node family parameters
    double mu = 0.2;
    double eta_star = 1.5;  // mu_star / mu

    int truncation = 0;  // 0 = family default (60 for 2-D, 25 for 3-D)
    int tmax = 200;
    std::string out;

    // geo-constants grid shape (r1 x r2 x eps x rho)
    int grid_r = 5;
    int grid_eps = 5;
    int grid_rho = 5;
    double load_point = 0.5;
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Runs the experiment and writes CSV rows (ordered by the sweep variable) to
/// `csv`. Infeasible points become status entries, never aborts.
void run_experiment(const ExperimentConfig& cfg, std::ostream& csv);

struct GeoConstantsReport {
    double min_prefactor = 0.0;
    double r1 = 0.0, r2 = 0.0, eps_fraction = 0.0, rho_fraction = 0.0;
    double error_bound = 0.0;  // sum pi G at the minimizing grid point
    int grid_points = 0;
};

/// Grid sweep of the explicit bias-bound prefactor over (r, eps, rho) for a
/// model instance; also evaluates the resulting error bound sum pi G.
GeoConstantsReport geo_constants_sweep(const ModelConfig& cfg, int grid_r, int grid_eps,
                                       int grid_rho, std::ostream* csv = nullptr);

}  // namespace orthant
