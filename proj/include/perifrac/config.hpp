#pragma once

#include <array>
#include <optional>
#include <string>

#include "perifrac/problem.hpp"

namespace perifrac {

// Parsed experiment description. Unknown JSON keys are rejected with a
// SchemaError naming the offending path; defaults: n = 256, tol = 1e-10,
// ds = 0.05.
struct ExperimentConfig {
    // problem
    std::string family; // "smooth" | "singular_mems" | "attractive_repulsive"
    double s = 0.5;
    double c = 1.0;
    std::optional<double> t;
    std::optional<std::array<double, 2>> t_range; // continuation window [from, to]
    std::optional<std::string> g;                 // smooth: expression in u
    std::optional<std::string> h;                 // expression in x
    std::optional<std::string> u0;                // initial guess expression in x
    std::optional<double> mu, rho;
    std::optional<std::string> beta, gamma, e;    // expressions in x

    // grid
    int n = 256;

    // solver
    double tol = 1e-10;
    int max_iter = 50;
    unsigned long seed = 1234;
    int seed_count = 50;
    double deflation_radius = 1e-4;

    // continuation
    double ds = 0.05;
    int max_steps = 400;
    int lambda_steps = 20;

    // oracle
    double kernel_tol = 1e-7;

    // outputs (file names relative to the --out directory)
    std::string branch_csv = "branch.csv";
    std::string fields_csv = "branch_fields.csv";
    std::string report = "report.txt";
    std::string solution_csv = "solution.csv";
};

ExperimentConfig parse_config(const std::string& json_text);

// Samples the expressions on the configured grid and assembles the family.
ProblemSpec build_problem(const ExperimentConfig& cfg);

// Deterministic seed fields for searches: a ladder of constants spanning the
// family's plausible range plus band-limited perturbations drawn from
// mt19937(cfg.seed). Always the same for the same config.
std::vector<SpectralField> build_seed_fields(const ExperimentConfig& cfg,
                                             const ProblemSpec& p, int count);

} // namespace perifrac
