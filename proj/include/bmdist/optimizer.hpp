#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmdist/bound_result.hpp"
#include "bmdist/exponent.hpp"
#include "bmdist/matrix.hpp"

namespace bmdist {

/// Objective value standing in for a singular (or non-finite) matrix;
/// strictly above anything a nonsingular matrix can produce inside the
/// feasible region.
inline constexpr double kSingularSentinel = 1e6;

/// The feasibility cutoff: no upper bound above this can be the optimum
/// (it already exceeds the dimension-only bound for n = 3).
double default_feasibility_threshold() noexcept;

struct OptimizerConfig {
    // Nelder-Mead: standard coefficients; the initial simplex perturbs each
    // coordinate by max(0.05 |c|, 0.00025).
    double nm_reflection = 1.0;
    double nm_expansion = 2.0;
    double nm_contraction = 0.5;
    double nm_shrink = 0.5;
    long nm_max_iters = 4000;
    double nm_tol = 1e-10;  // stop when simplex diameter and value spread both fall below

    // Particle swarm: constriction-factor standard parameters. The swarm has
    // pso_swarm uniform particles in [-search_box, search_box]^(n^2) plus one
    // particle at the identity; velocities are clamped to half the box width.
    int pso_swarm = 50;
    long pso_iters = 500;  // 0 means evaluate the initial swarm only
    double pso_inertia = 0.729;
    double pso_cognitive = 1.49445;
    double pso_social = 1.49445;
    double search_box = 1.0;

    std::uint64_t seed = 0;
    int restarts = 8;
    double feasibility_threshold = default_feasibility_threshold();

    /// Throws ConfigError if any field is out of range.
    void validate() const;
};

/// Parses "key = value" lines ('#' starts a comment). Unknown keys are an
/// error; omitted keys keep their defaults.
OptimizerConfig parse_optimizer_config(std::istream& in);
OptimizerConfig load_optimizer_config(const std::string& path);

/// Canonical serialization of a config (stable key order), and a short
/// digest of it for run records.
std::string config_canonical(const OptimizerConfig& cfg);

struct SearchResult {
    SquareMatrix best_matrix;
    double best_value = 0.0;
    long evaluations = 0;
    std::vector<std::pair<long, double>> trace;  // (iteration, best so far)
    std::uint64_t seed_used = 0;
};

/// g_p of the reshaped flat vector, or the singular sentinel when the matrix
/// fails the singularity threshold (or carries non-finite entries).
double penalized_objective(std::span<const double> flat, Exponent p);

/// Generic Nelder-Mead minimizer (exposed so tests can drive it with plain
/// objectives). Deterministic; tracks the best point ever evaluated.
struct NelderMeadOutcome {
    std::vector<double> best_point;
    double best_value = 0.0;
    long evaluations = 0;
    long iterations = 0;
    std::vector<std::pair<long, double>> trace;
};

NelderMeadOutcome nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                       std::vector<double> start, const OptimizerConfig& cfg);

/// Local search on g_p from a nonsingular starting matrix.
SearchResult nelder_mead(Exponent p, const SquareMatrix& start, const OptimizerConfig& cfg);

/// Global search on g_p over n x n matrices; deterministic for a fixed seed.
SearchResult particle_swarm(Exponent p, const OptimizerConfig& cfg, int n = 3);

/// Swarm search plus Nelder-Mead polish over cfg.restarts independent seeds;
/// keeps the smallest feasible result. Throws InfeasibleSearch if every
/// restart lands above the feasibility threshold.
BoundResult estimate_distance(Exponent p, const OptimizerConfig& cfg, int n = 3);

}  // namespace bmdist
