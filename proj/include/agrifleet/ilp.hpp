#pragma once

#include <cstdint>
#include <vector>

#include "agrifleet/constraints.hpp"

namespace agrifleet {

/// Rank Order Centroid weights for n ranked criteria:
/// w_k = (1/n)·Σ_{j=k..n} 1/j.
std::vector<double> roc_centroid(int rank_count);

/// Objective weights for (cost, area, payload). Defaults are the ROC
/// centroid for the ranking cost > area > payload.
struct ObjectiveWeights {
    double alpha;
    double beta;
    double gamma;

    ObjectiveWeights();
    ObjectiveWeights(double a, double b, double g) : alpha(a), beta(b), gamma(g) {}

    /// Rescales to sum 1; rejects negative or all-zero weights.
    ObjectiveWeights normalized() const;

    bool operator==(const ObjectiveWeights&) const = default;
};

/// The printed objective charges +β for normalized area; the alternate
/// mode rewards area instead (−β), for sensitivity runs.
enum class ObjectiveMode { literal, flipped_beta };

/// One enumerated vehicle build with its derived metrics and the
/// scenario-adjusted per-unit cost and integer area.
struct CandidateConfig {
    Configuration config;
    DerivedMetrics metrics;
    Cents effective_unit_cost = 0;
    AreaM2 area_units = 0;

    bool operator==(const CandidateConfig&) const = default;
};

/// Every buildable configuration for the scenario: platform- and
/// compute-filtered Cartesian product over the catalog, size-matched
/// motors, battery counts up to the catalog's enumeration cap, payload
/// and flight-time screened. Throws InfeasibleError naming the binding
/// rule when nothing survives.
std::vector<CandidateConfig> enumerate_configurations(const ComponentCatalog& catalog,
                                                      const ScenarioContext& ctx);

/// The solver's instance: candidate configurations with per-config
/// unit-count bounds and the budget remaining after fixed costs.
struct DesignSpace {
    ScenarioContext ctx;
    std::vector<CandidateConfig> configs;
    std::vector<int> upper_bounds;
    Cents fixed_cost = 0;        // edge server + communication
    Cents budget_for_fleet = 0;  // budget − fixed_cost
};

DesignSpace build_design_space(const ComponentCatalog& catalog, const ScenarioContext& ctx);

/// Per-config unit-count cap: min(⌈B/C_i⌉, ⌈S/A_i⌉ + margin).
int unit_count_bound(Cents budget_for_fleet, AreaM2 farm_size, Cents effective_unit_cost,
                     AreaM2 area_units, int coverage_margin = 2);

/// Shared evaluation function: per-config metrics scaled against the
/// candidate set's maxima (so 0 stays 0 and relative magnitudes are
/// preserved), combined under the weights into one scaled integer
/// coefficient per configuration. All optimizers (exact and baselines)
/// score fleets through this model.
struct ObjectiveModel {
    static constexpr std::int64_t kScale = 1'000'000;

    ObjectiveWeights weights{};  // normalized
    ObjectiveMode mode = ObjectiveMode::literal;
    std::vector<double> norm_cost;
    std::vector<double> norm_area;
    std::vector<double> norm_payload;
    std::vector<std::int64_t> coeff;

    /// Σ coeff_i · x_i.
    std::int64_t objective(const std::vector<int>& counts) const;

    /// Objective plus λ-scaled relative budget excess and coverage
    /// shortfall; what the metaheuristics minimize so trajectories may
    /// cross infeasible regions.
    double penalized_objective(const std::vector<int>& counts, const DesignSpace& space,
                               double lambda = 10.0) const;
};

ObjectiveModel make_objective_model(const DesignSpace& space, const ObjectiveWeights& weights,
                                    ObjectiveMode mode = ObjectiveMode::literal);

/// Exact budget and coverage evaluation of a count vector.
struct FleetTotals {
    Cents total_cost = 0;  // includes fixed costs
    AreaM2 total_coverage = 0;
    bool feasible = false;
};
FleetTotals fleet_totals(const DesignSpace& space, const std::vector<int>& counts);

/// Materializes a count vector as a FleetDesign (nonzero counts become
/// lines), reusing the already-derived metrics.
FleetDesign design_from_counts(const DesignSpace& space, const std::vector<int>& counts);

struct RankedSolution {
    std::vector<int> counts;
    std::int64_t objective = 0;
    Cents total_cost = 0;
    AreaM2 total_coverage = 0;
    ObjectiveWeights weights{};  // the grid point that produced it

    bool operator==(const RankedSolution&) const = default;
};

struct ExplorationLog {
    std::uint64_t nodes_visited = 0;
    std::uint64_t nodes_pruned = 0;
    std::uint64_t solve_calls = 0;

    bool operator==(const ExplorationLog&) const = default;
};

struct SolvePool {
    std::vector<RankedSolution> solutions;  // [0] is the optimum
    ExplorationLog log;
};

struct SolveOptions {
    int pool_limit = 20;  // alternatives via no-good cuts beyond the optimum
    ObjectiveMode mode = ObjectiveMode::literal;
    int coverage_margin = 2;
};

/// Exact minimization of the weighted objective subject to budget and
/// coverage: depth-first branch and bound over configurations ordered
/// by cost, integer arithmetic throughout, alternatives via no-good
/// cuts. Ties resolve toward lower total cost, then lexicographically
/// smaller count vectors. Throws InfeasibleError with diagnostics when
/// no fleet satisfies the constraints.
SolvePool solve(const DesignSpace& space, const ObjectiveWeights& weights,
                const SolveOptions& options = {});

/// Solves across the (α,β,γ) simplex lattice of the given resolution
/// (resolution 11 → 66 points), one optimum per point, and returns the
/// deduplicated union. Every member is cross-checked against the SAT
/// verifier before emission.
SolvePool weight_sweep(const DesignSpace& space, int grid_resolution,
                       const SolveOptions& options = {});

}  // namespace agrifleet
