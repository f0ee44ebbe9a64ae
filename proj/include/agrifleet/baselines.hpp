#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agrifleet/constraints.hpp"
#include "agrifleet/ilp.hpp"

namespace agrifleet {

/// Shared evaluation budget for the comparison optimizers.
inline constexpr int kDefaultEvaluationBudget = 5000;

/// How many best candidates a baseline keeps.
inline constexpr int kBaselinePoolLimit = 20;

/// One candidate kept by a baseline: the count vector over the design
/// space, the materialized fleet, its penalized objective (scaled down
/// to the unit objective range), and both feasibility views — the
/// constraint checker's and the independent SAT verifier's.
struct BaselineCandidate {
    std::vector<int> counts;
    FleetDesign design;
    double penalized_objective = 0.0;
    bool feasible = false;
    bool sat_valid = false;

    bool operator==(const BaselineCandidate&) const = default;
};

/// Result of one optimizer run. The pool is sorted best first by
/// (penalized objective, count vector) and deduplicated.
struct BaselineRun {
    std::string optimizer_name;
    std::uint64_t seed = 0;
    int evaluation_budget = 0;
    std::vector<BaselineCandidate> pool;
    double wall_seconds = 0.0;

    /// Wall time is measurement noise, not part of the result
    /// identity; determinism checks compare everything else.
    bool operator==(const BaselineRun& other) const {
        return optimizer_name == other.optimizer_name && seed == other.seed &&
               evaluation_budget == other.evaluation_budget && pool == other.pool;
    }
};

struct AnnealingSchedule {
    double initial_temperature = 2.0;
    double cooling = 0.999;
    int evaluations = kDefaultEvaluationBudget;
};

struct GeneticOptions {
    int population = 24;
    int generations = 207;  // population × (generations + 1) ≤ 5000
};

/// Classic simulated annealing over count vectors: neighbors step one
/// count by ±1 or move one unit between configurations; geometric
/// cooling; always returns at least the start point.
BaselineRun simulated_annealing(const DesignSpace& space, const ObjectiveWeights& weights,
                                std::uint64_t seed, const AnnealingSchedule& schedule = {});

/// Integer-vector genetic algorithm: tournament selection (size 3),
/// one-point crossover, per-gene mutation, elitism of one.
BaselineRun genetic_algorithm(const DesignSpace& space, const ObjectiveWeights& weights,
                              std::uint64_t seed, const GeneticOptions& options = {});

/// Uniform sparse sampling of count vectors within bounds.
BaselineRun random_search(const DesignSpace& space, const ObjectiveWeights& weights,
                          std::uint64_t seed, int n = kDefaultEvaluationBudget);

/// Deterministic coordinate descent from the all-zero vector; emits
/// exactly its single terminal point.
BaselineRun discrete_search(const DesignSpace& space, const ObjectiveWeights& weights);

/// (1+1) evolutionary strategy with a decaying per-gene mutation rate
/// max(1/N, 1/(2 + t/8)); offspring replace on ties or improvement.
BaselineRun one_plus_one_lengler(const DesignSpace& space, const ObjectiveWeights& weights,
                                 std::uint64_t seed, int n = kDefaultEvaluationBudget);

/// Splits the evaluation budget evenly across simulated annealing, the
/// genetic algorithm, random search, and the (1+1) strategy, each with
/// its own derived seed, and merges their pools.
BaselineRun portfolio(const DesignSpace& space, const ObjectiveWeights& weights,
                      std::uint64_t seed, int n = kDefaultEvaluationBudget);

}  // namespace agrifleet
