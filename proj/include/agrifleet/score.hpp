#pragma once

#include <string>
#include <vector>

#include "agrifleet/baselines.hpp"
#include "agrifleet/constraints.hpp"
#include "agrifleet/ilp.hpp"
#include "agrifleet/units.hpp"

namespace agrifleet {

/// Normalization anchors shared by every method scored against the
/// same design space. Both are fixed properties of the scenario, not
/// of any particular pool, so improving a design can only improve its
/// own method's score.
///
///   cost_floor   Cheapest way to cover the farm with a single
///                configuration (fixed costs included), capped at the
///                budget. Spending at or below the floor earns a full
///                cost sub-score; spending the whole budget earns zero.
///   payload_cap  Largest total payload of any affordable stack of one
///                configuration. Carrying that much (or more) earns a
///                full payload sub-score.
struct ScoreAnchors {
    Cents cost_floor = 0;
    double payload_cap = 0.0;

    bool operator==(const ScoreAnchors&) const = default;
};

ScoreAnchors score_anchors(const DesignSpace& space);

/// Weighted score of one method's pool in [0, 1]: the pool mean of
///
///   alpha·cost_goodness + beta·coverage_goodness + gamma·payload_goodness
///
/// under the normalized weights, where each goodness is a clamped
/// ratio against a fixed anchor:
///
///   cost      0 when the design exceeds the budget, otherwise the
///             remaining share of the budget above the cover floor,
///             min(1, (budget − cost) / (budget − cost_floor));
///   coverage  the satisfaction ratio min(1, covered / farm size);
///   payload   min(1, carried / payload_cap), or 0 when nothing in
///             the space can carry weight.
///
/// Throws ValidationError for an empty pool.
double weighted_score(const std::vector<FleetDesign>& pool, const DesignSpace& space,
                      const ObjectiveWeights& weights);

/// One comparison row. Methods outside the comparison suite appear
/// with available = false and carry no numbers.
struct ScoreRow {
    std::string method;
    bool available = false;
    double score = 0.0;
    double mean_cost_cents = 0.0;
    double mean_coverage_m2 = 0.0;
    double mean_payload_kg = 0.0;
    int designs = 0;
    int sat_valid = 0;
    int sat_invalid = 0;

    bool operator==(const ScoreRow&) const = default;
};

/// Weighted-score comparison table. Rows are sorted by score
/// descending, names breaking ties lexicographically, with the
/// unavailable rows last in name order.
struct ScoreReport {
    ObjectiveWeights weights{};
    std::vector<ScoreRow> rows;

    bool operator==(const ScoreReport&) const = default;
};

/// Builds the comparison table from the exact solver's pool (row name
/// "ilp") and every baseline run, then appends N/A placeholders for
/// the optimizers the suite does not implement (bayesian_optimization,
/// pg_dse). Exact-pool members are re-verified against the SAT layer;
/// baseline members carry their verdicts already.
ScoreReport render_report(const SolvePool& exact, const std::vector<BaselineRun>& baselines,
                          const DesignSpace& space, const ObjectiveWeights& weights);

/// Renders the report as an aligned text table, one line of weights
/// first, money in dollars.
std::string format_score_table(const ScoreReport& report);

}  // namespace agrifleet
