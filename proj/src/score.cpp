#include "agrifleet/score.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "agrifleet/errors.hpp"
#include "agrifleet/verify.hpp"

namespace agrifleet {

namespace {

double cost_goodness(const FleetDesign& design, Cents budget, Cents floor) {
    if (design.total_cost > budget) {
        return 0.0;
    }
    const Cents span = budget - floor;
    if (span <= 0) {
        return 1.0;
    }
    const double good = double(budget - design.total_cost) / double(span);
    return std::clamp(good, 0.0, 1.0);
}

double coverage_goodness(const FleetDesign& design, AreaM2 farm) {
    if (farm <= 0) {
        return 1.0;
    }
    return std::min(1.0, double(design.total_coverage) / double(farm));
}

double payload_goodness(const FleetDesign& design, double cap) {
    if (cap <= 0.0) {
        return 0.0;
    }
    return std::clamp(design.total_payload_kg / cap, 0.0, 1.0);
}

}  // namespace

ScoreAnchors score_anchors(const DesignSpace& space) {
    const Cents budget = space.ctx.scenario.budget;
    const AreaM2 farm = space.ctx.scenario.farm_size_m2;
    __int128 floor_best = -1;
    double cap_best = 0.0;
    for (std::size_t i = 0; i < space.configs.size(); ++i) {
        const CandidateConfig& config = space.configs[i];
        if (config.area_units > 0 && farm > 0) {
            const std::int64_t units = (farm + config.area_units - 1) / config.area_units;
            const __int128 spend =
                __int128(space.fixed_cost) + __int128(units) * config.effective_unit_cost;
            if (floor_best < 0 || spend < floor_best) {
                floor_best = spend;
            }
        }
        std::int64_t stack = space.upper_bounds[i];
        if (config.effective_unit_cost > 0) {
            stack = std::min<std::int64_t>(stack,
                                           space.budget_for_fleet / config.effective_unit_cost);
        }
        if (stack > 0) {
            cap_best = std::max(cap_best, config.metrics.max_payload_kg * double(stack));
        }
    }
    ScoreAnchors anchors;
    if (floor_best < 0 || floor_best > __int128(budget)) {
        anchors.cost_floor = budget;
    } else {
        anchors.cost_floor = Cents(floor_best);
    }
    anchors.payload_cap = cap_best;
    return anchors;
}

double weighted_score(const std::vector<FleetDesign>& pool, const DesignSpace& space,
                      const ObjectiveWeights& weights) {
    if (pool.empty()) {
        throw ValidationError("weighted score is undefined for an empty design pool");
    }
    const ObjectiveWeights w = weights.normalized();
    const ScoreAnchors anchors = score_anchors(space);
    const Cents budget = space.ctx.scenario.budget;
    const AreaM2 farm = space.ctx.scenario.farm_size_m2;
    std::vector<double> contributions;
    contributions.reserve(pool.size());
    for (const FleetDesign& design : pool) {
        contributions.push_back(w.alpha * cost_goodness(design, budget, anchors.cost_floor) +
                                w.beta * coverage_goodness(design, farm) +
                                w.gamma * payload_goodness(design, anchors.payload_cap));
    }
    // Summed in sorted order so permuting the pool cannot change the
    // mean by a rounding step.
    std::sort(contributions.begin(), contributions.end());
    double total = 0.0;
    for (double value : contributions) {
        total += value;
    }
    return total / double(pool.size());
}

namespace {

ScoreRow scored_row(std::string name, const std::vector<FleetDesign>& designs,
                    const std::vector<bool>& verdicts, const DesignSpace& space,
                    const ObjectiveWeights& weights) {
    ScoreRow row;
    row.method = std::move(name);
    row.available = true;
    row.score = weighted_score(designs, space, weights);
    row.designs = int(designs.size());
    for (std::size_t i = 0; i < designs.size(); ++i) {
        row.mean_cost_cents += double(designs[i].total_cost);
        row.mean_coverage_m2 += double(designs[i].total_coverage);
        row.mean_payload_kg += designs[i].total_payload_kg;
        if (verdicts[i]) {
            ++row.sat_valid;
        } else {
            ++row.sat_invalid;
        }
    }
    row.mean_cost_cents /= double(designs.size());
    row.mean_coverage_m2 /= double(designs.size());
    row.mean_payload_kg /= double(designs.size());
    return row;
}

}  // namespace

ScoreReport render_report(const SolvePool& exact, const std::vector<BaselineRun>& baselines,
                          const DesignSpace& space, const ObjectiveWeights& weights) {
    ScoreReport report;
    report.weights = weights.normalized();

    std::vector<FleetDesign> exact_designs;
    std::vector<bool> exact_verdicts;
    exact_designs.reserve(exact.solutions.size());
    for (const RankedSolution& solution : exact.solutions) {
        FleetDesign design = design_from_counts(space, solution.counts);
        exact_verdicts.push_back(verify(design, space.ctx).valid);
        exact_designs.push_back(std::move(design));
    }
    report.rows.push_back(scored_row("ilp", exact_designs, exact_verdicts, space, weights));

    for (const BaselineRun& run : baselines) {
        std::vector<FleetDesign> designs;
        std::vector<bool> verdicts;
        designs.reserve(run.pool.size());
        for (const BaselineCandidate& member : run.pool) {
            designs.push_back(member.design);
            verdicts.push_back(member.sat_valid);
        }
        report.rows.push_back(scored_row(run.optimizer_name, designs, verdicts, space, weights));
    }

    for (const char* name : {"bayesian_optimization", "pg_dse"}) {
        ScoreRow placeholder;
        placeholder.method = name;
        report.rows.push_back(placeholder);
    }

    std::sort(report.rows.begin(), report.rows.end(), [](const ScoreRow& a, const ScoreRow& b) {
        if (a.available != b.available) {
            return a.available;
        }
        if (a.available && a.score != b.score) {
            return a.score > b.score;
        }
        return a.method < b.method;
    });
    return report;
}

std::string format_score_table(const ScoreReport& report) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"method", "score", "mean_cost_usd", "mean_coverage_m2", "mean_payload_kg",
                     "designs", "valid", "invalid"});
    for (const ScoreRow& row : report.rows) {
        if (!row.available) {
            cells.push_back({row.method, "n/a", "-", "-", "-", "-", "-", "-"});
            continue;
        }
        cells.push_back({row.method, format_fixed(row.score, 3),
                         format_fixed(row.mean_cost_cents / 100.0, 2),
                         format_fixed(row.mean_coverage_m2, 1),
                         format_fixed(row.mean_payload_kg, 2), std::to_string(row.designs),
                         std::to_string(row.sat_valid), std::to_string(row.sat_invalid)});
    }

    std::vector<std::size_t> widths(cells.front().size(), 0);
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            widths[c] = std::max(widths[c], line[c].size());
        }
    }

    std::string out = strprintf("weights alpha=%s beta=%s gamma=%s\n",
                                format_fixed(report.weights.alpha, 3).c_str(),
                                format_fixed(report.weights.beta, 3).c_str(),
                                format_fixed(report.weights.gamma, 3).c_str());
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            const std::string& cell = line[c];
            if (c == 0) {
                out += cell;
                out.append(widths[c] - cell.size(), ' ');
            } else {
                out.append(2 + widths[c] - cell.size(), ' ');
                out += cell;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace agrifleet
