#include "agrifleet/ilp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "agrifleet/errors.hpp"
#include "agrifleet/verify.hpp"

namespace agrifleet {

namespace {

std::int64_t ceil_div(std::int64_t numerator, std::int64_t denominator) {
    return (numerator + denominator - 1) / denominator;
}

}  // namespace

std::vector<double> roc_centroid(int rank_count) {
    if (rank_count < 1) {
        throw ValidationError("ROC weights need at least one rank, got " +
                              std::to_string(rank_count));
    }
    std::vector<double> weights(static_cast<std::size_t>(rank_count), 0.0);
    double tail = 0.0;
    for (int k = rank_count; k >= 1; --k) {
        tail += 1.0 / k;
        weights[static_cast<std::size_t>(k - 1)] = tail / rank_count;
    }
    return weights;
}

ObjectiveWeights::ObjectiveWeights() {
    const auto roc = roc_centroid(3);
    alpha = roc[0];
    beta = roc[1];
    gamma = roc[2];
}

ObjectiveWeights ObjectiveWeights::normalized() const {
    if (alpha < 0 || beta < 0 || gamma < 0) {
        throw ValidationError(strprintf("objective weights must be non-negative, got "
                                        "(%g, %g, %g)",
                                        alpha, beta, gamma));
    }
    const double sum = alpha + beta + gamma;
    if (sum <= 0) {
        throw ValidationError("objective weights must not all be zero");
    }
    return {alpha / sum, beta / sum, gamma / sum};
}

std::vector<CandidateConfig> enumerate_configurations(const ComponentCatalog& catalog,
                                                      const ScenarioContext& ctx) {
    std::vector<CandidateConfig> result;
    const WeightModel weight_model{};

    bool chassis_seen = false;
    bool motor_seen = false;
    bool rover_without_tires = false;
    long structurally_complete = 0;
    long rejected_payload = 0;
    long rejected_flight = 0;

    std::vector<const ComputeUnit*> compute_pool;
    for (const auto& unit : catalog.compute_options) {
        if (ctx.compute.allowed.contains(unit.kind)) compute_pool.push_back(&unit);
    }

    for (const auto& chassis : catalog.chassis_options) {
        if (!ctx.platforms.contains(chassis.vehicle_kind)) continue;
        chassis_seen = true;
        const bool is_rover = chassis.vehicle_kind == VehicleKind::rover;
        if (is_rover && catalog.tire_options.empty()) {
            rover_without_tires = true;
            continue;
        }

        for (const auto& motor : catalog.motor_options) {
            if (motor.size_class != chassis.size_class) continue;
            motor_seen = true;

            for (const auto& battery : catalog.battery_options) {
                for (int batteries = 1; batteries <= catalog.enumeration.max_batteries;
                     ++batteries) {
                    const std::size_t tire_choices = is_rover ? catalog.tire_options.size() : 1;
                    for (std::size_t t = 0; t < tire_choices; ++t) {
                        for (const ComputeUnit* compute : compute_pool) {
                            Configuration cfg;
                            cfg.vehicle_kind = chassis.vehicle_kind;
                            cfg.chassis = chassis;
                            cfg.motor = motor;
                            cfg.motor_count = catalog.enumeration.motor_count;
                            cfg.battery = battery;
                            cfg.battery_count = batteries;
                            if (is_rover) {
                                cfg.tire = catalog.tire_options[t];
                                cfg.tire_count = catalog.enumeration.tire_count;
                            }
                            cfg.compute = *compute;
                            cfg.apps_extra_mass_kg = ctx.apps_extra_mass_kg;

                            structurally_complete += 1;
                            DerivedMetrics metrics =
                                derive_metrics(cfg, catalog.calibration_kappa, weight_model);
                            if (metrics.max_payload_kg < 0) {
                                rejected_payload += 1;
                                continue;
                            }
                            if (!check_flight_time(cfg, metrics, ctx)) {
                                rejected_flight += 1;
                                continue;
                            }

                            CandidateConfig candidate;
                            candidate.config = std::move(cfg);
                            candidate.metrics = metrics;
                            candidate.effective_unit_cost =
                                metrics.unit_cost + ctx.apps_extra_cost;
                            candidate.area_units = metrics.coverage_area_units;
                            result.push_back(std::move(candidate));
                        }
                    }
                }
            }
        }
    }

    if (result.empty()) {
        std::string binding;
        if (!chassis_seen) {
            binding = rules::platform_compatibility;
        } else if (rover_without_tires && !motor_seen) {
            binding = "no tire options for the rover platform";
        } else if (!motor_seen) {
            binding = rules::motor_size_match;
        } else if (compute_pool.empty()) {
            binding = rules::compute_kind;
        } else if (structurally_complete == 0) {
            binding = "no structurally complete build";
        } else {
            std::vector<std::string> parts;
            if (rejected_payload > 0) parts.push_back(rules::payload_nonnegative);
            if (rejected_flight > 0) parts.push_back(rules::flight_time);
            for (const auto& part : parts) {
                if (!binding.empty()) binding += ", ";
                binding += part;
            }
        }
        throw InfeasibleError("no buildable configuration for the scenario (binding rule: " +
                              binding + ")");
    }
    return result;
}

int unit_count_bound(Cents budget_for_fleet, AreaM2 farm_size, Cents effective_unit_cost,
                     AreaM2 area_units, int coverage_margin) {
    if (effective_unit_cost <= 0) {
        throw ValidationError("unit cost must be positive to bound unit counts");
    }
    if (budget_for_fleet <= 0) return 0;
    std::int64_t bound = ceil_div(budget_for_fleet, effective_unit_cost);
    if (area_units > 0) {
        const std::int64_t by_area = ceil_div(std::max<AreaM2>(farm_size, 0), area_units) +
                                     coverage_margin;
        bound = std::min(bound, by_area);
    }
    return static_cast<int>(std::min<std::int64_t>(bound, std::numeric_limits<int>::max()));
}

DesignSpace build_design_space(const ComponentCatalog& catalog, const ScenarioContext& ctx) {
    DesignSpace space;
    space.ctx = ctx;
    space.configs = enumerate_configurations(catalog, ctx);
    space.fixed_cost = ctx.edge_cost + ctx.comm_cost_total;
    space.budget_for_fleet = ctx.scenario.budget - space.fixed_cost;
    space.upper_bounds.reserve(space.configs.size());
    for (const auto& candidate : space.configs) {
        space.upper_bounds.push_back(unit_count_bound(space.budget_for_fleet,
                                                      ctx.scenario.farm_size_m2,
                                                      candidate.effective_unit_cost,
                                                      candidate.area_units));
    }
    return space;
}

namespace {

// Scale a metric column against its maximum.  Dividing by the max (rather
// than min-max rescaling) keeps zero at zero, so a config's normalized cost
// stays proportional to its true cost.  A shifted scale would subtract the
// column minimum from every unit purchased, which rewards unit stacking and
// inverts per-area cost rankings in heterogeneous catalogs.  An all-zero
// column stays 0.
std::vector<double> scale_by_max(const std::vector<double>& values) {
    std::vector<double> normalized(values.size(), 0.0);
    if (values.empty()) return normalized;
    const double hi = *std::max_element(values.begin(), values.end());
    if (hi <= 0.0) return normalized;
    for (std::size_t i = 0; i < values.size(); ++i) {
        normalized[i] = values[i] / hi;
    }
    return normalized;
}

}  // namespace

ObjectiveModel make_objective_model(const DesignSpace& space, const ObjectiveWeights& weights,
                                    ObjectiveMode mode) {
    ObjectiveModel model;
    model.weights = weights.normalized();
    model.mode = mode;

    std::vector<double> costs, areas, payloads;
    costs.reserve(space.configs.size());
    areas.reserve(space.configs.size());
    payloads.reserve(space.configs.size());
    for (const auto& candidate : space.configs) {
        costs.push_back(static_cast<double>(candidate.effective_unit_cost));
        areas.push_back(static_cast<double>(candidate.area_units));
        payloads.push_back(candidate.metrics.max_payload_kg);
    }
    model.norm_cost = scale_by_max(costs);
    model.norm_area = scale_by_max(areas);
    model.norm_payload = scale_by_max(payloads);

    const double beta_sign = mode == ObjectiveMode::literal ? 1.0 : -1.0;
    model.coeff.reserve(space.configs.size());
    for (std::size_t i = 0; i < space.configs.size(); ++i) {
        const double value = model.weights.alpha * model.norm_cost[i] +
                             beta_sign * model.weights.beta * model.norm_area[i] -
                             model.weights.gamma * model.norm_payload[i];
        model.coeff.push_back(std::llround(ObjectiveModel::kScale * value));
    }
    return model;
}

std::int64_t ObjectiveModel::objective(const std::vector<int>& counts) const {
    if (counts.size() != coeff.size()) {
        throw ValidationError(strprintf("count vector has %zu entries, objective model has %zu",
                                        counts.size(), coeff.size()));
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += coeff[i] * counts[i];
    }
    return total;
}

double ObjectiveModel::penalized_objective(const std::vector<int>& counts,
                                           const DesignSpace& space, double lambda) const {
    const FleetTotals totals = fleet_totals(space, counts);
    const double budget = static_cast<double>(std::max<Cents>(space.ctx.scenario.budget, 1));
    const double farm = static_cast<double>(std::max<AreaM2>(space.ctx.scenario.farm_size_m2, 1));
    const double over_budget =
        static_cast<double>(std::max<Cents>(totals.total_cost - space.ctx.scenario.budget, 0));
    const double short_coverage = static_cast<double>(
        std::max<AreaM2>(space.ctx.scenario.farm_size_m2 - totals.total_coverage, 0));
    const double penalty = lambda * (over_budget / budget + short_coverage / farm);
    return static_cast<double>(objective(counts)) + penalty * kScale;
}

FleetTotals fleet_totals(const DesignSpace& space, const std::vector<int>& counts) {
    if (counts.size() != space.configs.size()) {
        throw ValidationError(strprintf("count vector has %zu entries, design space has %zu",
                                        counts.size(), space.configs.size()));
    }
    FleetTotals totals;
    totals.total_cost = space.fixed_cost;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) {
            throw ValidationError("unit counts must be non-negative");
        }
        totals.total_cost += space.configs[i].effective_unit_cost * counts[i];
        totals.total_coverage += space.configs[i].area_units * counts[i];
    }
    totals.feasible = totals.total_cost <= space.ctx.scenario.budget &&
                      totals.total_coverage >= space.ctx.scenario.farm_size_m2;
    return totals;
}

FleetDesign design_from_counts(const DesignSpace& space, const std::vector<int>& counts) {
    if (counts.size() != space.configs.size()) {
        throw ValidationError(strprintf("count vector has %zu entries, design space has %zu",
                                        counts.size(), space.configs.size()));
    }
    FleetDesign design;
    design.edge_cost = space.ctx.edge_cost;
    design.comm_cost = space.ctx.comm_cost_total;
    design.total_cost = space.fixed_cost;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0) {
            throw ValidationError("unit counts must be non-negative");
        }
        if (counts[i] == 0) continue;
        FleetLine line;
        line.config = space.configs[i].config;
        line.metrics = space.configs[i].metrics;
        line.units = counts[i];
        line.effective_unit_cost = space.configs[i].effective_unit_cost;
        line.area_units = space.configs[i].area_units;
        design.total_cost += line.effective_unit_cost * line.units;
        design.total_coverage += line.area_units * line.units;
        design.total_payload_kg += line.metrics.max_payload_kg * line.units;
        design.lines.push_back(std::move(line));
    }
    return design;
}

namespace {

constexpr long double kRelax = 1e-9L;
constexpr std::int64_t kNoCost = std::numeric_limits<std::int64_t>::max();
constexpr std::size_t kTopGainCap = 16;
constexpr long double kInfinity = std::numeric_limits<long double>::infinity();

/// Depth-first branch and bound over a cost-sorted design space. All
/// constraint arithmetic is in int64; the completion bounds use long
/// doubles relaxed toward optimism so float rounding can never prune
/// the true optimum.
class BranchAndBound {
  public:
    BranchAndBound(const DesignSpace& space, const ObjectiveModel& model,
                   ExplorationLog& log)
        : space_(space), log_(log) {
        const std::size_t m = space.configs.size();
        order_.resize(m);
        std::iota(order_.begin(), order_.end(), 0);
        // Branch in the order the fractional relaxation fills items:
        // negative coefficients by objective gain per cent (densest
        // first), then coverage contributors by objective per area
        // (cheapest first), then the rest. The first descent then
        // tracks the relaxation's solution and the completion bounds
        // separate prefixes almost immediately. Exact integer
        // cross-multiplication keeps the order deterministic.
        auto group_of = [&](std::size_t idx) {
            if (model.coeff[idx] < 0) return 0;
            if (space.configs[idx].area_units > 0) return 1;
            return 2;
        };
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            const int group_a = group_of(a);
            const int group_b = group_of(b);
            if (group_a != group_b) return group_a < group_b;
            const std::int64_t wa = model.coeff[a];
            const std::int64_t wb = model.coeff[b];
            const std::int64_t ca = space.configs[a].effective_unit_cost;
            const std::int64_t cb = space.configs[b].effective_unit_cost;
            if (group_a == 0) return wa * cb < wb * ca;
            if (group_a == 1) {
                const std::int64_t aa = space.configs[a].area_units;
                const std::int64_t ab = space.configs[b].area_units;
                if (wa * ab != wb * aa) return wa * ab < wb * aa;
                return ca * ab < cb * aa;
            }
            if (wa != wb) return wa < wb;
            return ca < cb;
        });

        cost_.resize(m);
        area_.resize(m);
        coeff_.resize(m);
        original_bound_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t src = order_[i];
            cost_[i] = space.configs[src].effective_unit_cost;
            area_[i] = space.configs[src].area_units;
            coeff_[i] = model.coeff[src];
            original_bound_[i] = space.upper_bounds[src];
        }
        bound_ = original_bound_;
        lo_.assign(m, 0);

        // Ratio orders for the fractional completion bounds: positive
        // coefficients by objective-per-area (cheapest coverage first),
        // negative coefficients by objective-gain-per-cent (densest
        // first). Comparisons stay in exact integer arithmetic.
        for (std::size_t i = 0; i < m; ++i) {
            if (coeff_[i] > 0 && area_[i] > 0) cover_master_.push_back(i);
            if (coeff_[i] < 0) gain_master_.push_back(i);
            if (area_[i] > 0) by_value_per_area_.push_back(i);
        }
        std::stable_sort(cover_master_.begin(), cover_master_.end(),
                         [&](std::size_t a, std::size_t b) {
                             return coeff_[a] * area_[b] < coeff_[b] * area_[a];
                         });
        std::stable_sort(gain_master_.begin(), gain_master_.end(),
                         [&](std::size_t a, std::size_t b) {
                             return -coeff_[a] * cost_[b] > -coeff_[b] * cost_[a];
                         });
        std::stable_sort(by_value_per_area_.begin(), by_value_per_area_.end(),
                         [&](std::size_t a, std::size_t b) {
                             return coeff_[a] * area_[b] < coeff_[b] * area_[a];
                         });
        rebuild_suffix_data();
    }

    void forbid(const std::vector<int>& counts_in_original_order) {
        std::vector<int> sorted(counts_in_original_order.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            sorted[i] = counts_in_original_order[order_[i]];
        }
        forbidden_.insert(std::move(sorted));
    }

    /// Runs one exact solve over the non-forbidden vectors. Returns
    /// false when nothing feasible remains.
    bool run() {
        found_ = false;
        best_objective_ = std::numeric_limits<std::int64_t>::max();
        best_cost_ = std::numeric_limits<std::int64_t>::max();
        current_.assign(cost_.size(), 0);
        if (windows_dirty_) {
            bound_ = original_bound_;
            lo_.assign(cost_.size(), 0);
            rebuild_suffix_data();
            windows_dirty_ = false;
        }
        seed_incumbent();
        log_.solve_calls += 1;
        if (found_) {
            for (int round = 0; round < 4; ++round) {
                if (!tighten_bounds()) break;
                windows_dirty_ = true;
                rebuild_suffix_data();
            }
        }
        descend(0, 0, 0, 0);
        return found_;
    }

    std::vector<int> best_counts_original_order() const {
        std::vector<int> result(best_.size());
        for (std::size_t i = 0; i < order_.size(); ++i) {
            result[order_[i]] = best_[i];
        }
        return result;
    }

    std::int64_t best_objective() const { return best_objective_; }

    std::int64_t budget() const { return space_.budget_for_fleet; }
    std::int64_t farm() const { return space_.ctx.scenario.farm_size_m2; }
    std::int64_t total_area_capacity() const {
        return area_capacity_.empty() ? 0 : area_capacity_[0];
    }
    long double cheapest_cost_per_area() const {
        return min_cost_ratio_.empty() ? kInfinity : min_cost_ratio_[0];
    }

  private:
    void maybe_update_best(const std::vector<int>& counts, std::int64_t spent,
                           std::int64_t objective) {
        if (forbidden_.contains(counts)) return;
        const bool better =
            !found_ || objective < best_objective_ ||
            (objective == best_objective_ &&
             (spent < best_cost_ || (spent == best_cost_ && counts < best_)));
        if (better) {
            found_ = true;
            best_ = counts;
            best_objective_ = objective;
            best_cost_ = spent;
        }
    }

    static std::int64_t relaxed_floor(long double value) {
        // Downward slack so float rounding can never prune the true
        // optimum; the objective landscape is integer-valued.
        const long double relaxed = value - std::fabs(value) * 1e-12L - 1.0L;
        return static_cast<std::int64_t>(std::floor(relaxed));
    }

    /// Suffix aggregates and per-level ratio views over the current
    /// count windows; rebuilt whenever the windows change.
    void rebuild_suffix_data() {
        const std::size_t m = cost_.size();
        sum_neg_coeff_.assign(m + 1, 0);
        area_capacity_.assign(m + 1, 0);
        area_capacity_nonpos_.assign(m + 1, 0);
        min_forced_cost_.assign(m + 1, 0);
        next_forced_.assign(m + 1, m);
        min_cost_ratio_.assign(m + 1, kInfinity);
        min_neg_cost_.assign(m + 1, kNoCost);
        top_gain_.assign(m + 1, {});
        gain_cost_.assign(m + 1, {});
        gain_best_.assign(m + 1, {});
        std::vector<std::int64_t> top_gains;
        std::vector<std::pair<std::int64_t, std::int64_t>> by_cost;
        for (std::size_t i = m; i-- > 0;) {
            sum_neg_coeff_[i] = sum_neg_coeff_[i + 1];
            area_capacity_[i] = area_capacity_[i + 1];
            area_capacity_nonpos_[i] = area_capacity_nonpos_[i + 1];
            min_forced_cost_[i] = min_forced_cost_[i + 1] + cost_[i] * lo_[i];
            next_forced_[i] = lo_[i] > 0 ? i : next_forced_[i + 1];
            min_cost_ratio_[i] = min_cost_ratio_[i + 1];
            min_neg_cost_[i] = min_neg_cost_[i + 1];
            if (coeff_[i] < 0) {
                sum_neg_coeff_[i] += coeff_[i] * bound_[i];
            }
            area_capacity_[i] += area_[i] * bound_[i];
            if (coeff_[i] <= 0) {
                area_capacity_nonpos_[i] += area_[i] * bound_[i];
            }
            if (area_[i] > 0 && bound_[i] > 0) {
                min_cost_ratio_[i] = std::min(
                    min_cost_ratio_[i],
                    static_cast<long double>(cost_[i]) / static_cast<long double>(area_[i]));
            }
            if (coeff_[i] < 0 && bound_[i] > 0) {
                min_neg_cost_[i] = std::min(min_neg_cost_[i], cost_[i]);
                const int copies = std::min(bound_[i], static_cast<int>(kTopGainCap));
                for (int copy = 0; copy < copies; ++copy) {
                    top_gains.push_back(-coeff_[i]);
                }
                std::sort(top_gains.begin(), top_gains.end(), std::greater<>());
                if (top_gains.size() > kTopGainCap) top_gains.resize(kTopGainCap);
                const auto at = std::lower_bound(by_cost.begin(), by_cost.end(),
                                                 std::pair{cost_[i], -coeff_[i]});
                by_cost.insert(at, {cost_[i], -coeff_[i]});
            }
            auto& row = top_gain_[i];
            for (std::size_t q = 1; q <= kTopGainCap; ++q) {
                row[q] = row[q - 1] + (q <= top_gains.size() ? top_gains[q - 1] : 0);
            }
            auto& costs = gain_cost_[i];
            auto& best = gain_best_[i];
            costs.resize(by_cost.size());
            best.resize(by_cost.size());
            std::int64_t running = 0;
            for (std::size_t j = 0; j < by_cost.size(); ++j) {
                costs[j] = by_cost[j].first;
                running = std::max(running, by_cost[j].second);
                best[j] = running;
            }
        }

        // Per-level suffix views of the ratio orders so the hot bound
        // loops never scan entries the descent has already fixed.
        suffix_cover_.assign(m + 1, {});
        suffix_gain_.assign(m + 1, {});
        for (std::size_t level = 0; level <= m; ++level) {
            for (std::size_t j : cover_master_) {
                if (j >= level && bound_[j] > 0) suffix_cover_[level].push_back(j);
            }
            for (std::size_t j : gain_master_) {
                if (j >= level && bound_[j] > 0) suffix_gain_[level].push_back(j);
            }
        }
    }

    /// Integer-aware cap on the objective gain the remaining budget
    /// can still buy. Leftover cents below the cheapest gainful unit
    /// buy nothing, and q affordable units buy at most the q largest
    /// gains. When that still allows `need` or more, the harmonic
    /// refinement sharpens it: the k-th cheapest unit of a completion
    /// costs at most left/k, capping its gain at the best gain on
    /// offer at that price. Exact integers throughout, so comparisons
    /// need no float slack. A return below `need` proves no
    /// completion can close the gap.
    std::int64_t max_completion_gain(std::size_t level, std::int64_t left,
                                     std::int64_t need) const {
        if (min_neg_cost_[level] == kNoCost || left < min_neg_cost_[level]) return 0;
        const std::int64_t q = left / min_neg_cost_[level];
        const std::int64_t cap = q >= static_cast<std::int64_t>(kTopGainCap)
                                     ? -sum_neg_coeff_[level]
                                     : top_gain_[level][static_cast<std::size_t>(q)];
        if (cap < need || need <= 0) return cap;
        const auto& costs = gain_cost_[level];
        const auto& best = gain_best_[level];
        std::int64_t harmonic = 0;
        for (std::int64_t k = 1; k <= q; ++k) {
            const auto it = std::upper_bound(costs.begin(), costs.end(), left / k);
            if (it == costs.begin()) break;
            harmonic += best[static_cast<std::size_t>(it - costs.begin()) - 1];
            if (harmonic >= need) return cap;
        }
        return std::min(cap, harmonic);
    }

    /// Could taking exactly t units of configuration i still match or
    /// beat the incumbent? Uses the same two completion relaxations as
    /// the descent, with i excluded from the fractional fills.
    bool count_possible(std::size_t i, int t) const {
        const std::int64_t forced_cost = cost_[i] * t;
        if (forced_cost > budget()) return false;
        const std::int64_t threshold = best_objective_ - coeff_[i] * t;

        if (-max_completion_gain(0, budget() - forced_cost, -threshold) > threshold) {
            return false;
        }
        if (relaxed_floor(0.0L) > threshold) {
            long double value = 0.0L;
            long double left = static_cast<long double>(budget() - forced_cost);
            bool can_prune = true;
            for (std::size_t j : gain_master_) {
                if (j == i || bound_[j] <= 0) continue;
                if (left <= 0) break;
                const long double full = static_cast<long double>(cost_[j]) * bound_[j];
                const long double taken = std::min(full, left);
                value += taken * static_cast<long double>(coeff_[j]) /
                         static_cast<long double>(cost_[j]);
                left -= taken;
                if (relaxed_floor(value) <= threshold) {
                    can_prune = false;
                    break;
                }
            }
            if (can_prune && relaxed_floor(value) > threshold) return false;
        }

        std::int64_t neg = sum_neg_coeff_[0];
        std::int64_t nonpos_area = area_capacity_nonpos_[0];
        if (coeff_[i] < 0) neg -= coeff_[i] * bound_[i];
        if (coeff_[i] <= 0) nonpos_area -= area_[i] * bound_[i];
        long double value = static_cast<long double>(neg);
        const std::int64_t uncovered = farm() - area_[i] * t - nonpos_area;
        if (uncovered > 0) {
            long double need = static_cast<long double>(uncovered);
            for (std::size_t j : cover_master_) {
                if (j == i || bound_[j] <= 0) continue;
                if (need <= 0) break;
                if (relaxed_floor(value) > threshold) break;
                const long double full = static_cast<long double>(area_[j]) * bound_[j];
                const long double taken = std::min(full, need);
                value += taken * static_cast<long double>(coeff_[j]) /
                         static_cast<long double>(area_[j]);
                need -= taken;
            }
            if (need > 0) return false;
        }
        return relaxed_floor(value) <= threshold;
    }

    /// Root-level window trimming against the incumbent: count values
    /// whose completion bound already exceeds it cannot appear in any
    /// solution the search would keep, so the window ends shrink.
    /// Interior values stay even when individually impossible; only
    /// end trimming keeps the remaining window an interval.
    bool tighten_bounds() {
        bool changed = false;
        for (std::size_t i = 0; i < cost_.size(); ++i) {
            while (lo_[i] < bound_[i] && !count_possible(i, lo_[i])) {
                lo_[i] += 1;
                changed = true;
            }
            while (bound_[i] > lo_[i] && !count_possible(i, bound_[i])) {
                bound_[i] -= 1;
                changed = true;
            }
        }
        return changed;
    }

    /// Adds units along the given ratio order until the farm is
    /// covered; returns false when budget or bounds run out first.
    bool fill_coverage(const std::vector<std::size_t>& order, std::vector<int>& counts,
                       std::int64_t& spent, std::int64_t& covered) const {
        for (std::size_t i : order) {
            if (covered >= farm()) break;
            const std::int64_t needed = ceil_div(farm() - covered, area_[i]);
            const std::int64_t affordable = (budget() - spent) / cost_[i];
            const std::int64_t take = std::min<std::int64_t>(bound_[i] - counts[i],
                                                             std::min(needed, affordable));
            if (take <= 0) continue;
            counts[i] += static_cast<int>(take);
            spent += take * cost_[i];
            covered += take * area_[i];
        }
        return covered >= farm();
    }

    void consider_seed(const std::vector<int>& counts) {
        std::int64_t spent = 0;
        std::int64_t covered = 0;
        std::int64_t objective = 0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            spent += cost_[i] * counts[i];
            covered += area_[i] * counts[i];
            objective += coeff_[i] * counts[i];
        }
        if (spent > budget() || covered < farm()) return;
        maybe_update_best(counts, spent, objective);
    }

    /// Any feasible, non-forbidden fleet gives a valid incumbent.
    /// Greedy passes: cheapest coverage; negative-density budget fill
    /// completed by either cheapest or best-objective coverage (the
    /// latter two matter at payload-heavy weights, where coefficients
    /// go negative).
    void seed_incumbent() {
        const std::size_t m = cost_.size();
        by_cost_per_area_.clear();
        for (std::size_t i = 0; i < m; ++i) {
            if (area_[i] > 0) by_cost_per_area_.push_back(i);
        }
        std::stable_sort(by_cost_per_area_.begin(), by_cost_per_area_.end(),
                         [&](std::size_t a, std::size_t b) {
                             return cost_[a] * area_[b] < cost_[b] * area_[a];
                         });

        {
            std::vector<int> counts(m, 0);
            std::int64_t spent = 0;
            std::int64_t covered = 0;
            if (fill_coverage(by_cost_per_area_, counts, spent, covered)) {
                consider_seed(counts);
            }
        }

        if (suffix_gain_.empty() || suffix_gain_[0].empty()) return;
        std::vector<int> negative_fill(m, 0);
        std::int64_t spent = 0;
        std::int64_t covered = 0;
        for (std::size_t i : suffix_gain_[0]) {
            const std::int64_t take =
                std::min<std::int64_t>(bound_[i], (budget() - spent) / cost_[i]);
            if (take <= 0) continue;
            negative_fill[i] = static_cast<int>(take);
            spent += take * cost_[i];
            covered += take * area_[i];
        }
        for (const auto* order : {&by_cost_per_area_, &by_value_per_area_}) {
            std::vector<int> counts = negative_fill;
            std::int64_t s = spent;
            std::int64_t c = covered;
            if (fill_coverage(*order, counts, s, c)) consider_seed(counts);
        }
    }

    void record_leaf(std::int64_t spent, std::int64_t objective) {
        maybe_update_best(current_, spent, objective);
    }

    void descend(std::size_t level, std::int64_t spent, std::int64_t covered,
                 std::int64_t objective) {
        log_.nodes_visited += 1;
        const std::int64_t still_needed = farm() - covered;

        if (covered + area_capacity_[level] < farm() ||
            spent + min_forced_cost_[level] > budget()) {
            log_.nodes_pruned += 1;
            return;
        }
        if (still_needed > 0) {
            // Minimum spend to finish coverage, relaxed downward.
            const long double completion_cost =
                static_cast<long double>(still_needed) * min_cost_ratio_[level];
            if (static_cast<long double>(spent) +
                    completion_cost * (1.0L - kRelax) - 1.0L >
                static_cast<long double>(budget())) {
                log_.nodes_pruned += 1;
                return;
            }
        }
        if (found_) {
            const std::int64_t threshold = best_objective_ - objective;

            // Budget-side completion bounds with the coverage
            // constraint dropped. First the cardinality cap, then the
            // fractional fill over the densest negative coefficients;
            // the fill's running value only decreases, so stop as soon
            // as pruning is off the table.
            if (-max_completion_gain(level, budget() - spent, -threshold) > threshold) {
                log_.nodes_pruned += 1;
                return;
            }
            if (relaxed_floor(0.0L) > threshold) {
                long double value = 0.0L;
                long double left = static_cast<long double>(budget() - spent);
                bool can_prune = true;
                for (std::size_t j : suffix_gain_[level]) {
                    if (left <= 0) break;
                    const long double full =
                        static_cast<long double>(cost_[j]) * bound_[j];
                    const long double taken = std::min(full, left);
                    value += taken * static_cast<long double>(coeff_[j]) /
                             static_cast<long double>(cost_[j]);
                    left -= taken;
                    if (relaxed_floor(value) <= threshold) {
                        can_prune = false;
                        break;
                    }
                }
                if (can_prune && relaxed_floor(value) > threshold) {
                    log_.nodes_pruned += 1;
                    return;
                }
            }

            // Completion bound with the budget constraint dropped:
            // non-positive coefficients go in at full bounds, then the
            // remaining required area is bought at the best
            // objective-per-area rates. The running value only rises,
            // so an early overshoot already proves the prune.
            long double value = static_cast<long double>(sum_neg_coeff_[level]);
            const std::int64_t uncovered = still_needed - area_capacity_nonpos_[level];
            if (uncovered > 0) {
                long double need = static_cast<long double>(uncovered);
                for (std::size_t j : suffix_cover_[level]) {
                    if (need <= 0) break;
                    if (relaxed_floor(value) > threshold) break;
                    const long double full =
                        static_cast<long double>(area_[j]) * bound_[j];
                    const long double taken = std::min(full, need);
                    value += taken * static_cast<long double>(coeff_[j]) /
                             static_cast<long double>(area_[j]);
                    need -= taken;
                }
                if (need > 0) {
                    log_.nodes_pruned += 1;
                    return;
                }
            }
            if (relaxed_floor(value) > threshold) {
                log_.nodes_pruned += 1;
                return;
            }
        }

        // Leaving every remaining count at zero is itself a candidate,
        // as long as no window forces a positive count further down.
        if (min_forced_cost_[level] == 0 && covered >= farm()) {
            record_leaf(spent, objective);
        }

        // Branch on the next configuration taking a positive count.
        // Solutions map one-to-one onto strictly increasing support
        // sequences, so sparse fleets cost a handful of nodes instead
        // of a full walk over every configuration. Skipping past a
        // forced window would zero it, so the jump stops there.
        const std::size_t last = std::min(next_forced_[level], cost_.size() - 1);
        for (std::size_t k = level; k <= last; ++k) {
            const int x_lo = std::max(1, lo_[k]);
            if (coeff_[k] < 0) {
                // A negative coefficient wants as many units as the
                // budget allows; explore high counts first so the
                // first leaf lands on the relaxation's answer.
                const int max_x = static_cast<int>(std::min<std::int64_t>(
                    bound_[k], (budget() - spent) / cost_[k]));
                for (int x = max_x; x >= x_lo; --x) {
                    current_[k] = x;
                    descend(k + 1, spent + static_cast<std::int64_t>(x) * cost_[k],
                            covered + static_cast<std::int64_t>(x) * area_[k],
                            objective + static_cast<std::int64_t>(x) * coeff_[k]);
                }
            } else {
                for (int x = x_lo; x <= bound_[k]; ++x) {
                    const std::int64_t next_spent =
                        spent + static_cast<std::int64_t>(x) * cost_[k];
                    if (next_spent > budget()) break;
                    current_[k] = x;
                    descend(k + 1, next_spent,
                            covered + static_cast<std::int64_t>(x) * area_[k],
                            objective + static_cast<std::int64_t>(x) * coeff_[k]);
                }
            }
            current_[k] = 0;
        }
    }

    const DesignSpace& space_;
    ExplorationLog& log_;
    std::vector<std::size_t> order_;
    std::vector<std::int64_t> cost_;
    std::vector<std::int64_t> area_;
    std::vector<std::int64_t> coeff_;
    std::vector<int> original_bound_;
    std::vector<int> bound_;
    std::vector<int> lo_;
    std::vector<std::int64_t> sum_neg_coeff_;
    std::vector<std::int64_t> area_capacity_;
    std::vector<std::int64_t> area_capacity_nonpos_;
    std::vector<std::int64_t> min_forced_cost_;
    std::vector<std::size_t> next_forced_;
    std::vector<long double> min_cost_ratio_;
    std::vector<std::int64_t> min_neg_cost_;
    std::vector<std::array<std::int64_t, kTopGainCap + 1>> top_gain_;
    std::vector<std::vector<std::int64_t>> gain_cost_;
    std::vector<std::vector<std::int64_t>> gain_best_;
    std::vector<std::size_t> cover_master_;
    std::vector<std::size_t> gain_master_;
    std::vector<std::size_t> by_cost_per_area_;
    std::vector<std::size_t> by_value_per_area_;
    std::vector<std::vector<std::size_t>> suffix_cover_;
    std::vector<std::vector<std::size_t>> suffix_gain_;
    std::set<std::vector<int>> forbidden_;
    bool windows_dirty_ = false;

    std::vector<int> current_;
    std::vector<int> best_;
    bool found_ = false;
    std::int64_t best_objective_ = 0;
    std::int64_t best_cost_ = 0;
};

[[noreturn]] void throw_infeasible(const BranchAndBound& solver, const DesignSpace& space) {
    std::string detail;
    if (space.budget_for_fleet <= 0) {
        detail = strprintf("fixed costs %s leave no budget for vehicles",
                           format_cents(space.fixed_cost).c_str());
    } else if (solver.total_area_capacity() < solver.farm()) {
        detail = strprintf("maximum coverage %lld m2 under the unit bounds is short of the "
                           "farm's %lld m2",
                           static_cast<long long>(solver.total_area_capacity()),
                           static_cast<long long>(solver.farm()));
    } else if (solver.cheapest_cost_per_area() == kInfinity) {
        detail = "no configuration contributes coverage";
    } else {
        const long long need = static_cast<long long>(
            std::ceil(static_cast<long double>(solver.farm()) *
                      solver.cheapest_cost_per_area() * (1.0L - kRelax)));
        detail = strprintf("covering %lld m2 costs at least ~%s against a vehicle budget of %s",
                           static_cast<long long>(solver.farm()),
                           format_cents(need).c_str(),
                           format_cents(space.budget_for_fleet).c_str());
    }
    throw InfeasibleError("no feasible fleet: " + detail);
}

}  // namespace

SolvePool solve(const DesignSpace& space, const ObjectiveWeights& weights,
                const SolveOptions& options) {
    if (space.configs.empty()) {
        throw InfeasibleError("design space has no configurations");
    }
    if (space.upper_bounds.size() != space.configs.size()) {
        throw ValidationError("design space bounds do not match its configurations");
    }
    if (options.pool_limit < 1) {
        throw ValidationError("pool limit must be at least 1");
    }
    const ObjectiveModel model = make_objective_model(space, weights, options.mode);

    SolvePool pool;
    BranchAndBound solver(space, model, pool.log);
    for (int k = 0; k < options.pool_limit; ++k) {
        if (!solver.run()) {
            if (k == 0) throw_infeasible(solver, space);
            break;
        }
        RankedSolution solution;
        solution.counts = solver.best_counts_original_order();
        solution.objective = solver.best_objective();
        const FleetTotals totals = fleet_totals(space, solution.counts);
        solution.total_cost = totals.total_cost;
        solution.total_coverage = totals.total_coverage;
        solution.weights = model.weights;
        solver.forbid(solution.counts);
        pool.solutions.push_back(std::move(solution));
    }
    return pool;
}

SolvePool weight_sweep(const DesignSpace& space, int grid_resolution,
                       const SolveOptions& options) {
    if (grid_resolution < 2) {
        throw ValidationError(strprintf("weight sweep needs a grid resolution of at least 2, "
                                        "got %d",
                                        grid_resolution));
    }
    const int n = grid_resolution - 1;
    SolvePool merged;
    std::set<std::vector<int>> seen;
    SolveOptions point_options = options;
    point_options.pool_limit = 1;  // one optimum per lattice point
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n - i; ++j) {
            const int k = n - i - j;
            const ObjectiveWeights point{static_cast<double>(i) / n,
                                         static_cast<double>(j) / n,
                                         static_cast<double>(k) / n};
            SolvePool pool = solve(space, point, point_options);
            merged.log.nodes_visited += pool.log.nodes_visited;
            merged.log.nodes_pruned += pool.log.nodes_pruned;
            merged.log.solve_calls += pool.log.solve_calls;
            for (auto& solution : pool.solutions) {
                if (!seen.insert(solution.counts).second) continue;
                merged.solutions.push_back(std::move(solution));
            }
        }
    }
    for (const auto& solution : merged.solutions) {
        const FleetDesign design = design_from_counts(space, solution.counts);
        const Verdict verdict = verify(design, space.ctx);
        if (!verdict.valid) {
            throw Error("weight sweep produced a fleet the SAT verifier rejects (" +
                        verdict.failed_constraint + ")");
        }
    }
    return merged;
}

}  // namespace agrifleet
