#include "agrifleet/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "agrifleet/verify.hpp"

namespace agrifleet {
namespace {

// Draws bypass <random> distributions: the standard does not pin their
// output, and fixed-seed runs must be bit-identical across library
// versions. Modulo bias is irrelevant at these range sizes.
int pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

double unit_draw(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

std::uint64_t split_seed(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counts evaluations and rescales the integer objective back to the
/// normalized band so annealing temperatures stay O(1).
struct Evaluator {
    const DesignSpace* space;
    const ObjectiveModel* model;
    int used = 0;

    double operator()(const std::vector<int>& counts) {
        ++used;
        return model->penalized_objective(counts, *space) /
               static_cast<double>(ObjectiveModel::kScale);
    }
};

/// Keeps the best candidates seen, ordered by (score, counts). Equal
/// count vectors always carry equal scores, so set insertion
/// deduplicates repeat visits for free.
struct PoolBuilder {
    std::set<std::pair<double, std::vector<int>>> best;

    void offer(const std::vector<int>& counts, double score) {
        best.emplace(score, counts);
        if (best.size() > static_cast<std::size_t>(kBaselinePoolLimit)) {
            best.erase(std::prev(best.end()));
        }
    }

    std::vector<BaselineCandidate> materialize(const DesignSpace& space) const {
        std::vector<BaselineCandidate> pool;
        pool.reserve(best.size());
        for (const auto& [score, counts] : best) {
            BaselineCandidate candidate;
            candidate.counts = counts;
            candidate.design = design_from_counts(space, counts);
            candidate.penalized_objective = score;
            candidate.feasible = feasible(candidate.design, space.ctx).ok;
            candidate.sat_valid = verify(candidate.design, space.ctx).valid;
            pool.push_back(std::move(candidate));
        }
        return pool;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Coverage fill by cheapest cost per area: the annealing start point
/// and the seeded genetic individual.
std::vector<int> greedy_fill(const DesignSpace& space) {
    const std::size_t m = space.configs.size();
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i) {
        if (space.configs[i].area_units > 0 && space.upper_bounds[i] > 0) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const CandidateConfig& ca = space.configs[a];
        const CandidateConfig& cb = space.configs[b];
        return static_cast<__int128>(ca.effective_unit_cost) * cb.area_units <
               static_cast<__int128>(cb.effective_unit_cost) * ca.area_units;
    });
    std::vector<int> counts(m, 0);
    Cents spent = 0;
    AreaM2 covered = 0;
    const AreaM2 farm = space.ctx.scenario.farm_size_m2;
    for (std::size_t i : order) {
        const CandidateConfig& config = space.configs[i];
        while (counts[i] < space.upper_bounds[i] && covered < farm &&
               spent + config.effective_unit_cost <= space.budget_for_fleet) {
            ++counts[i];
            spent += config.effective_unit_cost;
            covered += config.area_units;
        }
        if (covered >= farm) break;
    }
    return counts;
}

/// Largest support a sampled fleet may use: what the budget buys at
/// the cheapest unit price, clamped to [1, 16].
int support_cap(const DesignSpace& space) {
    Cents cheapest = 0;
    for (std::size_t i = 0; i < space.configs.size(); ++i) {
        if (space.upper_bounds[i] < 1) continue;
        const Cents cost = space.configs[i].effective_unit_cost;
        if (cheapest == 0 || cost < cheapest) cheapest = cost;
    }
    if (cheapest <= 0) return 16;
    return static_cast<int>(std::clamp<Cents>(space.budget_for_fleet / cheapest, 1, 16));
}

/// Uniform sparse sample: support size in [1, cap], each chosen
/// coordinate uniform in [1, bound]. Every in-bounds vector of small
/// support has positive probability; dense vectors blow the budget
/// anyway.
std::vector<int> sparse_sample(std::mt19937_64& rng, const DesignSpace& space, int cap) {
    const std::size_t m = space.configs.size();
    std::vector<int> counts(m, 0);
    const int support = 1 + pick(rng, static_cast<std::size_t>(cap));
    for (int s = 0; s < support; ++s) {
        const std::size_t i = static_cast<std::size_t>(pick(rng, m));
        if (space.upper_bounds[i] < 1) continue;
        counts[i] = 1 + pick(rng, static_cast<std::size_t>(space.upper_bounds[i]));
    }
    return counts;
}

/// One local move: ±1 on a coordinate, or a unit shifted between two
/// coordinates. Bounded retries; may return the input unchanged when
/// every attempt hits a clamp.
std::vector<int> neighbor(std::mt19937_64& rng, const DesignSpace& space,
                          const std::vector<int>& base) {
    std::vector<int> next = base;
    const std::size_t m = next.size();
    for (int attempt = 0; attempt < 16; ++attempt) {
        const int kind = m >= 2 ? pick(rng, 2) : 0;
        if (kind == 0) {
            const std::size_t i = static_cast<std::size_t>(pick(rng, m));
            const int value = next[i] + (pick(rng, 2) == 0 ? 1 : -1);
            if (value < 0 || value > space.upper_bounds[i]) continue;
            next[i] = value;
            return next;
        }
        const std::size_t from = static_cast<std::size_t>(pick(rng, m));
        const std::size_t to = static_cast<std::size_t>(pick(rng, m));
        if (from == to || next[from] <= 0 || next[to] >= space.upper_bounds[to]) continue;
        --next[from];
        ++next[to];
        return next;
    }
    return next;
}

int tournament(std::mt19937_64& rng, const std::vector<double>& scores) {
    int best = pick(rng, scores.size());
    for (int round = 1; round < 3; ++round) {
        const int challenger = pick(rng, scores.size());
        if (scores[challenger] < scores[best]) best = challenger;
    }
    return best;
}

}  // namespace

BaselineRun simulated_annealing(const DesignSpace& space, const ObjectiveWeights& weights,
                                std::uint64_t seed, const AnnealingSchedule& schedule) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectiveModel model = make_objective_model(space, weights);
    Evaluator evaluate{&space, &model};
    PoolBuilder pool;
    std::mt19937_64 rng(seed);

    std::vector<int> current = greedy_fill(space);
    double current_score = evaluate(current);
    pool.offer(current, current_score);

    double temperature = schedule.initial_temperature;
    while (evaluate.used < schedule.evaluations) {
        std::vector<int> next = neighbor(rng, space, current);
        const double score = evaluate(next);
        pool.offer(next, score);
        const double delta = score - current_score;
        if (delta <= 0 || (temperature > 0 && unit_draw(rng) < std::exp(-delta / temperature))) {
            current = std::move(next);
            current_score = score;
        }
        temperature *= schedule.cooling;
    }

    BaselineRun run;
    run.optimizer_name = "simulated_annealing";
    run.seed = seed;
    run.evaluation_budget = evaluate.used;
    run.pool = pool.materialize(space);
    run.wall_seconds = seconds_since(start);
    return run;
}

BaselineRun genetic_algorithm(const DesignSpace& space, const ObjectiveWeights& weights,
                              std::uint64_t seed, const GeneticOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectiveModel model = make_objective_model(space, weights);
    Evaluator evaluate{&space, &model};
    PoolBuilder pool;
    std::mt19937_64 rng(seed);

    const std::size_t m = space.configs.size();
    const std::size_t pop_size = static_cast<std::size_t>(std::max(1, options.population));
    const int cap = support_cap(space);

    std::vector<std::vector<int>> population;
    population.reserve(pop_size);
    population.push_back(greedy_fill(space));
    while (population.size() < pop_size) population.push_back(sparse_sample(rng, space, cap));

    std::vector<double> scores(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        scores[i] = evaluate(population[i]);
        pool.offer(population[i], scores[i]);
    }

    const double gene_rate = 1.0 / static_cast<double>(m);
    for (int gen = 0; gen < options.generations; ++gen) {
        std::size_t elite = 0;
        for (std::size_t i = 1; i < pop_size; ++i) {
            if (scores[i] < scores[elite]) elite = i;
        }
        std::vector<std::vector<int>> offspring;
        offspring.reserve(pop_size);
        offspring.push_back(population[elite]);
        while (offspring.size() < pop_size) {
            const std::vector<int>& a = population[tournament(rng, scores)];
            const std::vector<int>& b = population[tournament(rng, scores)];
            std::vector<int> child = a;
            if (m >= 2) {
                const std::size_t cut = 1 + static_cast<std::size_t>(pick(rng, m - 1));
                std::copy(b.begin() + cut, b.end(), child.begin() + cut);
            }
            for (std::size_t g = 0; g < m; ++g) {
                if (unit_draw(rng) >= gene_rate) continue;
                if (pick(rng, 2) == 0) {
                    const int step = pick(rng, 2) == 0 ? 1 : -1;
                    child[g] = std::clamp(child[g] + step, 0, space.upper_bounds[g]);
                } else {
                    child[g] = pick(rng, static_cast<std::size_t>(space.upper_bounds[g]) + 1);
                }
            }
            offspring.push_back(std::move(child));
        }
        population = std::move(offspring);
        for (std::size_t i = 0; i < pop_size; ++i) {
            scores[i] = evaluate(population[i]);
            pool.offer(population[i], scores[i]);
        }
    }

    BaselineRun run;
    run.optimizer_name = "genetic_algorithm";
    run.seed = seed;
    run.evaluation_budget = evaluate.used;
    run.pool = pool.materialize(space);
    run.wall_seconds = seconds_since(start);
    return run;
}

BaselineRun random_search(const DesignSpace& space, const ObjectiveWeights& weights,
                          std::uint64_t seed, int n) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectiveModel model = make_objective_model(space, weights);
    Evaluator evaluate{&space, &model};
    PoolBuilder pool;
    std::mt19937_64 rng(seed);

    const int target = std::max(1, n);
    const int cap = support_cap(space);
    while (evaluate.used < target) {
        std::vector<int> counts = sparse_sample(rng, space, cap);
        pool.offer(counts, evaluate(counts));
    }

    BaselineRun run;
    run.optimizer_name = "random_search";
    run.seed = seed;
    run.evaluation_budget = evaluate.used;
    run.pool = pool.materialize(space);
    run.wall_seconds = seconds_since(start);
    return run;
}

BaselineRun discrete_search(const DesignSpace& space, const ObjectiveWeights& weights) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectiveModel model = make_objective_model(space, weights);
    Evaluator evaluate{&space, &model};

    const std::size_t m = space.configs.size();
    std::vector<int> current(m, 0);
    double current_score = evaluate(current);

    // Strict-improvement coordinate descent terminates on its own; the
    // pass cap is a backstop.
    bool improved = true;
    for (int pass = 0; pass < 64 && improved; ++pass) {
        improved = false;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<int> probe = current;
            int best_value = current[i];
            double best_score = current_score;
            for (int value = 0; value <= space.upper_bounds[i]; ++value) {
                if (value == current[i]) continue;
                probe[i] = value;
                const double score = evaluate(probe);
                if (score < best_score) {
                    best_score = score;
                    best_value = value;
                }
            }
            if (best_value != current[i]) {
                current[i] = best_value;
                current_score = best_score;
                improved = true;
            }
        }
    }

    PoolBuilder pool;
    pool.offer(current, current_score);

    BaselineRun run;
    run.optimizer_name = "discrete_search";
    run.seed = 0;
    run.evaluation_budget = evaluate.used;
    run.pool = pool.materialize(space);
    run.wall_seconds = seconds_since(start);
    return run;
}

BaselineRun one_plus_one_lengler(const DesignSpace& space, const ObjectiveWeights& weights,
                                 std::uint64_t seed, int n) {
    const auto start = std::chrono::steady_clock::now();
    const ObjectiveModel model = make_objective_model(space, weights);
    Evaluator evaluate{&space, &model};
    PoolBuilder pool;
    std::mt19937_64 rng(seed);

    const std::size_t m = space.configs.size();
    const int target = std::max(1, n);
    std::vector<int> parent(m, 0);
    double parent_score = evaluate(parent);
    pool.offer(parent, parent_score);

    const double floor_rate = 1.0 / static_cast<double>(m);
    for (int step = 0; evaluate.used < target; ++step) {
        const double rate = std::max(floor_rate, 1.0 / (2.0 + static_cast<double>(step) / 8.0));
        std::vector<int> child = parent;
        for (int attempt = 0; attempt < 16 && child == parent; ++attempt) {
            child = parent;
            for (std::size_t g = 0; g < m; ++g) {
                if (unit_draw(rng) >= rate) continue;
                const int delta = pick(rng, 2) == 0 ? 1 : -1;
                child[g] = std::clamp(child[g] + delta, 0, space.upper_bounds[g]);
            }
        }
        const double score = evaluate(child);
        pool.offer(child, score);
        if (score <= parent_score) {
            parent = std::move(child);
            parent_score = score;
        }
    }

    BaselineRun run;
    run.optimizer_name = "one_plus_one_lengler";
    run.seed = seed;
    run.evaluation_budget = evaluate.used;
    run.pool = pool.materialize(space);
    run.wall_seconds = seconds_since(start);
    return run;
}

BaselineRun portfolio(const DesignSpace& space, const ObjectiveWeights& weights,
                      std::uint64_t seed, int n) {
    const auto start = std::chrono::steady_clock::now();
    const int share = std::max(1, n / 4);
    std::uint64_t state = seed;

    AnnealingSchedule schedule;
    schedule.evaluations = share;
    const BaselineRun annealing = simulated_annealing(space, weights, split_seed(state), schedule);

    GeneticOptions genetic;
    genetic.population = std::min(genetic.population, share);
    genetic.generations = std::max(0, share / genetic.population - 1);
    const BaselineRun evolved = genetic_algorithm(space, weights, split_seed(state), genetic);

    const BaselineRun sampled = random_search(space, weights, split_seed(state), share);
    const BaselineRun stepped = one_plus_one_lengler(space, weights, split_seed(state), share);

    std::vector<BaselineCandidate> merged;
    for (const BaselineRun* member : {&annealing, &evolved, &sampled, &stepped}) {
        merged.insert(merged.end(), member->pool.begin(), member->pool.end());
    }
    std::sort(merged.begin(), merged.end(),
              [](const BaselineCandidate& a, const BaselineCandidate& b) {
                  if (a.penalized_objective != b.penalized_objective) {
                      return a.penalized_objective < b.penalized_objective;
                  }
                  return a.counts < b.counts;
              });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const BaselineCandidate& a, const BaselineCandidate& b) {
                                 return a.counts == b.counts;
                             }),
                 merged.end());
    if (merged.size() > static_cast<std::size_t>(kBaselinePoolLimit)) {
        merged.resize(kBaselinePoolLimit);
    }

    BaselineRun run;
    run.optimizer_name = "portfolio";
    run.seed = seed;
    run.evaluation_budget = annealing.evaluation_budget + evolved.evaluation_budget +
                            sampled.evaluation_budget + stepped.evaluation_budget;
    run.pool = std::move(merged);
    run.wall_seconds = seconds_since(start);
    return run;
}

}  // namespace agrifleet
