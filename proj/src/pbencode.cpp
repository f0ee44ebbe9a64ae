#include "agrifleet/pbencode.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <vector>

#include "agrifleet/errors.hpp"

namespace agrifleet {
namespace {

/// Counter-path state budget. Beyond this the layered construction is
/// abandoned for the adder network, whose size is O(terms · bits).
constexpr std::size_t kCounterSwitch = 20'000;

/// Layered reachable-sum counter. Returns false when the state count
/// would exceed `node_limit`; the caller rolls the formula back.
bool encode_counter(CnfFormula& formula, const PBConstraint& constraint, bool is_upper,
                    std::int64_t cap, std::size_t node_limit) {
    std::map<std::int64_t, int> layer{{0, formula.add_variable()}};
    formula.add_clause({layer.begin()->second});
    std::size_t nodes = 1;

    for (const PBTerm& term : constraint.terms) {
        std::map<std::int64_t, int> next;
        auto state_var = [&](std::int64_t sum) {
            auto it = next.find(sum);
            if (it != next.end()) return it->second;
            ++nodes;
            return next.emplace(sum, formula.add_variable()).first->second;
        };
        for (const auto& [sum, var] : layer) {
            if (nodes + 2 > node_limit) return false;
            if (sum == cap) {
                // Saturated: the successor is the same regardless of the literal.
                formula.add_clause({-var, state_var(cap)});
                continue;
            }
            const std::int64_t taken = std::min(cap, sum + term.coefficient);
            formula.add_clause({-var, -term.literal, state_var(taken)});
            formula.add_clause({-var, term.literal, state_var(sum)});
        }
        layer = std::move(next);
    }

    if (is_upper) {
        auto it = layer.find(cap);
        if (it != layer.end()) formula.add_clause({-it->second});
    } else {
        for (const auto& [sum, var] : layer) {
            if (sum < cap) formula.add_clause({-var});
        }
    }
    return true;
}

/// Fresh gate variables for the adder network, plus a shared pinned
/// false literal for absent result bits.
struct GateBuilder {
    CnfFormula& formula;
    int false_var = 0;

    Literal constant_false() {
        if (false_var == 0) {
            false_var = formula.add_variable();
            formula.add_clause({-false_var});
        }
        return false_var;
    }

    Literal full_sum(Literal x, Literal y, Literal z) {
        const int s = formula.add_variable();
        formula.add_clause({-x, -y, -z, s});
        formula.add_clause({-x, y, z, s});
        formula.add_clause({x, -y, z, s});
        formula.add_clause({x, y, -z, s});
        formula.add_clause({x, y, z, -s});
        formula.add_clause({x, -y, -z, -s});
        formula.add_clause({-x, y, -z, -s});
        formula.add_clause({-x, -y, z, -s});
        return s;
    }

    Literal full_carry(Literal x, Literal y, Literal z) {
        const int c = formula.add_variable();
        formula.add_clause({-x, -y, c});
        formula.add_clause({-x, -z, c});
        formula.add_clause({-y, -z, c});
        formula.add_clause({x, y, -c});
        formula.add_clause({x, z, -c});
        formula.add_clause({y, z, -c});
        return c;
    }

    Literal half_sum(Literal x, Literal y) {
        const int s = formula.add_variable();
        formula.add_clause({-x, -y, -s});
        formula.add_clause({x, y, -s});
        formula.add_clause({x, -y, s});
        formula.add_clause({-x, y, s});
        return s;
    }

    Literal half_carry(Literal x, Literal y) {
        const int c = formula.add_variable();
        formula.add_clause({-x, -y, c});
        formula.add_clause({x, -c});
        formula.add_clause({y, -c});
        return c;
    }
};

/// Warners-style adder network: bit buckets reduced with full and half
/// adders into one binary result, compared lexicographically against
/// the bound through an equal-prefix chain.
void encode_adder(CnfFormula& formula, const PBConstraint& constraint, bool is_upper,
                  std::int64_t bound) {
    GateBuilder gates{formula};

    std::vector<std::vector<Literal>> buckets;
    auto bucket = [&](std::size_t j) -> std::vector<Literal>& {
        if (buckets.size() <= j) buckets.resize(j + 1);
        return buckets[j];
    };
    for (const PBTerm& term : constraint.terms) {
        for (int j = 0; j < 63; ++j) {
            if (term.coefficient & (std::int64_t{1} << j)) bucket(j).push_back(term.literal);
        }
    }

    for (std::size_t j = 0; j < buckets.size(); ++j) {
        while (buckets[j].size() > 1) {
            bucket(j + 1);  // ensures the carry slot exists before taking references
            std::vector<Literal>& level = buckets[j];
            if (level.size() >= 3) {
                const Literal x = level.back();
                level.pop_back();
                const Literal y = level.back();
                level.pop_back();
                const Literal z = level.back();
                level.pop_back();
                level.push_back(gates.full_sum(x, y, z));
                buckets[j + 1].push_back(gates.full_carry(x, y, z));
            } else {
                const Literal x = level.back();
                level.pop_back();
                const Literal y = level.back();
                level.pop_back();
                level.push_back(gates.half_sum(x, y));
                buckets[j + 1].push_back(gates.half_carry(x, y));
            }
        }
    }

    auto result_bit = [&](int j) -> Literal {
        if (j < static_cast<int>(buckets.size()) && !buckets[j].empty()) return buckets[j][0];
        return gates.constant_false();
    };

    int top = static_cast<int>(buckets.size()) - 1;
    for (int j = top + 1; j < 63; ++j) {
        if (bound >> j & 1) top = j;
    }

    Literal equal_above = 0;  // 0 means "constant true" at the first bit
    for (int j = top; j >= 0; --j) {
        const bool bound_bit = (bound >> j) & 1;
        const Literal r = result_bit(j);
        if (is_upper && !bound_bit) {
            if (equal_above != 0) {
                formula.add_clause({-equal_above, -r});
            } else {
                formula.add_clause({-r});
            }
        }
        if (!is_upper && bound_bit) {
            if (equal_above != 0) {
                formula.add_clause({-equal_above, r});
            } else {
                formula.add_clause({r});
            }
        }
        if (j == 0) break;
        const Literal match = bound_bit ? r : -r;
        const int e = formula.add_variable();
        if (equal_above != 0) {
            formula.add_clause({-e, equal_above});
            formula.add_clause({-e, match});
            formula.add_clause({e, -equal_above, -match});
        } else {
            formula.add_clause({-e, match});
            formula.add_clause({e, -match});
        }
        equal_above = e;
    }
}

}  // namespace

void encode_pb(CnfFormula& formula, const PBConstraint& constraint, std::size_t node_limit) {
    for (const PBTerm& term : constraint.terms) {
        if (term.coefficient <= 0) {
            throw EncodingError("pseudo-Boolean coefficients must be positive");
        }
        if (term.literal == 0 || std::abs(term.literal) > formula.variable_count) {
            throw EncodingError("pseudo-Boolean term references an undeclared literal");
        }
    }

    const bool is_upper = constraint.relation == PBRelation::less_equal;
    if (is_upper && constraint.bound < 0) {
        formula.add_clause({});  // no assignment can satisfy a negative upper bound
        return;
    }
    if (!is_upper && constraint.bound <= 0) {
        return;  // any assignment reaches a non-positive lower bound
    }

    // Sums clamp at `cap`; for ≤ the cap is the first violating value,
    // for ≥ it is the first satisfying one. Either way the capped state
    // is sticky.
    const std::int64_t cap = is_upper ? constraint.bound + 1 : constraint.bound;

    const int saved_variables = formula.variable_count;
    const std::size_t saved_clauses = formula.clauses.size();
    if (encode_counter(formula, constraint, is_upper, cap,
                       std::min(node_limit, kCounterSwitch))) {
        return;
    }
    formula.variable_count = saved_variables;
    formula.clauses.resize(saved_clauses);
    encode_adder(formula, constraint, is_upper, constraint.bound);
}

bool pb_holds(const PBConstraint& constraint, const std::vector<bool>& model) {
    std::int64_t sum = 0;
    for (const PBTerm& term : constraint.terms) {
        const std::size_t v = static_cast<std::size_t>(std::abs(term.literal));
        const bool lit_true = term.literal > 0 ? model[v] : !model[v];
        if (lit_true) sum += term.coefficient;
    }
    return constraint.relation == PBRelation::less_equal ? sum <= constraint.bound
                                                         : sum >= constraint.bound;
}

}  // namespace agrifleet
