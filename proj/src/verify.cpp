#include "agrifleet/verify.hpp"

#include "agrifleet/errors.hpp"

namespace agrifleet {

namespace {

enum class Part { both, budget_only, coverage_only };

DesignEncoding encode_parts(const FleetDesign& design, const ScenarioContext& ctx,
                            const std::vector<int>& line_bounds, Part part) {
    if (!line_bounds.empty() && line_bounds.size() != design.lines.size()) {
        throw EncodingError("line bound list does not match the design's line count");
    }

    DesignEncoding enc;
    PBConstraint cost{{}, PBRelation::less_equal,
                      ctx.scenario.budget - design.edge_cost - design.comm_cost};
    PBConstraint coverage{{}, PBRelation::greater_equal, ctx.scenario.farm_size_m2};

    for (std::size_t i = 0; i < design.lines.size(); ++i) {
        const FleetLine& line = design.lines[i];
        const int bound = line_bounds.empty() ? line.units : line_bounds[i];
        if (line.units > bound) {
            throw EncodingError("line unit count exceeds its declared bound");
        }
        std::vector<int>& slots = enc.slot_vars.emplace_back();
        for (int k = 0; k < bound; ++k) {
            slots.push_back(enc.formula.add_variable());
            if (k > 0) {
                // Order encoding: slot k usable only when slot k−1 is.
                enc.formula.add_clause({-slots[k], slots[k - 1]});
            }
            if (line.effective_unit_cost > 0) {
                cost.terms.push_back({line.effective_unit_cost, slots[k]});
            }
            if (line.area_units > 0) {
                coverage.terms.push_back({line.area_units, slots[k]});
            }
        }
        // Pin the design's chosen count.
        if (line.units > 0) enc.formula.add_clause({slots[line.units - 1]});
        if (line.units < bound) enc.formula.add_clause({-slots[line.units]});
    }

    if (part != Part::coverage_only) encode_pb(enc.formula, cost);
    if (part != Part::budget_only) encode_pb(enc.formula, coverage);
    return enc;
}

}  // namespace

DesignEncoding encode_design(const FleetDesign& design, const ScenarioContext& ctx,
                             const std::vector<int>& line_bounds) {
    return encode_parts(design, ctx, line_bounds, Part::both);
}

Verdict verify(const FleetDesign& design, const ScenarioContext& ctx) {
    Verdict verdict;
    DesignEncoding enc = encode_design(design, ctx);
    SatSolution solution = dpll_solve(enc.formula);
    if (solution.satisfiable) {
        verdict.valid = true;
        verdict.witness = std::move(solution.model);
        return verdict;
    }
    const bool budget_ok =
        dpll_solve(encode_parts(design, ctx, {}, Part::budget_only).formula).satisfiable;
    const bool coverage_ok =
        dpll_solve(encode_parts(design, ctx, {}, Part::coverage_only).formula).satisfiable;
    if (!budget_ok) verdict.failed_constraint = rules::budget;
    if (!coverage_ok) {
        if (!verdict.failed_constraint.empty()) verdict.failed_constraint += ",";
        verdict.failed_constraint += rules::coverage;
    }
    if (verdict.failed_constraint.empty()) {
        // Unreachable with independent constraints; kept for honesty.
        verdict.failed_constraint = "unknown";
    }
    return verdict;
}

}  // namespace agrifleet
