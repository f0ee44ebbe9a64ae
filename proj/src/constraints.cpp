#include "agrifleet/constraints.hpp"

#include <algorithm>

#include "agrifleet/errors.hpp"

namespace agrifleet {

FleetDesign make_fleet_design(const std::vector<std::pair<Configuration, int>>& lines,
                              const ScenarioContext& ctx, const ComponentCatalog& catalog) {
    FleetDesign design;
    design.edge_cost = ctx.edge_cost;
    design.comm_cost = ctx.comm_cost_total;
    design.total_cost = ctx.edge_cost + ctx.comm_cost_total;

    for (const auto& [config, units] : lines) {
        if (units < 1) {
            throw ValidationError("fleet line unit count must be at least 1");
        }
        FleetLine line;
        line.config = config;
        line.config.apps_extra_mass_kg = ctx.apps_extra_mass_kg;
        line.metrics = derive_metrics(line.config, catalog.calibration_kappa);
        line.units = units;
        line.effective_unit_cost = line.metrics.unit_cost + ctx.apps_extra_cost;
        line.area_units = line.metrics.coverage_area_units;
        design.lines.push_back(std::move(line));
    }

    for (const FleetLine& line : design.lines) {
        design.total_cost += line.effective_unit_cost * line.units;
        design.total_coverage += line.area_units * line.units;
        design.total_payload_kg += line.metrics.max_payload_kg * line.units;
    }
    return design;
}

BudgetCheck check_budget(const FleetDesign& design, const ScenarioContext& ctx) {
    BudgetCheck r;
    r.slack = ctx.scenario.budget - design.total_cost;
    r.pass = r.slack >= 0;
    return r;
}

CoverageCheck check_coverage(const FleetDesign& design, const ScenarioContext& ctx) {
    CoverageCheck r;
    r.surplus = design.total_coverage - ctx.scenario.farm_size_m2;
    r.pass = r.surplus >= 0;
    return r;
}

std::vector<std::string> check_structure(const Configuration& cfg) {
    std::vector<std::string> violated;
    if (cfg.battery_count < 1) {
        violated.push_back(rules::battery_count);
    }
    if (cfg.motor.size_class != cfg.chassis.size_class) {
        violated.push_back(rules::motor_size_match);
    }
    bool payload_ok = true;
    if (cfg.vehicle_kind == VehicleKind::rover &&
        (!cfg.tire.has_value() || !(cfg.tire->radius_m > 0))) {
        payload_ok = false;  // carry weight undefined without a usable tire
    } else {
        payload_ok = max_payload(cfg) >= 0;
    }
    if (!payload_ok) {
        violated.push_back(rules::payload_nonnegative);
    }
    return violated;
}

bool check_flight_time(const Configuration& cfg, const DerivedMetrics& metrics,
                       const ScenarioContext& ctx) {
    if (cfg.vehicle_kind != VehicleKind::drone) return true;
    return metrics.runtime_hours >= ctx.min_flight_hours;
}

FeasibilityVerdict feasible(const FleetDesign& design, const ScenarioContext& ctx) {
    FeasibilityVerdict verdict;
    auto add = [&](const char* rule) {
        if (std::find(verdict.violations.begin(), verdict.violations.end(), rule) ==
            verdict.violations.end()) {
            verdict.violations.push_back(rule);
        }
    };

    if (!check_budget(design, ctx).pass) add(rules::budget);
    if (!check_coverage(design, ctx).pass) add(rules::coverage);

    for (const FleetLine& line : design.lines) {
        for (const std::string& rule : check_structure(line.config)) {
            add(rule.c_str());
        }
        if (!check_flight_time(line.config, line.metrics, ctx)) add(rules::flight_time);
        if (!ctx.platforms.contains(line.config.vehicle_kind)) {
            add(rules::platform_compatibility);
        }
        if (!ctx.compute.allowed.contains(line.config.compute.kind)) {
            add(rules::compute_kind);
        }
    }

    verdict.ok = verdict.violations.empty();
    return verdict;
}

}  // namespace agrifleet
