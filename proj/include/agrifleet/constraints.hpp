#pragma once

#include <string>
#include <vector>

#include "agrifleet/derive.hpp"
#include "agrifleet/scenario.hpp"

namespace agrifleet {

/// Feasibility rule identifiers used in verdicts, reports, and tests.
namespace rules {
inline constexpr const char* budget = "budget";
inline constexpr const char* coverage = "coverage";
inline constexpr const char* battery_count = "battery_count";
inline constexpr const char* motor_size_match = "motor_size_match";
inline constexpr const char* payload_nonnegative = "payload_nonnegative";
inline constexpr const char* flight_time = "flight_time";
inline constexpr const char* platform_compatibility = "platform_compatibility";
inline constexpr const char* compute_kind = "compute_kind";
}  // namespace rules

/// One fleet line: a configuration deployed `units` times.
/// effective_unit_cost adds the per-unit application part cost on top
/// of the component bill; area_units is the per-unit coverage in whole
/// m² so that totals stay integer-exact.
struct FleetLine {
    Configuration config;
    DerivedMetrics metrics;
    int units = 1;
    Cents effective_unit_cost = 0;
    AreaM2 area_units = 0;

    bool operator==(const FleetLine&) const = default;
};

struct FleetDesign {
    std::vector<FleetLine> lines;
    Cents edge_cost = 0;
    Cents comm_cost = 0;
    Cents total_cost = 0;          // Σ effective_unit_cost·x + edge + comm
    AreaM2 total_coverage = 0;     // Σ area_units·x
    double total_payload_kg = 0;   // Σ W_max·x

    bool operator==(const FleetDesign&) const = default;
};

/// Builds a FleetDesign from (configuration, unit count) pairs,
/// deriving metrics with the catalog's calibration constant and filling
/// in the scenario's fixed edge and communication costs. Unit counts
/// below one are rejected.
FleetDesign make_fleet_design(const std::vector<std::pair<Configuration, int>>& lines,
                              const ScenarioContext& ctx, const ComponentCatalog& catalog);

struct BudgetCheck {
    bool pass = false;
    Cents slack = 0;  // budget − total cost; negative when over
};

struct CoverageCheck {
    bool pass = false;
    AreaM2 surplus = 0;  // total coverage − farm size; negative when short
};

BudgetCheck check_budget(const FleetDesign& design, const ScenarioContext& ctx);
CoverageCheck check_coverage(const FleetDesign& design, const ScenarioContext& ctx);

/// Structural rules of a single configuration: battery floor, motor
/// size matching, non-negative payload. Returns the violated rule
/// names, empty when the build is sound.
std::vector<std::string> check_structure(const Configuration& cfg);

/// Drones must stay aloft at least the scenario's minimum flight time;
/// rovers pass vacuously.
bool check_flight_time(const Configuration& cfg, const DerivedMetrics& metrics,
                       const ScenarioContext& ctx);

struct FeasibilityVerdict {
    bool ok = false;
    std::vector<std::string> violations;  // rule names, deduplicated, stable order
};

/// Full conjunction: budget, coverage, per-line structure, flight time,
/// platform compatibility, compute-kind rule. Collects every violated
/// rule rather than stopping at the first.
FeasibilityVerdict feasible(const FleetDesign& design, const ScenarioContext& ctx);

}  // namespace agrifleet
