#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agrifleet/catalog.hpp"
#include "agrifleet/units.hpp"

namespace agrifleet {

/// User inputs: budget, farm size, crop, and the applications the
/// fleet must run. comm_override pins a communication method by id
/// instead of letting cost selection pick one.
struct Scenario {
    Cents budget = 0;
    AreaM2 farm_size_m2 = 0;
    CropClass crop{CropClass::cereal};
    std::vector<std::string> application_names;
    std::optional<std::string> comm_override;

    bool operator==(const Scenario&) const = default;
};

Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);
void validate_scenario(const Scenario& scenario);

/// Number of communication cells needed to tile the farm: the farm's
/// side length √S divided by the method's range, rounded up, floored
/// at one cell.
int comm_cells(AreaM2 farm_size_m2, const CommMethod& comm);

/// Total communication cost: cells × per-cell price.
Cents comm_cost(int cells, const CommMethod& comm);

/// Scenario joined against a catalog: resolved crop/application rows,
/// the platform and compute-kind restrictions they induce, the selected
/// communication method, and the fixed costs every fleet pays.
struct ScenarioContext {
    Scenario scenario;
    CropProfile crop;
    std::vector<ApplicationProfile> apps;
    std::set<VehicleKind> platforms;
    ComputeRequirement compute;
    CommMethod comm;
    int comm_cell_count = 1;
    Cents comm_cost_total = 0;
    std::optional<EdgeServer> edge;
    Cents edge_cost = 0;
    Cents apps_extra_cost = 0;      // per unit
    double apps_extra_mass_kg = 0;  // per unit
    double min_flight_hours = 0.2;
};

/// Resolves a scenario against a catalog. Selects the cheapest
/// communication method for the farm (ties to the larger range) and
/// the cheapest edge server when any application computes off-board.
/// Throws ValidationError for unknown names, InfeasibleError when the
/// crop/application combination rules out every platform or compute
/// kind, or when a required component category is empty.
ScenarioContext resolve_scenario(const ComponentCatalog& catalog, const Scenario& scenario);

}  // namespace agrifleet
