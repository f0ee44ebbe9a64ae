#include "agrifleet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "agrifleet/errors.hpp"

namespace agrifleet {

namespace {

using nlohmann::json;

Cents parse_budget(const json& doc) {
    auto it = doc.find("budget");
    if (it == doc.end()) throw ParseError("scenario: missing field 'budget'");
    if (it->is_string()) return cents_from_string(it->get<std::string>(), "scenario budget");
    if (it->is_number()) return cents_from_double(it->get<double>(), "scenario budget");
    throw ParseError("scenario: field 'budget' must be a number or decimal string");
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scenario file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("scenario " + path.string() + ": " + e.what());
    }
    Scenario s = parse_scenario(doc);
    validate_scenario(s);
    return s;
}

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) {
        throw ParseError("scenario: top-level document must be an object");
    }
    Scenario s;
    s.budget = parse_budget(doc);

    auto size_it = doc.find("farm_size_m2");
    if (size_it == doc.end() || !size_it->is_number()) {
        throw ParseError("scenario: field 'farm_size_m2' must be a number");
    }
    s.farm_size_m2 = area_units_from_m2(size_it->get<double>());

    auto crop_it = doc.find("crop");
    if (crop_it == doc.end() || !crop_it->is_string()) {
        throw ParseError("scenario: field 'crop' must be a string");
    }
    s.crop = crop_class_from_string(crop_it->get<std::string>(), "scenario crop");

    auto apps_it = doc.find("applications");
    if (apps_it == doc.end() || !apps_it->is_array()) {
        throw ParseError("scenario: field 'applications' must be an array");
    }
    for (const json& entry : *apps_it) {
        if (!entry.is_string()) {
            throw ParseError("scenario: application entries must be strings");
        }
        s.application_names.push_back(entry.get<std::string>());
    }

    if (doc.contains("comm_override")) {
        const json& v = doc["comm_override"];
        if (!v.is_string()) {
            throw ParseError("scenario: field 'comm_override' must be a string");
        }
        s.comm_override = v.get<std::string>();
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json doc = {{"budget", format_cents(s.budget)},
                {"farm_size_m2", s.farm_size_m2},
                {"crop", to_string(s.crop)},
                {"applications", s.application_names}};
    if (s.comm_override) doc["comm_override"] = *s.comm_override;
    return doc;
}

void validate_scenario(const Scenario& s) {
    if (s.budget <= 0) throw ValidationError("scenario: budget must be positive");
    if (s.farm_size_m2 <= 0) throw ValidationError("scenario: farm size must be positive");
    if (s.application_names.empty()) {
        throw ValidationError("scenario: at least one application is required");
    }
}

int comm_cells(AreaM2 farm_size_m2, const CommMethod& comm) {
    if (!(comm.range_km > 0)) {
        throw ValidationError("comm '" + comm.id + "': range must be positive");
    }
    const double side_m = std::sqrt(static_cast<double>(farm_size_m2));
    const double raw = side_m / (comm.range_km * 1000.0);
    const int cells = static_cast<int>(std::ceil(raw));
    return std::max(1, cells);
}

Cents comm_cost(int cells, const CommMethod& comm) {
    return static_cast<Cents>(cells) * comm.cost_per_cell;
}

ScenarioContext resolve_scenario(const ComponentCatalog& catalog, const Scenario& scenario) {
    validate_scenario(scenario);

    ScenarioContext ctx;
    ctx.scenario = scenario;

    const CropProfile* crop = catalog.find_crop(scenario.crop);
    if (crop == nullptr) {
        throw ValidationError("catalog has no crop profile for '" + to_string(scenario.crop) + "'");
    }
    ctx.crop = *crop;

    for (const std::string& name : scenario.application_names) {
        const ApplicationProfile* app = catalog.find_application(name);
        if (app == nullptr) {
            throw ValidationError("catalog has no application named '" + name + "'");
        }
        ctx.apps.push_back(*app);
        ctx.apps_extra_cost += app->extra_cost;
        ctx.apps_extra_mass_kg += app->extra_mass_kg;
    }

    ctx.platforms = compatible_platforms(ctx.crop, ctx.apps);
    ctx.compute = required_compute_kinds(ctx.apps);

    const bool any_allowed_compute =
        std::any_of(catalog.compute_options.begin(), catalog.compute_options.end(),
                    [&](const ComputeUnit& u) { return ctx.compute.allowed.contains(u.kind); });
    if (!any_allowed_compute) {
        throw InfeasibleError("catalog has no compute unit of an allowed kind");
    }

    if (ctx.compute.needs_edge_server) {
        if (catalog.edge_servers.empty()) {
            throw InfeasibleError(
                "off-board applications need an edge server but the catalog lists none");
        }
        const EdgeServer* best = &catalog.edge_servers.front();
        for (const EdgeServer& e : catalog.edge_servers) {
            if (e.cost < best->cost || (e.cost == best->cost && e.id < best->id)) {
                best = &e;
            }
        }
        ctx.edge = *best;
        ctx.edge_cost = best->cost;
    }

    if (catalog.comm_options.empty()) {
        throw InfeasibleError("catalog lists no communication methods");
    }
    if (scenario.comm_override) {
        const CommMethod* m = catalog.find_comm(*scenario.comm_override);
        if (m == nullptr) {
            throw ValidationError("catalog has no communication method named '" +
                                  *scenario.comm_override + "'");
        }
        ctx.comm = *m;
    } else {
        const CommMethod* best = nullptr;
        Cents best_cost = 0;
        for (const CommMethod& m : catalog.comm_options) {
            const Cents total = comm_cost(comm_cells(scenario.farm_size_m2, m), m);
            const bool better =
                best == nullptr || total < best_cost ||
                (total == best_cost && m.range_km > best->range_km) ||
                (total == best_cost && m.range_km == best->range_km && m.id < best->id);
            if (better) {
                best = &m;
                best_cost = total;
            }
        }
        ctx.comm = *best;
    }
    ctx.comm_cell_count = comm_cells(scenario.farm_size_m2, ctx.comm);
    ctx.comm_cost_total = comm_cost(ctx.comm_cell_count, ctx.comm);

    return ctx;
}

}  // namespace agrifleet
