#include "agrifleet/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include "agrifleet/errors.hpp"

namespace agrifleet {
namespace {

using nlohmann::json;

template <typename T>
const T* find_by_id(const std::vector<T>& items, const std::string& id) {
    auto it = std::find_if(items.begin(), items.end(),
                           [&](const T& item) { return item.id == id; });
    return it == items.end() ? nullptr : &*it;
}

const json& require_field(const json& obj, const char* key, const std::string& context) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(context + ": missing field '" + key + "'");
    }
    return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& context) {
    const json& v = require_field(obj, key, context);
    if (!v.is_string()) {
        throw ParseError(context + ": field '" + key + "' must be a string");
    }
    return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& context) {
    const json& v = require_field(obj, key, context);
    if (!v.is_number()) {
        throw ParseError(context + ": field '" + key + "' must be a number");
    }
    return v.get<double>();
}

Cents get_cents(const json& obj, const char* key, const std::string& context) {
    const json& v = require_field(obj, key, context);
    std::string where = context + " field '" + key + "'";
    if (v.is_string()) {
        return cents_from_string(v.get<std::string>(), where);
    }
    if (v.is_number()) {
        return cents_from_double(v.get<double>(), where);
    }
    throw ParseError(where + " must be a number or decimal string");
}

Cents get_cents_or(const json& obj, const char* key, const std::string& context, Cents fallback) {
    if (!obj.contains(key)) return fallback;
    return get_cents(obj, key, context);
}

double get_number_or(const json& obj, const char* key, const std::string& context, double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, key, context);
}

const json& require_array(const json& doc, const char* key) {
    const json& v = require_field(doc, key, "catalog");
    if (!v.is_array()) {
        throw ParseError(std::string("catalog: field '") + key + "' must be an array");
    }
    return v;
}

template <typename T, typename Fn>
std::vector<T> parse_list(const json& doc, const char* key, Fn parse_one) {
    std::vector<T> out;
    const json& arr = require_array(doc, key);
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string context = std::string(key) + "[" + std::to_string(i) + "]";
        if (!arr[i].is_object()) {
            throw ParseError(context + ": expected an object");
        }
        out.push_back(parse_one(arr[i], context));
    }
    return out;
}

template <typename T>
void check_unique_ids(const std::vector<T>& items, const char* category) {
    std::unordered_set<std::string> seen;
    for (const T& item : items) {
        if (item.id.empty()) {
            throw ValidationError(std::string(category) + ": empty id");
        }
        if (!seen.insert(item.id).second) {
            throw ValidationError(std::string(category) + ": duplicate id '" + item.id + "'");
        }
    }
}

void check_positive(double value, const std::string& what) {
    if (!(value > 0)) {
        throw ValidationError(what + " must be positive");
    }
}

void check_nonnegative(double value, const std::string& what) {
    if (!(value >= 0)) {
        throw ValidationError(what + " must be non-negative");
    }
}

void check_cost(Cents value, const std::string& what) {
    if (value < 0) {
        throw ValidationError(what + " must be non-negative");
    }
}

}  // namespace

std::string to_string(VehicleKind k) {
    return k == VehicleKind::rover ? "rover" : "drone";
}

std::string to_string(SizeClass s) {
    switch (s) {
        case SizeClass::small: return "small";
        case SizeClass::medium: return "medium";
        case SizeClass::large: return "large";
    }
    return "small";
}

std::string to_string(ComputeKind k) {
    switch (k) {
        case ComputeKind::cpu: return "cpu";
        case ComputeKind::gpu: return "gpu";
        case ComputeKind::tpu: return "tpu";
    }
    return "cpu";
}

std::string to_string(ComputeMode m) {
    return m == ComputeMode::onboard ? "onboard" : "offboard";
}

std::string to_string(CropClass c) {
    switch (c) {
        case CropClass::indoor: return "indoor";
        case CropClass::fiber_legume: return "fiber_legume";
        case CropClass::early_paddy: return "early_paddy";
        case CropClass::cereal: return "cereal";
        case CropClass::tree: return "tree";
        case CropClass::orchard: return "orchard";
        case CropClass::vine: return "vine";
        case CropClass::vegetable: return "vegetable";
        case CropClass::forage: return "forage";
        case CropClass::oilseed: return "oilseed";
    }
    return "cereal";
}

std::string to_string(PlatformReq p) {
    switch (p) {
        case PlatformReq::rover: return "rover";
        case PlatformReq::drone: return "drone";
        case PlatformReq::both: return "both";
    }
    return "both";
}

namespace {

template <typename Enum>
Enum enum_from_string(const std::string& s,
                      std::initializer_list<std::pair<const char*, Enum>> table,
                      const char* what, const std::string& context) {
    for (const auto& [name, value] : table) {
        if (s == name) return value;
    }
    throw ParseError(context + ": unknown " + what + " '" + s + "'");
}

}  // namespace

VehicleKind vehicle_kind_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<VehicleKind>(
        s, {{"rover", VehicleKind::rover}, {"drone", VehicleKind::drone}},
        "vehicle kind", context);
}

SizeClass size_class_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<SizeClass>(
        s,
        {{"small", SizeClass::small},
         {"medium", SizeClass::medium},
         {"large", SizeClass::large}},
        "size class", context);
}

ComputeKind compute_kind_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<ComputeKind>(
        s, {{"cpu", ComputeKind::cpu}, {"gpu", ComputeKind::gpu}, {"tpu", ComputeKind::tpu}},
        "compute kind", context);
}

ComputeMode compute_mode_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<ComputeMode>(
        s, {{"onboard", ComputeMode::onboard}, {"offboard", ComputeMode::offboard}},
        "compute mode", context);
}

CropClass crop_class_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<CropClass>(
        s,
        {{"indoor", CropClass::indoor},
         {"fiber_legume", CropClass::fiber_legume},
         {"early_paddy", CropClass::early_paddy},
         {"cereal", CropClass::cereal},
         {"tree", CropClass::tree},
         {"orchard", CropClass::orchard},
         {"vine", CropClass::vine},
         {"vegetable", CropClass::vegetable},
         {"forage", CropClass::forage},
         {"oilseed", CropClass::oilseed}},
        "crop class", context);
}

PlatformReq platform_req_from_string(const std::string& s, const std::string& context) {
    return enum_from_string<PlatformReq>(
        s,
        {{"rover", PlatformReq::rover},
         {"drone", PlatformReq::drone},
         {"both", PlatformReq::both}},
        "platform requirement", context);
}

const Chassis* ComponentCatalog::find_chassis(const std::string& id) const {
    return find_by_id(chassis_options, id);
}
const Motor* ComponentCatalog::find_motor(const std::string& id) const {
    return find_by_id(motor_options, id);
}
const Battery* ComponentCatalog::find_battery(const std::string& id) const {
    return find_by_id(battery_options, id);
}
const Tire* ComponentCatalog::find_tire(const std::string& id) const {
    return find_by_id(tire_options, id);
}
const ComputeUnit* ComponentCatalog::find_compute(const std::string& id) const {
    return find_by_id(compute_options, id);
}
const CommMethod* ComponentCatalog::find_comm(const std::string& id) const {
    return find_by_id(comm_options, id);
}
const Sensor* ComponentCatalog::find_sensor(const std::string& id) const {
    return find_by_id(sensors, id);
}

const CropProfile* ComponentCatalog::find_crop(CropClass crop) const {
    auto it = std::find_if(crops.begin(), crops.end(),
                           [&](const CropProfile& c) { return c.crop == crop; });
    return it == crops.end() ? nullptr : &*it;
}

const ApplicationProfile* ComponentCatalog::find_application(const std::string& name) const {
    auto it = std::find_if(applications.begin(), applications.end(),
                           [&](const ApplicationProfile& a) { return a.name == name; });
    return it == applications.end() ? nullptr : &*it;
}

ComponentCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open catalog file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("catalog " + path.string() + ": " + e.what());
    }
    ComponentCatalog catalog = parse_catalog(doc);
    validate_catalog(catalog);
    return catalog;
}

ComponentCatalog parse_catalog(const json& doc) {
    if (!doc.is_object()) {
        throw ParseError("catalog: top-level document must be an object");
    }
    ComponentCatalog c;

    c.chassis_options = parse_list<Chassis>(doc, "chassis", [](const json& j, const std::string& ctx) {
        Chassis ch;
        ch.id = get_string(j, "id", ctx);
        ch.vehicle_kind = vehicle_kind_from_string(get_string(j, "vehicle", ctx), ctx);
        ch.size_class = size_class_from_string(get_string(j, "size", ctx), ctx);
        ch.mass_kg = get_number(j, "mass_kg", ctx);
        ch.cost = get_cents(j, "cost", ctx);
        return ch;
    });

    c.motor_options = parse_list<Motor>(doc, "motors", [](const json& j, const std::string& ctx) {
        Motor m;
        m.id = get_string(j, "id", ctx);
        m.size_class = size_class_from_string(get_string(j, "size", ctx), ctx);
        m.torque_nm = get_number(j, "torque_nm", ctx);
        m.mass_kg = get_number(j, "mass_kg", ctx);
        m.cost = get_cents(j, "cost", ctx);
        m.peak_power_w = get_number(j, "peak_power_w", ctx);
        return m;
    });

    c.battery_options = parse_list<Battery>(doc, "batteries", [](const json& j, const std::string& ctx) {
        Battery b;
        b.id = get_string(j, "id", ctx);
        b.capacity_wh = get_number(j, "capacity_wh", ctx);
        b.mass_kg = get_number(j, "mass_kg", ctx);
        b.cost = get_cents(j, "cost", ctx);
        return b;
    });

    c.tire_options = parse_list<Tire>(doc, "tires", [](const json& j, const std::string& ctx) {
        Tire t;
        t.id = get_string(j, "id", ctx);
        t.radius_m = get_number(j, "radius_m", ctx);
        t.mass_kg = get_number(j, "mass_kg", ctx);
        t.cost = get_cents(j, "cost", ctx);
        return t;
    });

    c.compute_options = parse_list<ComputeUnit>(doc, "compute", [](const json& j, const std::string& ctx) {
        ComputeUnit u;
        u.id = get_string(j, "id", ctx);
        u.kind = compute_kind_from_string(get_string(j, "kind", ctx), ctx);
        u.benchmark_score = get_number(j, "benchmark", ctx);
        u.mass_kg = get_number(j, "mass_kg", ctx);
        u.cost = get_cents(j, "cost", ctx);
        u.power_w = get_number(j, "power_w", ctx);
        return u;
    });

    c.comm_options = parse_list<CommMethod>(doc, "comm", [](const json& j, const std::string& ctx) {
        CommMethod m;
        m.id = get_string(j, "id", ctx);
        m.range_km = get_number(j, "range_km", ctx);
        m.cost_per_cell = get_cents(j, "cost_per_cell", ctx);
        return m;
    });

    c.edge_servers = parse_list<EdgeServer>(doc, "edge_servers", [](const json& j, const std::string& ctx) {
        EdgeServer e;
        e.id = get_string(j, "id", ctx);
        e.cost = get_cents(j, "cost", ctx);
        return e;
    });

    c.sensors = parse_list<Sensor>(doc, "sensors", [](const json& j, const std::string& ctx) {
        Sensor s;
        s.id = get_string(j, "id", ctx);
        s.mass_kg = get_number(j, "mass_kg", ctx);
        s.cost = get_cents(j, "cost", ctx);
        s.power_w = get_number(j, "power_w", ctx);
        return s;
    });

    c.crops = parse_list<CropProfile>(doc, "crops", [](const json& j, const std::string& ctx) {
        CropProfile p;
        p.crop = crop_class_from_string(get_string(j, "crop", ctx), ctx);
        const json& plat = require_field(j, "platforms", ctx);
        if (!plat.is_array() || plat.empty()) {
            throw ParseError(ctx + ": field 'platforms' must be a non-empty array");
        }
        for (const json& entry : plat) {
            if (!entry.is_string()) {
                throw ParseError(ctx + ": platform entries must be strings");
            }
            p.allowed_platforms.insert(vehicle_kind_from_string(entry.get<std::string>(), ctx));
        }
        return p;
    });

    c.applications = parse_list<ApplicationProfile>(doc, "applications", [](const json& j, const std::string& ctx) {
        ApplicationProfile a;
        a.name = get_string(j, "name", ctx);
        a.compute_mode = compute_mode_from_string(get_string(j, "compute_mode", ctx), ctx);
        a.platform = platform_req_from_string(get_string(j, "platform", ctx), ctx);
        a.extra_cost = get_cents_or(j, "extra_cost", ctx, 0);
        a.extra_mass_kg = get_number_or(j, "extra_mass_kg", ctx, 0.0);
        return a;
    });

    c.calibration_kappa = get_number_or(doc, "calibration_kappa", "catalog", 1.0);

    if (doc.contains("enumeration")) {
        const json& e = doc["enumeration"];
        if (!e.is_object()) {
            throw ParseError("catalog: field 'enumeration' must be an object");
        }
        c.enumeration.motor_count =
            static_cast<int>(get_number_or(e, "motor_count", "enumeration", 4));
        c.enumeration.tire_count =
            static_cast<int>(get_number_or(e, "tire_count", "enumeration", 4));
        c.enumeration.max_batteries =
            static_cast<int>(get_number_or(e, "max_batteries", "enumeration", 2));
    }

    return c;
}

nlohmann::json catalog_to_json(const ComponentCatalog& c) {
    json doc = json::object();
    json chassis = json::array();
    for (const Chassis& ch : c.chassis_options) {
        chassis.push_back({{"id", ch.id},
                           {"vehicle", to_string(ch.vehicle_kind)},
                           {"size", to_string(ch.size_class)},
                           {"mass_kg", ch.mass_kg},
                           {"cost", format_cents(ch.cost)}});
    }
    doc["chassis"] = std::move(chassis);

    json motors = json::array();
    for (const Motor& m : c.motor_options) {
        motors.push_back({{"id", m.id},
                          {"size", to_string(m.size_class)},
                          {"torque_nm", m.torque_nm},
                          {"mass_kg", m.mass_kg},
                          {"cost", format_cents(m.cost)},
                          {"peak_power_w", m.peak_power_w}});
    }
    doc["motors"] = std::move(motors);

    json batteries = json::array();
    for (const Battery& b : c.battery_options) {
        batteries.push_back({{"id", b.id},
                             {"capacity_wh", b.capacity_wh},
                             {"mass_kg", b.mass_kg},
                             {"cost", format_cents(b.cost)}});
    }
    doc["batteries"] = std::move(batteries);

    json tires = json::array();
    for (const Tire& t : c.tire_options) {
        tires.push_back({{"id", t.id},
                         {"radius_m", t.radius_m},
                         {"mass_kg", t.mass_kg},
                         {"cost", format_cents(t.cost)}});
    }
    doc["tires"] = std::move(tires);

    json compute = json::array();
    for (const ComputeUnit& u : c.compute_options) {
        compute.push_back({{"id", u.id},
                           {"kind", to_string(u.kind)},
                           {"benchmark", u.benchmark_score},
                           {"mass_kg", u.mass_kg},
                           {"cost", format_cents(u.cost)},
                           {"power_w", u.power_w}});
    }
    doc["compute"] = std::move(compute);

    json comm = json::array();
    for (const CommMethod& m : c.comm_options) {
        comm.push_back({{"id", m.id},
                        {"range_km", m.range_km},
                        {"cost_per_cell", format_cents(m.cost_per_cell)}});
    }
    doc["comm"] = std::move(comm);

    json edges = json::array();
    for (const EdgeServer& e : c.edge_servers) {
        edges.push_back({{"id", e.id}, {"cost", format_cents(e.cost)}});
    }
    doc["edge_servers"] = std::move(edges);

    json sensors = json::array();
    for (const Sensor& s : c.sensors) {
        sensors.push_back({{"id", s.id},
                           {"mass_kg", s.mass_kg},
                           {"cost", format_cents(s.cost)},
                           {"power_w", s.power_w}});
    }
    doc["sensors"] = std::move(sensors);

    json crops = json::array();
    for (const CropProfile& p : c.crops) {
        json platforms = json::array();
        for (VehicleKind k : p.allowed_platforms) {
            platforms.push_back(to_string(k));
        }
        crops.push_back({{"crop", to_string(p.crop)}, {"platforms", std::move(platforms)}});
    }
    doc["crops"] = std::move(crops);

    json apps = json::array();
    for (const ApplicationProfile& a : c.applications) {
        apps.push_back({{"name", a.name},
                        {"compute_mode", to_string(a.compute_mode)},
                        {"platform", to_string(a.platform)},
                        {"extra_cost", format_cents(a.extra_cost)},
                        {"extra_mass_kg", a.extra_mass_kg}});
    }
    doc["applications"] = std::move(apps);

    doc["calibration_kappa"] = c.calibration_kappa;
    doc["enumeration"] = {{"motor_count", c.enumeration.motor_count},
                          {"tire_count", c.enumeration.tire_count},
                          {"max_batteries", c.enumeration.max_batteries}};
    return doc;
}

void validate_catalog(const ComponentCatalog& c) {
    check_unique_ids(c.chassis_options, "chassis");
    check_unique_ids(c.motor_options, "motors");
    check_unique_ids(c.battery_options, "batteries");
    check_unique_ids(c.tire_options, "tires");
    check_unique_ids(c.compute_options, "compute");
    check_unique_ids(c.comm_options, "comm");
    check_unique_ids(c.edge_servers, "edge_servers");
    check_unique_ids(c.sensors, "sensors");

    if (c.chassis_options.empty()) throw ValidationError("catalog: no chassis options");
    if (c.motor_options.empty()) throw ValidationError("catalog: no motor options");
    if (c.battery_options.empty()) throw ValidationError("catalog: no battery options");
    if (c.compute_options.empty()) throw ValidationError("catalog: no compute options");

    for (const Chassis& ch : c.chassis_options) {
        check_positive(ch.mass_kg, "chassis '" + ch.id + "': mass_kg");
        check_cost(ch.cost, "chassis '" + ch.id + "': cost");
    }
    for (const Motor& m : c.motor_options) {
        check_positive(m.torque_nm, "motor '" + m.id + "': torque_nm");
        check_positive(m.mass_kg, "motor '" + m.id + "': mass_kg");
        check_positive(m.peak_power_w, "motor '" + m.id + "': peak_power_w");
        check_cost(m.cost, "motor '" + m.id + "': cost");
    }
    for (const Battery& b : c.battery_options) {
        check_positive(b.capacity_wh, "battery '" + b.id + "': capacity_wh");
        check_positive(b.mass_kg, "battery '" + b.id + "': mass_kg");
        check_cost(b.cost, "battery '" + b.id + "': cost");
    }
    for (const Tire& t : c.tire_options) {
        check_positive(t.radius_m, "tire '" + t.id + "': radius_m");
        check_positive(t.mass_kg, "tire '" + t.id + "': mass_kg");
        check_cost(t.cost, "tire '" + t.id + "': cost");
    }
    for (const ComputeUnit& u : c.compute_options) {
        check_positive(u.benchmark_score, "compute '" + u.id + "': benchmark");
        check_nonnegative(u.mass_kg, "compute '" + u.id + "': mass_kg");
        check_positive(u.power_w, "compute '" + u.id + "': power_w");
        check_cost(u.cost, "compute '" + u.id + "': cost");
    }
    for (const CommMethod& m : c.comm_options) {
        check_positive(m.range_km, "comm '" + m.id + "': range_km");
        check_cost(m.cost_per_cell, "comm '" + m.id + "': cost_per_cell");
    }
    for (const EdgeServer& e : c.edge_servers) {
        check_cost(e.cost, "edge server '" + e.id + "': cost");
    }
    for (const Sensor& s : c.sensors) {
        check_nonnegative(s.mass_kg, "sensor '" + s.id + "': mass_kg");
        check_nonnegative(s.power_w, "sensor '" + s.id + "': power_w");
        check_cost(s.cost, "sensor '" + s.id + "': cost");
    }
    {
        std::set<CropClass> seen;
        for (const CropProfile& p : c.crops) {
            if (!seen.insert(p.crop).second) {
                throw ValidationError("crops: duplicate entry for '" + to_string(p.crop) + "'");
            }
            if (p.allowed_platforms.empty()) {
                throw ValidationError("crop '" + to_string(p.crop) + "': no allowed platforms");
            }
        }
    }
    {
        std::unordered_set<std::string> seen;
        for (const ApplicationProfile& a : c.applications) {
            if (a.name.empty()) throw ValidationError("applications: empty name");
            if (!seen.insert(a.name).second) {
                throw ValidationError("applications: duplicate name '" + a.name + "'");
            }
            check_cost(a.extra_cost, "application '" + a.name + "': extra_cost");
            check_nonnegative(a.extra_mass_kg, "application '" + a.name + "': extra_mass_kg");
        }
    }

    check_positive(c.calibration_kappa, "calibration_kappa");
    if (c.enumeration.motor_count < 1) {
        throw ValidationError("enumeration.motor_count must be at least 1");
    }
    if (c.enumeration.tire_count < 1) {
        throw ValidationError("enumeration.tire_count must be at least 1");
    }
    if (c.enumeration.max_batteries < 1) {
        throw ValidationError("enumeration.max_batteries must be at least 1");
    }
}

std::set<VehicleKind> compatible_platforms(const CropProfile& crop,
                                           std::span<const ApplicationProfile> apps) {
    std::set<VehicleKind> allowed = crop.allowed_platforms;
    for (const ApplicationProfile& app : apps) {
        std::set<VehicleKind> app_allowed;
        switch (app.platform) {
            case PlatformReq::rover: app_allowed = {VehicleKind::rover}; break;
            case PlatformReq::drone: app_allowed = {VehicleKind::drone}; break;
            case PlatformReq::both:
                app_allowed = {VehicleKind::rover, VehicleKind::drone};
                break;
        }
        std::set<VehicleKind> next;
        std::set_intersection(allowed.begin(), allowed.end(), app_allowed.begin(),
                              app_allowed.end(), std::inserter(next, next.begin()));
        if (next.empty()) {
            throw InfeasibleError("no platform satisfies crop '" + to_string(crop.crop) +
                                  "' together with application '" + app.name + "'");
        }
        allowed = std::move(next);
    }
    return allowed;
}

ComputeRequirement required_compute_kinds(std::span<const ApplicationProfile> apps) {
    ComputeRequirement req;
    req.allowed = {ComputeKind::cpu, ComputeKind::gpu, ComputeKind::tpu};
    for (const ApplicationProfile& app : apps) {
        if (app.compute_mode == ComputeMode::onboard) {
            req.allowed.erase(ComputeKind::cpu);
        } else {
            req.needs_edge_server = true;
        }
    }
    if (req.allowed.empty()) {
        throw InfeasibleError("no compute kind satisfies all requested applications");
    }
    return req;
}

}  // namespace agrifleet
