#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "agrifleet/units.hpp"

namespace agrifleet {

enum class VehicleKind { rover, drone };
enum class SizeClass { small, medium, large };
enum class ComputeKind { cpu, gpu, tpu };
enum class ComputeMode { onboard, offboard };

/// Closed crop taxonomy. Unknown crop strings are rejected at load time,
/// never defaulted.
enum class CropClass {
    indoor,
    fiber_legume,
    early_paddy,
    cereal,
    tree,
    orchard,
    vine,
    vegetable,
    forage,
    oilseed,
};

/// Platform requirement of an application: rover-only, drone-only, or either.
enum class PlatformReq { rover, drone, both };

std::string to_string(VehicleKind k);
std::string to_string(SizeClass s);
std::string to_string(ComputeKind k);
std::string to_string(ComputeMode m);
std::string to_string(CropClass c);
std::string to_string(PlatformReq p);

VehicleKind vehicle_kind_from_string(const std::string& s, const std::string& context);
SizeClass size_class_from_string(const std::string& s, const std::string& context);
ComputeKind compute_kind_from_string(const std::string& s, const std::string& context);
ComputeMode compute_mode_from_string(const std::string& s, const std::string& context);
CropClass crop_class_from_string(const std::string& s, const std::string& context);
PlatformReq platform_req_from_string(const std::string& s, const std::string& context);

struct Chassis {
    std::string id;
    VehicleKind vehicle_kind{VehicleKind::rover};
    SizeClass size_class{SizeClass::small};
    double mass_kg{0};
    Cents cost{0};
    bool operator==(const Chassis&) const = default;
};

struct Motor {
    std::string id;
    SizeClass size_class{SizeClass::small};
    double torque_nm{0};  // per motor
    double mass_kg{0};
    Cents cost{0};
    double peak_power_w{0};
    bool operator==(const Motor&) const = default;
};

struct Battery {
    std::string id;
    double capacity_wh{0};
    double mass_kg{0};
    Cents cost{0};
    bool operator==(const Battery&) const = default;
};

struct Tire {
    std::string id;
    double radius_m{0};
    double mass_kg{0};
    Cents cost{0};
    bool operator==(const Tire&) const = default;
};

struct ComputeUnit {
    std::string id;
    ComputeKind kind{ComputeKind::cpu};
    double benchmark_score{0};  // multi-core benchmark score, catalog data
    double mass_kg{0};
    Cents cost{0};
    double power_w{0};
    bool operator==(const ComputeUnit&) const = default;
};

struct CommMethod {
    std::string id;
    double range_km{0};
    Cents cost_per_cell{0};
    bool operator==(const CommMethod&) const = default;
};

struct EdgeServer {
    std::string id;
    Cents cost{0};
    bool operator==(const EdgeServer&) const = default;
};

struct Sensor {
    std::string id;
    double mass_kg{0};
    Cents cost{0};
    double power_w{0};
    bool operator==(const Sensor&) const = default;
};

struct CropProfile {
    CropClass crop{CropClass::cereal};
    std::set<VehicleKind> allowed_platforms;
    bool operator==(const CropProfile&) const = default;
};

struct ApplicationProfile {
    std::string name;
    ComputeMode compute_mode{ComputeMode::offboard};
    PlatformReq platform{PlatformReq::both};
    Cents extra_cost{0};      // application-specific part cost per unit
    double extra_mass_kg{0};  // carried by every unit running the application
    bool operator==(const ApplicationProfile&) const = default;
};

/// Per-catalog knobs for configuration enumeration.
struct EnumerationDefaults {
    int motor_count = 4;
    int tire_count = 4;
    int max_batteries = 2;
    bool operator==(const EnumerationDefaults&) const = default;
};

struct ComponentCatalog {
    std::vector<Chassis> chassis_options;
    std::vector<Motor> motor_options;
    std::vector<Battery> battery_options;
    std::vector<Tire> tire_options;
    std::vector<ComputeUnit> compute_options;
    std::vector<CommMethod> comm_options;
    std::vector<EdgeServer> edge_servers;
    std::vector<Sensor> sensors;
    std::vector<CropProfile> crops;
    std::vector<ApplicationProfile> applications;

    /// Area-model calibration constant (m² per kg); scales the coverage
    /// formula into realistic ranges. Reported in all outputs.
    double calibration_kappa = 1.0;

    EnumerationDefaults enumeration;

    bool operator==(const ComponentCatalog&) const = default;

    const Chassis* find_chassis(const std::string& id) const;
    const Motor* find_motor(const std::string& id) const;
    const Battery* find_battery(const std::string& id) const;
    const Tire* find_tire(const std::string& id) const;
    const ComputeUnit* find_compute(const std::string& id) const;
    const CommMethod* find_comm(const std::string& id) const;
    const Sensor* find_sensor(const std::string& id) const;
    const CropProfile* find_crop(CropClass crop) const;
    const ApplicationProfile* find_application(const std::string& name) const;
};

/// Parses and validates a catalog file. Throws ParseError (syntax/schema)
/// or ValidationError (invariant violation naming the offending option).
ComponentCatalog load_catalog(const std::filesystem::path& path);

ComponentCatalog parse_catalog(const nlohmann::json& doc);
nlohmann::json catalog_to_json(const ComponentCatalog& catalog);

/// Checks every catalog invariant: positive costs, non-negative masses,
/// unique ids per category, non-empty battery list, sane ranges.
void validate_catalog(const ComponentCatalog& catalog);

/// Platforms usable for the crop under every requested application.
/// Throws InfeasibleError identifying the conflicting pair when the
/// intersection is empty.
std::set<VehicleKind> compatible_platforms(const CropProfile& crop,
                                           std::span<const ApplicationProfile> apps);

struct ComputeRequirement {
    std::set<ComputeKind> allowed;
    bool needs_edge_server = false;
    bool operator==(const ComputeRequirement&) const = default;
};

/// Onboard processing restricts compute units to GPU/TPU; offboard work
/// additionally requires an edge server.
ComputeRequirement required_compute_kinds(std::span<const ApplicationProfile> apps);

}  // namespace agrifleet
