#pragma once

#include <optional>
#include <vector>

#include "agrifleet/catalog.hpp"
#include "agrifleet/units.hpp"

namespace agrifleet {

/// One fully specified vehicle build: chassis, drivetrain, power,
/// compute, sensors, plus the mass of application-specific parts it
/// carries. Counts are explicit; component structs are copied in so a
/// configuration stays valid independent of catalog lifetime.
struct Configuration {
    VehicleKind vehicle_kind{VehicleKind::rover};
    Chassis chassis;
    Motor motor;
    int motor_count = 4;
    Battery battery;
    int battery_count = 1;
    std::optional<Tire> tire;  // rovers only
    int tire_count = 0;        // 0 on drones
    ComputeUnit compute;
    std::vector<Sensor> sensors;
    double apps_extra_mass_kg = 0.0;

    bool operator==(const Configuration&) const = default;
};

/// Controls which masses count toward component weight. The default
/// includes compute, sensors, and application parts; structural_only
/// restricts the sum to chassis, motors, batteries, and tires.
struct WeightModel {
    bool structural_only = false;
    double gravity = 9.81;  // m/s²
};

struct DerivedMetrics {
    double component_weight_kg = 0;
    double carry_weight_kg = 0;
    double max_payload_kg = 0;
    double weight_factor = 1;
    double coverage_area_m2 = 0;
    AreaM2 coverage_area_units = 0;
    double runtime_hours = 0;
    Cents unit_cost = 0;

    bool operator==(const DerivedMetrics&) const = default;
};

/// Checks structural invariants: positive counts, rover/drone tire
/// rules, motor size matching the chassis. Throws ValidationError.
void validate_configuration(const Configuration& cfg);

/// Total mass the vehicle is built from. Drones carry no tires.
double component_weight(const Configuration& cfg, const WeightModel& model = {});

/// Mass the motors can move: τ·nm/(TR·g) for rovers, τ·nm/g for drones.
double carry_weight(const Configuration& cfg, const WeightModel& model = {});

/// carry_weight − component_weight; negative marks an unbuildable
/// configuration and is rejected by the constraints module.
double max_payload(const Configuration& cfg, const WeightModel& model = {});

/// Efficiency penalty 1/(1 + W_max/100), in (0,1] for W_max ≥ 0.
double weight_factor(double max_payload_kg);

/// Operational coverage BATT·T·W_component·f·κ in m²; drones use T=1.
double coverage_area(const Configuration& cfg, double kappa, const WeightModel& model = {});

/// Hours per charge under peak draw: BATT·capacity/(motors+compute+sensors).
double runtime_hours(const Configuration& cfg);

/// Component bill: chassis + motors + batteries + tires + compute + sensors.
Cents unit_cost(const Configuration& cfg);

/// Evaluates all derived quantities at once; validates first.
DerivedMetrics derive_metrics(const Configuration& cfg, double kappa,
                              const WeightModel& model = {});

}  // namespace agrifleet
