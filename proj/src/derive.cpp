#include "agrifleet/derive.hpp"

#include "agrifleet/errors.hpp"

namespace agrifleet {

void validate_configuration(const Configuration& cfg) {
    if (cfg.motor_count < 1) {
        throw ValidationError("configuration: motor count must be at least 1");
    }
    if (cfg.battery_count < 1) {
        throw ValidationError("configuration: battery count must be at least 1");
    }
    if (cfg.motor.size_class != cfg.chassis.size_class) {
        throw ValidationError("configuration: motor size '" + to_string(cfg.motor.size_class) +
                              "' does not match chassis size '" +
                              to_string(cfg.chassis.size_class) + "'");
    }
    if (cfg.chassis.vehicle_kind != cfg.vehicle_kind) {
        throw ValidationError("configuration: chassis '" + cfg.chassis.id +
                              "' is not a " + to_string(cfg.vehicle_kind) + " chassis");
    }
    if (cfg.vehicle_kind == VehicleKind::rover) {
        if (!cfg.tire.has_value() || cfg.tire_count < 3) {
            throw ValidationError("configuration: a rover needs at least 3 tires");
        }
        if (!(cfg.tire->radius_m > 0)) {
            throw ValidationError("configuration: rover tire radius must be positive");
        }
    } else {
        if (cfg.tire.has_value() || cfg.tire_count != 0) {
            throw ValidationError("configuration: a drone carries no tires");
        }
    }
}

double component_weight(const Configuration& cfg, const WeightModel& model) {
    double w = cfg.chassis.mass_kg + cfg.motor_count * cfg.motor.mass_kg +
               cfg.battery_count * cfg.battery.mass_kg;
    if (cfg.vehicle_kind == VehicleKind::rover && cfg.tire.has_value()) {
        w += cfg.tire_count * cfg.tire->mass_kg;
    }
    if (!model.structural_only) {
        w += cfg.compute.mass_kg;
        for (const Sensor& s : cfg.sensors) w += s.mass_kg;
        w += cfg.apps_extra_mass_kg;
    }
    return w;
}

double carry_weight(const Configuration& cfg, const WeightModel& model) {
    const double total_torque = cfg.motor.torque_nm * cfg.motor_count;
    if (cfg.vehicle_kind == VehicleKind::drone) {
        return total_torque / model.gravity;
    }
    if (!cfg.tire.has_value() || !(cfg.tire->radius_m > 0)) {
        throw ValidationError("configuration: rover carry weight needs a positive tire radius");
    }
    return total_torque / (cfg.tire->radius_m * model.gravity);
}

double max_payload(const Configuration& cfg, const WeightModel& model) {
    return carry_weight(cfg, model) - component_weight(cfg, model);
}

double weight_factor(double max_payload_kg) {
    return 1.0 / (1.0 + max_payload_kg / 100.0);
}

double coverage_area(const Configuration& cfg, double kappa, const WeightModel& model) {
    const int t = cfg.vehicle_kind == VehicleKind::rover ? cfg.tire_count : 1;
    const double w_comp = component_weight(cfg, model);
    const double f = weight_factor(max_payload(cfg, model));
    return cfg.battery_count * t * w_comp * f * kappa;
}

double runtime_hours(const Configuration& cfg) {
    double draw = cfg.motor_count * cfg.motor.peak_power_w + cfg.compute.power_w;
    for (const Sensor& s : cfg.sensors) draw += s.power_w;
    if (!(draw > 0)) {
        throw ValidationError("configuration: total peak power draw must be positive");
    }
    return cfg.battery_count * cfg.battery.capacity_wh / draw;
}

Cents unit_cost(const Configuration& cfg) {
    Cents c = cfg.chassis.cost + cfg.motor_count * cfg.motor.cost +
              cfg.battery_count * cfg.battery.cost;
    if (cfg.vehicle_kind == VehicleKind::rover && cfg.tire.has_value()) {
        c += cfg.tire_count * cfg.tire->cost;
    }
    c += cfg.compute.cost;
    for (const Sensor& s : cfg.sensors) c += s.cost;
    return c;
}

DerivedMetrics derive_metrics(const Configuration& cfg, double kappa, const WeightModel& model) {
    validate_configuration(cfg);
    DerivedMetrics m;
    m.component_weight_kg = component_weight(cfg, model);
    m.carry_weight_kg = carry_weight(cfg, model);
    m.max_payload_kg = m.carry_weight_kg - m.component_weight_kg;
    m.weight_factor = weight_factor(m.max_payload_kg);
    m.coverage_area_m2 = coverage_area(cfg, kappa, model);
    m.coverage_area_units = area_units_from_m2(m.coverage_area_m2);
    m.runtime_hours = runtime_hours(cfg);
    m.unit_cost = unit_cost(cfg);
    return m;
}

}  // namespace agrifleet
