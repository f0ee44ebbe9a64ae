#include <doctest.h>

#include <algorithm>

#include "agrifleet/constraints.hpp"
#include "agrifleet/errors.hpp"

using namespace agrifleet;

namespace {

const ComponentCatalog& default_catalog() {
    static ComponentCatalog c = load_catalog(AGRIFLEET_DATA_DIR "/default_catalog.json");
    return c;
}

ScenarioContext cs1_context() {
    return resolve_scenario(default_catalog(),
                            load_scenario(AGRIFLEET_DATA_DIR "/scenarios/case_study_1.json"));
}

/// Reference solution for case study 1: two medium rovers with pro
/// motors, compact tires, and a Jetson-class GPU.
Configuration cs1_rover() {
    const ComponentCatalog& c = default_catalog();
    Configuration cfg;
    cfg.vehicle_kind = VehicleKind::rover;
    cfg.chassis = *c.find_chassis("ch-rov-m");
    cfg.motor = *c.find_motor("mot-m-pro");
    cfg.motor_count = 4;
    cfg.battery = *c.find_battery("bat-standard");
    cfg.battery_count = 1;
    cfg.tire = *c.find_tire("tire-compact");
    cfg.tire_count = 4;
    cfg.compute = *c.find_compute("gpu-jetson-nano");
    return cfg;
}

FleetDesign cs1_solution() {
    return make_fleet_design({{cs1_rover(), 2}}, cs1_context(), default_catalog());
}

/// Minimal synthetic context for boundary tests; no catalog resolution.
ScenarioContext raw_context(Cents budget, AreaM2 farm) {
    ScenarioContext ctx;
    ctx.scenario.budget = budget;
    ctx.scenario.farm_size_m2 = farm;
    ctx.platforms = {VehicleKind::rover, VehicleKind::drone};
    ctx.compute.allowed = {ComputeKind::cpu, ComputeKind::gpu, ComputeKind::tpu};
    return ctx;
}

FleetDesign raw_design(Cents total_cost, AreaM2 total_coverage) {
    FleetDesign d;
    d.total_cost = total_cost;
    d.total_coverage = total_coverage;
    return d;
}

bool lists(const FeasibilityVerdict& v, const char* rule) {
    return std::find(v.violations.begin(), v.violations.end(), rule) != v.violations.end();
}

}  // namespace

TEST_CASE("fleet totals are integer-exact sums of their parts") {
    ScenarioContext ctx = cs1_context();
    FleetDesign d = cs1_solution();
    REQUIRE(d.lines.size() == 1);
    const FleetLine& line = d.lines[0];
    CHECK(line.metrics.unit_cost == 220900);
    CHECK(line.effective_unit_cost == 220900 + 520000);
    CHECK(line.area_units == 2301);
    CHECK(d.total_cost == 2 * 740900 + ctx.comm_cost_total);
    CHECK(d.total_cost == 1486799);
    CHECK(d.total_coverage == 4602);
    CHECK(d.total_payload_kg == doctest::Approx(2 * line.metrics.max_payload_kg));
}

TEST_CASE("fleet lines require at least one unit") {
    CHECK_THROWS_AS(make_fleet_design({{cs1_rover(), 0}}, cs1_context(), default_catalog()),
                    ValidationError);
}

TEST_CASE("budget check compares exact cents and reports slack") {
    ScenarioContext ctx = raw_context(10000000, 1);

    SUBCASE("prototype-style total under a case-study budget") {
        // One 3449.56 vehicle plus a 2000.00 edge server.
        FleetDesign d = raw_design(344956 + 200000, 1);
        BudgetCheck r = check_budget(d, ctx);
        CHECK(r.pass);
        CHECK(r.slack == 9455044);
    }
    SUBCASE("spending the budget exactly passes") {
        BudgetCheck r = check_budget(raw_design(10000000, 1), ctx);
        CHECK(r.pass);
        CHECK(r.slack == 0);
    }
    SUBCASE("one cent over fails") {
        BudgetCheck r = check_budget(raw_design(10000001, 1), ctx);
        CHECK_FALSE(r.pass);
        CHECK(r.slack == -1);
    }
}

TEST_CASE("coverage check compares integer square meters") {
    SUBCASE("exact farm size passes with zero surplus") {
        CoverageCheck r = check_coverage(raw_design(0, 4047), raw_context(1, 4047));
        CHECK(r.pass);
        CHECK(r.surplus == 0);
    }
    SUBCASE("two units at 2000 each fall short of 4047") {
        CoverageCheck r = check_coverage(raw_design(0, 4000), raw_context(1, 4047));
        CHECK_FALSE(r.pass);
        CHECK(r.surplus == -47);
    }
    SUBCASE("nine units at 4500 cover 40469") {
        CoverageCheck r = check_coverage(raw_design(0, 9 * 4500), raw_context(1, 40469));
        CHECK(r.pass);
        CHECK(r.surplus == 31);
    }
}

TEST_CASE("structural rules are reported by name") {
    Configuration good = cs1_rover();
    CHECK(check_structure(good).empty());

    Configuration no_battery = good;
    no_battery.battery_count = 0;
    CHECK(check_structure(no_battery) == std::vector<std::string>{rules::battery_count});

    Configuration mismatched = good;
    mismatched.motor = *default_catalog().find_motor("mot-s-eco");
    CHECK(check_structure(mismatched) == std::vector<std::string>{rules::motor_size_match});

    Configuration overloaded = good;
    overloaded.apps_extra_mass_kg = 1000.0;
    CHECK(check_structure(overloaded) == std::vector<std::string>{rules::payload_nonnegative});
}

TEST_CASE("flight time binds drones only") {
    ScenarioContext ctx = raw_context(1, 1);

    Configuration drone;
    drone.vehicle_kind = VehicleKind::drone;
    DerivedMetrics m;
    m.runtime_hours = 0.22;
    CHECK(check_flight_time(drone, m, ctx));
    m.runtime_hours = 0.19;
    CHECK_FALSE(check_flight_time(drone, m, ctx));

    Configuration rover;
    rover.vehicle_kind = VehicleKind::rover;
    m.runtime_hours = 0.05;
    CHECK(check_flight_time(rover, m, ctx));
}

TEST_CASE("the case study 1 reference fleet is feasible") {
    FeasibilityVerdict v = feasible(cs1_solution(), cs1_context());
    CHECK(v.ok);
    CHECK(v.violations.empty());
}

TEST_CASE("shrinking the budget flags the budget rule") {
    ScenarioContext ctx = cs1_context();
    ctx.scenario.budget = 500000;  // $5000.00
    FeasibilityVerdict v = feasible(cs1_solution(), ctx);
    CHECK_FALSE(v.ok);
    CHECK(lists(v, rules::budget));
    CHECK_FALSE(lists(v, rules::coverage));
}

TEST_CASE("a drone fleet on an indoor crop violates platform compatibility") {
    const ComponentCatalog& cat = default_catalog();
    Scenario s;
    s.budget = 10000000;
    s.farm_size_m2 = 100;
    s.crop = CropClass::indoor;
    s.application_names = {"general_crop_monitoring"};
    ScenarioContext ctx = resolve_scenario(cat, s);
    REQUIRE(ctx.platforms == std::set<VehicleKind>{VehicleKind::rover});

    Configuration drone;
    drone.vehicle_kind = VehicleKind::drone;
    drone.chassis = *cat.find_chassis("ch-drn-s");
    drone.motor = *cat.find_motor("mot-s-pro");
    drone.motor_count = 4;
    drone.battery = *cat.find_battery("bat-standard");
    drone.battery_count = 1;
    drone.compute = *cat.find_compute("gpu-jetson-nano");

    FleetDesign d = make_fleet_design({{drone, 1}}, ctx, cat);
    FeasibilityVerdict v = feasible(d, ctx);
    CHECK_FALSE(v.ok);
    CHECK(v.violations == std::vector<std::string>{rules::platform_compatibility});
}

TEST_CASE("disallowed compute kinds are flagged") {
    ScenarioContext ctx = cs1_context();  // GPU/TPU only
    Configuration cfg = cs1_rover();
    cfg.compute = *default_catalog().find_compute("cpu-rpi4");
    FleetDesign d = make_fleet_design({{cfg, 2}}, ctx, default_catalog());
    FeasibilityVerdict v = feasible(d, ctx);
    CHECK_FALSE(v.ok);
    CHECK(lists(v, rules::compute_kind));
}

TEST_CASE("verdicts accumulate every violated rule") {
    ScenarioContext ctx = cs1_context();
    ctx.scenario.budget = 1;
    ctx.scenario.farm_size_m2 = 1000000;
    Configuration cfg = cs1_rover();
    cfg.compute = *default_catalog().find_compute("cpu-rpi4");
    FleetDesign d = make_fleet_design({{cfg, 1}}, ctx, default_catalog());
    FeasibilityVerdict v = feasible(d, ctx);
    CHECK_FALSE(v.ok);
    CHECK(lists(v, rules::budget));
    CHECK(lists(v, rules::coverage));
    CHECK(lists(v, rules::compute_kind));
}

TEST_CASE("feasibility is monotone in budget and farm size") {
    ScenarioContext ctx = cs1_context();
    FleetDesign d = cs1_solution();
    REQUIRE(feasible(d, ctx).ok);

    for (Cents extra : {Cents{1}, Cents{100000}, Cents{900000000}}) {
        ScenarioContext richer = ctx;
        richer.scenario.budget += extra;
        CHECK(feasible(d, richer).ok);
    }
    for (AreaM2 smaller : {AreaM2{1}, AreaM2{1000}, AreaM2{4046}}) {
        ScenarioContext easier = ctx;
        easier.scenario.farm_size_m2 = smaller;
        CHECK(feasible(d, easier).ok);
    }
}
