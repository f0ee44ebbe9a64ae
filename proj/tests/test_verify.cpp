#include <doctest.h>

#include <random>

#include "agrifleet/errors.hpp"
#include "agrifleet/verify.hpp"

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

FleetDesign cs1_solution() {
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
    return make_fleet_design({{cfg, 2}}, cs1_context(), c);
}

ScenarioContext raw_context(Cents budget, AreaM2 farm) {
    ScenarioContext ctx;
    ctx.scenario.budget = budget;
    ctx.scenario.farm_size_m2 = farm;
    return ctx;
}

FleetLine raw_line(Cents unit_cost, AreaM2 area, int units) {
    FleetLine line;
    line.effective_unit_cost = unit_cost;
    line.area_units = area;
    line.units = units;
    return line;
}

FleetDesign raw_design(std::vector<FleetLine> lines, Cents edge = 0, Cents comm = 0) {
    FleetDesign d;
    d.lines = std::move(lines);
    d.edge_cost = edge;
    d.comm_cost = comm;
    d.total_cost = edge + comm;
    for (const FleetLine& l : d.lines) {
        d.total_cost += l.effective_unit_cost * l.units;
        d.total_coverage += l.area_units * l.units;
    }
    return d;
}

}  // namespace

TEST_CASE("the case study 1 reference fleet verifies as valid") {
    Verdict v = verify(cs1_solution(), cs1_context());
    CHECK(v.valid);
    CHECK(v.failed_constraint.empty());
    DesignEncoding enc = encode_design(cs1_solution(), cs1_context());
    CHECK(model_satisfies(enc.formula, v.witness));
}

TEST_CASE("budget boundaries are inclusive to the cent") {
    FleetDesign d = raw_design({raw_line(10000, 500, 3)}, 2000, 1000);  // total 33000
    REQUIRE(d.total_cost == 33000);

    CHECK(verify(d, raw_context(33000, 1500)).valid);
    Verdict over = verify(d, raw_context(32999, 1500));
    CHECK_FALSE(over.valid);
    CHECK(over.failed_constraint == "budget");
}

TEST_CASE("coverage boundaries are inclusive to the square meter") {
    FleetDesign d = raw_design({raw_line(100, 1349, 3)});  // 4047 m²
    CHECK(verify(d, raw_context(1000, 4047)).valid);
    Verdict shy = verify(d, raw_context(1000, 4048));
    CHECK_FALSE(shy.valid);
    CHECK(shy.failed_constraint == "coverage");
}

TEST_CASE("both constraints can fail at once") {
    FleetDesign d = raw_design({raw_line(5000, 10, 1)});
    Verdict v = verify(d, raw_context(4999, 100));
    CHECK_FALSE(v.valid);
    CHECK(v.failed_constraint == "budget,coverage");
}

TEST_CASE("an empty design cannot cover a positive farm") {
    Verdict v = verify(raw_design({}), raw_context(100000, 10));
    CHECK_FALSE(v.valid);
    CHECK(v.failed_constraint == "coverage");
}

TEST_CASE("fixed edge and communication costs count against the budget") {
    FleetDesign d = raw_design({raw_line(1000, 50, 1)}, 200000, 4999);
    CHECK_FALSE(verify(d, raw_context(205998, 50)).valid);
    CHECK(verify(d, raw_context(205999, 50)).valid);
}

TEST_CASE("zero-cost and zero-area lines are handled") {
    FleetDesign d = raw_design({raw_line(0, 100, 2), raw_line(500, 0, 1)});
    CHECK(verify(d, raw_context(500, 200)).valid);
    CHECK_FALSE(verify(d, raw_context(499, 200)).valid);
    CHECK_FALSE(verify(d, raw_context(500, 201)).valid);
}

TEST_CASE("line bounds widen the unary expansion without changing the verdict") {
    FleetDesign d = raw_design({raw_line(700, 80, 2), raw_line(900, 120, 1)});
    ScenarioContext ctx = raw_context(3000, 280);
    Verdict tight = verify(d, ctx);
    REQUIRE(tight.valid);

    DesignEncoding wide = encode_design(d, ctx, {5, 4});
    CHECK(dpll_solve(wide.formula).satisfiable);
    CHECK(wide.slot_vars[0].size() == 5);
    CHECK(wide.slot_vars[1].size() == 4);
}

TEST_CASE("counts beyond their declared bound are an encoding error") {
    FleetDesign d = raw_design({raw_line(700, 80, 6)});
    CHECK_THROWS_AS(encode_design(d, raw_context(10000, 100), {5}), EncodingError);
    CHECK_THROWS_AS(encode_design(d, raw_context(10000, 100), {5, 5}), EncodingError);
}

TEST_CASE("encoding is deterministic") {
    FleetDesign d = raw_design({raw_line(700, 80, 2), raw_line(900, 120, 3)});
    ScenarioContext ctx = raw_context(5000, 500);
    CHECK(encode_design(d, ctx).formula == encode_design(d, ctx).formula);
}

TEST_CASE("verification agrees with the arithmetic checks on random designs") {
    std::mt19937_64 rng(777);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int round = 0; round < 2000; ++round) {
        ScenarioContext ctx =
            raw_context(static_cast<Cents>(rng() % 50000),
                        static_cast<AreaM2>(rng() % 2000));
        if (ctx.scenario.farm_size_m2 == 0) ctx.scenario.farm_size_m2 = 1;
        std::vector<FleetLine> lines;
        const int line_count = static_cast<int>(rng() % 5);
        for (int i = 0; i < line_count; ++i) {
            lines.push_back(raw_line(static_cast<Cents>(rng() % 20000),
                                     static_cast<AreaM2>(rng() % 800),
                                     1 + static_cast<int>(rng() % 8)));
        }
        FleetDesign d = raw_design(std::move(lines), static_cast<Cents>(rng() % 3000),
                                   static_cast<Cents>(rng() % 2000));

        const bool arithmetic =
            check_budget(d, ctx).pass && check_coverage(d, ctx).pass;
        const Verdict sat = verify(d, ctx);
        REQUIRE(sat.valid == arithmetic);
        (arithmetic ? feasible_seen : infeasible_seen)++;
    }
    CHECK(feasible_seen > 100);
    CHECK(infeasible_seen > 100);
}
