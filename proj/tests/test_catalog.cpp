#include <doctest.h>

#include <json.hpp>

#include "agrifleet/catalog.hpp"
#include "agrifleet/errors.hpp"

using namespace agrifleet;
using nlohmann::json;

namespace {

const ComponentCatalog& default_catalog() {
    static ComponentCatalog c = load_catalog(AGRIFLEET_DATA_DIR "/default_catalog.json");
    return c;
}

const ComponentCatalog& prototype_catalog() {
    static ComponentCatalog c = load_catalog(AGRIFLEET_DATA_DIR "/prototype_catalog.json");
    return c;
}

std::vector<ApplicationProfile> apps_by_name(const ComponentCatalog& c,
                                             std::initializer_list<const char*> names) {
    std::vector<ApplicationProfile> out;
    for (const char* name : names) {
        const ApplicationProfile* a = c.find_application(name);
        REQUIRE(a != nullptr);
        out.push_back(*a);
    }
    return out;
}

}  // namespace

TEST_CASE("default catalog loads and exposes every category") {
    const ComponentCatalog& c = default_catalog();
    CHECK(c.chassis_options.size() == 6);
    CHECK(c.motor_options.size() == 6);
    CHECK(c.battery_options.size() == 4);
    CHECK(c.tire_options.size() == 3);
    CHECK(c.compute_options.size() == 6);
    CHECK(c.comm_options.size() == 4);
    CHECK(c.edge_servers.size() == 2);
    CHECK(c.sensors.size() == 3);
    CHECK(c.crops.size() == 10);
    CHECK(c.applications.size() == 15);
    CHECK(c.calibration_kappa == doctest::Approx(40.0));
    CHECK(c.enumeration.motor_count == 4);
    CHECK(c.enumeration.tire_count == 4);
    CHECK(c.enumeration.max_batteries == 2);
}

TEST_CASE("catalog lookups resolve ids and reject unknowns") {
    const ComponentCatalog& c = default_catalog();
    REQUIRE(c.find_chassis("ch-rov-m") != nullptr);
    CHECK(c.find_chassis("ch-rov-m")->vehicle_kind == VehicleKind::rover);
    CHECK(c.find_chassis("ch-rov-m")->size_class == SizeClass::medium);
    CHECK(c.find_motor("mot-m-pro")->torque_nm == doctest::Approx(22.0));
    CHECK(c.find_battery("bat-standard")->capacity_wh == doctest::Approx(240.0));
    CHECK(c.find_tire("tire-compact")->radius_m == doctest::Approx(0.10));
    CHECK(c.find_compute("tpu-coral")->kind == ComputeKind::tpu);
    CHECK(c.find_comm("comm-lora")->range_km == doctest::Approx(5.0));
    CHECK(c.find_sensor("sen-rgb-cam")->power_w == doctest::Approx(3.0));
    CHECK(c.find_chassis("nope") == nullptr);
    CHECK(c.find_application("nope") == nullptr);
    CHECK(c.find_crop(CropClass::tree) != nullptr);
}

TEST_CASE("monetary fields parse to exact cents") {
    const ComponentCatalog& c = default_catalog();
    CHECK(c.find_compute("tpu-coral")->cost == 5999);
    CHECK(c.find_chassis("ch-rov-l")->cost == 129900);
    CHECK(c.find_comm("comm-wifi-ap")->cost_per_cell == 4999);
    CHECK(c.find_application("autonomous_picking")->extra_cost == 520000);
}

TEST_CASE("prototype catalog carries the published hardware prices") {
    const ComponentCatalog& c = prototype_catalog();
    CHECK(c.find_chassis("proto-rover-body")->cost == 91897);
    CHECK(c.find_chassis("proto-drone-body")->cost == 54999);
    CHECK(c.find_battery("proto-rover-battery")->cost == 49999);
    CHECK(c.find_battery("proto-drone-battery")->cost == 56435);
    CHECK(c.find_tire("proto-tire")->cost == 13990);
    CHECK(c.edge_servers.at(0).cost == 200000);
    CHECK(c.calibration_kappa == doctest::Approx(1.0));
}

TEST_CASE("catalog serialization round-trips") {
    const ComponentCatalog& c = default_catalog();
    ComponentCatalog again = parse_catalog(catalog_to_json(c));
    CHECK(again == c);
}

TEST_CASE("platform compatibility: tree plus picking narrows to rover") {
    const ComponentCatalog& c = default_catalog();
    const CropProfile* tree = c.find_crop(CropClass::tree);
    REQUIRE(tree != nullptr);
    auto apps = apps_by_name(c, {"autonomous_picking"});
    std::set<VehicleKind> got = compatible_platforms(*tree, apps);
    CHECK(got == std::set<VehicleKind>{VehicleKind::rover});
}

TEST_CASE("platform compatibility: vine with monitoring and yield keeps both") {
    const ComponentCatalog& c = default_catalog();
    const CropProfile* vine = c.find_crop(CropClass::vine);
    REQUIRE(vine != nullptr);
    auto apps = apps_by_name(c, {"general_crop_monitoring", "yield_estimation"});
    std::set<VehicleKind> got = compatible_platforms(*vine, apps);
    CHECK(got == std::set<VehicleKind>{VehicleKind::rover, VehicleKind::drone});
}

TEST_CASE("platform compatibility is monotone under added applications") {
    const ComponentCatalog& c = default_catalog();
    const CropProfile* vine = c.find_crop(CropClass::vine);
    auto small = apps_by_name(c, {"general_crop_monitoring"});
    auto larger = apps_by_name(c, {"general_crop_monitoring", "soil_monitoring"});
    std::set<VehicleKind> base = compatible_platforms(*vine, small);
    std::set<VehicleKind> narrowed = compatible_platforms(*vine, larger);
    CHECK(std::includes(base.begin(), base.end(), narrowed.begin(), narrowed.end()));
}

TEST_CASE("platform compatibility conflicts raise infeasibility") {
    const ComponentCatalog& c = default_catalog();
    const CropProfile* paddy = c.find_crop(CropClass::early_paddy);
    REQUIRE(paddy != nullptr);
    auto apps = apps_by_name(c, {"autonomous_picking"});
    CHECK_THROWS_AS(compatible_platforms(*paddy, apps), InfeasibleError);
}

TEST_CASE("compute requirements follow the processing mode") {
    const ComponentCatalog& c = default_catalog();

    SUBCASE("onboard work drops CPUs and needs no edge server") {
        auto apps = apps_by_name(c, {"autonomous_picking"});
        ComputeRequirement req = required_compute_kinds(apps);
        CHECK(req.allowed == std::set<ComputeKind>{ComputeKind::gpu, ComputeKind::tpu});
        CHECK_FALSE(req.needs_edge_server);
    }
    SUBCASE("offboard work keeps all kinds and needs an edge server") {
        auto apps = apps_by_name(c, {"yield_estimation"});
        ComputeRequirement req = required_compute_kinds(apps);
        CHECK(req.allowed ==
              std::set<ComputeKind>{ComputeKind::cpu, ComputeKind::gpu, ComputeKind::tpu});
        CHECK(req.needs_edge_server);
    }
    SUBCASE("mixed mode combines both restrictions") {
        auto apps = apps_by_name(c, {"autonomous_picking", "yield_estimation"});
        ComputeRequirement req = required_compute_kinds(apps);
        CHECK(req.allowed == std::set<ComputeKind>{ComputeKind::gpu, ComputeKind::tpu});
        CHECK(req.needs_edge_server);
    }
}

TEST_CASE("schema violations are rejected with context") {
    json doc = catalog_to_json(default_catalog());

    SUBCASE("missing field") {
        doc["motors"][0].erase("torque_nm");
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
    SUBCASE("wrong type") {
        doc["batteries"][0]["capacity_wh"] = "plenty";
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
    SUBCASE("unknown enum value") {
        doc["chassis"][0]["vehicle"] = "submarine";
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
    SUBCASE("unknown crop") {
        doc["crops"][0]["crop"] = "kelp";
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
    SUBCASE("three decimal places in a price") {
        doc["compute"][0]["cost"] = "75.001";
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
}

TEST_CASE("invariant violations are rejected by validation") {
    SUBCASE("duplicate id") {
        json doc = catalog_to_json(default_catalog());
        doc["motors"][1]["id"] = doc["motors"][0]["id"];
        CHECK_THROWS_AS(validate_catalog(parse_catalog(doc)), ValidationError);
    }
    SUBCASE("non-positive torque") {
        json doc = catalog_to_json(default_catalog());
        doc["motors"][0]["torque_nm"] = 0.0;
        CHECK_THROWS_AS(validate_catalog(parse_catalog(doc)), ValidationError);
    }
    SUBCASE("negative cost") {
        json doc = catalog_to_json(default_catalog());
        doc["chassis"][0]["cost"] = "-1.00";
        CHECK_THROWS_AS(validate_catalog(parse_catalog(doc)), ValidationError);
    }
    SUBCASE("zero tire radius") {
        json doc = catalog_to_json(default_catalog());
        doc["tires"][0]["radius_m"] = 0.0;
        CHECK_THROWS_AS(validate_catalog(parse_catalog(doc)), ValidationError);
    }
    SUBCASE("crop without platforms") {
        json doc = catalog_to_json(default_catalog());
        doc["crops"][0]["platforms"] = json::array();
        CHECK_THROWS_AS(parse_catalog(doc), ParseError);
    }
    SUBCASE("empty battery list") {
        json doc = catalog_to_json(default_catalog());
        doc["batteries"] = json::array();
        CHECK_THROWS_AS(validate_catalog(parse_catalog(doc)), ValidationError);
    }
}

TEST_CASE("missing catalog file raises an io error") {
    CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), IoError);
}
