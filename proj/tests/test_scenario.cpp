#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "cacsim/errors.hpp"
#include "cacsim/scenario.hpp"

#include "temp_path.hpp"

using namespace cacsim;

namespace {

std::string minimal_scenario(const std::string& extra_system_key = "",
                             const std::string& extra_class_key = "") {
    std::string text = R"({
  "system": {"processing_gain": 256.0, "f1": 0.114, "f2": 0.44)" +
                       extra_system_key + R"(},
  "classes": [
    {"target_ber": 1e-4, "outage_target": 0.02)" +
                       extra_class_key + R"(}
  ]
})";
    return text;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = testutil::make_temp_path();
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("the paper-sec6 preset carries the locked values") {
    const Scenario sc = preset_scenario("paper-sec6");
    CHECK(sc.system.processing_gain_G == 256.0);
    CHECK(sc.system.f1 == 0.114);
    CHECK(sc.system.f2 == 0.44);
    CHECK(sc.system.bandwidth_hz == 2.5e6);
    CHECK(sc.system.base_rate_bps == 19200.0);
    CHECK(sc.system.noise_to_power_ratio() == 0.0);
    REQUIRE(sc.classes.size() == 2);
    CHECK(sc.classes[0].target_ber == 1e-4);
    CHECK(sc.classes[1].target_ber == 1e-6);
    CHECK(sc.classes[0].rate_bps == 19200.0);
    CHECK(sc.classes[1].rate_bps == 19200.0);
    CHECK(sc.classes[0].activity_alpha == 1.0);
    CHECK(sc.classes[1].activity_alpha == 1.0);
    CHECK(sc.classes[0].code_count_C == 1);
    CHECK(sc.classes[0].target_x == doctest::Approx(6.9155).epsilon(1e-4));
    CHECK(sc.classes[1].target_x == doctest::Approx(11.2975).epsilon(1e-4));
    CHECK(sc.has_sim);
    CHECK(sc.sim.traffic.size() == 2);
    CHECK(sc.ast.prop.beamwidth_deg == 30.0);
    CHECK_THROWS_AS(preset_scenario("nope"), config_error);
}

TEST_CASE("minimal scenario parses with derived target_x") {
    const Scenario sc = parse_scenario(minimal_scenario());
    CHECK(sc.classes[0].target_x == doctest::Approx(6.9155).epsilon(1e-4));
    CHECK_FALSE(sc.has_sim);
    CHECK(sc.policy.variant == PolicyVariant::outage_predictive);
}

TEST_CASE("unknown keys are rejected with the key named") {
    try {
        parse_scenario(minimal_scenario(", \"bandwith\": 1.0"));
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("bandwith") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario(minimal_scenario("", ", \"codes_count\": 1")), config_error);
    CHECK_THROWS_AS(parse_scenario(R"({"system": {}, "classes": [], "junk": 1})"), config_error);
}

TEST_CASE("required keys and sections") {
    CHECK_THROWS_AS(parse_scenario(R"({"classes": []})"), config_error);
    CHECK_THROWS_AS(parse_scenario(R"({"system": {"f1": 0, "f2": 0}})"), config_error);
    // missing processing_gain
    CHECK_THROWS_AS(parse_scenario(R"({
      "system": {"f1": 0.1, "f2": 0.4},
      "classes": [{"target_ber": 1e-4, "outage_target": 0.02}]
    })"),
                    config_error);
    CHECK_THROWS_AS(parse_scenario("not json at all"), config_error);
}

TEST_CASE("explicit target_x must match the BER map") {
    CHECK_THROWS_AS(parse_scenario(minimal_scenario("", ", \"target_x\": 9.0")), config_error);
    const Scenario sc = parse_scenario(minimal_scenario("", ", \"target_x\": 6.9155"));
    CHECK(sc.classes[0].target_x == 6.9155);
}

TEST_CASE("classes must share one outage target") {
    const std::string text = R"({
      "system": {"processing_gain": 256.0, "f1": 0.1, "f2": 0.4},
      "classes": [
        {"target_ber": 1e-4, "outage_target": 0.02},
        {"target_ber": 1e-6, "outage_target": 0.05}
      ]
    })";
    CHECK_THROWS_AS(parse_scenario(text), config_error);
}

TEST_CASE("reference class must exist") {
    const std::string text = R"({
      "system": {"processing_gain": 256.0, "f1": 0.1, "f2": 0.4},
      "classes": [{"target_ber": 1e-4, "outage_target": 0.02}],
      "reference_class": 5
    })";
    CHECK_THROWS_AS(parse_scenario(text), config_error);
}

TEST_CASE("policy and sim validation") {
    CHECK_THROWS_AS(parse_scenario(R"({
      "system": {"processing_gain": 256.0, "f1": 0.1, "f2": 0.4},
      "classes": [{"target_ber": 1e-4, "outage_target": 0.02}],
      "policy": {"variant": "psychic"}
    })"),
                    config_error);
    // traffic arity must match the class count
    CHECK_THROWS_AS(parse_scenario(R"({
      "system": {"processing_gain": 256.0, "f1": 0.1, "f2": 0.4},
      "classes": [{"target_ber": 1e-4, "outage_target": 0.02}],
      "sim": {"duration_s": 100.0, "traffic": []}
    })"),
                    config_error);
}

TEST_CASE("scenario files load from disk") {
    TempFile file(minimal_scenario());
    const Scenario sc = load_scenario_file(file.path);
    CHECK(sc.system.processing_gain_G == 256.0);
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/scenario.json"), io_error);
}

TEST_CASE("node files") {
    SUBCASE("well-formed file with comments and commas") {
        TempFile file("# comment\n0 0 0 20\n1, 60, 0, 20\n\n2 10 -5 17.5 # trailing comment\n");
        const auto nodes = load_node_file(file.path);
        REQUIRE(nodes.size() == 3);
        CHECK(nodes[1].x == 60.0);
        CHECK(nodes[2].tx_power_dbm == 17.5);
    }
    SUBCASE("duplicate ids are rejected") {
        TempFile file("0 0 0 20\n0 1 1 20\n");
        CHECK_THROWS_AS(load_node_file(file.path), config_error);
    }
    SUBCASE("short lines are rejected") {
        TempFile file("0 0 0\n");
        CHECK_THROWS_AS(load_node_file(file.path), config_error);
    }
    SUBCASE("trailing fields are rejected") {
        TempFile file("0 0 0 20 99\n");
        CHECK_THROWS_AS(load_node_file(file.path), config_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_node_file("/nonexistent/nodes.txt"), io_error);
    }
}
