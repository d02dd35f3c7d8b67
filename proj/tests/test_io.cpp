#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "csflow/errors.hpp"
#include "csflow/io.hpp"
#include "csflow/study.hpp"

using namespace csflow;

TEST_CASE("config text parsing") {
    const std::string text = R"(
# rotating diameter benchmark
geometry = unit-disc
alpha = 0.5
J = 20
T = 0.5
dt_rule = h2
scheme = newton
f = example2
g = none
w_b = 0.0
initial = diameter
newton_tol = 1e-12
snapshot_stride = 4
)";
    const SimConfig cfg = parse_config_text(text);
    CHECK(cfg.geometry == "unit-disc");
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.element_count == 20);
    CHECK(cfg.final_time == 0.5);
    CHECK(cfg.scheme == SchemeKind::Newton);
    CHECK(cfg.f_name == "example2");
    CHECK(cfg.initial == "diameter");
    CHECK(cfg.newton_tol == 1e-12);
    CHECK(cfg.snapshot_stride == 4);
    CHECK(cfg.step_count() == 200);
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_config_text("geometry = unit-disc\nJ = 10\nT = 0.5\nwibble = 1\n"),
                    ConfigInvalid);
    CHECK_THROWS_AS(parse_config_text("geometry unit-disc\n"), ConfigInvalid);
    CHECK_THROWS_AS(parse_config_text("J = 10\nJ = 20\nT = 0.5\n"), ConfigInvalid);
    CHECK_THROWS_AS(parse_config_text("J = ten\nT = 0.5\n"), ConfigInvalid);
    CHECK_THROWS_WITH_AS(parse_config_text("initial = diameter\ngeometry = unit-disc\nJ = 1\nT = 0.5\n"),
                         "J must be >= 2", ConfigInvalid);
    CHECK_THROWS_AS(parse_config_text("scheme = fancy\nJ = 10\nT = 0.5\n"), ConfigInvalid);
}

TEST_CASE("snapshot csv layout") {
    SimConfig cfg;
    cfg.geometry = "unit-disc";
    cfg.element_count = 4;
    cfg.final_time = 0.5;
    cfg.dt_rule = DtRule::explicit_n(2);
    cfg.f_name = "example2";
    cfg.initial = "diameter";
    const Trajectory traj = run(cfg);
    REQUIRE(!traj.failure);

    SUBCASE("curve only runs leave the w column empty") {
        const std::string csv = snapshots_csv(traj.states, false);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "n,t,j,rho,x,y,w");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(line.back() == ','); // empty w cell
        }
        CHECK(rows == 3 * 5); // three states, J+1 nodes each
    }
    SUBCASE("field runs carry the nodal value") {
        const std::string csv = snapshots_csv(traj.states, true);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            CHECK(line.back() != ',');
        }
    }
}

TEST_CASE("summary json reports the run and the benchmark errors") {
    SimConfig cfg;
    cfg.geometry = "half-plane";
    cfg.element_count = 10;
    cfg.final_time = 0.4;
    cfg.initial = "semicircle";
    const Trajectory traj = run(cfg);
    const std::string text = summary_json(cfg, traj, 0.0);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["config"]["J"] == 10);
    CHECK(doc["config"]["N"] == 40);
    CHECK(doc["failure"].is_null());
    CHECK(doc["newton"]["all_converged"] == true);
    CHECK(doc["newton"]["max_iterations"].get<int>() <= 6);
    // the config matches the semicircle benchmark, so errors are included
    REQUIRE(!doc["errors_vs_exact"].is_null());
    const double e1 = doc["errors_vs_exact"]["E1"].get<double>();
    CHECK(e1 == doctest::Approx(4.672e-3).epsilon(0.005));
}

TEST_CASE("field activity detection") {
    SimConfig cfg;
    cfg.g_name = "none";
    cfg.w0_name = "zero";
    cfg.w_b = 0.0;
    CHECK(!field_is_active(cfg));
    cfg.g_name = "example3-g";
    CHECK(field_is_active(cfg));
    cfg.g_name = "none";
    cfg.w_b = 1.0;
    CHECK(field_is_active(cfg));
}

TEST_CASE("compare report serialization is deterministic") {
    const CompareReport report = compare_against_reference(ReferenceTableId::T1L);
    const std::string a = compare_report_json(report);
    const std::string b = compare_report_json(compare_against_reference(ReferenceTableId::T1L));
    CHECK(a == b);
    const auto doc = nlohmann::json::parse(a);
    CHECK(doc["table"] == "t1l");
    CHECK(doc["pass"] == true);
    CHECK(doc["cells"].size() == 8 + 6); // 8 error cells, 6 eoc cells
}
