#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "garsa/map.hpp"
#include "garsa/scenario.hpp"

using namespace garsa;

namespace {

const char* kCorridorText =
    "# two shores\n"
    "chain south open\n"
    "v 0 0\n"
    "v 500 0\n"
    "chain north open\n"
    "v 0 100\n"
    "v 500 100\n"
    "ref 250 50\n";

}  // namespace

TEST_CASE("load corridor map") {
    const WaterwayMap m = load_map(kCorridorText);
    CHECK(m.chains().size() == 2);
    CHECK(m.elements().size() == 2);
    CHECK(m.reference().has_value());
    CHECK(m.clearance({250, 50}) == doctest::Approx(50.0));
}

TEST_CASE("zero-length segment error names the line") {
    const char* bad =
        "chain c open\n"
        "v 0 0\n"
        "v 0 0\n"
        "ref 1 1\n";
    try {
        load_map(bad);
        FAIL("expected MapError");
    } catch (const MapError& e) {
        REQUIRE(e.issues.size() >= 1);
        CHECK(e.issues.front().find("line 3") != std::string::npos);
        CHECK(e.issues.front().find("zero-length") != std::string::npos);
    }
}

TEST_CASE("duplicate ids rejected") {
    const char* bad =
        "chain c open\nv 0 0\nv 10 0\n"
        "point c 5 5\n"
        "ref 5 2\n";
    CHECK_THROWS_AS(load_map(bad), MapError);
}

TEST_CASE("reference with non-positive clearance rejected") {
    const char* bad =
        "chain c open\nv 0 0\nv 10 0\n"
        "chain d open\nv 0 5\nv 10 5\n"
        "ref 5 0\n";
    CHECK_THROWS_AS(load_map(bad), MapError);
}

TEST_CASE("missing reference rejected when elements exist") {
    CHECK_THROWS_AS(load_map("chain c open\nv 0 0\nv 10 0\n"), MapError);
}

TEST_CASE("save/load roundtrip identity and byte stability") {
    const WaterwayMap m = load_map(kCorridorText);
    const std::string text1 = save_map(m);
    const WaterwayMap m2 = load_map(text1);
    const std::string text2 = save_map(m2);
    CHECK(text1 == text2);
    CHECK(m2.chains().size() == m.chains().size());
    CHECK(m2.elements().size() == m.elements().size());
    CHECK(m2.reference()->x == m.reference()->x);
}

TEST_CASE("canonical form sorts chains by id") {
    WaterwayMap m;
    m.add_chain("zeta", {{0, 0}, {10, 0}}, false);
    m.add_chain("alpha", {{0, 20}, {10, 20}}, false);
    m.set_reference({5, 10});
    m.finalize();
    const std::string text = save_map(m);
    CHECK(text.find("chain alpha") < text.find("chain zeta"));
}

TEST_CASE("empty map saves to header-only document") {
    WaterwayMap m;
    m.finalize();
    const std::string text = save_map(m);
    CHECK(text == "# garsa map\n");
    const WaterwayMap m2 = load_map(text);
    CHECK(m2.empty());
}

TEST_CASE("points become singleton chains") {
    const WaterwayMap m = load_map(
        "chain shore open\nv -100 0\nv 100 0\n"
        "point buoy 0 50\n"
        "ref 0 25\n");
    CHECK(m.elements().size() == 2);
    const auto& pt = m.elements().back();
    CHECK(pt.kind == ElementKind::PointFeature);
    CHECK(m.chain_name(pt.chain) == "buoy");
    CHECK(m.element(0).chain != pt.chain);
}

TEST_CASE("builtin corpus validates and carries the documented widths") {
    const auto scenarios = builtin_scenarios();
    CHECK(scenarios.size() >= 6);
    for (const auto& s : scenarios) {
        CAPTURE(s.name);
        CHECK(!s.map.elements().empty());
        CHECK(s.map.clearance(s.start) > 0.0);
        CHECK(s.map.clearance(s.goal) > 0.0);
        CHECK(s.map.reference().has_value());
        CHECK(s.map.clearance(*s.map.reference()) > 0.0);
    }

    // Narrow shortcut: 30 m wide, 100 m long along the south wall.
    const WaterwayMap sc = builtin_map("shortcut");
    CHECK(sc.clearance({300, 15}) == doctest::Approx(15.0));
    CHECK(sc.clearance({251, 15}) == doctest::Approx(15.0));
    CHECK(sc.clearance({349, 15}) == doctest::Approx(15.0));

    // Ring: uniform 80 m north channel, 100/15 m mixed south channel.
    const WaterwayMap ring = builtin_map("ring");
    CHECK(ring.clearance({650, 0}) == doctest::Approx(80.0));
    CHECK(ring.clearance({500, -340}) == doctest::Approx(100.0));
    CHECK(ring.clearance({650, -255}) == doctest::Approx(15.0));
}

TEST_CASE("scenario roundtrip preserves every field") {
    Scenario s = builtin_scenario("ring");
    s.safety.threshold = 42.5;
    s.dwa.w_heading = 0.5;
    s.dwa.w_clearance = 0.3;
    s.dwa.w_velocity = 0.2;
    const std::string text = save_scenario(s);
    const Scenario r = load_scenario(text, "");
    CHECK(r.name == s.name);
    CHECK(r.safety.threshold == doctest::Approx(42.5));
    CHECK(r.start.x == doctest::Approx(s.start.x));
    CHECK(r.goal.y == doctest::Approx(s.goal.y));
    CHECK(r.dwa.w_heading == doctest::Approx(0.5));
    CHECK(r.limits.v_max == doctest::Approx(s.limits.v_max));
    CHECK(r.cell_size == doctest::Approx(s.cell_size));
    CHECK(save_scenario(r) == text);
}

TEST_CASE("unknown scenario records are located errors") {
    try {
        load_scenario("map builtin:ring\nbogus 1 2\n", "");
        FAIL("expected MapError");
    } catch (const MapError& e) {
        CHECK(e.issues.front().find("line 2") != std::string::npos);
    }
}
