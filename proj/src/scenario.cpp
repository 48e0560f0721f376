#include "garsa/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace garsa {

namespace {

WaterwayMap corridor_map() {
    WaterwayMap m;
    m.set_name("corridor");
    m.add_chain("south", {{0, 0}, {500, 0}}, false);
    m.add_chain("north", {{0, 100}, {500, 100}}, false);
    m.set_reference({250, 50});
    m.finalize();
    return m;
}

WaterwayMap wedge_map() {
    WaterwayMap m;
    m.set_name("wedge");
    // Two shores meeting at the origin with a 60 degree opening; the
    // bisector clearance grows linearly with radius.
    m.add_chain("base", {{0, 0}, {500, 0}}, false);
    m.add_chain("upper", {{0, 0}, {250.0, 433.0127018922193}}, false);
    m.set_reference({86.60254037844387, 50.0});
    m.finalize();
    return m;
}

WaterwayMap parabola_map() {
    WaterwayMap m;
    m.set_name("parabola");
    m.add_chain("shore", {{-400, 0}, {400, 0}}, false);
    m.add_point("beacon", {0, 100});
    m.set_reference({0, 50});
    m.finalize();
    return m;
}

WaterwayMap tee_map() {
    WaterwayMap m;
    m.set_name("tee");
    // Three 100 m wide corridors meeting in a T; arms reach the map
    // boundary at x = +-300 and y = +300.
    m.add_chain("south", {{-300, -50}, {300, -50}}, false);
    m.add_chain("northwest", {{-300, 50}, {-50, 50}, {-50, 300}}, false);
    m.add_chain("northeast", {{50, 300}, {50, 50}, {300, 50}}, false);
    m.set_reference({-200, 0});
    m.finalize();
    return m;
}

WaterwayMap ring_map() {
    WaterwayMap m;
    m.set_name("ring");
    // An island splits the channel: the north passage keeps a uniform
    // 80 m clearance, the south passage mixes 100 m sections with a
    // 15 m squeeze.
    m.add_chain("north_shore", {{0, 80}, {1300, 80}}, false);
    m.add_chain("south_shore",
                {{0, -80},
                 {340, -80},
                 {400, -440},
                 {600, -440},
                 {600, -270},
                 {700, -270},
                 {700, -440},
                 {900, -440},
                 {960, -80},
                 {1300, -80}},
                false);
    m.add_chain("island", {{400, -80}, {900, -80}, {900, -240}, {400, -240}}, true);
    m.set_reference({100, 0});
    m.finalize();
    return m;
}

WaterwayMap shortcut_map() {
    WaterwayMap m;
    m.set_name("shortcut");
    // Closed basin with a block leaving a 30 m x 100 m shortcut along
    // the south wall and a 150 m wide detour along the north side.
    m.add_chain("basin", {{0, 0}, {700, 0}, {700, 400}, {0, 400}}, true);
    m.add_chain("block", {{250, 30}, {350, 30}, {350, 250}, {250, 250}}, true);
    m.set_reference({120, 140});
    m.finalize();
    return m;
}

Scenario base_scenario(std::string name, WaterwayMap map, Point2 start, Point2 goal) {
    Scenario s;
    s.name = name;
    s.map_ref = "builtin:" + name;
    s.map = std::move(map);
    s.start = start;
    s.goal = goal;
    s.explore.trace = s.trace;
    return s;
}

}  // namespace

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;

    out.push_back(base_scenario("corridor", corridor_map(), {20, 50}, {480, 50}));
    out.push_back(base_scenario("wedge", wedge_map(), {51.96152422706631, 30.0},
                                {389.7114317029974, 225.0}));
    out.push_back(base_scenario("parabola", parabola_map(), {-80, 82}, {80, 82}));
    out.push_back(base_scenario("tee", tee_map(), {-200, 0}, {0, 200}));
    out.push_back(base_scenario("ring", ring_map(), {80, 0}, {1220, 0}));
    out.push_back(base_scenario("shortcut", shortcut_map(), {120, 140}, {580, 140}));

    for (auto& s : out) s.explore.trace = s.trace;
    return out;
}

Scenario builtin_scenario(const std::string& name) {
    for (auto& s : builtin_scenarios()) {
        if (s.name == name) return s;
    }
    throw std::invalid_argument("unknown builtin scenario '" + name + "'");
}

WaterwayMap builtin_map(const std::string& name) {
    return builtin_scenario(name).map;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string save_scenario(const Scenario& s) {
    std::string out = "# garsa scenario\n";
    out += "scenario " + s.name + "\n";
    out += "map " + s.map_ref + "\n";
    out += "start " + fmt(s.start.x) + " " + fmt(s.start.y) + "\n";
    out += "goal " + fmt(s.goal.x) + " " + fmt(s.goal.y) + "\n";
    out += "xi " + fmt(s.safety.threshold) + "\n";
    out += "ds " + fmt(s.safety.sample_spacing) + "\n";
    out += "dt " + fmt(s.trace.step_seconds) + "\n";
    out += "v " + fmt(s.trace.speed) + "\n";
    out += "eps " + fmt(s.trace.equality_tol) + "\n";
    out += "max_steps " + std::to_string(s.trace.max_steps) + "\n";
    out += "vmax " + fmt(s.limits.v_max) + "\n";
    out += "vmin " + fmt(s.limits.v_min) + "\n";
    out += "amax " + fmt(s.limits.a_max) + "\n";
    out += "omegamax " + fmt(s.limits.omega_max) + "\n";
    out += "omegadotmax " + fmt(s.limits.omega_dot_max) + "\n";
    out += "dwa_dt " + fmt(s.dwa.dt) + "\n";
    out += "horizon " + fmt(s.dwa.horizon) + "\n";
    out += "weights " + fmt(s.dwa.w_heading) + " " + fmt(s.dwa.w_clearance) + " " +
           fmt(s.dwa.w_velocity) + "\n";
    out += "spacing " + fmt(s.dwa.waypoint_spacing) + "\n";
    out += "accept " + fmt(s.dwa.accept_radius) + "\n";
    out += "cap " + fmt(s.dwa.clearance_cap) + "\n";
    out += "cell " + fmt(s.cell_size) + "\n";
    return out;
}

Scenario load_scenario(std::string_view text, const std::string& base_dir) {
    Scenario s;
    std::vector<std::string> issues;
    bool have_map = false;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        auto bad = [&](const std::string& msg) {
            issues.push_back("line " + std::to_string(lineno) + ": " + msg);
        };
        auto read1 = [&](double& v) {
            if (!(ls >> v) || !std::isfinite(v)) bad("expected one number after '" + key + "'");
        };
        auto read_pt = [&](Point2& p) {
            if (!(ls >> p.x >> p.y)) bad("expected two numbers after '" + key + "'");
        };

        if (key == "scenario") {
            ls >> s.name;
        } else if (key == "map") {
            std::string ref;
            ls >> ref;
            s.map_ref = ref;
            have_map = true;
        } else if (key == "start") {
            read_pt(s.start);
        } else if (key == "goal") {
            read_pt(s.goal);
        } else if (key == "xi") {
            read1(s.safety.threshold);
        } else if (key == "ds") {
            read1(s.safety.sample_spacing);
        } else if (key == "dt") {
            read1(s.trace.step_seconds);
        } else if (key == "v") {
            read1(s.trace.speed);
        } else if (key == "eps") {
            read1(s.trace.equality_tol);
        } else if (key == "max_steps") {
            double v = 0;
            read1(v);
            s.trace.max_steps = static_cast<int>(v);
        } else if (key == "vmax") {
            read1(s.limits.v_max);
        } else if (key == "vmin") {
            read1(s.limits.v_min);
        } else if (key == "amax") {
            read1(s.limits.a_max);
        } else if (key == "omegamax") {
            read1(s.limits.omega_max);
        } else if (key == "omegadotmax") {
            read1(s.limits.omega_dot_max);
        } else if (key == "dwa_dt") {
            read1(s.dwa.dt);
        } else if (key == "horizon") {
            read1(s.dwa.horizon);
        } else if (key == "weights") {
            if (!(ls >> s.dwa.w_heading >> s.dwa.w_clearance >> s.dwa.w_velocity)) {
                bad("expected three weights");
            }
        } else if (key == "spacing") {
            read1(s.dwa.waypoint_spacing);
        } else if (key == "accept") {
            read1(s.dwa.accept_radius);
        } else if (key == "cap") {
            read1(s.dwa.clearance_cap);
        } else if (key == "cell") {
            read1(s.cell_size);
        } else {
            bad("unknown record '" + key + "'");
        }
    }

    if (!have_map) issues.push_back("scenario is missing a 'map' record");
    if (!issues.empty()) throw MapError(std::move(issues));

    if (s.map_ref.rfind("builtin:", 0) == 0) {
        s.map = builtin_map(s.map_ref.substr(8));
    } else {
        std::filesystem::path p(s.map_ref);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        s.map = load_map_file(p.string());
    }
    s.explore.trace = s.trace;
    s.explore.merge_radius = 2.0 * s.trace.speed * s.trace.step_seconds;
    if (s.map.clearance(s.start) <= 0.0) throw MapError({"start has no positive clearance"});
    if (s.map.clearance(s.goal) <= 0.0) throw MapError({"goal has no positive clearance"});
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MapError({"cannot open scenario file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str(), std::filesystem::path(path).parent_path().string());
}

Scenario resolve_scenario(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_scenario(ref.substr(8));
    return load_scenario_file(ref);
}

}  // namespace garsa
