#include "garsa/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "garsa/grid_planner.hpp"
#include "garsa/svg.hpp"

namespace garsa {

namespace fs = std::filesystem;

bool CommandOptions::wants(const std::string& fmt) const {
    if (formats.empty()) return true;
    return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

void apply_overrides(Scenario& s, const CommandOptions& opts) {
    if (opts.xi) s.safety.threshold = *opts.xi;
    if (opts.ds) s.safety.sample_spacing = *opts.ds;
    if (opts.dt) s.trace.step_seconds = *opts.dt;
    if (opts.speed) s.trace.speed = *opts.speed;
    if (opts.dt || opts.speed) {
        s.trace.equality_tol = 0.5 * s.trace.speed * s.trace.step_seconds;
        s.explore.merge_radius = 2.0 * s.trace.speed * s.trace.step_seconds;
    }
    if (opts.cell_size) s.cell_size = *opts.cell_size;
    if (opts.spacing) s.dwa.waypoint_spacing = *opts.spacing;
    if (opts.w_heading) s.dwa.w_heading = *opts.w_heading;
    if (opts.w_clearance) s.dwa.w_clearance = *opts.w_clearance;
    if (opts.w_velocity) s.dwa.w_velocity = *opts.w_velocity;
    s.explore.trace = s.trace;
}

namespace {

struct StageTimer {
    std::map<std::string, double>& sink;
    std::string name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    StageTimer(std::map<std::string, double>& s, std::string n) : sink(s), name(std::move(n)) {}
    ~StageTimer() {
        sink[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

WaterwayMap resolve_map(const std::string& map_ref) {
    if (map_ref.rfind("builtin:", 0) == 0) return builtin_map(map_ref.substr(8));
    return load_map_file(map_ref);
}

struct AssessedScenario {
    Scenario scenario;
    RouteNetwork network;
    int start_node = -1;
    int goal_node = -1;
    std::vector<Route> routes;
    std::vector<Assessment> ranked;      // ranked order
    std::vector<Assessment> by_route;    // routes[i] order
};

// Shared pipeline: explore from the map reference so that swapping the
// query endpoints reuses the identical network, then anchor the query.
AssessedScenario run_assessment(Scenario s, std::map<std::string, double>& timings) {
    AssessedScenario out;
    {
        StageTimer t(timings, "explore");
        const Point2 origin = s.map.reference().value_or(s.start);
        out.network = explore(s.map, origin, s.explore);
    }
    {
        StageTimer t(timings, "attach");
        out.start_node = attach_endpoint(out.network, s.start, s.map, s.explore);
        out.goal_node = attach_endpoint(out.network, s.goal, s.map, s.explore);
    }
    {
        StageTimer t(timings, "routes");
        out.routes = enumerate_routes(out.network, out.start_node, out.goal_node);
    }
    {
        StageTimer t(timings, "assess");
        for (const Route& r : out.routes) {
            Assessment a = spi(r.profile, s.safety);
            a.route_id = r.id;
            out.by_route.push_back(a);
        }
        if (!out.by_route.empty()) out.ranked = rank_routes(out.by_route);
    }
    out.scenario = std::move(s);
    return out;
}

double profile_heat_max(const RouteNetwork& net) {
    double hi = 1.0;
    for (const auto& e : net.edges) {
        for (const auto& smp : e.profile.samples()) hi = std::max(hi, smp.width);
    }
    return hi;
}

std::string network_svg(const WaterwayMap& map, const RouteNetwork& net) {
    std::vector<SvgOverlay> overlays;
    const double hi = profile_heat_max(net);
    for (const auto& e : net.edges) {
        SvgOverlay ov;
        ov.points = e.polyline;
        ov.profile = &e.profile;
        ov.heat_min = 0.0;
        ov.heat_max = hi;
        ov.stroke = 3.0;
        overlays.push_back(ov);
    }
    return render_svg(map, overlays);
}

const char* kRankColors[] = {"#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

}  // namespace

int cmd_explore(const std::string& map_ref, std::optional<Point2> origin,
                const CommandOptions& opts, std::ostream& log) {
    WaterwayMap map;
    try {
        map = resolve_map(map_ref);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return exit_code::bad_input;
    }

    Scenario defaults;
    ExploreConfig ecfg = defaults.explore;
    CommandOptions o = opts;
    if (o.dt) ecfg.trace.step_seconds = *o.dt;
    if (o.speed) ecfg.trace.speed = *o.speed;
    ecfg.trace.equality_tol = 0.5 * ecfg.trace.speed * ecfg.trace.step_seconds;
    ecfg.merge_radius = 2.0 * ecfg.trace.speed * ecfg.trace.step_seconds;

    RouteNetwork net;
    try {
        const Point2 seed = origin.value_or(map.reference().value_or(Point2{}));
        net = explore(map, seed, ecfg);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return exit_code::bad_input;
    }
    for (const auto& w : net.warnings) log << "warning: " << w << "\n";

    fs::create_directories(opts.out_dir);
    if (opts.wants("dot")) {
        const std::string p = (fs::path(opts.out_dir) / "network.dot").string();
        write_file_atomic(p, network_to_dot(net));
        log << "wrote " << p << "\n";
    }
    if (opts.wants("svg")) {
        const std::string p = (fs::path(opts.out_dir) / "network.svg").string();
        write_file_atomic(p, network_svg(map, net));
        log << "wrote " << p << "\n";
    }
    log << "nodes: " << net.nodes.size() << "  edges: " << net.edges.size() << "\n";
    return exit_code::ok;
}

namespace {

void write_report(const RunReport& rep, const std::string& out_dir) {
    std::string txt = "scenario: " + rep.scenario + "\n";
    txt += "chosen_route: " + std::to_string(rep.chosen_route) + "\n";
    txt += "routes_ranked:\n";
    char buf[200];
    for (const auto& a : rep.ranked) {
        if (a.spi) {
            std::snprintf(buf, sizeof(buf), "  route %d  mean %.2f  min %.2f  len %.1f  spi %.4f\n",
                          a.route_id, a.mean_width, a.min_width, a.length, *a.spi);
        } else {
            std::snprintf(buf, sizeof(buf), "  route %d  mean %.2f  min %.2f  len %.1f  spi inf\n",
                          a.route_id, a.mean_width, a.min_width, a.length);
        }
        txt += buf;
    }
    txt += "timings_s:\n";
    for (const auto& [k, v] : rep.stage_seconds) {
        std::snprintf(buf, sizeof(buf), "  %s %.3f\n", k.c_str(), v);
        txt += buf;
    }
    txt += "artifacts:\n";
    for (const auto& a : rep.artifacts) txt += "  " + a + "\n";
    write_file_atomic((fs::path(out_dir) / "report.txt").string(), txt);
}

}  // namespace

int cmd_assess(const std::string& scenario_ref, const CommandOptions& opts, std::ostream& log,
               RunReport* report) {
    Scenario s;
    try {
        s = resolve_scenario(scenario_ref);
        apply_overrides(s, opts);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return exit_code::bad_input;
    }

    RunReport rep;
    rep.scenario = s.name;
    AssessedScenario as = run_assessment(s, rep.stage_seconds);
    for (const auto& w : as.network.warnings) log << "warning: " << w << "\n";

    if (as.routes.empty()) {
        log << "error: no route between start and goal\n";
        if (report) *report = rep;
        return exit_code::no_route;
    }

    rep.ranked = as.ranked;
    rep.chosen_route = as.ranked.front().route_id;

    fs::create_directories(opts.out_dir);
    const fs::path out(opts.out_dir);
    if (opts.wants("csv")) {
        const std::string p = (out / "assessment.csv").string();
        write_file_atomic(p, assessments_to_csv(as.ranked));
        rep.artifacts.push_back(p);

        std::vector<std::optional<double>> spis;
        for (const auto& a : as.by_route) spis.push_back(a.spi);
        const std::string pr = (out / "routes.csv").string();
        write_file_atomic(pr, routes_to_csv(as.routes, spis));
        rep.artifacts.push_back(pr);

        for (const Route& r : as.routes) {
            const std::string pp =
                (out / ("route_" + std::to_string(r.id) + "_profile.csv")).string();
            write_file_atomic(pp, profile_to_csv(r.profile));
            rep.artifacts.push_back(pp);
        }
    }
    if (opts.wants("dot")) {
        const std::string p = (out / "network.dot").string();
        write_file_atomic(p, network_to_dot(as.network));
        rep.artifacts.push_back(p);
    }
    if (opts.wants("svg")) {
        std::vector<SvgOverlay> overlays;
        for (std::size_t rank = 0; rank < as.ranked.size(); ++rank) {
            const int rid = as.ranked[rank].route_id;
            const Route& r = as.routes[static_cast<std::size_t>(rid - 1)];
            SvgOverlay ov;
            ov.points = r.polyline(as.network);
            ov.color = kRankColors[std::min<std::size_t>(rank, 5)];
            ov.stroke = rank == 0 ? 3.5 : 2.0;
            ov.label = "route " + std::to_string(rid);
            overlays.push_back(ov);
        }
        const std::string p = (out / "routes.svg").string();
        write_file_atomic(p, render_svg(s.map, overlays));
        rep.artifacts.push_back(p);
    }
    write_report(rep, opts.out_dir);

    log << "routes: " << as.routes.size() << ", rank-1: route " << rep.chosen_route << "\n";
    if (report) *report = rep;
    return exit_code::ok;
}

namespace {

struct ModifyOutcome {
    int code = exit_code::ok;
    ModifiedPath path;
    Route route;
    RouteNetwork network;
};

ModifyOutcome run_modify(const AssessedScenario& as, int route_id, std::ostream& log) {
    ModifyOutcome mo;
    const auto& routes = as.routes;
    int rid = route_id;
    if (rid <= 0) rid = as.ranked.front().route_id;
    const auto it =
        std::find_if(routes.begin(), routes.end(), [&](const Route& r) { return r.id == rid; });
    if (it == routes.end()) {
        log << "error: route " << rid << " not found in assessment\n";
        mo.code = exit_code::bad_input;
        return mo;
    }
    mo.route = *it;
    const std::vector<Point2> poly = mo.route.polyline(as.network);
    mo.path = modify_path(poly, as.scenario.map, as.scenario.limits, as.scenario.dwa);
    if (!mo.path.success) {
        log << "modification failed: " << mo.path.failure << " at (" << mo.path.stall_location.x
            << ", " << mo.path.stall_location.y << ")\n";
        mo.code = exit_code::kinematic_failure;
    }
    return mo;
}

}  // namespace

int cmd_modify(const std::string& scenario_ref, int route_id, const CommandOptions& opts,
               std::ostream& log, RunReport* report) {
    Scenario s;
    try {
        s = resolve_scenario(scenario_ref);
        apply_overrides(s, opts);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return exit_code::bad_input;
    }

    RunReport rep;
    rep.scenario = s.name;
    AssessedScenario as = run_assessment(s, rep.stage_seconds);
    if (as.routes.empty()) {
        log << "error: no route between start and goal\n";
        return exit_code::no_route;
    }
    rep.ranked = as.ranked;
    rep.chosen_route = route_id > 0 ? route_id : as.ranked.front().route_id;

    ModifyOutcome mo;
    {
        StageTimer t(rep.stage_seconds, "modify");
        mo = run_modify(as, route_id, log);
    }
    if (mo.code == exit_code::bad_input) return mo.code;
    rep.modify_success = mo.path.success;
    rep.modify_failure = mo.path.failure;
    rep.stall_location = mo.path.stall_location;

    fs::create_directories(opts.out_dir);
    const fs::path out(opts.out_dir);
    if (opts.wants("csv")) {
        const std::string p = (out / "modified_path.csv").string();
        write_file_atomic(p, modified_path_to_csv(mo.path, s.dwa.dt));
        rep.artifacts.push_back(p);
    }
    if (opts.wants("svg")) {
        std::vector<SvgOverlay> overlays;
        SvgOverlay raw;
        raw.points = mo.route.polyline(as.network);
        raw.color = "#888888";
        raw.label = "route " + std::to_string(mo.route.id);
        overlays.push_back(raw);
        SvgOverlay mod;
        for (const auto& st : mo.path.states) mod.points.push_back(st.position);
        mod.color = "#2ca02c";
        mod.stroke = 2.5;
        mod.label = "modified";
        overlays.push_back(mod);
        const std::string p = (out / "modified_path.svg").string();
        write_file_atomic(p, render_svg(s.map, overlays));
        rep.artifacts.push_back(p);
    }
    write_report(rep, opts.out_dir);

    log << (mo.path.success ? "all waypoints reached" : "partial path written") << ", min clearance "
        << mo.path.min_clearance << "\n";
    if (report) *report = rep;
    return mo.code;
}

int cmd_compare(const std::string& scenario_ref, const CommandOptions& opts, std::ostream& log,
                RunReport* report) {
    Scenario s;
    try {
        s = resolve_scenario(scenario_ref);
        apply_overrides(s, opts);
    } catch (const std::exception& ex) {
        log << "error: " << ex.what() << "\n";
        return exit_code::bad_input;
    }

    RunReport rep;
    rep.scenario = s.name;
    AssessedScenario as = run_assessment(s, rep.stage_seconds);
    if (as.routes.empty()) {
        log << "error: no route between start and goal\n";
        return exit_code::no_route;
    }
    rep.ranked = as.ranked;
    rep.chosen_route = as.ranked.front().route_id;

    ModifyOutcome mo;
    {
        StageTimer t(rep.stage_seconds, "modify");
        mo = run_modify(as, 0, log);
    }

    // Baseline: occupancy grid A* between the same endpoints.
    std::optional<GridPath> grid_path;
    OccupancyGrid grid;
    {
        StageTimer t(rep.stage_seconds, "astar");
        const Bounds b = s.map.bounds().padded(2.0 * s.cell_size);
        grid = rasterize(s.map, s.cell_size, b, s.map.reference().value_or(s.start));
        grid_path = astar(grid, grid.world_to_cell(s.start), grid.world_to_cell(s.goal));
    }

    // Side-by-side table; both rows always present.
    char buf[256];
    std::string csv = "method,length_m,min_clearance_m,mean_clearance_m,status\n";
    double garsa_len = 0.0, garsa_min = 0.0, garsa_mean = 0.0;
    {
        std::vector<Point2> pts;
        if (mo.path.success) {
            for (const auto& st : mo.path.states) pts.push_back(st.position);
        } else {
            pts = mo.route.polyline(as.network);
        }
        double len = 0.0;
        double mn = std::numeric_limits<double>::infinity();
        double acc = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) len += distance(pts[i - 1], pts[i]);
            const double c = s.map.clearance(pts[i]);
            mn = std::min(mn, c);
            acc += c;
        }
        garsa_len = len;
        garsa_min = mn;
        garsa_mean = acc / static_cast<double>(pts.size());
        std::snprintf(buf, sizeof(buf), "garsa,%.3f,%.3f,%.3f,%s\n", garsa_len, garsa_min,
                      garsa_mean, mo.path.success ? "ok" : "unmodified-route");
        csv += buf;
    }
    if (grid_path) {
        const WidthProfile prof = clearance_profile(*grid_path, s.map);
        std::snprintf(buf, sizeof(buf), "astar,%.3f,%.3f,%.3f,ok\n", grid_path->cost,
                      prof.min_width(), prof.mean_width());
        csv += buf;
    } else {
        csv += "astar,nan,nan,nan,no-path\n";
    }

    fs::create_directories(opts.out_dir);
    const fs::path out(opts.out_dir);
    if (opts.wants("csv")) {
        const std::string p = (out / "compare.csv").string();
        write_file_atomic(p, csv);
        rep.artifacts.push_back(p);
    }
    if (opts.wants("pgm")) {
        const std::string p = (out / "grid.pgm").string();
        write_file_atomic(p, grid_to_pgm(grid));
        rep.artifacts.push_back(p);
    }
    if (opts.wants("svg")) {
        std::vector<SvgOverlay> overlays;
        SvgOverlay garsa_ov;
        if (mo.path.success) {
            for (const auto& st : mo.path.states) garsa_ov.points.push_back(st.position);
        } else {
            garsa_ov.points = mo.route.polyline(as.network);
        }
        garsa_ov.color = "#2ca02c";
        garsa_ov.stroke = 2.5;
        garsa_ov.label = "garsa";
        overlays.push_back(garsa_ov);
        if (grid_path) {
            SvgOverlay astar_ov;
            astar_ov.points = grid_path->polyline;
            astar_ov.color = "#1f77b4";
            astar_ov.stroke = 2.0;
            astar_ov.label = "astar";
            overlays.push_back(astar_ov);
            // Highlight the hazardous stretch when the baseline squeezes
            // below half the safety threshold.
            const WidthProfile prof = clearance_profile(*grid_path, s.map);
            SvgOverlay narrow;
            narrow.color = "#d62728";
            narrow.stroke = 5.0;
            for (std::size_t i = 0; i < prof.size(); ++i) {
                if (prof.samples()[i].width < 0.5 * s.safety.threshold) {
                    narrow.points.push_back(prof.samples()[i].position);
                }
            }
            if (narrow.points.size() >= 2) overlays.push_back(narrow);
        }
        const std::string p = (out / "compare.svg").string();
        write_file_atomic(p, render_svg(s.map, overlays));
        rep.artifacts.push_back(p);
    }
    write_report(rep, opts.out_dir);

    log << "garsa length " << garsa_len << " (min clearance " << garsa_min << "); astar ";
    if (grid_path) {
        log << "length " << grid_path->cost << "\n";
    } else {
        log << "no path\n";
    }
    if (report) *report = rep;
    return exit_code::ok;
}

}  // namespace garsa
