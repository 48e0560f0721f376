#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "garsa/commands.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("GARSA_OUT")) return env;
    return ".";
}

struct SharedFlags {
    garsa::CommandOptions opts;
    std::string weights;

    void attach(CLI::App* app) {
        opts.out_dir = default_out_dir();
        app->add_option("--out", opts.out_dir, "Output directory (default $GARSA_OUT or .)");
        app->add_option("--xi", opts.xi, "Safety threshold, m");
        app->add_option("--ds", opts.ds, "Profile sample spacing, m");
        app->add_option("--dt", opts.dt, "Trace step, s");
        app->add_option("--v", opts.speed, "Trace speed, m/s");
        app->add_option("--cell-size", opts.cell_size, "A* grid cell size, m");
        app->add_option("--spacing", opts.spacing, "Waypoint spacing, m");
        app->add_option("--weights", weights, "DWA weights h,c,v");
        app->add_option("--format", opts.formats, "Artifact formats (csv dot svg pgm)");
    }

    bool finish(std::ostream& err) {
        if (weights.empty()) return true;
        double h, c, v;
        if (std::sscanf(weights.c_str(), "%lf,%lf,%lf", &h, &c, &v) != 3) {
            err << "error: --weights expects h,c,v\n";
            return false;
        }
        opts.w_heading = h;
        opts.w_clearance = c;
        opts.w_velocity = v;
        return true;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waterway route safety toolkit"};
    app.require_subcommand(1);

    // explore
    auto* explore = app.add_subcommand("explore", "Trace the route network of a map");
    std::string map_ref;
    std::vector<double> origin;
    SharedFlags explore_flags;
    explore->add_option("--map", map_ref, "Map file or builtin:<name>")->required();
    explore->add_option("--origin", origin, "Exploration origin x y")->expected(2);
    explore_flags.attach(explore);

    // assess
    auto* assess = app.add_subcommand("assess", "Enumerate and rank routes of a scenario");
    std::string assess_ref;
    SharedFlags assess_flags;
    assess->add_option("--scenario", assess_ref, "Scenario file or builtin:<name>")->required();
    assess_flags.attach(assess);

    // modify
    auto* modify = app.add_subcommand("modify", "Kinematic path modification of a ranked route");
    std::string modify_ref;
    int route_id = 0;
    SharedFlags modify_flags;
    modify->add_option("--scenario", modify_ref, "Scenario file or builtin:<name>")->required();
    modify->add_option("--route", route_id, "Route id from a prior assess run (default rank-1)");
    modify_flags.attach(modify);

    // compare
    auto* compare = app.add_subcommand("compare", "Side-by-side with the grid A* baseline");
    std::string compare_ref;
    SharedFlags compare_flags;
    compare->add_option("--scenario", compare_ref, "Scenario file or builtin:<name>")->required();
    compare_flags.attach(compare);

    // scenarios
    auto* scenarios = app.add_subcommand("scenarios", "List builtin scenarios");

    // dump-scenario
    auto* dump = app.add_subcommand("dump-scenario", "Write a builtin scenario and map to files");
    std::string dump_name;
    std::string dump_dir = default_out_dir();
    dump->add_option("--name", dump_name, "Builtin scenario name")->required();
    dump->add_option("--out", dump_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (explore->parsed()) {
            if (!explore_flags.finish(std::cerr)) return garsa::exit_code::bad_input;
            std::optional<garsa::Point2> o;
            if (origin.size() == 2) o = garsa::Point2{origin[0], origin[1]};
            return garsa::cmd_explore(map_ref, o, explore_flags.opts, std::cout);
        }
        if (assess->parsed()) {
            if (!assess_flags.finish(std::cerr)) return garsa::exit_code::bad_input;
            return garsa::cmd_assess(assess_ref, assess_flags.opts, std::cout);
        }
        if (modify->parsed()) {
            if (!modify_flags.finish(std::cerr)) return garsa::exit_code::bad_input;
            return garsa::cmd_modify(modify_ref, route_id, modify_flags.opts, std::cout);
        }
        if (compare->parsed()) {
            if (!compare_flags.finish(std::cerr)) return garsa::exit_code::bad_input;
            return garsa::cmd_compare(compare_ref, compare_flags.opts, std::cout);
        }
        if (scenarios->parsed()) {
            for (const auto& s : garsa::builtin_scenarios()) {
                std::cout << s.name << "\n";
            }
            return garsa::exit_code::ok;
        }
        if (dump->parsed()) {
            garsa::Scenario s = garsa::builtin_scenario(dump_name);
            std::filesystem::create_directories(dump_dir);
            const auto map_path = std::filesystem::path(dump_dir) / (s.name + ".map");
            const auto scn_path = std::filesystem::path(dump_dir) / (s.name + ".scn");
            garsa::write_file_atomic(map_path.string(), garsa::save_map(s.map));
            s.map_ref = s.name + ".map";
            garsa::write_file_atomic(scn_path.string(), garsa::save_scenario(s));
            std::cout << "wrote " << map_path.string() << " and " << scn_path.string() << "\n";
            return garsa::exit_code::ok;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return garsa::exit_code::bad_input;
    }
    return garsa::exit_code::bad_input;
}
