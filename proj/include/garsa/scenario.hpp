#pragma once

#include <string>

#include "garsa/assessment.hpp"
#include "garsa/dwa.hpp"
#include "garsa/map.hpp"
#include "garsa/network.hpp"

namespace garsa {

/// One runnable experiment: a map, a start/goal query and every knob
/// the pipeline needs.
struct Scenario {
    std::string name;
    std::string map_ref;  // "builtin:<name>" or a file path
    WaterwayMap map;
    Point2 start;
    Point2 goal;
    SafetyConfig safety;
    TraceConfig trace;
    ExploreConfig explore;
    KinematicLimits limits;
    DwaConfig dwa;
    double cell_size = 5.0;  // A* grid resolution
};

/// The synthetic corpus: corridor, wedge, parabola, tee, ring and the
/// narrow-shortcut-versus-wide-detour map. Every scenario validates and
/// runs end to end.
std::vector<Scenario> builtin_scenarios();

/// Lookup by name; throws std::invalid_argument for unknown names.
Scenario builtin_scenario(const std::string& name);

WaterwayMap builtin_map(const std::string& name);

/// Scenario text format, one `key value...` record per line (same
/// lexical rules as the map format). `map` may name a builtin
/// (builtin:<name>) or a path resolved against `base_dir`.
Scenario load_scenario(std::string_view text, const std::string& base_dir);
std::string save_scenario(const Scenario& s);

Scenario load_scenario_file(const std::string& path);

/// Resolves "builtin:<name>" or a path into a loaded scenario.
Scenario resolve_scenario(const std::string& ref);

}  // namespace garsa
