#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "garsa/scenario.hpp"

namespace garsa {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int bad_input = 1;
inline constexpr int no_route = 3;
inline constexpr int kinematic_failure = 4;
}  // namespace exit_code

/// Flag overrides shared by all subcommands; unset optionals keep the
/// scenario (or module) defaults.
struct CommandOptions {
    std::string out_dir = ".";
    std::optional<double> xi;
    std::optional<double> ds;
    std::optional<double> dt;
    std::optional<double> speed;
    std::optional<double> cell_size;
    std::optional<double> spacing;
    std::optional<double> w_heading, w_clearance, w_velocity;
    std::vector<std::string> formats;  // empty = every artifact

    bool wants(const std::string& fmt) const;
};

struct RunReport {
    std::string scenario;
    std::vector<Assessment> ranked;
    int chosen_route = -1;
    std::vector<std::string> artifacts;                // files written
    std::map<std::string, double> stage_seconds;
    bool modify_success = false;
    std::string modify_failure;
    Point2 stall_location;
};

int cmd_explore(const std::string& map_ref, std::optional<Point2> origin,
                const CommandOptions& opts, std::ostream& log);

int cmd_assess(const std::string& scenario_ref, const CommandOptions& opts, std::ostream& log,
               RunReport* report = nullptr);

/// route_id 0 picks the rank-1 route of the assessment.
int cmd_modify(const std::string& scenario_ref, int route_id, const CommandOptions& opts,
               std::ostream& log, RunReport* report = nullptr);

int cmd_compare(const std::string& scenario_ref, const CommandOptions& opts, std::ostream& log,
                RunReport* report = nullptr);

/// Applies option overrides onto a loaded scenario.
void apply_overrides(Scenario& s, const CommandOptions& opts);

/// Atomic file write (temp + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace garsa
