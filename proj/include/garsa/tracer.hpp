#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "garsa/map.hpp"
#include "garsa/profile.hpp"

namespace garsa {

struct StepLimitError : std::runtime_error {
    explicit StepLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct TraceConfig {
    double step_seconds = 1.0;  // dt
    double speed = 1.0;         // v
    double equality_tol = 0.5;  // m; default 0.5 * v * dt
    int max_steps = 100000;
    double sample_spacing = 1.0;  // m; natural spacing is v * dt
    double tie_tol = 1e-3;        // m; active-set membership

    std::optional<Point2> goal;
    double goal_radius = 1.0;  // m; default v * dt

    // Known node positions that end a trace on approach (seed and
    // endpoint anchors during exploration).
    std::vector<Point2> stop_points;
    double stop_radius = 2.0;  // m; default 2 * v * dt

    double step_length() const { return speed * step_seconds; }
};

enum class TraceEventKind { Handoff, Intersection, Terminus, GoalReached, StepLimit, Revisit };

struct TraceEvent {
    TraceEventKind kind = TraceEventKind::Terminus;
    WidthSample at;
    int old_element = -1;  // Handoff
    int new_element = -1;  // Handoff
    Point2 node_candidate;  // Intersection / Revisit
};

struct TraceResult {
    std::vector<Point2> polyline;
    WidthProfile profile;
    std::vector<TraceEvent> events;
    VirtualShipState final_state;
    TraceEventKind end = TraceEventKind::Terminus;
    std::pair<int, int> final_pair{-1, -1};
    bool degenerate_stop = false;  // locus vanished (dead end at resolution)
};

/// Picks the nearest element plus the nearest opposing element (distance
/// gradient at least 60 degrees apart) as the tracing pair. Throws
/// DegenerateGeometry when no opposing element exists.
std::pair<int, int> select_initial_pair(const WaterwayMap& map, Point2 p);

/// Drives the ship at full speed away from the nearer of the pair until
/// both distances agree within cfg.equality_tol. Steps that would cross
/// equality are bisected. Returns the input unchanged if already
/// equidistant. Throws StepLimitError after cfg.max_steps.
VirtualShipState center_on_pair(const VirtualShipState& state, const GeometricElement& h1,
                                const GeometricElement& h2, const TraceConfig& cfg,
                                const std::function<void(const VirtualShipState&)>& observer = {});

/// Heading that keeps the distance rates to both elements equal,
/// choosing the root that continues forward (cos(phi - prev) > 0). If
/// both roots are perpendicular to prev, breaks the tie toward
/// goal_bearing; throws DegenerateGeometry if still ambiguous or the
/// equidistant direction is undefined at p.
double medial_direction(Point2 p, const GeometricElement& h1, const GeometricElement& h2,
                        double prev_heading, std::optional<double> goal_bearing = {});

/// Root of rate(p,phi,h1) - rate(p,phi,h2) by bracketed scan over
/// [0, 2*pi); reference/fallback path for medial_direction.
std::optional<double> medial_direction_numeric(Point2 p, const GeometricElement& h1,
                                               const GeometricElement& h2, double prev_heading);

/// Centers on the nearest opposing boundary pair, then follows the
/// equidistant locus recording the width function until goal, terminus,
/// a junction, a revisit, or the step limit. Throws DegenerateGeometry
/// when the start has no positive clearance.
TraceResult trace_pathway(const WaterwayMap& map, const VirtualShipState& start,
                          const TraceConfig& cfg);

/// Exploration entry: follows the locus from `start` (already on it)
/// with a fixed initial pair and heading; no centering phase.
TraceResult trace_from(const WaterwayMap& map, Point2 start, double heading,
                       std::pair<int, int> pair, const TraceConfig& cfg);

}  // namespace garsa
