#pragma once

#include <span>
#include <string>
#include <vector>

#include "garsa/map.hpp"

namespace garsa {

struct KinematicLimits {
    double v_max = 4.0;           // m/s
    double v_min = 0.5;           // m/s
    double a_max = 0.5;           // m/s^2
    double omega_max = 0.15;      // rad/s
    double omega_dot_max = 0.05;  // rad/s^2
};

struct DwaConfig {
    double dt = 1.0;      // control step, s
    double horizon = 3.0; // rollout length, s
    int v_samples = 11;
    int omega_samples = 21;
    double w_heading = 0.4;
    double w_clearance = 0.4;
    double w_velocity = 0.2;
    double waypoint_spacing = 40.0;  // 10 * v_max * dt at default limits
    double accept_radius = 8.0;      // 2 * v_max * dt at default limits
    double clearance_cap = 50.0;     // m; clearances above score alike
    int max_control_steps = 20000;
};

struct KinematicState {
    Point2 position;
    double heading = 0.0;
    double v = 0.0;
    double omega = 0.0;
};

struct VelocityWindow {
    double v_lo = 0.0;
    double v_hi = 0.0;
    double omega_lo = 0.0;
    double omega_hi = 0.0;
};

struct ModifiedPath {
    std::vector<KinematicState> states;  // one per control step, dt apart
    std::vector<Point2> reached_waypoints;
    double min_clearance = 0.0;
    bool success = false;
    std::string failure;  // empty on success: "stall" | "step budget exhausted"
    Point2 stall_location;
};

/// Waypoints at arc lengths 0, spacing, 2*spacing, ... along the
/// polyline, plus the final point. Throws on an empty polyline.
std::vector<Point2> select_waypoints(std::span<const Point2> polyline, double spacing);

/// Reachable command ranges for one control step under the limits.
VelocityWindow dynamic_window(const KinematicState& state, const KinematicLimits& limits,
                              double dt);

/// Constant-command unicycle rollout with exact arc integration; states
/// at dt substeps starting with `state` itself.
std::vector<KinematicState> rollout(const KinematicState& state, double v_cmd, double omega_cmd,
                                    double horizon, double dt);

/// Weighted score of a rollout toward `waypoint`: heading alignment at
/// the end, worst boundary clearance (capped), and commanded speed, each
/// normalized to [0,1]. Collisions score -infinity.
double evaluate(std::span<const KinematicState> trajectory, Point2 waypoint,
                const WaterwayMap& map, const DwaConfig& cfg, const KinematicLimits& limits);

/// Drives the ship through waypoints selected along the route polyline,
/// picking the best admissible window command each control step.
ModifiedPath modify_path(std::span<const Point2> route_polyline, const WaterwayMap& map,
                         const KinematicLimits& limits, const DwaConfig& cfg);

/// CSV export: t_s,x,y,heading_rad,v_mps,omega_radps.
std::string modified_path_to_csv(const ModifiedPath& path, double dt);

}  // namespace garsa
