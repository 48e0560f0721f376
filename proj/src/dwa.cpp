#include "garsa/dwa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace garsa {

std::vector<Point2> select_waypoints(std::span<const Point2> polyline, double spacing) {
    if (polyline.empty()) throw std::invalid_argument("select_waypoints: empty route");
    if (spacing <= 0.0) throw std::invalid_argument("select_waypoints: spacing must be positive");

    std::vector<Point2> out{polyline.front()};
    double next = spacing;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
        const Point2 a = polyline[i];
        const Point2 b = polyline[i + 1];
        const double l = distance(a, b);
        while (l > 0.0 && next <= acc + l) {
            const double t = (next - acc) / l;
            out.push_back(a + t * (b - a));
            next += spacing;
        }
        acc += l;
    }
    if (out.size() < 2 || distance(out.back(), polyline.back()) > 1e-9) {
        out.push_back(polyline.back());
    }
    return out;
}

VelocityWindow dynamic_window(const KinematicState& state, const KinematicLimits& limits,
                              double dt) {
    VelocityWindow w;
    w.v_lo = std::max(limits.v_min, state.v - limits.a_max * dt);
    w.v_hi = std::min(limits.v_max, state.v + limits.a_max * dt);
    w.omega_lo = std::max(-limits.omega_max, state.omega - limits.omega_dot_max * dt);
    w.omega_hi = std::min(limits.omega_max, state.omega + limits.omega_dot_max * dt);
    return w;
}

std::vector<KinematicState> rollout(const KinematicState& state, double v_cmd, double omega_cmd,
                                    double horizon, double dt) {
    std::vector<KinematicState> traj{state};
    const int steps = static_cast<int>(std::llround(horizon / dt));
    KinematicState s = state;
    s.v = v_cmd;
    s.omega = omega_cmd;
    for (int i = 0; i < steps; ++i) {
        if (std::abs(omega_cmd) < 1e-9) {
            s.position = s.position + (v_cmd * dt) * heading_vector(s.heading);
        } else {
            const double r = v_cmd / omega_cmd;
            const double h2 = s.heading + omega_cmd * dt;
            s.position.x += r * (std::sin(h2) - std::sin(s.heading));
            s.position.y += r * (std::cos(s.heading) - std::cos(h2));
            s.heading = wrap_two_pi(h2);
        }
        traj.push_back(s);
    }
    return traj;
}

double evaluate(std::span<const KinematicState> trajectory, Point2 waypoint,
                const WaterwayMap& map, const DwaConfig& cfg, const KinematicLimits& limits) {
    if (trajectory.empty()) throw std::invalid_argument("evaluate: empty trajectory");

    double min_clear = std::numeric_limits<double>::infinity();
    for (const auto& s : trajectory) {
        min_clear = std::min(min_clear, map.clearance(s.position));
    }
    if (min_clear <= 0.0) return -std::numeric_limits<double>::infinity();

    const KinematicState& end = trajectory.back();
    const Point2 to_wp = waypoint - end.position;
    double heading_term = 1.0;
    if (norm(to_wp) > 1e-9) {
        const double err = std::abs(wrap_pi(std::atan2(to_wp.y, to_wp.x) - end.heading));
        heading_term = 1.0 - err / std::numbers::pi;
    }
    const double clearance_term = std::min(min_clear, cfg.clearance_cap) / cfg.clearance_cap;
    const double velocity_term = limits.v_max > 0.0 ? end.v / limits.v_max : 0.0;

    return cfg.w_heading * heading_term + cfg.w_clearance * clearance_term +
           cfg.w_velocity * velocity_term;
}

ModifiedPath modify_path(std::span<const Point2> route_polyline, const WaterwayMap& map,
                         const KinematicLimits& limits, const DwaConfig& cfg) {
    const std::vector<Point2> waypoints = select_waypoints(route_polyline, cfg.waypoint_spacing);

    ModifiedPath out;
    KinematicState state;
    state.position = route_polyline.front();
    state.heading = route_polyline.size() > 1
                        ? wrap_two_pi(std::atan2(route_polyline[1].y - route_polyline[0].y,
                                                 route_polyline[1].x - route_polyline[0].x))
                        : 0.0;
    state.v = limits.v_min;
    state.omega = 0.0;
    out.states.push_back(state);
    out.min_clearance = map.clearance(state.position);

    std::size_t wp = 0;
    for (int step = 0; step < cfg.max_control_steps; ++step) {
        while (wp < waypoints.size() &&
               distance(state.position, waypoints[wp]) <= cfg.accept_radius) {
            out.reached_waypoints.push_back(waypoints[wp]);
            ++wp;
        }
        if (wp >= waypoints.size()) {
            out.success = true;
            return out;
        }
        const Point2 target = waypoints[wp];

        const VelocityWindow win = dynamic_window(state, limits, cfg.dt);
        double best_score = -std::numeric_limits<double>::infinity();
        double best_v = 0.0, best_omega = 0.0;
        for (int i = 0; i < cfg.v_samples; ++i) {
            const double tv = cfg.v_samples > 1 ? static_cast<double>(i) / (cfg.v_samples - 1)
                                                : 0.0;
            const double v_cmd = win.v_lo + tv * (win.v_hi - win.v_lo);
            for (int j = 0; j < cfg.omega_samples; ++j) {
                const double tw = cfg.omega_samples > 1
                                      ? static_cast<double>(j) / (cfg.omega_samples - 1)
                                      : 0.0;
                const double omega_cmd = win.omega_lo + tw * (win.omega_hi - win.omega_lo);
                const auto traj = rollout(state, v_cmd, omega_cmd, cfg.horizon, cfg.dt);
                const double score = evaluate(traj, target, map, cfg, limits);
                if (score > best_score) {
                    best_score = score;
                    best_v = v_cmd;
                    best_omega = omega_cmd;
                }
            }
        }
        if (!std::isfinite(best_score)) {
            out.failure = "stall";
            out.stall_location = state.position;
            return out;
        }

        state = rollout(state, best_v, best_omega, cfg.dt, cfg.dt).back();
        out.states.push_back(state);
        out.min_clearance = std::min(out.min_clearance, map.clearance(state.position));
    }
    out.failure = "step budget exhausted";
    out.stall_location = state.position;
    return out;
}

std::string modified_path_to_csv(const ModifiedPath& path, double dt) {
    std::string out = "t_s,x,y,heading_rad,v_mps,omega_radps\n";
    char buf[200];
    for (std::size_t i = 0; i < path.states.size(); ++i) {
        const auto& s = path.states[i];
        std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      static_cast<double>(i) * dt, s.position.x, s.position.y, s.heading, s.v,
                      s.omega);
        out += buf;
    }
    return out;
}

}  // namespace garsa
