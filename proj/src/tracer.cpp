#include "garsa/tracer.hpp"

#include <algorithm>
#include <cmath>

namespace garsa {

namespace {

constexpr double kOpposingDot = 0.5;      // cos(60 deg): initial-pair cutoff
constexpr double kSameSideDot = 0.866;    // cos(30 deg): handoff vs new-site cutoff
constexpr double kGradientTol = 1e-6;     // |g1-g2| below which the locus vanishes
constexpr double kFeedbackClamp = 0.9;    // fraction of |g1-g2| usable for gap closing
constexpr int kMaxHalvings = 8;

double bearing_of(Point2 v) { return wrap_two_pi(std::atan2(v.y, v.x)); }

struct PairState {
    int id1 = -1;
    int id2 = -1;
    double d1 = 0.0;
    double d2 = 0.0;
    Point2 g1;
    Point2 g2;
};

PairState eval_pair(const WaterwayMap& map, Point2 p, std::pair<int, int> pair) {
    PairState ps;
    ps.id1 = pair.first;
    ps.id2 = pair.second;
    const auto& e1 = map.element(pair.first);
    const auto& e2 = map.element(pair.second);
    const auto c1 = distance_to_element(p, e1);
    const auto c2 = distance_to_element(p, e2);
    ps.d1 = c1.distance;
    ps.d2 = c2.distance;
    if (c1.distance > 0.0) ps.g1 = (p - c1.nearest) * (1.0 / c1.distance);
    if (c2.distance > 0.0) ps.g2 = (p - c2.nearest) * (1.0 / c2.distance);
    return ps;
}

}  // namespace

std::pair<int, int> select_initial_pair(const WaterwayMap& map, Point2 p) {
    const auto sorted = map.nearest(p);
    if (sorted.size() < 2) {
        throw DegenerateGeometry("select_initial_pair: map has fewer than two elements");
    }
    if (sorted.front().distance <= 0.0) {
        throw DegenerateGeometry("select_initial_pair: zero clearance at query point");
    }
    const Point2 g1 = away_gradient(p, map.element(sorted.front().element_id));
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const Point2 gi = away_gradient(p, map.element(sorted[i].element_id));
        if (dot(g1, gi) <= kOpposingDot) {
            return {sorted.front().element_id, sorted[i].element_id};
        }
    }
    throw DegenerateGeometry("select_initial_pair: no opposing boundary element");
}

VirtualShipState center_on_pair(const VirtualShipState& state, const GeometricElement& h1,
                                const GeometricElement& h2, const TraceConfig& cfg,
                                const std::function<void(const VirtualShipState&)>& observer) {
    double d1 = distance_to_element(state.position, h1).distance;
    double d2 = distance_to_element(state.position, h2).distance;
    if (std::abs(d1 - d2) <= cfg.equality_tol) return state;

    VirtualShipState s = state;
    s.speed = cfg.speed;
    for (int step = 0; step < cfg.max_steps; ++step) {
        const GeometricElement& nearer = (d1 < d2) ? h1 : h2;
        const Point2 g = away_gradient(s.position, nearer);
        s.heading = bearing_of(g);
        if (observer) observer(s);

        const double diff0 = d1 - d2;
        double dt = cfg.step_seconds;
        Point2 cand;
        double nd1 = 0.0, nd2 = 0.0;
        for (int halvings = 0;; ++halvings) {
            cand = s.position + (cfg.speed * dt) * heading_vector(s.heading);
            nd1 = distance_to_element(cand, h1).distance;
            nd2 = distance_to_element(cand, h2).distance;
            const double diff = nd1 - nd2;
            const bool flipped = (diff0 < 0.0) != (diff < 0.0);
            if (!flipped || std::abs(diff) <= cfg.equality_tol || halvings >= 40) break;
            dt *= 0.5;
        }
        s.position = cand;
        s.elapsed += dt;
        d1 = nd1;
        d2 = nd2;
        if (std::abs(d1 - d2) <= cfg.equality_tol) return s;
    }
    throw StepLimitError("center_on_pair: equality not reached within max_steps");
}

double medial_direction(Point2 p, const GeometricElement& h1, const GeometricElement& h2,
                        double prev_heading, std::optional<double> goal_bearing) {
    const Point2 g1 = away_gradient(p, h1);
    const Point2 g2 = away_gradient(p, h2);
    const Point2 d = g1 - g2;
    const double nd = norm(d);
    if (nd < kGradientTol) {
        if (auto r = medial_direction_numeric(p, h1, h2, prev_heading)) return *r;
        throw DegenerateGeometry("medial_direction: equidistant direction undefined");
    }
    const Point2 t = unit(perp(d));
    const double fwd = dot(t, heading_vector(prev_heading));
    if (fwd > 1e-12) return bearing_of(t);
    if (fwd < -1e-12) return bearing_of(Point2{-t.x, -t.y});
    if (goal_bearing) {
        const double g = dot(t, heading_vector(*goal_bearing));
        if (g > 1e-12) return bearing_of(t);
        if (g < -1e-12) return bearing_of(Point2{-t.x, -t.y});
    }
    throw DegenerateGeometry("medial_direction: both roots perpendicular to continuation");
}

std::optional<double> medial_direction_numeric(Point2 p, const GeometricElement& h1,
                                               const GeometricElement& h2, double prev_heading) {
    auto g = [&](double phi) {
        VirtualShipState s{p, phi, 1.0, 0.0};
        return distance_rate(s, h1) - distance_rate(s, h2);
    };
    constexpr int kBuckets = 720;
    constexpr double tau = 2.0 * std::numbers::pi;

    std::optional<double> best;
    double best_fwd = 0.0;
    double prev_phi = 0.0;
    double prev_val = g(0.0);
    for (int i = 1; i <= kBuckets; ++i) {
        const double phi = tau * i / kBuckets;
        const double val = g(phi);
        if ((prev_val < 0.0) != (val < 0.0) || prev_val == 0.0) {
            double lo = prev_phi, hi = phi, flo = prev_val;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = g(mid);
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            const double root = wrap_two_pi(0.5 * (lo + hi));
            const double fwd = std::cos(root - prev_heading);
            if (fwd > 0.0 && (!best || fwd > best_fwd)) {
                best = root;
                best_fwd = fwd;
            }
        }
        prev_phi = phi;
        prev_val = val;
    }
    return best;
}

namespace {

// Crossing point where the third element becomes equidistant with the
// active pair, bisected along the last committed step.
Point2 refine_crossing(const WaterwayMap& map, Point2 a, Point2 b, int third,
                       std::pair<int, int> pair) {
    auto f = [&](Point2 q) {
        const double dt = distance_to_element(q, map.element(third)).distance;
        const double d1 = distance_to_element(q, map.element(pair.first)).distance;
        const double d2 = distance_to_element(q, map.element(pair.second)).distance;
        return dt - 0.5 * (d1 + d2);
    };
    double lo = 0.0, hi = 1.0;
    double flo = f(a);
    if (flo <= 0.0) return a;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Point2 q = a + mid * (b - a);
        if (f(q) <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return a + hi * (b - a);
}

TraceResult run_trace(const WaterwayMap& map, Point2 start, double init_heading,
                      std::pair<int, int> pair, const TraceConfig& cfg, double suppress_arc) {
    TraceResult res;
    res.final_pair = pair;

    const double L_full = cfg.step_length();
    const Bounds box = map.bounds();
    const double stop_suppress = cfg.stop_radius + 2.0 * L_full;

    auto global_min = [&](Point2 p, int* argmin = nullptr) {
        double best = std::numeric_limits<double>::infinity();
        int best_id = -1;
        for (const auto& e : map.elements()) {
            const double d = distance_to_element(p, e).distance;
            if (d < best) {
                best = d;
                best_id = e.id;
            }
        }
        if (argmin) *argmin = best_id;
        return best;
    };

    Point2 pos = start;
    Point2 prev_dir = heading_vector(init_heading);
    double s = 0.0;

    res.polyline.push_back(pos);
    res.profile.append({0.0, global_min(pos), pos, pair.first, pair.second}, 0.0);

    auto finish = [&](TraceEventKind kind, Point2 node_candidate = {}) {
        TraceEvent ev;
        ev.kind = kind;
        ev.at = res.profile.samples().back();
        ev.node_candidate = node_candidate;
        res.events.push_back(ev);
        res.end = kind;
        res.final_state = {pos, bearing_of(prev_dir), cfg.speed, s / cfg.speed};
        res.final_pair = pair;
    };

    for (int step = 0; step < cfg.max_steps; ++step) {
        if (cfg.goal && distance(pos, *cfg.goal) <= cfg.goal_radius) {
            finish(TraceEventKind::GoalReached);
            return res;
        }

        PairState ps = eval_pair(map, pos, pair);
        if (std::min(ps.d1, ps.d2) < 0.5 * L_full) {
            res.degenerate_stop = true;
            finish(TraceEventKind::Terminus);
            return res;
        }
        const Point2 dvec = ps.g1 - ps.g2;
        const double nd = norm(dvec);
        if (nd < kGradientTol) {
            res.degenerate_stop = true;
            finish(TraceEventKind::Terminus);
            return res;
        }

        // Step along the locus: pick the heading whose rate difference
        // closes the current distance gap over this step, halving the
        // step on sharp turns or equality overshoot.
        double dt = cfg.step_seconds;
        Point2 cand, dir;
        bool committed = false;
        for (int halvings = 0; halvings <= kMaxHalvings; ++halvings) {
            const double L = cfg.speed * dt;
            const double target =
                std::clamp(-(ps.d1 - ps.d2) / L, -kFeedbackClamp * nd, kFeedbackClamp * nd);
            const double cn = target / nd;
            const Point2 nhat = dvec * (1.0 / nd);
            const Point2 that = perp(nhat);
            const double tcomp = std::sqrt(std::max(0.0, 1.0 - cn * cn));
            const Point2 u_plus = cn * nhat + tcomp * that;
            const Point2 u_minus = cn * nhat - tcomp * that;
            dir = dot(u_plus, prev_dir) >= dot(u_minus, prev_dir) ? u_plus : u_minus;
            if (dot(dir, prev_dir) < 0.0 && halvings < kMaxHalvings) {
                dt *= 0.5;  // curvature guard: heading change would exceed pi/2
                continue;
            }
            cand = pos + L * dir;
            const double nd1 = distance_to_element(cand, map.element(pair.first)).distance;
            const double nd2 = distance_to_element(cand, map.element(pair.second)).distance;
            if (std::abs(nd1 - nd2) > cfg.equality_tol && halvings < kMaxHalvings) {
                dt *= 0.5;
                continue;
            }
            committed = true;
            break;
        }
        if (!committed || dot(dir, prev_dir) < 0.0) {
            res.degenerate_stop = true;
            finish(TraceEventKind::Terminus);
            return res;
        }

        const Point2 prev_pos = pos;
        pos = cand;
        prev_dir = dir;
        s += cfg.speed * dt;

        int nearest_id = -1;
        const double width = global_min(pos, &nearest_id);
        res.polyline.push_back(pos);
        res.profile.append({s, width, pos, pair.first, pair.second}, cfg.speed * dt);

        // Nearest element changed. If its distance gradient lines up
        // with one of the active sides this is the same shore handing
        // over (corner regimes, consecutive wall segments); a transverse
        // gradient means a new equidistant site, i.e. a junction.
        if (nearest_id != pair.first && nearest_id != pair.second) {
            const Point2 gnew = away_gradient(pos, map.element(nearest_id));
            PairState cur = eval_pair(map, pos, pair);
            const double dot1 = dot(gnew, cur.g1);
            const double dot2 = dot(gnew, cur.g2);
            if (std::max(dot1, dot2) > kSameSideDot) {
                TraceEvent ev;
                ev.kind = TraceEventKind::Handoff;
                ev.at = res.profile.samples().back();
                ev.old_element = dot1 >= dot2 ? pair.first : pair.second;
                ev.new_element = nearest_id;
                res.events.push_back(ev);
                (dot1 >= dot2 ? pair.first : pair.second) = nearest_id;
            } else if (s >= suppress_arc) {
                const Point2 node = refine_crossing(map, prev_pos, pos, nearest_id, pair);
                res.profile.pop_back();
                res.polyline.pop_back();
                const double ds = distance(prev_pos, node);
                s = s - cfg.speed * dt + ds;
                pos = node;
                res.polyline.push_back(node);
                res.profile.append({s, global_min(node), node, pair.first, pair.second}, ds);
                finish(TraceEventKind::Intersection, node);
                return res;
            }
        }

        if (s > stop_suppress) {
            for (const Point2& sp : cfg.stop_points) {
                if (distance(pos, sp) <= cfg.stop_radius) {
                    finish(TraceEventKind::Revisit, sp);
                    return res;
                }
            }
        }

        if (!box.contains(pos)) {
            finish(TraceEventKind::Terminus);
            return res;
        }
    }
    finish(TraceEventKind::StepLimit);
    return res;
}

}  // namespace

TraceResult trace_pathway(const WaterwayMap& map, const VirtualShipState& start,
                          const TraceConfig& cfg) {
    if (map.clearance(start.position) <= 0.0) {
        throw DegenerateGeometry("trace_pathway: start has no positive clearance");
    }
    const auto pair = select_initial_pair(map, start.position);
    VirtualShipState centered = center_on_pair(start, map.element(pair.first),
                                               map.element(pair.second), cfg);
    const double init_heading =
        cfg.goal ? bearing_of(*cfg.goal - centered.position) : start.heading;
    return run_trace(map, centered.position, init_heading, pair, cfg, 0.0);
}

TraceResult trace_from(const WaterwayMap& map, Point2 start, double heading,
                       std::pair<int, int> pair, const TraceConfig& cfg) {
    return run_trace(map, start, heading, pair, cfg, 3.0 * cfg.step_length());
}

}  // namespace garsa
