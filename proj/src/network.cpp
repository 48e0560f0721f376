#include "garsa/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace garsa {

namespace {

constexpr double kPortDotTol = 0.955;  // cos(~17 deg): same outgoing corridor

double point_polyline_distance(const std::vector<Point2>& poly, Point2 q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const GeometricElement seg = GeometricElement::segment(0, 0, poly[i], poly[i + 1]);
        if (distance(poly[i], poly[i + 1]) <= 0.0) {
            best = std::min(best, distance(poly[i], q));
            continue;
        }
        best = std::min(best, distance_to_element(q, seg).distance);
    }
    if (poly.size() == 1) best = distance(poly.front(), q);
    return best;
}

Point2 polyline_midpoint(const std::vector<Point2>& poly) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) total += distance(poly[i], poly[i + 1]);
    double acc = 0.0;
    const double half = 0.5 * total;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const double l = distance(poly[i], poly[i + 1]);
        if (acc + l >= half && l > 0.0) {
            const double t = (half - acc) / l;
            return poly[i] + t * (poly[i + 1] - poly[i]);
        }
        acc += l;
    }
    return poly.back();
}

struct PendingBranch {
    Point2 start;
    double heading = 0.0;
    std::pair<int, int> pair{-1, -1};
    int from_node = -1;
};

struct Explorer {
    const WaterwayMap& map;
    const ExploreConfig& cfg;
    RouteNetwork net;
    std::vector<std::vector<Point2>> ports;  // outgoing unit tangents per node
    std::vector<bool> spawned;               // branch fan-out done for this node
    std::deque<PendingBranch> frontier;
    std::mt19937_64 rng;
    TraceConfig trace_cfg;

    Explorer(const WaterwayMap& m, const ExploreConfig& c) : map(m), cfg(c), rng(c.schedule_seed) {
        trace_cfg = cfg.trace;
        trace_cfg.goal.reset();
        trace_cfg.stop_radius = cfg.merge_radius;
    }

    int create_node(Point2 p, NodeKind kind) {
        NetworkNode n;
        n.id = static_cast<int>(net.nodes.size());
        n.position = p;
        n.kind = kind;
        n.clearance = map.clearance(p);
        net.nodes.push_back(n);
        ports.emplace_back();
        spawned.push_back(false);
        return n.id;
    }

    int find_or_create(Point2 p, NodeKind kind) {
        const int near = net.find_node_near(p, cfg.merge_radius);
        if (near >= 0) return near;
        return create_node(p, kind);
    }

    bool port_exists(int node, Point2 dir) const {
        for (const Point2& p : ports[static_cast<std::size_t>(node)]) {
            if (dot(p, dir) > kPortDotTol) return true;
        }
        return false;
    }

    bool duplicate_edge(const NetworkEdge& cand) const {
        const double len_tol = std::max(4.0 * cfg.merge_radius, 0.02 * cand.length);
        const double mid_tol = std::max(3.0 * cfg.merge_radius, 0.01 * cand.length);
        const Point2 mid = polyline_midpoint(cand.polyline);
        for (const auto& e : net.edges) {
            const bool same_ends = (e.node_a == cand.node_a && e.node_b == cand.node_b) ||
                                   (e.node_a == cand.node_b && e.node_b == cand.node_a);
            if (!same_ends) continue;
            if (std::abs(e.length - cand.length) > len_tol) continue;
            if (point_polyline_distance(e.polyline, mid) <= mid_tol) return true;
        }
        return false;
    }

    void register_edge(int from_node, int to_node, TraceResult&& tr, bool truncated) {
        NetworkEdge e;
        e.node_a = from_node;
        e.node_b = to_node;
        e.polyline = std::move(tr.polyline);
        e.profile = std::move(tr.profile);
        e.truncated = truncated;

        // Anchor the far end on the node itself so concatenated route
        // profiles share bitwise-identical junction samples.
        const NetworkNode& nb = net.node(to_node);
        const double gap = distance(e.polyline.back(), nb.position);
        if (gap > 0.0) {
            e.polyline.push_back(nb.position);
            e.profile.append({0.0, nb.clearance, nb.position, -1, -1}, gap);
        } else {
            // Rewrite the final sample as the canonical node anchor.
            auto samples = e.profile.samples();
            samples.back().width = nb.clearance;
            samples.back().position = nb.position;
            e.profile = WidthProfile::from_samples(std::move(samples));
        }
        const NetworkNode& na = net.node(from_node);
        {
            auto samples = e.profile.samples();
            samples.front().width = na.clearance;
            samples.front().position = na.position;
            e.profile = WidthProfile::from_samples(std::move(samples));
            e.polyline.front() = na.position;
        }
        e.length = e.profile.total_length();

        if (e.polyline.size() < 2 || duplicate_edge(e)) return;
        // A branch that immediately curled back into its own node is an
        // artifact of seeding on top of a junction, not a waterway.
        if (e.node_a == e.node_b && e.length < 3.0 * cfg.merge_radius) return;

        // Ports at both ends, for branch deduplication.
        if (e.polyline.size() >= 2) {
            ports[static_cast<std::size_t>(from_node)].push_back(
                unit(e.polyline[1] - e.polyline[0]));
            ports[static_cast<std::size_t>(to_node)].push_back(
                unit(e.polyline[e.polyline.size() - 2] - e.polyline.back()));
        }
        e.id = static_cast<int>(net.edges.size());
        net.edges.push_back(std::move(e));
    }

    // Distinct boundary sites equidistant at a junction node: elements
    // within the equality slack of the minimum, clustered by gradient
    // direction (a corner shared by two wall segments is one site),
    // sorted by the bearing of the nearest boundary point.
    struct JunctionSite {
        int element = -1;
        double site_bearing = 0.0;
        Point2 gradient;
    };

    std::vector<JunctionSite> junction_sites(Point2 node_pos) const {
        const auto sorted = map.nearest(node_pos);
        const double slack = 2.0 * trace_cfg.equality_tol + trace_cfg.tie_tol;
        const double dmin = sorted.front().distance;
        constexpr double kSiteDot = 0.94;  // cos(~20 deg)
        std::vector<JunctionSite> sites;
        for (const auto& ed : sorted) {
            if (ed.distance > dmin + slack) break;
            const auto c = distance_to_element(node_pos, map.element(ed.element_id));
            if (c.distance <= 0.0) continue;
            const Point2 g = (node_pos - c.nearest) * (1.0 / c.distance);
            bool merged = false;
            for (const auto& s : sites) {
                if (dot(g, s.gradient) > kSiteDot) {
                    merged = true;
                    break;
                }
            }
            if (merged) continue;
            JunctionSite js;
            js.element = ed.element_id;
            js.gradient = g;
            js.site_bearing = wrap_two_pi(std::atan2(-g.y, -g.x));
            sites.push_back(js);
        }
        std::sort(sites.begin(), sites.end(), [](const JunctionSite& a, const JunctionSite& b) {
            return a.site_bearing < b.site_bearing;
        });
        return sites;
    }

    // One outgoing branch per adjacent site pair around the node (the
    // waterways between consecutive boundary sites), skipping directions
    // already claimed by registered edges.
    void spawn_at(int node_id) {
        if (spawned[static_cast<std::size_t>(node_id)]) return;
        spawned[static_cast<std::size_t>(node_id)] = true;
        const Point2 p = net.node(node_id).position;
        const auto sites = junction_sites(p);
        const std::size_t k = sites.size();
        if (k < 2) return;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& c1 = sites[i];
            const auto& c2 = sites[(i + 1) % k];
            double gap = wrap_two_pi(c2.site_bearing - c1.site_bearing);
            if (gap == 0.0) gap = 2.0 * std::numbers::pi;
            const double heading = wrap_two_pi(c1.site_bearing + 0.5 * gap);
            const Point2 dir = heading_vector(heading);
            if (port_exists(node_id, dir)) continue;
            frontier.push_back({p, heading, {c1.element, c2.element}, node_id});
        }
    }

    PendingBranch pop_branch() {
        std::size_t idx = 0;
        if (cfg.schedule_seed != 0 && frontier.size() > 1) {
            idx = std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
        }
        PendingBranch b = frontier[idx];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(idx));
        return b;
    }

    void run(Point2 origin) {
        if (map.clearance(origin) <= 0.0) {
            throw DegenerateGeometry("explore: origin has no positive clearance");
        }
        auto pair0 = select_initial_pair(map, origin);
        VirtualShipState st{origin, 0.0, trace_cfg.speed, 0.0};
        const VirtualShipState centered = center_on_pair(
            st, map.element(pair0.first), map.element(pair0.second), trace_cfg);
        const Point2 seed_pos = centered.position;

        const int seed = create_node(seed_pos, NodeKind::Endpoint);
        trace_cfg.stop_points.push_back(seed_pos);
        spawn_at(seed);

        while (!frontier.empty()) {
            const PendingBranch b = pop_branch();
            if (port_exists(b.from_node, heading_vector(b.heading))) continue;

            TraceResult tr = trace_from(map, b.start, b.heading, b.pair, trace_cfg);
            if (tr.profile.size() < 2) continue;

            switch (tr.end) {
                case TraceEventKind::Intersection: {
                    const Point2 q = tr.events.back().node_candidate;
                    const int existing = net.find_node_near(q, cfg.merge_radius);
                    const int to = existing >= 0 ? existing : create_node(q, NodeKind::Intersection);
                    if (existing >= 0 && net.nodes[static_cast<std::size_t>(to)].kind ==
                                             NodeKind::Terminus) {
                        net.nodes[static_cast<std::size_t>(to)].kind = NodeKind::Intersection;
                    }
                    register_edge(b.from_node, to, std::move(tr), false);
                    spawn_at(to);
                    break;
                }
                case TraceEventKind::Revisit: {
                    const Point2 q = tr.events.back().node_candidate;
                    int to = net.find_node_near(q, 1.5 * cfg.merge_radius);
                    if (to < 0) to = create_node(q, NodeKind::Intersection);
                    register_edge(b.from_node, to, std::move(tr), false);
                    break;
                }
                case TraceEventKind::StepLimit: {
                    const int to = create_node(tr.polyline.back(), NodeKind::Terminus);
                    net.warnings.push_back("branch truncated at step limit near (" +
                                           std::to_string(tr.polyline.back().x) + ", " +
                                           std::to_string(tr.polyline.back().y) + ")");
                    register_edge(b.from_node, to, std::move(tr), true);
                    break;
                }
                case TraceEventKind::Terminus:
                default: {
                    const int to = find_or_create(tr.polyline.back(), NodeKind::Terminus);
                    register_edge(b.from_node, to, std::move(tr), false);
                    break;
                }
            }
        }

        stitch_seed(seed);
        renumber();
    }

    // A seed that ended up as a plain degree-2 pass-through is not a
    // real node; merge its two edges.
    void stitch_seed(int seed_id) {
        std::vector<int> inc = net.incident_edges(seed_id);
        if (inc.size() != 2 || inc[0] == inc[1]) return;
        if (net.node(seed_id).kind != NodeKind::Endpoint) return;
        NetworkEdge& e1 = net.edges[static_cast<std::size_t>(inc[0])];
        NetworkEdge& e2 = net.edges[static_cast<std::size_t>(inc[1])];

        auto oriented = [&](const NetworkEdge& e, bool from_seed) {
            // Returns polyline/profile leaving or entering as needed.
            const bool starts_at_seed = e.node_a == seed_id;
            const bool reverse = from_seed ? !starts_at_seed : starts_at_seed;
            std::vector<Point2> poly = e.polyline;
            WidthProfile prof = e.profile;
            if (reverse) {
                std::reverse(poly.begin(), poly.end());
                prof = prof.reversed();
            }
            return std::make_pair(std::move(poly), std::move(prof));
        };

        auto [poly1, prof1] = oriented(e1, false);  // other end -> seed
        auto [poly2, prof2] = oriented(e2, true);   // seed -> other end
        NetworkEdge merged;
        merged.node_a = e1.node_a == seed_id ? e1.node_b : e1.node_a;
        merged.node_b = e2.node_a == seed_id ? e2.node_b : e2.node_a;
        merged.truncated = e1.truncated || e2.truncated;
        merged.polyline = std::move(poly1);
        merged.polyline.insert(merged.polyline.end(), poly2.begin() + 1, poly2.end());
        prof1.concat(prof2);
        merged.profile = std::move(prof1);
        merged.length = merged.profile.total_length();

        std::vector<NetworkEdge> kept;
        for (auto& e : net.edges) {
            if (e.id != inc[0] && e.id != inc[1]) kept.push_back(std::move(e));
        }
        kept.push_back(std::move(merged));
        net.edges = std::move(kept);

        // Drop the seed node; edge endpoints referencing later ids shift
        // down in renumber() via the node map.
        net.nodes[static_cast<std::size_t>(seed_id)].id = -1;
    }

    void renumber() {
        std::vector<NetworkNode> kept;
        for (const auto& n : net.nodes) {
            if (n.id >= 0) kept.push_back(n);
        }
        std::vector<std::size_t> order(kept.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& na = kept[a];
            const auto& nb = kept[b];
            if (na.position.x != nb.position.x) return na.position.x < nb.position.x;
            if (na.position.y != nb.position.y) return na.position.y < nb.position.y;
            return static_cast<int>(na.kind) < static_cast<int>(nb.kind);
        });
        std::map<int, int> remap;
        std::vector<NetworkNode> out(kept.size());
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            NetworkNode n = kept[order[rank]];
            remap[n.id] = static_cast<int>(rank);
            n.id = static_cast<int>(rank);
            out[rank] = n;
        }
        net.nodes = std::move(out);
        for (auto& e : net.edges) {
            e.node_a = remap.at(e.node_a);
            e.node_b = remap.at(e.node_b);
        }
        std::sort(net.edges.begin(), net.edges.end(),
                  [](const NetworkEdge& a, const NetworkEdge& b) {
                      const int alo = std::min(a.node_a, a.node_b);
                      const int ahi = std::max(a.node_a, a.node_b);
                      const int blo = std::min(b.node_a, b.node_b);
                      const int bhi = std::max(b.node_a, b.node_b);
                      if (alo != blo) return alo < blo;
                      if (ahi != bhi) return ahi < bhi;
                      return a.length < b.length;
                  });
        for (std::size_t i = 0; i < net.edges.size(); ++i) {
            net.edges[i].id = static_cast<int>(i);
        }
    }
};

}  // namespace

std::vector<int> RouteNetwork::incident_edges(int node_id) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.node_a == node_id || e.node_b == node_id) out.push_back(e.id);
    }
    return out;
}

int RouteNetwork::degree(int node_id) const {
    int d = 0;
    for (const auto& e : edges) {
        if (e.node_a == node_id) ++d;
        if (e.node_b == node_id) ++d;
    }
    return d;
}

int RouteNetwork::find_node_near(Point2 p, double radius) const {
    int best = -1;
    double best_d = radius;
    for (const auto& n : nodes) {
        if (n.id < 0) continue;
        const double d = distance(n.position, p);
        if (d <= best_d) {
            best_d = d;
            best = n.id;
        }
    }
    return best;
}

RouteNetwork explore(const WaterwayMap& map, Point2 origin, const ExploreConfig& cfg) {
    Explorer ex(map, cfg);
    ex.run(origin);
    return std::move(ex.net);
}

int attach_endpoint(RouteNetwork& network, Point2 p, const WaterwayMap& map,
                    const ExploreConfig& cfg) {
    if (map.clearance(p) <= 0.0) {
        throw DegenerateGeometry("attach_endpoint: point has no positive clearance");
    }
    const auto pair = select_initial_pair(map, p);
    VirtualShipState st{p, 0.0, cfg.trace.speed, 0.0};
    const Point2 c =
        center_on_pair(st, map.element(pair.first), map.element(pair.second), cfg.trace).position;

    if (const int existing = network.find_node_near(c, cfg.merge_radius); existing >= 0) {
        return existing;
    }

    // Nearest point on any edge polyline, tracked with its arc offset.
    int best_edge = -1;
    double best_d = std::numeric_limits<double>::infinity();
    std::size_t best_seg = 0;
    double best_t = 0.0;
    for (const auto& e : network.edges) {
        for (std::size_t i = 0; i + 1 < e.polyline.size(); ++i) {
            const Point2 a = e.polyline[i];
            const Point2 b = e.polyline[i + 1];
            const double l = distance(a, b);
            double t = 0.0;
            Point2 q = a;
            if (l > 0.0) {
                t = std::clamp(dot(c - a, b - a) / (l * l), 0.0, 1.0);
                q = a + t * (b - a);
            }
            const double d = distance(c, q);
            if (d < best_d) {
                best_d = d;
                best_edge = e.id;
                best_seg = i;
                best_t = t;
            }
        }
    }
    if (best_edge < 0) throw DegenerateGeometry("attach_endpoint: network has no edges");

    const NetworkEdge edge = network.edge(best_edge);
    const Point2 split = edge.polyline[best_seg] +
                         best_t * (edge.polyline[best_seg + 1] - edge.polyline[best_seg]);
    if (distance(split, network.node(edge.node_a).position) <= cfg.merge_radius) return edge.node_a;
    if (distance(split, network.node(edge.node_b).position) <= cfg.merge_radius) return edge.node_b;

    NetworkNode n;
    n.id = static_cast<int>(network.nodes.size());
    n.position = split;
    n.kind = NodeKind::Endpoint;
    n.clearance = map.clearance(split);
    network.nodes.push_back(n);

    const auto& samples = edge.profile.samples();
    WidthSample anchor;
    anchor.s = 0.0;
    anchor.width = n.clearance;
    anchor.position = split;

    std::vector<WidthSample> head(samples.begin(),
                                  samples.begin() + static_cast<std::ptrdiff_t>(best_seg) + 1);
    std::vector<Point2> head_poly(edge.polyline.begin(),
                                  edge.polyline.begin() + static_cast<std::ptrdiff_t>(best_seg) + 1);
    anchor.s = head.back().s + distance(head.back().position, split);
    head.push_back(anchor);
    head_poly.push_back(split);

    std::vector<WidthSample> tail;
    WidthSample tail_anchor = anchor;
    tail_anchor.s = 0.0;
    tail.push_back(tail_anchor);
    std::vector<Point2> tail_poly{split};
    double s_acc = 0.0;
    Point2 prev = split;
    for (std::size_t i = best_seg + 1; i < samples.size(); ++i) {
        WidthSample smp = samples[i];
        s_acc += distance(prev, smp.position);
        prev = smp.position;
        smp.s = s_acc;
        tail.push_back(smp);
        tail_poly.push_back(edge.polyline[i]);
    }

    NetworkEdge e1;
    e1.node_a = edge.node_a;
    e1.node_b = n.id;
    e1.polyline = std::move(head_poly);
    e1.profile = WidthProfile::from_samples(std::move(head));
    e1.length = e1.profile.total_length();
    e1.truncated = edge.truncated;

    NetworkEdge e2;
    e2.node_a = n.id;
    e2.node_b = edge.node_b;
    e2.polyline = std::move(tail_poly);
    e2.profile = WidthProfile::from_samples(std::move(tail));
    e2.length = e2.profile.total_length();
    e2.truncated = edge.truncated;

    std::vector<NetworkEdge> kept;
    for (auto& e : network.edges) {
        if (e.id != best_edge) kept.push_back(std::move(e));
    }
    kept.push_back(std::move(e1));
    kept.push_back(std::move(e2));
    network.edges = std::move(kept);
    for (std::size_t i = 0; i < network.edges.size(); ++i) {
        network.edges[i].id = static_cast<int>(i);
    }
    return n.id;
}

namespace {

void dfs_routes(const RouteNetwork& net, int node, int goal,
                const std::vector<std::vector<int>>& adj, std::vector<bool>& visited,
                std::vector<int>& node_stack, std::vector<int>& edge_stack,
                std::vector<bool>& rev_stack, std::vector<Route>& out, int limit) {
    if (static_cast<int>(out.size()) >= limit) return;
    if (node == goal) {
        Route r;
        r.id = static_cast<int>(out.size()) + 1;
        r.node_ids = node_stack;
        r.edge_ids = edge_stack;
        r.edge_reversed = rev_stack;
        out.push_back(std::move(r));
        return;
    }
    for (int eid : adj[static_cast<std::size_t>(node)]) {
        const NetworkEdge& e = net.edge(eid);
        const int next = e.node_a == node ? e.node_b : e.node_a;
        if (visited[static_cast<std::size_t>(next)]) continue;
        visited[static_cast<std::size_t>(next)] = true;
        node_stack.push_back(next);
        edge_stack.push_back(eid);
        rev_stack.push_back(e.node_b == node);
        dfs_routes(net, next, goal, adj, visited, node_stack, edge_stack, rev_stack, out, limit);
        visited[static_cast<std::size_t>(next)] = false;
        node_stack.pop_back();
        edge_stack.pop_back();
        rev_stack.pop_back();
    }
}

}  // namespace

std::vector<Route> enumerate_routes(const RouteNetwork& network, int start_id, int goal_id,
                                    int limit) {
    std::vector<std::vector<int>> adj(network.nodes.size());
    for (const auto& e : network.edges) {
        if (e.node_a == e.node_b) continue;  // a self-loop cannot be on a simple path
        adj[static_cast<std::size_t>(e.node_a)].push_back(e.id);
        adj[static_cast<std::size_t>(e.node_b)].push_back(e.id);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<Route> out;
    if (start_id == goal_id) return out;
    std::vector<bool> visited(network.nodes.size(), false);
    visited[static_cast<std::size_t>(start_id)] = true;
    std::vector<int> node_stack{start_id};
    std::vector<int> edge_stack;
    std::vector<bool> rev_stack;
    dfs_routes(network, start_id, goal_id, adj, visited, node_stack, edge_stack, rev_stack, out,
               limit);

    for (auto& r : out) {
        for (std::size_t i = 0; i < r.edge_ids.size(); ++i) {
            const NetworkEdge& e = network.edge(r.edge_ids[i]);
            WidthProfile p = r.edge_reversed[i] ? e.profile.reversed() : e.profile;
            if (i == 0) {
                r.profile = std::move(p);
            } else {
                r.profile.concat(p);
            }
        }
        // Length summed in edge-id order: identical for both traversal
        // directions of the same route.
        std::vector<int> ids = r.edge_ids;
        std::sort(ids.begin(), ids.end());
        double len = 0.0;
        for (int id : ids) len += network.edge(id).length;
        r.length = len;
        r.profile.set_total_length(len);
    }
    return out;
}

std::vector<Point2> Route::polyline(const RouteNetwork& net) const {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < edge_ids.size(); ++i) {
        std::vector<Point2> poly = net.edge(edge_ids[i]).polyline;
        if (edge_reversed[i]) std::reverse(poly.begin(), poly.end());
        if (out.empty()) {
            out = std::move(poly);
        } else {
            out.insert(out.end(), poly.begin() + 1, poly.end());
        }
    }
    return out;
}

namespace {

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Intersection: return "intersection";
        case NodeKind::Terminus: return "terminus";
        case NodeKind::Endpoint: return "endpoint";
    }
    return "unknown";
}

}  // namespace

std::string network_to_dot(const RouteNetwork& network) {
    std::string out = "graph waterway {\n";
    char buf[256];
    for (const auto& n : network.nodes) {
        std::snprintf(buf, sizeof(buf),
                      "  n%d [x=\"%.6f\" y=\"%.6f\" kind=\"%s\" clearance=\"%.6f\"];\n", n.id,
                      n.position.x, n.position.y, kind_name(n.kind), n.clearance);
        out += buf;
    }
    for (const auto& e : network.edges) {
        std::snprintf(buf, sizeof(buf),
                      "  n%d -- n%d [length_m=\"%.6f\" min_width_m=\"%.6f\" "
                      "mean_width_m=\"%.6f\"];\n",
                      e.node_a, e.node_b, e.length, e.profile.min_width(), e.profile.mean_width());
        out += buf;
    }
    out += "}\n";
    return out;
}

std::string routes_to_csv(const std::vector<Route>& routes,
                          const std::vector<std::optional<double>>& spis) {
    std::string out = "route_id,node_sequence,length_m,min_width_m,mean_width_m,spi\n";
    char buf[256];
    for (std::size_t i = 0; i < routes.size(); ++i) {
        const Route& r = routes[i];
        std::string seq;
        for (std::size_t k = 0; k < r.node_ids.size(); ++k) {
            if (k) seq += "-";
            seq += "n" + std::to_string(r.node_ids[k]);
        }
        std::string spi_txt = "inf";
        if (i < spis.size() && spis[i]) {
            std::snprintf(buf, sizeof(buf), "%.6f", *spis[i]);
            spi_txt = buf;
        }
        std::snprintf(buf, sizeof(buf), "%d,%s,%.6f,%.6f,%.6f,%s\n", r.id, seq.c_str(), r.length,
                      r.profile.min_width(), r.profile.mean_width(), spi_txt.c_str());
        out += buf;
    }
    return out;
}

}  // namespace garsa
