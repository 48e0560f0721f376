#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "garsa/tracer.hpp"

namespace garsa {

enum class NodeKind { Intersection, Terminus, Endpoint };

struct NetworkNode {
    int id = -1;
    Point2 position;
    NodeKind kind = NodeKind::Terminus;
    double clearance = 0.0;
};

struct NetworkEdge {
    int id = -1;
    int node_a = -1;
    int node_b = -1;
    std::vector<Point2> polyline;  // runs node_a -> node_b
    WidthProfile profile;
    double length = 0.0;
    bool truncated = false;  // trace hit the step limit
};

struct ExploreConfig {
    TraceConfig trace;
    double merge_radius = 2.0;  // m; default 2 * v * dt
    // 0 processes the branch frontier first-in-first-out; any other
    // value shuffles the pending order with that seed (used to check
    // schedule independence).
    std::uint64_t schedule_seed = 0;
};

class RouteNetwork {
  public:
    std::vector<NetworkNode> nodes;
    std::vector<NetworkEdge> edges;
    std::vector<std::string> warnings;

    const NetworkNode& node(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
    const NetworkEdge& edge(int id) const { return edges.at(static_cast<std::size_t>(id)); }
    std::vector<int> incident_edges(int node_id) const;
    int degree(int node_id) const;
    int find_node_near(Point2 p, double radius) const;
};

/// Traces every branch reachable from `origin`: centers the virtual
/// ship, follows the corridor both ways, and spawns one branch per
/// outgoing waterway at each junction until the frontier is empty.
RouteNetwork explore(const WaterwayMap& map, Point2 origin, const ExploreConfig& cfg);

/// Centers p onto the nearest edge locus, splits that edge there and
/// inserts an Endpoint node; returns the node id. Returns an existing
/// node instead if the centered point lands within merge_radius of one.
int attach_endpoint(RouteNetwork& network, Point2 p, const WaterwayMap& map,
                    const ExploreConfig& cfg);

struct Route {
    int id = 0;
    std::vector<int> node_ids;
    std::vector<int> edge_ids;
    std::vector<bool> edge_reversed;
    WidthProfile profile;
    double length = 0.0;

    std::vector<Point2> polyline(const RouteNetwork& net) const;
};

/// All simple paths between two nodes (depth-first, adjacency in edge-id
/// order), capped at `limit`. Profiles are concatenated with s running
/// across edges; traversing an edge backwards contributes its reversed
/// profile. Route length is accumulated over edge ids in sorted order so
/// that a route and its reverse report the identical length.
std::vector<Route> enumerate_routes(const RouteNetwork& network, int start_id, int goal_id,
                                    int limit = 256);

/// DOT export; nodes carry x,y,kind,clearance, edges carry
/// length_m,min_width_m,mean_width_m.
std::string network_to_dot(const RouteNetwork& network);

/// CSV: route_id,node_sequence,length_m,min_width_m,mean_width_m,spi
/// (node sequence dash-separated, spi formatted `inf` when absent).
std::string routes_to_csv(const std::vector<Route>& routes,
                          const std::vector<std::optional<double>>& spis);

}  // namespace garsa
