#include "garsa/grid_planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

namespace garsa {

namespace {

// Marks every cell the segment passes through. Samples the segment
// densely and stamps cells whose rectangle lies within half a sample
// step of the point, which covers every touched cell with no diagonal
// gaps for the flood fill to leak through.
void stamp_segment(OccupancyGrid& g, Point2 a, Point2 b) {
    const double step = g.cell_size * 0.25;
    const double len = distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    const double reach = 0.5 * (len / n) + 1e-9;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const Point2 p = a + t * (b - a);
        const Cell c = g.world_to_cell(p);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const Cell q{c.x + dx, c.y + dy};
                if (!g.in_bounds(q)) continue;
                const Point2 lo{g.origin.x + q.x * g.cell_size, g.origin.y + q.y * g.cell_size};
                const Point2 hi{lo.x + g.cell_size, lo.y + g.cell_size};
                const double cx = std::clamp(p.x, lo.x, hi.x);
                const double cy = std::clamp(p.y, lo.y, hi.y);
                if (std::hypot(p.x - cx, p.y - cy) <= reach) g.set_occupied(q, true);
            }
        }
    }
}

}  // namespace

OccupancyGrid rasterize(const WaterwayMap& map, double cell_size, const Bounds& bounds,
                        Point2 interior_ref) {
    if (cell_size <= 0.0) throw std::invalid_argument("rasterize: cell size must be positive");
    OccupancyGrid g;
    g.origin = bounds.min;
    g.cell_size = cell_size;
    g.width = std::max(1, static_cast<int>(std::ceil((bounds.max.x - bounds.min.x) / cell_size)));
    g.height = std::max(1, static_cast<int>(std::ceil((bounds.max.y - bounds.min.y) / cell_size)));
    g.occ.assign(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height), 0);

    for (const auto& e : map.elements()) {
        if (e.kind == ElementKind::PointFeature) {
            const Cell c = g.world_to_cell(e.a);
            if (g.in_bounds(c)) g.set_occupied(c, true);
        } else {
            stamp_segment(g, e.a, e.b);
        }
    }

    const Cell ref = g.world_to_cell(interior_ref);
    if (!g.in_bounds(ref) || g.occupied(ref)) {
        throw std::invalid_argument("rasterize: reference point lies in an occupied cell");
    }

    // Flood the navigable region; everything unreached is outside water.
    std::vector<std::uint8_t> reached(g.occ.size(), 0);
    std::deque<Cell> queue{ref};
    reached[static_cast<std::size_t>(ref.y) * g.width + ref.x] = 1;
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        const Cell nbs[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
        for (const Cell& n : nbs) {
            if (!g.in_bounds(n) || g.occupied(n)) continue;
            auto& r = reached[static_cast<std::size_t>(n.y) * g.width + n.x];
            if (!r) {
                r = 1;
                queue.push_back(n);
            }
        }
    }
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * g.width + x;
            if (!reached[i]) g.occ[i] = 1;
        }
    }
    return g;
}

namespace {

double octile(Cell a, Cell b, double cell) {
    const double dx = std::abs(a.x - b.x);
    const double dy = std::abs(a.y - b.y);
    return cell * (std::max(dx, dy) + (std::numbers::sqrt2 - 1.0) * std::min(dx, dy));
}

}  // namespace

std::optional<GridPath> astar(const OccupancyGrid& grid, Cell start, Cell goal) {
    if (!grid.in_bounds(start) || !grid.in_bounds(goal)) return std::nullopt;
    if (grid.occupied(start) || grid.occupied(goal)) return std::nullopt;

    struct QEntry {
        double f;
        double h;
        Cell c;
        bool operator>(const QEntry& o) const {
            if (f != o.f) return f > o.f;
            if (h != o.h) return h > o.h;
            if (c.y != o.c.y) return c.y > o.c.y;
            return c.x > o.c.x;
        }
    };

    const std::size_t n = grid.occ.size();
    auto idx = [&](Cell c) {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(grid.width) +
               static_cast<std::size_t>(c.x);
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<int> parent(n, -1);
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> open;

    dist[idx(start)] = 0.0;
    open.push({octile(start, goal, grid.cell_size), octile(start, goal, grid.cell_size), start});

    const int dxs[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dys[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    while (!open.empty()) {
        const QEntry top = open.top();
        open.pop();
        const Cell c = top.c;
        const double g = dist[idx(c)];
        if (top.f > g + top.h + 1e-12) continue;  // stale entry
        if (c == goal) break;
        for (int k = 0; k < 8; ++k) {
            const Cell nb{c.x + dxs[k], c.y + dys[k]};
            if (!grid.in_bounds(nb) || grid.occupied(nb)) continue;
            const bool diagonal = dxs[k] != 0 && dys[k] != 0;
            if (diagonal) {
                // No cutting between two blocked orthogonal neighbours.
                if (grid.occupied({c.x + dxs[k], c.y}) || grid.occupied({c.x, c.y + dys[k]})) {
                    continue;
                }
            }
            const double step = diagonal ? std::numbers::sqrt2 * grid.cell_size : grid.cell_size;
            const double cand = g + step;
            if (cand < dist[idx(nb)] - 1e-12) {
                dist[idx(nb)] = cand;
                parent[idx(nb)] = static_cast<int>(idx(c));
                const double h = octile(nb, goal, grid.cell_size);
                open.push({cand + h, h, nb});
            }
        }
    }

    if (dist[idx(goal)] == inf) return std::nullopt;

    GridPath path;
    path.cost = dist[idx(goal)];
    Cell c = goal;
    while (true) {
        path.cells.push_back(c);
        const int p = parent[idx(c)];
        if (p < 0) break;
        c = {static_cast<int>(p % grid.width), static_cast<int>(p / grid.width)};
    }
    std::reverse(path.cells.begin(), path.cells.end());
    path.polyline.reserve(path.cells.size());
    for (const Cell& cc : path.cells) path.polyline.push_back(grid.cell_center(cc));
    return path;
}

WidthProfile clearance_profile(const GridPath& path, const WaterwayMap& map) {
    if (path.polyline.empty()) throw std::invalid_argument("clearance_profile: empty path");
    WidthProfile p;
    Point2 prev = path.polyline.front();
    p.append({0.0, map.clearance(prev), prev, -1, -1}, 0.0);
    for (std::size_t i = 1; i < path.polyline.size(); ++i) {
        const Point2 q = path.polyline[i];
        p.append({0.0, map.clearance(q), q, -1, -1}, distance(prev, q));
        prev = q;
    }
    return p;
}

std::string grid_to_pgm(const OccupancyGrid& grid) {
    std::string out = "P2\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) +
                      "\n1\n";
    for (int y = grid.height - 1; y >= 0; --y) {
        for (int x = 0; x < grid.width; ++x) {
            out += grid.occupied({x, y}) ? '1' : '0';
            out += x + 1 < grid.width ? ' ' : '\n';
        }
    }
    return out;
}

}  // namespace garsa
