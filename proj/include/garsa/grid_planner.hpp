#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "garsa/map.hpp"
#include "garsa/profile.hpp"

namespace garsa {

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell&) const = default;
};

class OccupancyGrid {
  public:
    Point2 origin;          // world position of the lower-left grid corner
    double cell_size = 5.0; // m
    int width = 0;          // cells
    int height = 0;
    std::vector<std::uint8_t> occ;  // row-major, 1 = occupied

    bool in_bounds(Cell c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    bool occupied(Cell c) const {
        return occ[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
                   static_cast<std::size_t>(c.x)] != 0;
    }
    void set_occupied(Cell c, bool v) {
        occ[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
            static_cast<std::size_t>(c.x)] = v ? 1 : 0;
    }
    Point2 cell_center(Cell c) const {
        return {origin.x + (c.x + 0.5) * cell_size, origin.y + (c.y + 0.5) * cell_size};
    }
    Cell world_to_cell(Point2 p) const {
        return {static_cast<int>(std::floor((p.x - origin.x) / cell_size)),
                static_cast<int>(std::floor((p.y - origin.y) / cell_size))};
    }
};

/// Rasterizes boundary elements into an occupancy grid over `bounds`:
/// cells touched by any segment or point are occupied, then everything
/// unreachable from `interior_ref` (4-connected through free cells) is
/// occupied as well. Throws if the reference lands in an occupied cell.
OccupancyGrid rasterize(const WaterwayMap& map, double cell_size, const Bounds& bounds,
                        Point2 interior_ref);

struct GridPath {
    std::vector<Cell> cells;
    std::vector<Point2> polyline;  // cell centers
    double cost = 0.0;             // m
};

/// 8-connected A* with octile heuristic and unit/sqrt(2) step costs
/// scaled by cell size. Diagonal moves through blocked orthogonal
/// neighbours are forbidden. Deterministic tie break: lower heuristic,
/// then lexicographic (y, x). Empty result if unreachable or an
/// endpoint is occupied.
std::optional<GridPath> astar(const OccupancyGrid& grid, Cell start, Cell goal);

/// Boundary clearance sampled at every path vertex; s is cumulative
/// polyline length.
WidthProfile clearance_profile(const GridPath& path, const WaterwayMap& map);

/// PGM text export (P2 header, maxval 1), 0 = free, 1 = occupied.
std::string grid_to_pgm(const OccupancyGrid& grid);

}  // namespace garsa
