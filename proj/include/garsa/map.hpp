#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "garsa/geometry.hpp"

namespace garsa {

struct MapError : std::runtime_error {
    explicit MapError(std::vector<std::string> issues);
    std::vector<std::string> issues;
};

struct BoundaryChain {
    std::string id;
    bool closed = false;
    std::vector<Point2> vertices;
};

struct IsolatedPoint {
    std::string id;
    Point2 position;
};

struct Bounds {
    Point2 min;
    Point2 max;
    bool contains(Point2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    Bounds padded(double m) const { return {{min.x - m, min.y - m}, {max.x + m, max.y + m}}; }
};

/// Boundary chains plus isolated point features; the geometric
/// environment everything else queries. Chain vertices are decomposed
/// into segment elements on finalize(); isolated points become
/// singleton chains.
class WaterwayMap {
  public:
    WaterwayMap() = default;

    void add_chain(std::string id, std::vector<Point2> vertices, bool closed);
    void add_point(std::string id, Point2 p);
    void set_reference(Point2 p) { reference_ = p; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Builds the element table and validates. Throws MapError listing
    /// every problem found.
    void finalize();

    const std::vector<BoundaryChain>& chains() const { return chains_; }
    const std::vector<IsolatedPoint>& points() const { return points_; }
    const std::vector<GeometricElement>& elements() const { return elements_; }
    std::optional<Point2> reference() const { return reference_; }
    const std::string& name() const { return name_; }
    bool empty() const { return chains_.empty() && points_.empty(); }

    /// Name of the chain an element belongs to.
    const std::string& chain_name(int chain_index) const;
    int chain_count() const { return static_cast<int>(chain_names_.size()); }

    Bounds bounds() const;
    double clearance(Point2 p) const;
    std::vector<ElementDistance> nearest(Point2 p) const;
    const GeometricElement& element(int id) const { return elements_.at(static_cast<std::size_t>(id)); }

  private:
    std::string name_;
    std::vector<BoundaryChain> chains_;
    std::vector<IsolatedPoint> points_;
    std::optional<Point2> reference_;
    std::vector<GeometricElement> elements_;
    std::vector<std::string> chain_names_;
    bool finalized_ = false;
};

/// Parses the line-oriented map format:
///   chain <id> open|closed   followed by `v <x> <y>` vertex lines
///   point <id> <x> <y>
///   ref <x> <y>
///   # comment
/// Throws MapError with one located message per problem.
WaterwayMap load_map(std::string_view text);

/// Canonical serialization: chains and points sorted by id, six decimal
/// places, LF newlines. load_map(save_map(m)) reproduces m.
std::string save_map(const WaterwayMap& map);

WaterwayMap load_map_file(const std::string& path);
void save_map_file(const WaterwayMap& map, const std::string& path);

}  // namespace garsa
