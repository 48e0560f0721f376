#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace garsa {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return a * s; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline Point2 unit(Point2 a) {
    const double n = norm(a);
    return n > 0.0 ? Point2{a.x / n, a.y / n} : Point2{0.0, 0.0};
}
inline Point2 heading_vector(double heading) { return {std::cos(heading), std::sin(heading)}; }

/// Reduce an angle to [0, 2*pi).
inline double wrap_two_pi(double a) {
    constexpr double tau = 2.0 * std::numbers::pi;
    a = std::fmod(a, tau);
    if (a < 0.0) a += tau;
    if (a >= tau) a = 0.0;
    return a;
}

/// Reduce an angle to (-pi, pi].
inline double wrap_pi(double a) {
    a = wrap_two_pi(a);
    if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
}

/// Inclination of a direction as an undirected line angle in [0, pi).
inline double inclination(Point2 dir) {
    double t = std::atan2(dir.y, dir.x);
    t = std::fmod(t, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t = 0.0;
    return t;
}

struct DegenerateGeometry : std::runtime_error {
    explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

enum class ElementKind { PointFeature, SegmentFeature };

/// One boundary primitive. Segments store both endpoints in `a`,`b`;
/// point features use `a` only. `chain` indexes the owning boundary
/// chain (isolated points form singleton chains).
struct GeometricElement {
    int id = -1;
    int chain = -1;
    ElementKind kind = ElementKind::SegmentFeature;
    Point2 a;
    Point2 b;

    static GeometricElement segment(int id, int chain, Point2 a, Point2 b) {
        return {id, chain, ElementKind::SegmentFeature, a, b};
    }
    static GeometricElement point(int id, int chain, Point2 p) {
        return {id, chain, ElementKind::PointFeature, p, p};
    }
};

enum class Contact { Interior, EndpointA, EndpointB, Point };

struct ClearanceResult {
    double distance = 0.0;
    Point2 nearest;
    Contact contact = Contact::Point;
};

struct RadialGeometry {
    double distance = 0.0;
    double azimuth = 0.0;  // [0, 2*pi), feature -> query direction
};

/// Point state of the tracing object: position, heading, constant speed.
struct VirtualShipState {
    Point2 position;
    double heading = 0.0;  // radians, reduced to [0, 2*pi)
    double speed = 1.0;    // m/s, > 0
    double elapsed = 0.0;  // s
};

ClearanceResult distance_to_element(Point2 p, const GeometricElement& e);

RadialGeometry radial_geometry(Point2 p, Point2 feature);

/// Rate of change of the orthogonal distance to the carrier line of a-b
/// as the ship moves with its current heading and speed. Returns 0 and
/// sets *degenerate (when given) if the ship lies on the line.
double distance_rate_line(const VirtualShipState& state, Point2 a, Point2 b,
                          bool* degenerate = nullptr);

/// Rate of change of the distance to a point feature. Throws
/// DegenerateGeometry if the ship coincides with the feature.
double distance_rate_point(const VirtualShipState& state, Point2 feature);

/// Rate of change of the azimuth from a point feature to the ship.
double azimuth_rate(const VirtualShipState& state, Point2 feature);

/// Distance rate against an arbitrary element: line law while the foot
/// is interior, point law at endpoints and point features.
double distance_rate(const VirtualShipState& state, const GeometricElement& e);

/// Unit gradient of the distance field of `e` at `p` (points away from
/// the element). Throws DegenerateGeometry at zero distance.
Point2 away_gradient(Point2 p, const GeometricElement& e);

struct ElementDistance {
    int element_id = -1;
    double distance = 0.0;
};

/// All elements sorted by ascending distance from p (ties by id).
std::vector<ElementDistance> nearest_elements(Point2 p, std::span<const GeometricElement> elems);

/// Size of the leading group within tie_tol of the minimum distance.
std::size_t active_set_size(std::span<const ElementDistance> sorted, double tie_tol);

}  // namespace garsa
