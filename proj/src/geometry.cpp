#include "garsa/geometry.hpp"

#include <algorithm>

namespace garsa {

namespace {

constexpr double kParallelTol = 1e-12;  // on sin(theta)
constexpr double kOnLineTol = 1e-12;    // m

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

Point2 carrier_foot(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double t = dot(p - a, ab) / dot(ab, ab);
    return a + t * ab;
}

}  // namespace

ClearanceResult distance_to_element(Point2 p, const GeometricElement& e) {
    if (e.kind == ElementKind::PointFeature) {
        return {distance(p, e.a), e.a, Contact::Point};
    }
    const Point2 ab = e.b - e.a;
    const double t = dot(p - e.a, ab) / dot(ab, ab);
    if (t <= 0.0) return {distance(p, e.a), e.a, Contact::EndpointA};
    if (t >= 1.0) return {distance(p, e.b), e.b, Contact::EndpointB};
    const Point2 foot = e.a + t * ab;
    return {distance(p, foot), foot, Contact::Interior};
}

RadialGeometry radial_geometry(Point2 p, Point2 feature) {
    const Point2 r = p - feature;
    return {norm(r), wrap_two_pi(std::atan2(r.y, r.x))};
}

double distance_rate_line(const VirtualShipState& state, Point2 a, Point2 b, bool* degenerate) {
    if (degenerate) *degenerate = false;
    const double theta = inclination(b - a);
    const Point2 foot = carrier_foot(state.position, a, b);
    if (distance(state.position, foot) < kOnLineTol) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    const double s = std::sin(theta);
    if (s < kParallelTol) {
        return sign_of(state.position.y - foot.y) * std::sin(state.heading) * state.speed;
    }
    return sign_of((state.position.x - foot.x) / s) * std::sin(theta - state.heading) * state.speed;
}

double distance_rate_point(const VirtualShipState& state, Point2 feature) {
    const RadialGeometry rg = radial_geometry(state.position, feature);
    if (rg.distance <= 0.0) {
        throw DegenerateGeometry("distance_rate_point: ship coincides with point feature");
    }
    return std::cos(state.heading - rg.azimuth) * state.speed;
}

double azimuth_rate(const VirtualShipState& state, Point2 feature) {
    const RadialGeometry rg = radial_geometry(state.position, feature);
    if (rg.distance <= 0.0) {
        throw DegenerateGeometry("azimuth_rate: zero distance to point feature");
    }
    return std::sin(state.heading - rg.azimuth) * state.speed / rg.distance;
}

double distance_rate(const VirtualShipState& state, const GeometricElement& e) {
    const ClearanceResult c = distance_to_element(state.position, e);
    if (c.distance <= 0.0) {
        throw DegenerateGeometry("distance_rate: ship lies on the element");
    }
    if (e.kind == ElementKind::SegmentFeature && c.contact == Contact::Interior) {
        return distance_rate_line(state, e.a, e.b);
    }
    return distance_rate_point(state, c.nearest);
}

Point2 away_gradient(Point2 p, const GeometricElement& e) {
    const ClearanceResult c = distance_to_element(p, e);
    if (c.distance <= 0.0) {
        throw DegenerateGeometry("away_gradient: zero clearance");
    }
    return (p - c.nearest) * (1.0 / c.distance);
}

std::vector<ElementDistance> nearest_elements(Point2 p, std::span<const GeometricElement> elems) {
    std::vector<ElementDistance> out;
    out.reserve(elems.size());
    for (const auto& e : elems) {
        out.push_back({e.id, distance_to_element(p, e).distance});
    }
    std::sort(out.begin(), out.end(), [](const ElementDistance& l, const ElementDistance& r) {
        if (l.distance != r.distance) return l.distance < r.distance;
        return l.element_id < r.element_id;
    });
    return out;
}

std::size_t active_set_size(std::span<const ElementDistance> sorted, double tie_tol) {
    if (sorted.empty()) return 0;
    const double dmin = sorted.front().distance;
    std::size_t n = 0;
    while (n < sorted.size() && sorted[n].distance <= dmin + tie_tol) ++n;
    return n;
}

}  // namespace garsa
