#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "garsa/geometry.hpp"

using namespace garsa;

namespace {

constexpr double kPi = std::numbers::pi;

GeometricElement seg(Point2 a, Point2 b) { return GeometricElement::segment(0, 0, a, b); }
GeometricElement pt(Point2 p) { return GeometricElement::point(0, 0, p); }

// Central finite difference of the distance field along the heading.
double fd_rate(const VirtualShipState& s, const GeometricElement& e, double dt = 1e-7) {
    const Point2 step = (s.speed * dt) * heading_vector(s.heading);
    const double d_plus = distance_to_element(s.position + step, e).distance;
    const double d_minus = distance_to_element(s.position - step, e).distance;
    return (d_plus - d_minus) / (2.0 * dt);
}

double fd_azimuth_rate(const VirtualShipState& s, Point2 feature, double dt = 1e-7) {
    const Point2 step = (s.speed * dt) * heading_vector(s.heading);
    const double a_plus = radial_geometry(s.position + step, feature).azimuth;
    const double a_minus = radial_geometry(s.position - step, feature).azimuth;
    return wrap_pi(a_plus - a_minus) / (2.0 * dt);
}

}  // namespace

TEST_CASE("distance to segment: perpendicular foot") {
    const auto r = distance_to_element({0, 5}, seg({-10, 0}, {10, 0}));
    CHECK(r.distance == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.contact == Contact::Interior);
    CHECK(r.nearest.x == doctest::Approx(0.0));
    CHECK(r.nearest.y == doctest::Approx(0.0));
}

TEST_CASE("distance to segment: beyond the end") {
    const auto r = distance_to_element({15, 0}, seg({-10, 0}, {10, 0}));
    CHECK(r.distance == doctest::Approx(5.0));
    CHECK(r.contact == Contact::EndpointB);
    CHECK(r.nearest.x == doctest::Approx(10.0));
}

TEST_CASE("distance to point feature: 3-4-5") {
    const auto r = distance_to_element({3, 4}, pt({0, 0}));
    CHECK(r.distance == doctest::Approx(5.0));
    CHECK(r.contact == Contact::Point);
}

TEST_CASE("distance is zero exactly on the element") {
    CHECK(distance_to_element({2, 0}, seg({-10, 0}, {10, 0})).distance == 0.0);
    CHECK(distance_to_element({0, 0}, pt({0, 0})).distance == 0.0);
    CHECK(distance_to_element({2, 1e-9}, seg({-10, 0}, {10, 0})).distance > 0.0);
}

TEST_CASE("line rate: horizontal line branch") {
    VirtualShipState s{{0, 5}, kPi / 2.0, 1.0, 0.0};
    CHECK(distance_rate_line(s, {-10, 0}, {10, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    s.heading = 0.0;
    CHECK(distance_rate_line(s, {-10, 0}, {10, 0}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("line rate: on-line degenerate flagged") {
    VirtualShipState s{{0, 0}, 0.3, 1.0, 0.0};
    bool degenerate = false;
    CHECK(distance_rate_line(s, {-10, 0}, {10, 0}, &degenerate) == 0.0);
    CHECK(degenerate);
}

TEST_CASE("line rate matches finite differences at 45 degrees") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    const Point2 a{0, 0}, b{10, 10};
    for (int i = 0; i < 200; ++i) {
        VirtualShipState s{{u(rng), u(rng)}, ang(rng), 1.0, 0.0};
        const GeometricElement line = seg(a, b);
        if (distance_to_element(s.position, line).distance < 1.0) continue;
        // Use the carrier line via a long segment so the foot stays interior.
        const GeometricElement carrier = seg({-1000, -1000}, {1000, 1000});
        const double analytic = distance_rate_line(s, a, b);
        const double numeric = fd_rate(s, carrier);
        CHECK(std::abs(analytic - numeric) < 1e-6);
    }
}

TEST_CASE("point rate examples") {
    VirtualShipState s{{10, 0}, 0.0, 1.0, 0.0};
    CHECK(distance_rate_point(s, {0, 0}) == doctest::Approx(1.0));
    s.heading = kPi / 2.0;
    CHECK(distance_rate_point(s, {0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    VirtualShipState t{{0, 10}, kPi, 2.0, 0.0};
    CHECK(distance_rate_point(t, {0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    VirtualShipState bad{{0, 0}, 0.0, 1.0, 0.0};
    CHECK_THROWS_AS(distance_rate_point(bad, {0, 0}), DegenerateGeometry);
}

TEST_CASE("azimuth rate examples and finite differences") {
    VirtualShipState s{{10, 0}, kPi / 2.0, 1.0, 0.0};
    CHECK(azimuth_rate(s, {0, 0}) == doctest::Approx(0.1));
    s.heading = 0.0;
    CHECK(azimuth_rate(s, {0, 0}) == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 200; ++i) {
        const Point2 f{u(rng), u(rng)};
        VirtualShipState t{{u(rng), u(rng)}, ang(rng), 1.0, 0.0};
        if (distance(t.position, f) < 1.0) continue;
        CHECK(std::abs(azimuth_rate(t, f) - fd_azimuth_rate(t, f)) < 1e-6);
    }
}

TEST_CASE("rate dispatch: interior vs endpoint regime") {
    const GeometricElement e = seg({-10, 0}, {10, 0});
    VirtualShipState s{{0, 5}, kPi / 2.0, 1.0, 0.0};
    CHECK(distance_rate(s, e) == doctest::Approx(1.0));
    VirtualShipState t{{15, 0}, 0.0, 1.0, 0.0};
    CHECK(distance_rate(t, e) == doctest::Approx(1.0));
}

TEST_CASE("rate is continuous across the endpoint regime change") {
    const GeometricElement e = seg({-10, 0}, {10, 0});
    // Exactly at the regime boundary both formulas agree.
    VirtualShipState s{{10, 5}, 0.7, 1.0, 0.0};
    const double line_val = distance_rate_line(s, e.a, e.b);
    const double point_val = distance_rate_point(s, {10, 0});
    CHECK(std::abs(line_val - point_val) < 1e-9);

    // Sweeping across x = 10 produces no jump beyond the local slope.
    double prev = 0.0;
    bool first = true;
    for (double x = 9.9; x <= 10.1; x += 1e-3) {
        VirtualShipState t{{x, 5}, 0.7, 1.0, 0.0};
        const double r = distance_rate(t, e);
        if (!first) CHECK(std::abs(r - prev) < 1e-3);
        prev = r;
        first = false;
    }
}

TEST_CASE("speed bounds every rate") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> vd(0.1, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const GeometricElement e = (i % 2 == 0)
                                       ? seg({u(rng), u(rng)}, {u(rng), u(rng)})
                                       : pt({u(rng), u(rng)});
        if (e.kind == ElementKind::SegmentFeature && distance(e.a, e.b) < 1e-6) continue;
        VirtualShipState s{{u(rng), u(rng)}, ang(rng), vd(rng), 0.0};
        if (distance_to_element(s.position, e).distance < 1e-6) continue;
        CHECK(std::abs(distance_rate(s, e)) <= s.speed * (1.0 + 1e-12));
    }
}

TEST_CASE("line rate equals the vector normal form for theta in (0, pi)") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_real_distribution<double> theta_d(0.01, kPi - 0.01);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 10000; ++i) {
        const double theta = theta_d(rng);
        const Point2 a{u(rng), u(rng)};
        const Point2 b = a + Point2{std::cos(theta), std::sin(theta)};
        VirtualShipState s{{u(rng), u(rng)}, ang(rng), 1.0, 0.0};
        const Point2 ab = b - a;
        const Point2 foot = a + (dot(s.position - a, ab) / dot(ab, ab)) * ab;
        const double d = distance(s.position, foot);
        if (d < 1e-6) continue;
        const Point2 n = (s.position - foot) * (1.0 / d);
        const double vector_form = s.speed * dot(n, heading_vector(s.heading));
        CHECK(std::abs(distance_rate_line(s, a, b) - vector_form) < 1e-9);
    }
}

TEST_CASE("rigid rotation leaves distances and rates invariant") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 500; ++i) {
        const double rot = ang(rng);
        auto rotate = [&](Point2 p) -> Point2 {
            return {p.x * std::cos(rot) - p.y * std::sin(rot),
                    p.x * std::sin(rot) + p.y * std::cos(rot)};
        };
        const GeometricElement e = seg({u(rng), u(rng)}, {u(rng), u(rng)});
        if (distance(e.a, e.b) < 1e-6) continue;
        VirtualShipState s{{u(rng), u(rng)}, ang(rng), 1.0, 0.0};
        if (distance_to_element(s.position, e).distance < 1e-6) continue;

        const GeometricElement er = seg(rotate(e.a), rotate(e.b));
        VirtualShipState sr{rotate(s.position), wrap_two_pi(s.heading + rot), 1.0, 0.0};
        CHECK(std::abs(distance_to_element(sr.position, er).distance -
                       distance_to_element(s.position, e).distance) < 1e-9);
        CHECK(std::abs(distance_rate(sr, er) - distance_rate(s, e)) < 1e-9);
    }
}

TEST_CASE("dispatch rate matches finite differences away from degenerate loci") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    int tested = 0;
    while (tested < 2000) {
        const GeometricElement e = seg({u(rng), u(rng)}, {u(rng), u(rng)});
        const double len = distance(e.a, e.b);
        if (len < 1.0) continue;
        VirtualShipState s{{u(rng), u(rng)}, ang(rng), 1.0, 0.0};
        const auto c = distance_to_element(s.position, e);
        if (c.distance < 1.0) continue;
        // Keep clear of the interior/endpoint regime boundary where the
        // one-sided formulas differ from the two-sided difference.
        const Point2 ab = e.b - e.a;
        const double t = dot(s.position - e.a, ab) / dot(ab, ab);
        if (std::abs(t) < 1e-3 || std::abs(t - 1.0) < 1e-3) continue;
        CHECK(std::abs(distance_rate(s, e) - fd_rate(s, e)) < 1e-6);
        ++tested;
    }
}

TEST_CASE("nearest elements and the active set") {
    std::vector<GeometricElement> elems;
    elems.push_back(GeometricElement::segment(0, 0, {-1000, 0}, {1000, 0}));
    elems.push_back(GeometricElement::segment(1, 1, {-1000, 100}, {1000, 100}));

    auto mid = nearest_elements({0, 50}, elems);
    CHECK(mid.size() == 2);
    CHECK(mid[0].distance == doctest::Approx(50.0));
    CHECK(active_set_size(mid, 1e-6) == 2);

    auto low = nearest_elements({0, 20}, elems);
    CHECK(low[0].element_id == 0);
    CHECK(low[0].distance == doctest::Approx(20.0));
    CHECK(active_set_size(low, 1e-6) == 1);
}
