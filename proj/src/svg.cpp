#include "garsa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace garsa {

namespace {

constexpr double kMargin = 20.0;  // px

std::string heat_color(double w, double lo, double hi) {
    double t = hi > lo ? (w - lo) / (hi - lo) : 1.0;
    t = std::clamp(t, 0.0, 1.0);
    // narrow -> red (214,39,40), wide -> blue (31,119,180)
    const int r = static_cast<int>(std::lround(214 + t * (31 - 214)));
    const int g = static_cast<int>(std::lround(39 + t * (119 - 39)));
    const int b = static_cast<int>(std::lround(40 + t * (180 - 40)));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string render_svg(const WaterwayMap& map, const std::vector<SvgOverlay>& overlays) {
    Bounds b = map.bounds();
    for (const auto& ov : overlays) {
        for (const Point2& p : ov.points) {
            b.min.x = std::min(b.min.x, p.x);
            b.min.y = std::min(b.min.y, p.y);
            b.max.x = std::max(b.max.x, p.x);
            b.max.y = std::max(b.max.y, p.y);
        }
    }
    const double w = b.max.x - b.min.x + 2 * kMargin;
    const double h = b.max.y - b.min.y + 2 * kMargin;
    auto tx = [&](Point2 p) { return p.x - b.min.x + kMargin; };
    auto ty = [&](Point2 p) { return b.max.y - p.y + kMargin; };  // y points up in world coords

    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %.1f %.1f\">\n", w, h);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto polyline = [&](const std::vector<Point2>& pts, const std::string& color, double stroke,
                        bool closed) {
        if (pts.size() < 2) return;
        out += closed ? "<polygon points=\"" : "<polyline points=\"";
        for (const Point2& p : pts) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", tx(p), ty(p));
            out += buf;
        }
        std::snprintf(buf, sizeof(buf), "\" fill=\"none\" stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                      color.c_str(), stroke);
        out += buf;
    };

    for (const auto& c : map.chains()) {
        polyline(c.vertices, "black", 2.0, c.closed);
    }
    for (const auto& p : map.points()) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"black\"/>\n",
                      tx(p.position), ty(p.position));
        out += buf;
    }

    for (const auto& ov : overlays) {
        const bool heat = ov.profile && ov.profile->size() == ov.points.size() && ov.points.size() > 1;
        if (heat) {
            for (std::size_t i = 0; i + 1 < ov.points.size(); ++i) {
                const double wmid =
                    0.5 * (ov.profile->samples()[i].width + ov.profile->samples()[i + 1].width);
                std::snprintf(buf, sizeof(buf),
                              "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                              "stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                              tx(ov.points[i]), ty(ov.points[i]), tx(ov.points[i + 1]),
                              ty(ov.points[i + 1]),
                              heat_color(wmid, ov.heat_min, ov.heat_max).c_str(), ov.stroke);
                out += buf;
            }
        } else {
            polyline(ov.points, ov.color, ov.stroke, false);
        }
        if (!ov.label.empty() && !ov.points.empty()) {
            std::snprintf(buf, sizeof(buf),
                          "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                          tx(ov.points.front()) + 4, ty(ov.points.front()) - 4, ov.color.c_str(),
                          ov.label.c_str());
            out += buf;
        }
    }

    out += "</svg>\n";
    return out;
}

}  // namespace garsa
