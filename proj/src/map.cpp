#include "garsa/map.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace garsa {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
    std::string out = "map validation failed:";
    for (const auto& s : issues) {
        out += "\n  ";
        out += s;
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) toks.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::string fmt_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

MapError::MapError(std::vector<std::string> iss)
    : std::runtime_error(join_issues(iss)), issues(std::move(iss)) {}

void WaterwayMap::add_chain(std::string id, std::vector<Point2> vertices, bool closed) {
    chains_.push_back({std::move(id), closed, std::move(vertices)});
    finalized_ = false;
}

void WaterwayMap::add_point(std::string id, Point2 p) {
    points_.push_back({std::move(id), p});
    finalized_ = false;
}

void WaterwayMap::finalize() {
    std::vector<std::string> issues;
    elements_.clear();
    chain_names_.clear();

    std::vector<std::string> seen;
    for (const auto& c : chains_) seen.push_back(c.id);
    for (const auto& p : points_) seen.push_back(p.id);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i) {
        if (seen[i] == seen[i - 1]) issues.push_back("duplicate feature id '" + seen[i] + "'");
    }

    int next_id = 0;
    for (const auto& c : chains_) {
        const int chain_index = static_cast<int>(chain_names_.size());
        chain_names_.push_back(c.id);
        if (c.vertices.size() < 2) {
            issues.push_back("chain '" + c.id + "' needs at least 2 vertices");
            continue;
        }
        const std::size_t nseg = c.vertices.size() - (c.closed ? 0 : 1);
        for (std::size_t k = 0; k < nseg; ++k) {
            const Point2 a = c.vertices[k];
            const Point2 b = c.vertices[(k + 1) % c.vertices.size()];
            if (distance(a, b) <= 0.0) {
                issues.push_back("chain '" + c.id + "' segment " + std::to_string(k) +
                                 " has zero length");
                continue;
            }
            elements_.push_back(GeometricElement::segment(next_id++, chain_index, a, b));
        }
    }
    for (const auto& p : points_) {
        const int chain_index = static_cast<int>(chain_names_.size());
        chain_names_.push_back(p.id);
        elements_.push_back(GeometricElement::point(next_id++, chain_index, p.position));
    }

    if (!elements_.empty()) {
        if (!reference_) {
            issues.push_back("missing navigable reference point (ref <x> <y>)");
        } else if (clearance(*reference_) <= 0.0) {
            issues.push_back("reference point has non-positive clearance");
        }
    }

    if (!issues.empty()) {
        elements_.clear();
        throw MapError(std::move(issues));
    }
    finalized_ = true;
}

const std::string& WaterwayMap::chain_name(int chain_index) const {
    return chain_names_.at(static_cast<std::size_t>(chain_index));
}

Bounds WaterwayMap::bounds() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Bounds b{{inf, inf}, {-inf, -inf}};
    auto grow = [&b](Point2 p) {
        b.min.x = std::min(b.min.x, p.x);
        b.min.y = std::min(b.min.y, p.y);
        b.max.x = std::max(b.max.x, p.x);
        b.max.y = std::max(b.max.y, p.y);
    };
    for (const auto& e : elements_) {
        grow(e.a);
        if (e.kind == ElementKind::SegmentFeature) grow(e.b);
    }
    return b;
}

double WaterwayMap::clearance(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : elements_) {
        best = std::min(best, distance_to_element(p, e).distance);
    }
    return best;
}

std::vector<ElementDistance> WaterwayMap::nearest(Point2 p) const {
    return nearest_elements(p, elements_);
}

WaterwayMap load_map(std::string_view text) {
    WaterwayMap map;
    std::vector<std::string> issues;

    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
        if (end == text.size()) break;
    }

    struct PendingChain {
        std::string id;
        bool closed = false;
        std::vector<Point2> vertices;
        int line = 0;
    };
    std::optional<PendingChain> pending;

    auto flush_chain = [&]() {
        if (!pending) return;
        if (pending->vertices.size() < 2) {
            issues.push_back("line " + std::to_string(pending->line) + ": chain '" + pending->id +
                             "' needs at least 2 vertices");
        } else {
            map.add_chain(pending->id, pending->vertices, pending->closed);
        }
        pending.reset();
    };

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li + 1);
        std::string_view raw = lines[li];
        if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        auto toks = split_tokens(raw);
        if (toks.empty()) continue;

        auto bad = [&](const std::string& msg) {
            issues.push_back("line " + std::to_string(lineno) + ": " + msg);
        };

        const std::string& key = toks[0];
        if (key == "chain") {
            flush_chain();
            if (toks.size() != 3 || (toks[2] != "open" && toks[2] != "closed")) {
                bad("expected 'chain <id> open|closed'");
                continue;
            }
            pending = PendingChain{toks[1], toks[2] == "closed", {}, lineno};
        } else if (key == "v") {
            double x, y;
            if (!pending) {
                bad("vertex outside a chain block");
            } else if (toks.size() != 3 || !parse_double(toks[1], x) || !parse_double(toks[2], y)) {
                bad("expected 'v <x> <y>'");
            } else {
                if (!pending->vertices.empty() &&
                    distance(pending->vertices.back(), Point2{x, y}) <= 0.0) {
                    bad("zero-length segment in chain '" + pending->id + "'");
                } else {
                    pending->vertices.push_back({x, y});
                }
            }
        } else if (key == "point") {
            flush_chain();
            double x, y;
            if (toks.size() != 4 || !parse_double(toks[2], x) || !parse_double(toks[3], y)) {
                bad("expected 'point <id> <x> <y>'");
            } else {
                map.add_point(toks[1], {x, y});
            }
        } else if (key == "ref") {
            flush_chain();
            double x, y;
            if (toks.size() != 3 || !parse_double(toks[1], x) || !parse_double(toks[2], y)) {
                bad("expected 'ref <x> <y>'");
            } else {
                map.set_reference({x, y});
            }
        } else if (key == "name") {
            flush_chain();
            if (toks.size() < 2) {
                bad("expected 'name <text>'");
            } else {
                map.set_name(toks[1]);
            }
        } else {
            bad("unknown record '" + key + "'");
        }
    }
    flush_chain();

    // Closed chains must not repeat the first vertex; that would create
    // a zero-length closing segment.
    if (!issues.empty()) throw MapError(std::move(issues));
    map.finalize();
    return map;
}

std::string save_map(const WaterwayMap& map) {
    std::string out = "# garsa map\n";
    if (!map.name().empty()) out += "name " + map.name() + "\n";

    std::vector<const BoundaryChain*> chains;
    for (const auto& c : map.chains()) chains.push_back(&c);
    std::sort(chains.begin(), chains.end(),
              [](const BoundaryChain* a, const BoundaryChain* b) { return a->id < b->id; });
    for (const auto* c : chains) {
        out += "chain " + c->id + (c->closed ? " closed\n" : " open\n");
        for (const auto& v : c->vertices) {
            out += "v " + fmt_coord(v.x) + " " + fmt_coord(v.y) + "\n";
        }
    }

    std::vector<const IsolatedPoint*> pts;
    for (const auto& p : map.points()) pts.push_back(&p);
    std::sort(pts.begin(), pts.end(),
              [](const IsolatedPoint* a, const IsolatedPoint* b) { return a->id < b->id; });
    for (const auto* p : pts) {
        out += "point " + p->id + " " + fmt_coord(p->position.x) + " " + fmt_coord(p->position.y) +
               "\n";
    }

    if (map.reference()) {
        out += "ref " + fmt_coord(map.reference()->x) + " " + fmt_coord(map.reference()->y) + "\n";
    }
    return out;
}

WaterwayMap load_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MapError({"cannot open map file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_map(ss.str());
}

void save_map_file(const WaterwayMap& map, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MapError({"cannot write map file '" + path + "'"});
    out << save_map(map);
}

}  // namespace garsa
