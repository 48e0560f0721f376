#include "garsa/assessment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace garsa {

namespace {

// Reduces f over the sequence by symmetric pairs (j, n-j) so that a
// mirrored sequence folds to the bitwise-identical total.
template <typename F>
double fold_symmetric(const std::vector<double>& w, F f) {
    const std::size_t n = w.size() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; 2 * j <= n; ++j) {
        if (2 * j < n) {
            acc += f(w[j]) + f(w[n - j]);
        } else {
            acc += f(w[j]);
        }
    }
    return acc;
}

}  // namespace

Assessment spi_from_widths(const std::vector<double>& widths, const SafetyConfig& cfg) {
    if (widths.empty()) throw std::invalid_argument("spi: empty width sequence");
    for (double w : widths) {
        if (!(w > 0.0)) throw std::invalid_argument("spi: profile contains non-positive width");
    }
    const double xi = cfg.threshold;

    Assessment a;
    a.sample_spacing = cfg.sample_spacing;
    a.mean_width = fold_symmetric(widths, [](double w) { return w; }) /
                   static_cast<double>(widths.size());
    a.min_width = *std::min_element(widths.begin(), widths.end());
    a.penalty = fold_symmetric(
        widths, [xi](double w) { return w < xi ? -std::log10(w / xi) : 0.0; });
    if (a.penalty > 0.0) a.spi = a.mean_width / a.penalty;
    return a;
}

Assessment spi(const WidthProfile& profile, const SafetyConfig& cfg) {
    if (profile.empty()) throw std::invalid_argument("spi: empty profile");
    const int n = resample_intervals(profile.total_length(), cfg.sample_spacing);
    Assessment a = spi_from_widths(symmetric_resampled_widths(profile, n), cfg);
    a.length = profile.total_length();
    return a;
}

std::vector<Assessment> rank_routes(std::vector<Assessment> assessments) {
    if (assessments.empty()) throw std::invalid_argument("rank_routes: nothing to rank");
    for (const auto& a : assessments) {
        if (a.sample_spacing != assessments.front().sample_spacing) {
            throw std::invalid_argument("rank_routes: mixed sample spacings are not comparable");
        }
    }
    std::sort(assessments.begin(), assessments.end(), [](const Assessment& l, const Assessment& r) {
        const bool lu = !l.spi.has_value();
        const bool ru = !r.spi.has_value();
        if (lu != ru) return lu;
        if (!lu && *l.spi != *r.spi) return *l.spi > *r.spi;
        if (l.mean_width != r.mean_width) return l.mean_width > r.mean_width;
        if (l.length != r.length) return l.length < r.length;
        return l.route_id < r.route_id;
    });
    return assessments;
}

ProfileSummary summarize(const WidthProfile& profile, const SafetyConfig& cfg) {
    const Assessment a = spi(profile, cfg);
    return {a.mean_width, a.min_width, profile.total_length()};
}

std::string assessments_to_csv(const std::vector<Assessment>& rows) {
    std::string out = "route,mean_dwc_m,min_dwc_m,length_m,spi\n";
    char buf[200];
    for (const auto& a : rows) {
        if (a.spi) {
            std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n", a.route_id, a.mean_width,
                          a.min_width, a.length, *a.spi);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,inf\n", a.route_id, a.mean_width,
                          a.min_width, a.length);
        }
        out += buf;
    }
    return out;
}

}  // namespace garsa
