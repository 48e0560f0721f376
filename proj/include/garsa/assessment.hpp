#pragma once

#include <optional>
#include <string>
#include <vector>

#include "garsa/profile.hpp"

namespace garsa {

struct SafetyConfig {
    double threshold = 70.0;     // m; widths strictly below it are penalized
    double sample_spacing = 1.0; // m; resampling step for the penalty sum
};

/// Per-route safety summary. `spi` is empty when no resampled width
/// falls below the threshold (the route is unconstrained and ranks
/// above every finite index).
struct Assessment {
    int route_id = 0;
    double mean_width = 0.0;
    double min_width = 0.0;
    double length = 0.0;
    double penalty = 0.0;
    std::optional<double> spi;
    double sample_spacing = 1.0;
};

/// Safety performance index: mean resampled width divided by the summed
/// -log10(w/threshold) over samples strictly below the threshold.
/// Resampling and both reductions are reversal-symmetric, so a profile
/// and its reverse produce bitwise-equal assessments. Throws
/// std::invalid_argument on empty profiles or non-positive widths.
Assessment spi(const WidthProfile& profile, const SafetyConfig& cfg);

/// Index from an already-resampled width sequence.
Assessment spi_from_widths(const std::vector<double>& widths, const SafetyConfig& cfg);

/// Descending by safety: unconstrained first, then higher SPI; ties by
/// higher mean width, then shorter length, then route id. Throws if the
/// assessments were produced with different sample spacings.
std::vector<Assessment> rank_routes(std::vector<Assessment> assessments);

struct ProfileSummary {
    double mean_width = 0.0;
    double min_width = 0.0;
    double length = 0.0;
};

ProfileSummary summarize(const WidthProfile& profile, const SafetyConfig& cfg = {});

/// CSV mirroring the assessment table: route,mean_dwc_m,min_dwc_m,length_m,spi
/// with `inf` for unconstrained routes. Rows in the given order.
std::string assessments_to_csv(const std::vector<Assessment>& rows);

}  // namespace garsa
