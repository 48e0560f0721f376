#pragma once

#include <string>
#include <vector>

#include "garsa/geometry.hpp"

namespace garsa {

/// One recorded point of the width characterization function.
/// `active_a`/`active_b` are the element ids of the equidistant pair
/// (-1 for synthesized samples such as node anchors).
struct WidthSample {
    double s = 0.0;
    double width = 0.0;
    Point2 position;
    int active_a = -1;
    int active_b = -1;
};

/// Sampled width function s -> w along a traced pathway.
///
/// Sample spacings (`seg_len`) and `total_length` are the authoritative
/// arc-length data; the cached `s` values are front-anchored prefix
/// sums. Reversal only reverses the lists and keeps `total_length`, so
/// a profile and its reverse resample to exactly mirrored width
/// sequences.
class WidthProfile {
  public:
    WidthProfile() = default;

    static WidthProfile from_samples(std::vector<WidthSample> samples);

    void append(WidthSample sample, double gap_from_previous);
    void pop_back();
    void set_total_length(double L) { total_length_ = L; }

    bool empty() const { return samples_.empty(); }
    std::size_t size() const { return samples_.size(); }
    const std::vector<WidthSample>& samples() const { return samples_; }
    const std::vector<double>& seg_lengths() const { return seg_len_; }
    double total_length() const { return total_length_; }

    double min_width() const;
    double mean_width() const;  // of the raw samples

    WidthProfile reversed() const;

    /// Appends `tail` assuming its first sample duplicates our last
    /// (the shared node anchor); the duplicate is dropped.
    void concat(const WidthProfile& tail);

    /// Width at arc-length offset `off` measured from the front.
    double width_at(double off) const;
    Point2 position_at(double off) const;

  private:
    void rebuild_s();

    std::vector<WidthSample> samples_;
    std::vector<double> seg_len_;
    double total_length_ = 0.0;
};

/// Number of resampling intervals for a target spacing: round(L/ds),
/// at least 1.
int resample_intervals(double total_length, double ds);

/// Widths at an evenly spaced, reversal-symmetric grid of n+1 points.
/// The grid offsets of mirrored indices are computed with identical
/// arithmetic from either end, so
/// symmetric_resampled_widths(p.reversed(), n) is exactly the mirror of
/// symmetric_resampled_widths(p, n).
std::vector<double> symmetric_resampled_widths(const WidthProfile& p, int n);

/// Uniform resampling preserving both endpoints; spacing is
/// total_length / round(total_length/ds), i.e. as close to ds as an
/// even division allows. Idempotent at fixed ds. Throws
/// std::invalid_argument on an empty profile or non-positive ds.
WidthProfile resample_profile(const WidthProfile& p, double ds);

/// CSV export: header `s_m,width_m,x,y`, one row per sample.
std::string profile_to_csv(const WidthProfile& p);

}  // namespace garsa
