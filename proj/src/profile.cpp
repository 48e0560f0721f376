#include "garsa/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace garsa {

namespace {

// Interpolated width at offset `off` from the front of the given list
// view. Walks segments in order; the first bracketing segment wins.
template <typename WidthAt, typename LenAt>
double walk_width(std::size_t n_samples, WidthAt w, LenAt len, double off) {
    if (n_samples == 1) return w(0);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < n_samples; ++k) {
        const double l = len(k);
        if (off <= acc + l || k + 2 == n_samples) {
            if (l <= 0.0) return w(k);
            double t = (off - acc) / l;
            t = std::clamp(t, 0.0, 1.0);
            return w(k) * (1.0 - t) + w(k + 1) * t;
        }
        acc += l;
    }
    return w(n_samples - 1);
}

}  // namespace

WidthProfile WidthProfile::from_samples(std::vector<WidthSample> samples) {
    WidthProfile p;
    if (samples.empty()) return p;
    const double s0 = samples.front().s;
    for (auto& smp : samples) smp.s -= s0;
    p.samples_ = std::move(samples);
    p.seg_len_.reserve(p.samples_.size());
    for (std::size_t i = 0; i + 1 < p.samples_.size(); ++i) {
        const double d = p.samples_[i + 1].s - p.samples_[i].s;
        if (d < 0.0) throw std::invalid_argument("profile samples must be sorted by s");
        p.seg_len_.push_back(d);
    }
    p.total_length_ = p.samples_.back().s;
    return p;
}

void WidthProfile::append(WidthSample sample, double gap_from_previous) {
    if (samples_.empty()) {
        sample.s = 0.0;
        samples_.push_back(sample);
        return;
    }
    seg_len_.push_back(gap_from_previous);
    sample.s = samples_.back().s + gap_from_previous;
    samples_.push_back(sample);
    total_length_ = sample.s;
}

void WidthProfile::pop_back() {
    if (samples_.empty()) return;
    samples_.pop_back();
    if (!seg_len_.empty()) seg_len_.pop_back();
    total_length_ = samples_.empty() ? 0.0 : samples_.back().s;
}

double WidthProfile::min_width() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : samples_) m = std::min(m, s.width);
    return m;
}

double WidthProfile::mean_width() const {
    if (samples_.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : samples_) acc += s.width;
    return acc / static_cast<double>(samples_.size());
}

WidthProfile WidthProfile::reversed() const {
    WidthProfile out;
    out.samples_.assign(samples_.rbegin(), samples_.rend());
    out.seg_len_.assign(seg_len_.rbegin(), seg_len_.rend());
    out.total_length_ = total_length_;
    out.rebuild_s();
    return out;
}

void WidthProfile::concat(const WidthProfile& tail) {
    if (tail.empty()) return;
    if (samples_.empty()) {
        *this = tail;
        return;
    }
    for (std::size_t i = 1; i < tail.samples_.size(); ++i) {
        seg_len_.push_back(tail.seg_len_[i - 1]);
        samples_.push_back(tail.samples_[i]);
    }
    rebuild_s();
    total_length_ = samples_.empty() ? 0.0 : samples_.back().s;
}

void WidthProfile::rebuild_s() {
    double s = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (i > 0) s += seg_len_[i - 1];
        samples_[i].s = s;
    }
}

double WidthProfile::width_at(double off) const {
    if (samples_.empty()) throw std::invalid_argument("width_at on empty profile");
    return walk_width(
        samples_.size(), [this](std::size_t i) { return samples_[i].width; },
        [this](std::size_t i) { return seg_len_[i]; }, off);
}

Point2 WidthProfile::position_at(double off) const {
    if (samples_.empty()) throw std::invalid_argument("position_at on empty profile");
    const double x = walk_width(
        samples_.size(), [this](std::size_t i) { return samples_[i].position.x; },
        [this](std::size_t i) { return seg_len_[i]; }, off);
    const double y = walk_width(
        samples_.size(), [this](std::size_t i) { return samples_[i].position.y; },
        [this](std::size_t i) { return seg_len_[i]; }, off);
    return {x, y};
}

int resample_intervals(double total_length, double ds) {
    if (ds <= 0.0) throw std::invalid_argument("sample spacing must be positive");
    return std::max(1, static_cast<int>(std::llround(total_length / ds)));
}

std::vector<double> symmetric_resampled_widths(const WidthProfile& p, int n) {
    if (p.empty()) throw std::invalid_argument("resample of empty profile");
    const std::size_t m = p.size();
    const double L = p.total_length();

    auto front = [&](double off) {
        return walk_width(
            m, [&](std::size_t i) { return p.samples()[i].width; },
            [&](std::size_t i) { return p.seg_lengths()[i]; }, off);
    };
    auto back = [&](double off) {
        return walk_width(
            m, [&](std::size_t i) { return p.samples()[m - 1 - i].width; },
            [&](std::size_t i) { return p.seg_lengths()[m - 2 - i]; }, off);
    };

    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        if (2 * j < n) {
            w[static_cast<std::size_t>(j)] = front(L * j / n);
        } else if (2 * j > n) {
            w[static_cast<std::size_t>(j)] = back(L * (n - j) / n);
        } else {
            const double off = L / 2.0;
            w[static_cast<std::size_t>(j)] = 0.5 * (front(off) + back(off));
        }
    }
    return w;
}

WidthProfile resample_profile(const WidthProfile& p, double ds) {
    if (p.empty()) throw std::invalid_argument("resample of empty profile");
    const int n = resample_intervals(p.total_length(), ds);
    const double L = p.total_length();
    const std::vector<double> w = symmetric_resampled_widths(p, n);

    std::vector<WidthSample> samples(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double off = (2 * j <= n) ? L * j / n : L - L * (n - j) / n;
        auto& smp = samples[static_cast<std::size_t>(j)];
        smp.s = off;
        smp.width = w[static_cast<std::size_t>(j)];
        smp.position = p.position_at(off);
    }
    // Endpoints carry over exactly.
    samples.front() = p.samples().front();
    samples.front().s = 0.0;
    samples.back() = p.samples().back();
    samples.back().s = L;
    return WidthProfile::from_samples(std::move(samples));
}

std::string profile_to_csv(const WidthProfile& p) {
    std::string out = "s_m,width_m,x,y\n";
    char buf[160];
    for (const auto& s : p.samples()) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f\n", s.s, s.width, s.position.x,
                      s.position.y);
        out += buf;
    }
    return out;
}

}  // namespace garsa
