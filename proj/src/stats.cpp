#include "ilp/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

double empirical_vs_cdf(std::vector<double>& samples, double (*cdf)(double, double, double),
                        double p0, double p1) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i], p0, p1);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double uniform_cdf(double x, double low, double high) {
    if (x < low) return 0;
    if (x >= high) return 1;
    return (x - low) / (high - low);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Supremum of |F_n - F| when both step only at integers in [low, high]:
// both are constant on [k, k+1), so checking each support point suffices.
double ks_integer_support(const std::vector<double>& samples, int64_t low, int64_t high,
                          const std::vector<double>& cdf_at) {
    if (samples.empty()) raise(ErrorKind::ValidationError, "ks statistic needs samples");
    const double n = static_cast<double>(samples.size());
    std::vector<uint64_t> counts(static_cast<size_t>(high - low + 1), 0);
    for (double s : samples) {
        const int64_t v = static_cast<int64_t>(std::llround(s));
        if (v < low || v > high) return 1.0;  // outside support: maximal misfit
        counts[static_cast<size_t>(v - low)]++;
    }
    double d = 0;
    uint64_t cumulative = 0;
    for (size_t k = 0; k < counts.size(); ++k) {
        cumulative += counts[k];
        d = std::max(d, std::fabs(static_cast<double>(cumulative) / n - cdf_at[k]));
    }
    return d;
}

}  // namespace

double ks_uniform_real(std::vector<double> samples, double low, double high) {
    if (samples.empty()) raise(ErrorKind::ValidationError, "ks statistic needs samples");
    return empirical_vs_cdf(samples, uniform_cdf, low, high);
}

double ks_uniform_int(const std::vector<double>& samples, int64_t low, int64_t high) {
    const size_t support = static_cast<size_t>(high - low + 1);
    std::vector<double> cdf(support);
    for (size_t k = 0; k < support; ++k) {
        cdf[k] = static_cast<double>(k + 1) / static_cast<double>(support);
    }
    return ks_integer_support(samples, low, high, cdf);
}

double ks_vs_constant(const std::vector<double>& samples, double value) {
    if (samples.empty()) raise(ErrorKind::ValidationError, "ks statistic needs samples");
    double below = 0, above = 0;
    for (double s : samples) {
        if (s < value) below++;
        if (s > value) above++;
    }
    const double n = static_cast<double>(samples.size());
    return std::max(below / n, above / n);
}

double ks_statistic_for_spec(const DistributionSpec& spec, std::vector<double> samples) {
    switch (spec.kind) {
        case DistKind::Constant:
            return ks_vs_constant(samples, spec.value);
        case DistKind::Uniform:
            if (spec.units == Units::Bytes) {
                return ks_uniform_int(samples, static_cast<int64_t>(spec.low),
                                      static_cast<int64_t>(spec.high));
            }
            return ks_uniform_real(std::move(samples), spec.low, spec.high);
        case DistKind::TruncatedNormal: {
            // Sizes are normal draws rejected into [low, high] and rounded,
            // so the reference CDF at integer k is the truncated-normal mass
            // up to k + 0.5.
            const int64_t lo = static_cast<int64_t>(std::llround(spec.low));
            const int64_t hi = static_cast<int64_t>(std::llround(spec.high));
            const double a = normal_cdf((spec.low - spec.mean) / spec.stddev);
            const double b = normal_cdf((spec.high - spec.mean) / spec.stddev);
            std::vector<double> cdf(static_cast<size_t>(hi - lo + 1));
            for (int64_t k = lo; k <= hi; ++k) {
                const double edge = std::min(static_cast<double>(k) + 0.5, spec.high);
                const double mass = normal_cdf((edge - spec.mean) / spec.stddev);
                cdf[static_cast<size_t>(k - lo)] = (mass - a) / (b - a);
            }
            cdf.back() = 1.0;
            return ks_integer_support(samples, lo, hi, cdf);
        }
    }
    raise(ErrorKind::InternalError, "unhandled distribution kind");
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) raise(ErrorKind::ValidationError, "ks statistic needs samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

bool PeakDetection::window_flagged(double start, double end) const {
    for (size_t bin : flagged_bins) {
        const double bin_start = static_cast<double>(bin) * bin_seconds;
        if (bin_start + bin_seconds > start && bin_start < end) return true;
    }
    return false;
}

PeakDetection detect_rate_peaks(std::span<const std::pair<double, double>> timed_bytes,
                                double duration, double bin_seconds, double factor) {
    PeakDetection out;
    out.bin_seconds = bin_seconds;
    const size_t bins = std::max<size_t>(1, static_cast<size_t>(std::ceil(duration / bin_seconds)));
    out.bin_bytes.assign(bins, 0.0);
    for (const auto& [t, bytes] : timed_bytes) {
        size_t idx = static_cast<size_t>(t / bin_seconds);
        if (idx >= bins) idx = bins - 1;
        out.bin_bytes[idx] += bytes;
    }

    std::vector<double> sorted = out.bin_bytes;
    std::sort(sorted.begin(), sorted.end());
    out.median = sorted.size() % 2 == 1
                     ? sorted[sorted.size() / 2]
                     : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    out.threshold = factor * out.median;
    for (size_t i = 0; i < out.bin_bytes.size(); ++i) {
        if (out.bin_bytes[i] > out.threshold) out.flagged_bins.push_back(i);
    }
    return out;
}

}  // namespace ilp
