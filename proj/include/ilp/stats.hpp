#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ilp/distributions.hpp"

namespace ilp {

// Goodness-of-fit machinery for the privacy evaluation: Kolmogorov-Smirnov
// statistics comparing shaped observables against their configured
// distributions, plus the traffic-rate peak detector used as the adversary
// baseline.

// One-sample KS statistic against the continuous uniform CDF on [low, high].
double ks_uniform_real(std::vector<double> samples, double low, double high);

// One-sample KS statistic for integer-valued samples against the discrete
// uniform distribution on {low, ..., high}. Both CDFs step only at integers,
// so the supremum is taken over the support.
double ks_uniform_int(const std::vector<double>& samples, int64_t low, int64_t high);

// Degenerate reference: 0 when every sample equals `value`, otherwise the
// larger of the sample fractions on either side.
double ks_vs_constant(const std::vector<double>& samples, double value);

// KS statistic of samples against the distribution a spec actually produces
// (integer-valued for sizes, continuous for delays).
double ks_statistic_for_spec(const DistributionSpec& spec, std::vector<double> samples);

// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Critical values at significance 0.01.
inline double ks_critical_one_sample(size_t n) {
    return 1.63 / std::sqrt(static_cast<double>(n));
}
inline double ks_critical_two_sample(size_t n, size_t m) {
    return 1.628 * std::sqrt(static_cast<double>(n + m) /
                             (static_cast<double>(n) * static_cast<double>(m)));
}

// Adversary baseline from prior activity-inference work: bucket a flow into
// fixed-width time bins and flag bins whose byte rate exceeds `factor` times
// the median bin.
struct PeakDetection {
    double bin_seconds = 1.0;
    double median = 0;
    double threshold = 0;
    std::vector<double> bin_bytes;
    std::vector<size_t> flagged_bins;

    bool window_flagged(double start, double end) const;
};

PeakDetection detect_rate_peaks(std::span<const std::pair<double, double>> timed_bytes,
                                double duration, double bin_seconds = 1.0, double factor = 3.0);

}  // namespace ilp
