#include "ilp/distributions.hpp"

#include <cmath>
#include <cstdio>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

constexpr double kMaxShapedLen = 65535.0;

bool is_integer(double v) { return v == std::floor(v); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

double normal_pdf(double z) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

DistributionSpec DistributionSpec::constant(double value, Units units) {
    DistributionSpec s;
    s.kind = DistKind::Constant;
    s.units = units;
    s.value = value;
    return s;
}

DistributionSpec DistributionSpec::uniform(double low, double high, Units units) {
    DistributionSpec s;
    s.kind = DistKind::Uniform;
    s.units = units;
    s.low = low;
    s.high = high;
    return s;
}

DistributionSpec DistributionSpec::truncated_normal(double mean, double stddev, double low,
                                                    double high, Units units) {
    DistributionSpec s;
    s.kind = DistKind::TruncatedNormal;
    s.units = units;
    s.mean = mean;
    s.stddev = stddev;
    s.low = low;
    s.high = high;
    return s;
}

void DistributionSpec::validate() const {
    const bool sizes = units == Units::Bytes;
    switch (kind) {
        case DistKind::Constant:
            if (!(value > 0)) raise(ErrorKind::ConfigError, "constant value must be > 0");
            if (sizes && (!is_integer(value) || value > kMaxShapedLen)) {
                raise(ErrorKind::ConfigError,
                      "constant size must be an integer in [1, 65535], got " + fmt(value));
            }
            break;
        case DistKind::Uniform:
            if (!(low >= 0) || !(low <= high)) {
                raise(ErrorKind::ConfigError,
                      "uniform bounds must satisfy 0 <= low <= high, got [" + fmt(low) + ", " +
                          fmt(high) + "]");
            }
            if (sizes && (low < 1 || high > kMaxShapedLen || !is_integer(low) || !is_integer(high))) {
                raise(ErrorKind::ConfigError,
                      "uniform size bounds must be integers in [1, 65535], got [" + fmt(low) +
                          ", " + fmt(high) + "]");
            }
            break;
        case DistKind::TruncatedNormal:
            if (!sizes) {
                raise(ErrorKind::UnsupportedMode,
                      "truncated-normal mode is supported for sizes only, not delays");
            }
            if (!(stddev > 0)) raise(ErrorKind::ConfigError, "stddev must be > 0");
            if (!(low < high)) {
                raise(ErrorKind::ConfigError,
                      "truncated-normal bounds must satisfy low < high, got [" + fmt(low) + ", " +
                          fmt(high) + "]");
            }
            if (low < 1 || high > kMaxShapedLen) {
                raise(ErrorKind::ConfigError,
                      "truncated-normal size bounds must lie in [1, 65535], got [" + fmt(low) +
                          ", " + fmt(high) + "]");
            }
            break;
    }
}

std::string to_string(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::Constant:
            return "constant " + fmt(spec.value);
        case DistKind::Uniform:
            return "uniform " + fmt(spec.low) + " " + fmt(spec.high);
        case DistKind::TruncatedNormal:
            return "truncated_normal " + fmt(spec.mean) + " " + fmt(spec.stddev) + " " +
                   fmt(spec.low) + " " + fmt(spec.high);
    }
    return "?";
}

double sample_delay(const DistributionSpec& spec, Rng& rng) {
    if (spec.units != Units::Seconds) {
        raise(ErrorKind::ConfigError, "sample_delay needs a seconds-unit spec");
    }
    switch (spec.kind) {
        case DistKind::Constant:
            return spec.value;
        case DistKind::Uniform:
            return rng.uniform_real(spec.low, spec.high);
        case DistKind::TruncatedNormal:
            break;
    }
    raise(ErrorKind::UnsupportedMode, "truncated-normal delays are not supported");
}

uint16_t sample_size(const DistributionSpec& spec, Rng& rng) {
    if (spec.units != Units::Bytes) {
        raise(ErrorKind::ConfigError, "sample_size needs a bytes-unit spec");
    }
    double v = 0;
    switch (spec.kind) {
        case DistKind::Constant:
            v = spec.value;
            break;
        case DistKind::Uniform:
            return static_cast<uint16_t>(
                rng.uniform_int(static_cast<int64_t>(spec.low), static_cast<int64_t>(spec.high)));
        case DistKind::TruncatedNormal: {
            do {
                v = rng.next_normal(spec.mean, spec.stddev);
            } while (v < spec.low || v > spec.high);
            v = std::round(v);
            break;
        }
    }
    if (v < 1) v = 1;
    if (v > kMaxShapedLen) v = kMaxShapedLen;
    return static_cast<uint16_t>(v);
}

double expected_value(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::Constant:
            return spec.value;
        case DistKind::Uniform:
            return (spec.low + spec.high) / 2.0;
        case DistKind::TruncatedNormal: {
            const double alpha = (spec.low - spec.mean) / spec.stddev;
            const double beta = (spec.high - spec.mean) / spec.stddev;
            const double mass = normal_cdf(beta) - normal_cdf(alpha);
            return spec.mean + spec.stddev * (normal_pdf(alpha) - normal_pdf(beta)) / mass;
        }
    }
    return 0;
}

void ShaperConfig::validate() const {
    if (delay_dist.units != Units::Seconds) {
        raise(ErrorKind::ConfigError, "delay_dist must carry seconds units");
    }
    if (size_dist.units != Units::Bytes) {
        raise(ErrorKind::ConfigError, "size_dist must carry bytes units");
    }
    delay_dist.validate();
    size_dist.validate();
}

ShaperConfig high_latency_preset(uint64_t seed) {
    ShaperConfig cfg;
    cfg.delay_dist = DistributionSpec::uniform(0.0, 0.6, Units::Seconds);
    cfg.size_dist = DistributionSpec::uniform(50, 200, Units::Bytes);
    cfg.rng_seed = seed;
    return cfg;
}

ShaperConfig low_latency_preset(uint64_t seed) {
    ShaperConfig cfg;
    cfg.delay_dist = DistributionSpec::constant(0.05, Units::Seconds);
    cfg.size_dist = DistributionSpec::constant(120, Units::Bytes);
    cfg.rng_seed = seed;
    return cfg;
}

}  // namespace ilp
