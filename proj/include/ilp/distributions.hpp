#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ilp/random.hpp"

namespace ilp {

// Parameterization of the interpacket-delay distribution and the payload-size
// distribution. A spec carries a unit tag (seconds or bytes) so delay and
// size roles cannot be swapped silently; values are never converted.

enum class DistKind { Constant, Uniform, TruncatedNormal };
enum class Units { Seconds, Bytes };

struct DistributionSpec {
    DistKind kind = DistKind::Constant;
    Units units = Units::Seconds;
    double value = 0;   // Constant
    double low = 0;     // Uniform / TruncatedNormal lower bound
    double high = 0;    // Uniform / TruncatedNormal upper bound
    double mean = 0;    // TruncatedNormal
    double stddev = 0;  // TruncatedNormal

    static DistributionSpec constant(double value, Units units);
    static DistributionSpec uniform(double low, double high, Units units);
    static DistributionSpec truncated_normal(double mean, double stddev, double low,
                                             double high, Units units);

    // Throws ConfigError (or UnsupportedMode for truncated-normal delays) on
    // invalid parameters. Size bounds must be integers in [1, 65535] so every
    // sample fits shaped_len.
    void validate() const;

    bool operator==(const DistributionSpec&) const = default;
};

std::string to_string(const DistributionSpec& spec);

// One draw from the delay distribution, in seconds. Constant -> value;
// Uniform -> uniform on [low, high]. Truncated normal delays are rejected:
// only payload sizes use the normal mode.
double sample_delay(const DistributionSpec& spec, Rng& rng);

// One draw from the size distribution, in bytes. Constant -> value; Uniform ->
// integer uniform on [low, high] inclusive; TruncatedNormal -> normal draw,
// redrawn while outside [low, high], rounded to nearest integer. Result is
// clamped into [1, 65535].
uint16_t sample_size(const DistributionSpec& spec, Rng& rng);

// Analytic mean of the distribution (truncated-normal mean in closed form).
double expected_value(const DistributionSpec& spec);

struct ShaperConfig {
    DistributionSpec delay_dist;                 // seconds
    DistributionSpec size_dist;                  // bytes
    uint64_t rng_seed = 0;                       // reproducibility handle
    std::optional<uint64_t> max_queue_bytes;     // backpressure bound; unset = unbounded

    void validate() const;
};

// High-latency devices tolerate aggressive random shaping.
ShaperConfig high_latency_preset(uint64_t seed = 0);

// Low-latency low-bandwidth devices get a constant-rate schedule.
ShaperConfig low_latency_preset(uint64_t seed = 0);

}  // namespace ilp
