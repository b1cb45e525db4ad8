#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ilp/distributions.hpp"

namespace ilp {

// Flat key-value config file, one `key = value` per line, '#' comments.
// Recognized keys:
//
//   delay_dist = constant <seconds> | uniform <low> <high>
//   size_dist  = constant <bytes> | uniform <low> <high>
//                | truncated_normal <mean> <stddev> <low> <high>
//   seed       = <unsigned 64-bit>
//   max_queue_bytes = <bytes>            (0 or absent: unbounded)
//   wire_overhead_per_record = <bytes>   (on-wire estimate; default 40)
//
// Command-line flags override file values; the fully resolved configuration
// is echoed into every report.
struct FileConfig {
    std::optional<DistributionSpec> delay_dist;
    std::optional<DistributionSpec> size_dist;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> max_queue_bytes;
    std::optional<double> wire_overhead_per_record;
};

FileConfig parse_config_file(const std::filesystem::path& path);

// Parses "constant 0.05", "uniform 0 0.6", "truncated_normal 125 30 50 200"
// (alias "normal"). Validates against the given units.
DistributionSpec parse_dist_spec(const std::string& text, Units units);

}  // namespace ilp
