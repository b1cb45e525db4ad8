#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ilp/distributions.hpp"
#include "ilp/trace.hpp"

namespace ilp {

// Deterministic virtual-clock replay: trace events enqueue synthesized
// messages at their timestamps, the shaper ticks on its sampled schedule, and
// every emitted record is logged with its virtual send time. No wall clock,
// no sockets, no measurement noise; identical (trace, config, horizon) runs
// produce bit-identical results.
//
// Rate metrics cover records sent within the horizon. After the horizon the
// replay closes the shaper and keeps ticking until the queue drains and the
// stream-end record is emitted, so the built-in reassembly check always sees
// complete messages. A replay whose reassembled output differs from the
// enqueued messages fails hard: that is a correctness bug, not a statistic.

struct ReplayOptions {
    // Per-record estimate of transport/link framing added on the wire, used
    // for the estimated on-wire rates (application bytes are exact; stack
    // overhead is environment-dependent).
    double wire_overhead_per_record = 40.0;
};

struct RecordLogEntry {
    double send_time = 0;     // virtual seconds
    double delay_before = 0;  // sampled d
    uint16_t shaped_len = 0;  // sampled x
    uint16_t real_len = 0;
    bool cover = false;
    bool stream_end = false;
};

struct ScheduleEntry {
    double delay_before = 0;
    uint16_t shaped_len = 0;

    bool operator==(const ScheduleEntry&) const = default;
};

struct ReplayReport {
    std::string trace_name;
    ShaperConfig config;
    double horizon = 0;
    double wire_overhead_per_record = 0;
    std::string rng_name = kRngName;

    double duration = 0;         // replay horizon, seconds
    uint64_t baseline_bytes = 0; // sum of trace payload lengths
    uint64_t shaped_bytes = 0;   // sum of (shaped_len + 7) within the horizon
    double baseline_rate = 0;    // bytes/second
    double shaped_rate = 0;      // bytes/second
    double overhead_rate = 0;    // shaped_rate - baseline_rate

    double wire_estimate_rate = 0;           // + wire_overhead_per_record per record
    double wire_estimate_overhead_rate = 0;  // wire_estimate_rate - baseline_rate

    double max_message_latency = 0;       // enqueue to final-fragment send, seconds
    uint64_t max_queue_bytes_observed = 0;
    uint64_t record_count = 0;  // within the horizon; == cover_count + data_count
    uint64_t cover_count = 0;
    uint64_t data_count = 0;
    double size_ks_statistic = 0;   // shaped_len fit against size_dist
    double delay_ks_statistic = 0;  // delay_before fit against delay_dist
};

struct ReplayRun {
    ReplayReport report;
    std::vector<RecordLogEntry> records;   // all records, including the drain
    size_t records_within_horizon = 0;     // prefix of `records` inside the horizon
    std::vector<ScheduleEntry> schedule;   // within-horizon (delay, size) pairs
};

ReplayRun replay_run(const Trace& trace, const ShaperConfig& config, double horizon,
                     const ReplayOptions& options = {});

ReplayReport replay(const Trace& trace, const ShaperConfig& config, double horizon,
                    const ReplayOptions& options = {});

// Predicted time for close() to drain `total_bytes` of queued data:
// ceil(total / E[X]) * E[D]. Documents the latency side of the
// latency/overhead trade-off.
double expected_drain_seconds(uint64_t total_bytes, const ShaperConfig& config);

// Parameter sweeps over one knob of the base configuration; every point
// replays with the base seed so curves are comparable.
enum class SweepParameter { DelayLow, DelayHigh, SizeLow, SizeHigh, ConstDelay, ConstSize };

const char* to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& name);

// Throws ConfigError when the parameter does not apply to the base config's
// distribution kinds (e.g. d_low with a constant delay).
ShaperConfig apply_sweep_value(const ShaperConfig& base, SweepParameter parameter, double value);

std::vector<std::pair<double, ReplayReport>> sweep(const Trace& trace, const ShaperConfig& base,
                                                   SweepParameter parameter,
                                                   std::span<const double> values, double horizon,
                                                   const ReplayOptions& options = {});

// Privacy evaluation: replays two workloads under one config.
//   - with identical seeds the two shaped (delay, size) schedules must match
//     element for element (activity independence);
//   - with independent seeds (second run reseeded) the two schedules are
//     compared by two-sample KS statistics at significance 0.01;
//   - the rate peak detector runs on trace_a unshaped and on its shaped
//     schedule as the adversary regression.
struct IndependenceReport {
    bool schedules_identical = false;
    size_t schedule_records = 0;  // per-run within-horizon record count (same-seed runs)

    double ks_sizes = 0;
    double ks_delays = 0;
    double ks_critical = 0;
    bool sizes_below_critical = false;
    bool delays_below_critical = false;

    size_t unshaped_flagged_bins = 0;  // peak detector on trace_a's raw events
    size_t shaped_flagged_bins = 0;    // peak detector on trace_a's shaped schedule
};

IndependenceReport independence_test(const Trace& trace_a, const Trace& trace_b,
                                     const ShaperConfig& config, double horizon,
                                     const ReplayOptions& options = {});

}  // namespace ilp
