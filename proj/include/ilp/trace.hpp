#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ilp {

// One captured packet of device traffic: when it was sent and how many
// payload bytes it carried. Traces are the replay harness input.
struct TraceEvent {
    double timestamp = 0;     // seconds from trace start, non-decreasing
    uint64_t payload_len = 0; // bytes

    bool operator==(const TraceEvent&) const = default;
};

struct Trace {
    std::string name;  // payload-synthesis tag; defaults to the file stem
    std::vector<TraceEvent> events;

    uint64_t total_bytes() const;
    double last_timestamp() const;
};

// Trace CSV contract: header line "timestamp_s,payload_len", then one event
// per line as decimal seconds and integer bytes. Parse failures report the
// offending line number; decreasing timestamps are a validation error, never
// silently sorted.
Trace load_trace(const std::filesystem::path& path);
std::string trace_to_csv(const Trace& trace);
void save_trace(const Trace& trace, const std::filesystem::path& path);

// Replay synthesizes message bytes deterministically from (trace name, event
// index) so round-trip checks are byte-exact without storing payloads.
std::vector<uint8_t> trace_message_payload(std::string_view trace_name, size_t event_index,
                                           uint64_t len);

// Bundled synthetic workloads. Real captures from the original experiments
// are not available, so these reproduce only the aggregate shape: an idle
// baseline plus user-event bursts, scaled so the 200-second baseline rates
// are exact. Event windows carry the ground truth for peak-detector checks.
struct SyntheticTrace {
    Trace trace;
    double duration = 0;                                  // seconds
    std::vector<std::pair<double, double>> event_windows; // [start, end) seconds
};

// Sleep-monitor-like high-latency workload: 200 s, 28,756 bytes total,
// baseline exactly 143.78 B/s, three 4-second event bursts.
SyntheticTrace make_sense_like_trace();

// Motion-camera-like low-latency workload: 200 s, 69,208 bytes total,
// baseline exactly 346.04 B/s, five 2-second event bursts.
SyntheticTrace make_nest_like_trace();

}  // namespace ilp
