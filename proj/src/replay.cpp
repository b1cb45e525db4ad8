#include "ilp/replay.hpp"

#include <cmath>
#include <string>

#include "ilp/errors.hpp"
#include "ilp/shaper.hpp"
#include "ilp/stats.hpp"
#include "ilp/wire.hpp"

namespace ilp {

namespace {

// Absorbs accumulated floating-point error so a schedule that lands exactly
// on the horizon (constant delays dividing it) is counted inside it.
double horizon_slack(double horizon) { return 1e-9 * (horizon + 1.0); }

}  // namespace

ReplayRun replay_run(const Trace& trace, const ShaperConfig& config, double horizon,
                     const ReplayOptions& options) {
    config.validate();
    if (!(horizon > 0)) {
        raise(ErrorKind::ConfigError, "replay horizon must be > 0");
    }
    if (!trace.events.empty() && trace.events.back().timestamp > horizon) {
        raise(ErrorKind::ConfigError, "replay horizon " + std::to_string(horizon) +
                                          " is before the last trace timestamp " +
                                          std::to_string(trace.events.back().timestamp));
    }

    ReplayRun run;
    Shaper shaper(config, PayloadFill::Seeded);
    Reassembler reassembler;
    const double slack = horizon_slack(horizon);

    std::vector<std::vector<uint8_t>> received;
    std::vector<double> enqueue_times(trace.events.size(), 0.0);
    size_t next_event = 0;
    size_t completed = 0;
    double now = 0;
    double max_latency = 0;
    uint64_t max_queue = 0;
    bool closed = false;

    while (true) {
        while (next_event < trace.events.size() && trace.events[next_event].timestamp <= now) {
            const auto& event = trace.events[next_event];
            shaper.enqueue(trace_message_payload(trace.name, next_event, event.payload_len));
            enqueue_times[next_event] = event.timestamp;
            max_queue = std::max(max_queue, shaper.queued_bytes());
            ++next_event;
        }

        TickOutput out = shaper.tick();
        now += out.delay_before;

        RecordLogEntry entry;
        entry.send_time = now;
        entry.delay_before = out.delay_before;
        entry.shaped_len = out.record.header.shaped_len;
        entry.real_len = out.record.header.real_len;
        entry.cover = out.record.header.record_type == RecordType::Cover;
        entry.stream_end = out.record.header.stream_end;
        run.records.push_back(entry);

        if (auto msg = reassembler.feed(out.record)) {
            // This record completed the message at the queue head.
            max_latency = std::max(max_latency, now - enqueue_times[completed]);
            received.push_back(std::move(*msg));
            ++completed;
        }
        max_queue = std::max(max_queue, shaper.queued_bytes());

        if (out.end_of_stream) break;
        if (!closed && now + slack >= horizon) {
            // Horizon reached: enqueue whatever the trace still holds (all
            // timestamps are <= horizon), stop scheduling new cover, and
            // drain the queue so the reassembly check sees every message.
            while (next_event < trace.events.size()) {
                const auto& event = trace.events[next_event];
                shaper.enqueue(trace_message_payload(trace.name, next_event, event.payload_len));
                enqueue_times[next_event] = event.timestamp;
                max_queue = std::max(max_queue, shaper.queued_bytes());
                ++next_event;
            }
            shaper.begin_close();
            closed = true;
        }
    }
    reassembler.check_complete();

    // Round-trip oracle: the replay must hand back exactly what was enqueued.
    if (received.size() != trace.events.size()) {
        raise(ErrorKind::InternalError,
              "round-trip oracle failed: " + std::to_string(received.size()) + " messages out, " +
                  std::to_string(trace.events.size()) + " in");
    }
    for (size_t i = 0; i < received.size(); ++i) {
        if (received[i] !=
            trace_message_payload(trace.name, i, trace.events[i].payload_len)) {
            raise(ErrorKind::InternalError,
                  "round-trip oracle failed: message " + std::to_string(i) + " corrupted");
        }
    }

    ReplayReport& report = run.report;
    report.trace_name = trace.name;
    report.config = config;
    report.horizon = horizon;
    report.wire_overhead_per_record = options.wire_overhead_per_record;
    report.duration = horizon;
    report.baseline_bytes = trace.total_bytes();
    report.max_message_latency = max_latency;
    report.max_queue_bytes_observed = max_queue;

    std::vector<double> sizes;
    std::vector<double> delays;
    for (const auto& record : run.records) {
        if (record.send_time > horizon + slack) break;
        ++run.records_within_horizon;
        ++report.record_count;
        if (record.cover) {
            ++report.cover_count;
        } else {
            ++report.data_count;
        }
        report.shaped_bytes += record.shaped_len + kHeaderSize;
        run.schedule.push_back(ScheduleEntry{record.delay_before, record.shaped_len});
        sizes.push_back(record.shaped_len);
        delays.push_back(record.delay_before);
    }

    report.baseline_rate = static_cast<double>(report.baseline_bytes) / horizon;
    report.shaped_rate = static_cast<double>(report.shaped_bytes) / horizon;
    report.overhead_rate = report.shaped_rate - report.baseline_rate;
    report.wire_estimate_rate =
        (static_cast<double>(report.shaped_bytes) +
         options.wire_overhead_per_record * static_cast<double>(report.record_count)) /
        horizon;
    report.wire_estimate_overhead_rate = report.wire_estimate_rate - report.baseline_rate;
    if (!sizes.empty()) {
        report.size_ks_statistic = ks_statistic_for_spec(config.size_dist, std::move(sizes));
        report.delay_ks_statistic = ks_statistic_for_spec(config.delay_dist, std::move(delays));
    }
    return run;
}

ReplayReport replay(const Trace& trace, const ShaperConfig& config, double horizon,
                    const ReplayOptions& options) {
    return replay_run(trace, config, horizon, options).report;
}

double expected_drain_seconds(uint64_t total_bytes, const ShaperConfig& config) {
    config.validate();
    const double mean_size = expected_value(config.size_dist);
    const double records = std::ceil(static_cast<double>(total_bytes) / mean_size);
    return records * expected_value(config.delay_dist);
}

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::DelayLow: return "d_low";
        case SweepParameter::DelayHigh: return "d_high";
        case SweepParameter::SizeLow: return "s_low";
        case SweepParameter::SizeHigh: return "s_high";
        case SweepParameter::ConstDelay: return "const_d";
        case SweepParameter::ConstSize: return "const_x";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "d_low") return SweepParameter::DelayLow;
    if (name == "d_high") return SweepParameter::DelayHigh;
    if (name == "s_low") return SweepParameter::SizeLow;
    if (name == "s_high") return SweepParameter::SizeHigh;
    if (name == "const_d") return SweepParameter::ConstDelay;
    if (name == "const_x") return SweepParameter::ConstSize;
    raise(ErrorKind::ConfigError,
          "unknown sweep parameter \"" + name +
              "\" (expected d_low, d_high, s_low, s_high, const_d or const_x)");
}

ShaperConfig apply_sweep_value(const ShaperConfig& base, SweepParameter parameter, double value) {
    ShaperConfig cfg = base;
    auto require_kind = [&](const DistributionSpec& spec, DistKind kind, const char* need) {
        if (spec.kind != kind) {
            raise(ErrorKind::ConfigError, std::string(to_string(parameter)) + " needs a " + need +
                                              " distribution, config has \"" + to_string(spec) +
                                              "\"");
        }
    };
    switch (parameter) {
        case SweepParameter::DelayLow:
            require_kind(cfg.delay_dist, DistKind::Uniform, "uniform delay");
            cfg.delay_dist.low = value;
            break;
        case SweepParameter::DelayHigh:
            require_kind(cfg.delay_dist, DistKind::Uniform, "uniform delay");
            cfg.delay_dist.high = value;
            break;
        case SweepParameter::SizeLow:
            if (cfg.size_dist.kind == DistKind::Constant) {
                raise(ErrorKind::ConfigError, "s_low needs a bounded size distribution");
            }
            cfg.size_dist.low = value;
            break;
        case SweepParameter::SizeHigh:
            if (cfg.size_dist.kind == DistKind::Constant) {
                raise(ErrorKind::ConfigError, "s_high needs a bounded size distribution");
            }
            cfg.size_dist.high = value;
            break;
        case SweepParameter::ConstDelay:
            require_kind(cfg.delay_dist, DistKind::Constant, "constant delay");
            cfg.delay_dist.value = value;
            break;
        case SweepParameter::ConstSize:
            require_kind(cfg.size_dist, DistKind::Constant, "constant size");
            cfg.size_dist.value = value;
            break;
    }
    cfg.validate();
    return cfg;
}

std::vector<std::pair<double, ReplayReport>> sweep(const Trace& trace, const ShaperConfig& base,
                                                   SweepParameter parameter,
                                                   std::span<const double> values, double horizon,
                                                   const ReplayOptions& options) {
    if (values.empty()) {
        raise(ErrorKind::ConfigError, "sweep needs at least one value");
    }
    std::vector<std::pair<double, ReplayReport>> out;
    out.reserve(values.size());
    for (double value : values) {
        const ShaperConfig cfg = apply_sweep_value(base, parameter, value);
        out.emplace_back(value, replay(trace, cfg, horizon, options));
    }
    return out;
}

IndependenceReport independence_test(const Trace& trace_a, const Trace& trace_b,
                                     const ShaperConfig& config, double horizon,
                                     const ReplayOptions& options) {
    IndependenceReport report;

    // Same seed: the schedule may not depend on the workload at all.
    ReplayRun run_a = replay_run(trace_a, config, horizon, options);
    ReplayRun run_b = replay_run(trace_b, config, horizon, options);
    report.schedules_identical = run_a.schedule == run_b.schedule;
    report.schedule_records = run_a.schedule.size();

    // Independent seeds: the two schedules must look like two draws from the
    // same distributions. The second run reseeds with rng_seed + 1.
    ShaperConfig reseeded = config;
    reseeded.rng_seed = config.rng_seed + 1;
    ReplayRun run_b2 = replay_run(trace_b, reseeded, horizon, options);

    std::vector<double> sizes_a, sizes_b, delays_a, delays_b;
    for (const auto& e : run_a.schedule) {
        sizes_a.push_back(e.shaped_len);
        delays_a.push_back(e.delay_before);
    }
    for (const auto& e : run_b2.schedule) {
        sizes_b.push_back(e.shaped_len);
        delays_b.push_back(e.delay_before);
    }
    report.ks_sizes = ks_two_sample(sizes_a, sizes_b);
    report.ks_delays = ks_two_sample(delays_a, delays_b);
    report.ks_critical = ks_critical_two_sample(sizes_a.size(), sizes_b.size());
    report.sizes_below_critical = report.ks_sizes < report.ks_critical;
    report.delays_below_critical = report.ks_delays < report.ks_critical;

    // Adversary regression: rate peaks visible in the raw workload must not
    // survive shaping.
    std::vector<std::pair<double, double>> raw;
    raw.reserve(trace_a.events.size());
    for (const auto& e : trace_a.events) {
        raw.emplace_back(e.timestamp, static_cast<double>(e.payload_len));
    }
    std::vector<std::pair<double, double>> shaped;
    shaped.reserve(run_a.records_within_horizon);
    for (size_t i = 0; i < run_a.records_within_horizon; ++i) {
        const auto& r = run_a.records[i];
        shaped.emplace_back(r.send_time, static_cast<double>(r.shaped_len + kHeaderSize));
    }
    report.unshaped_flagged_bins = detect_rate_peaks(raw, horizon).flagged_bins.size();
    report.shaped_flagged_bins = detect_rate_peaks(shaped, horizon).flagged_bins.size();
    return report;
}

}  // namespace ilp
