#include "ilp/report_io.hpp"

#include <cinttypes>
#include <cstdio>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string num(uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
    return buf;
}

void append_common_fields(std::string& row, const ReplayReport& r) {
    row += r.trace_name;
    row += ',' + num(r.horizon);
    row += ',' + num(r.config.rng_seed);
    row += ',';
    row += r.rng_name;
    row += ',' + to_string(r.config.delay_dist);
    row += ',' + to_string(r.config.size_dist);
    row += ',' + num(r.wire_overhead_per_record);
    row += ',' + num(r.duration);
    row += ',' + num(r.baseline_bytes);
    row += ',' + num(r.shaped_bytes);
    row += ',' + num(r.baseline_rate);
    row += ',' + num(r.shaped_rate);
    row += ',' + num(r.overhead_rate);
    row += ',' + num(r.wire_estimate_rate);
    row += ',' + num(r.wire_estimate_overhead_rate);
    row += ',' + num(r.max_message_latency);
    row += ',' + num(r.max_queue_bytes_observed);
    row += ',' + num(r.record_count);
    row += ',' + num(r.cover_count);
    row += ',' + num(r.data_count);
    row += ',' + num(r.size_ks_statistic);
    row += ',' + num(r.delay_ks_statistic);
}

constexpr const char* kCommonColumns =
    "trace,horizon_s,seed,rng,delay_dist,size_dist,wire_overhead_per_record,"
    "duration_s,baseline_bytes,shaped_bytes,baseline_rate_bytes_per_s,"
    "shaped_rate_bytes_per_s,overhead_rate_bytes_per_s,"
    "wire_estimate_rate_bytes_per_s,wire_estimate_overhead_rate_bytes_per_s,"
    "max_message_latency_s,max_queue_bytes_observed,record_count,cover_count,"
    "data_count,size_ks_statistic,delay_ks_statistic";

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
    if (name == "table") return ReportFormat::Table;
    if (name == "csv") return ReportFormat::Csv;
    raise(ErrorKind::ConfigError, "unknown report format \"" + name + "\" (table or csv)");
}

std::string replay_report_csv_header() { return std::string(kCommonColumns) + "\n"; }

std::string replay_report_csv_row(const ReplayReport& report) {
    std::string row;
    append_common_fields(row, report);
    row += '\n';
    return row;
}

std::string replay_report_table(const ReplayReport& report) {
    const ReplayReport& r = report;
    std::string out;
    auto line = [&out](const char* key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    line("trace", r.trace_name);
    line("horizon_s", num(r.horizon));
    line("seed", num(r.config.rng_seed));
    line("rng", r.rng_name);
    line("delay_dist", to_string(r.config.delay_dist));
    line("size_dist", to_string(r.config.size_dist));
    line("wire_overhead_per_record", num(r.wire_overhead_per_record));
    line("duration_s", num(r.duration));
    line("baseline_bytes", num(r.baseline_bytes));
    line("shaped_bytes", num(r.shaped_bytes));
    line("baseline_rate_bytes_per_s", num(r.baseline_rate));
    line("shaped_rate_bytes_per_s", num(r.shaped_rate));
    line("overhead_rate_bytes_per_s", num(r.overhead_rate));
    line("wire_estimate_rate_bytes_per_s", num(r.wire_estimate_rate));
    line("wire_estimate_overhead_rate_bytes_per_s", num(r.wire_estimate_overhead_rate));
    line("max_message_latency_s", num(r.max_message_latency));
    line("max_queue_bytes_observed", num(r.max_queue_bytes_observed));
    line("record_count", num(r.record_count));
    line("cover_count", num(r.cover_count));
    line("data_count", num(r.data_count));
    line("size_ks_statistic", num(r.size_ks_statistic));
    line("delay_ks_statistic", num(r.delay_ks_statistic));
    return out;
}

std::string sweep_csv_header() {
    return "param,value," + std::string(kCommonColumns) + "\n";
}

std::string sweep_csv_row(SweepParameter parameter, double value, const ReplayReport& report) {
    std::string row = std::string(to_string(parameter)) + ',' + num(value) + ',';
    append_common_fields(row, report);
    row += '\n';
    return row;
}

std::string sweep_table(SweepParameter parameter,
                        const std::vector<std::pair<double, ReplayReport>>& rows) {
    std::string out = std::string("sweep of ") + to_string(parameter) + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%12s %22s %22s %14s\n", "value", "shaped_rate_B/s",
                  "overhead_rate_B/s", "records");
    out += buf;
    for (const auto& [value, r] : rows) {
        std::snprintf(buf, sizeof(buf), "%12s %22s %22s %14s\n", num(value).c_str(),
                      num(r.shaped_rate).c_str(), num(r.overhead_rate).c_str(),
                      num(r.record_count).c_str());
        out += buf;
    }
    return out;
}

std::string independence_report_text(const IndependenceReport& r) {
    std::string out;
    auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    line("same-seed schedule check: " +
         std::string(r.schedules_identical ? "identical" : "MISMATCH") + " over " +
         num(static_cast<uint64_t>(r.schedule_records)) + " records");
    line("two-sample ks (independent seeds): sizes " + num(r.ks_sizes) + ", delays " +
         num(r.ks_delays) + ", critical " + num(r.ks_critical));
    line("sizes independent: " + std::string(r.sizes_below_critical ? "yes" : "no"));
    line("delays independent: " + std::string(r.delays_below_critical ? "yes" : "no"));
    line("peak detector: unshaped trace flags " +
         num(static_cast<uint64_t>(r.unshaped_flagged_bins)) + " bins, shaped schedule flags " +
         num(static_cast<uint64_t>(r.shaped_flagged_bins)) + " bins");
    return out;
}

}  // namespace ilp
