#include "ilp/trace.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ilp/errors.hpp"
#include "ilp/random.hpp"

namespace ilp {

namespace {

constexpr std::string_view kCsvHeader = "timestamp_s,payload_len";

double round_to_microseconds(double t) { return std::round(t * 1e6) / 1e6; }

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

uint64_t Trace::total_bytes() const {
    uint64_t total = 0;
    for (const auto& e : events) total += e.payload_len;
    return total;
}

double Trace::last_timestamp() const {
    return events.empty() ? 0.0 : events.back().timestamp;
}

Trace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorKind::IoError, "cannot open trace file " + path.string());
    }
    Trace trace;
    trace.name = path.stem().string();

    std::string line;
    size_t line_no = 0;
    if (!std::getline(in, line)) {
        raise(ErrorKind::ParseError, path.string() + ":1: empty file, expected CSV header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) {
        raise(ErrorKind::ParseError,
              path.string() + ":1: expected header \"" + std::string(kCsvHeader) + "\"");
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);

        const size_t comma = line.find(',');
        if (comma == std::string::npos) {
            raise(ErrorKind::ParseError, where + ": expected \"timestamp,bytes\"");
        }
        errno = 0;
        char* end = nullptr;
        const std::string ts_text = line.substr(0, comma);
        const double ts = std::strtod(ts_text.c_str(), &end);
        if (end == ts_text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(ts)) {
            raise(ErrorKind::ParseError, where + ": bad timestamp \"" + ts_text + "\"");
        }
        const std::string len_text = line.substr(comma + 1);
        errno = 0;
        const unsigned long long len = std::strtoull(len_text.c_str(), &end, 10);
        if (end == len_text.c_str() || *end != '\0' || errno == ERANGE ||
            len_text.find('-') != std::string::npos) {
            raise(ErrorKind::ParseError, where + ": bad payload length \"" + len_text + "\"");
        }

        if (ts < 0) {
            raise(ErrorKind::ValidationError, where + ": negative timestamp");
        }
        if (!trace.events.empty() && ts < trace.events.back().timestamp) {
            raise(ErrorKind::ValidationError, where + ": decreasing timestamp");
        }
        trace.events.push_back(TraceEvent{ts, len});
    }
    return trace;
}

std::string trace_to_csv(const Trace& trace) {
    std::string out(kCsvHeader);
    out.push_back('\n');
    char buf[64];
    for (const auto& e : trace.events) {
        std::snprintf(buf, sizeof(buf), "%.6f,%llu\n", e.timestamp,
                      static_cast<unsigned long long>(e.payload_len));
        out += buf;
    }
    return out;
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorKind::IoError, "cannot write trace file " + path.string());
    }
    out << trace_to_csv(trace);
}

std::vector<uint8_t> trace_message_payload(std::string_view trace_name, size_t event_index,
                                           uint64_t len) {
    uint64_t state = fnv1a64(trace_name) ^ (0x9E3779B97F4A7C15ull * (event_index + 1));
    Rng rng(splitmix64(state));
    std::vector<uint8_t> payload(len);
    rng.fill(payload);
    return payload;
}

namespace {

void add_burst(std::vector<TraceEvent>& events, double start, double span, size_t count,
               uint64_t size_each, uint64_t size_last) {
    for (size_t i = 0; i < count; ++i) {
        const double t = round_to_microseconds(start + span * static_cast<double>(i) /
                                                           static_cast<double>(count));
        events.push_back(TraceEvent{t, i + 1 == count ? size_last : size_each});
    }
}

}  // namespace

SyntheticTrace make_sense_like_trace() {
    SyntheticTrace s;
    s.trace.name = "sense_like";
    s.duration = 200.0;
    s.event_windows = {{30.0, 34.0}, {90.0, 94.0}, {150.0, 154.0}};

    // Idle chatter: 100 packets x 40 B = 4,000 B.
    for (int i = 0; i < 100; ++i) {
        s.trace.events.push_back(TraceEvent{1.0 + 2.0 * i, 40});
    }
    // Events: 30 packets over 4 s, 29 x 275 B + 277 B = 8,252 B each.
    for (const auto& w : s.event_windows) {
        add_burst(s.trace.events, w.first, w.second - w.first, 30, 275, 277);
    }
    std::stable_sort(s.trace.events.begin(), s.trace.events.end(),
                     [](const TraceEvent& a, const TraceEvent& b) { return a.timestamp < b.timestamp; });
    // 4,000 + 3 x 8,252 = 28,756 B over 200 s = 143.78 B/s.
    return s;
}

SyntheticTrace make_nest_like_trace() {
    SyntheticTrace s;
    s.trace.name = "nest_like";
    s.duration = 200.0;
    s.event_windows = {{20.0, 22.0}, {60.0, 62.0}, {100.0, 102.0}, {140.0, 142.0}, {180.0, 182.0}};

    // Idle keepalives: 200 packets x 80 B = 16,000 B.
    for (int i = 0; i < 200; ++i) {
        s.trace.events.push_back(TraceEvent{0.5 + 1.0 * i, 80});
    }
    // Motion events: 26 packets x 400 B over 2 s = 10,400 B each.
    for (const auto& w : s.event_windows) {
        add_burst(s.trace.events, w.first, w.second - w.first, 26, 400, 400);
    }
    // Alignment packet inside the first event window brings the total to
    // exactly 69,208 B over 200 s = 346.04 B/s.
    s.trace.events.push_back(TraceEvent{20.95, 1208});
    std::stable_sort(s.trace.events.begin(), s.trace.events.end(),
                     [](const TraceEvent& a, const TraceEvent& b) { return a.timestamp < b.timestamp; });
    return s;
}

}  // namespace ilp
