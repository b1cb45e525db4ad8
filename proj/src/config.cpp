#include "ilp/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "ilp/errors.hpp"

namespace ilp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

double parse_double(const std::string& text, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
        raise(ErrorKind::ParseError, where + ": bad number \"" + text + "\"");
    }
    return v;
}

uint64_t parse_u64(const std::string& text, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE ||
        text.find('-') != std::string::npos) {
        raise(ErrorKind::ParseError, where + ": bad unsigned integer \"" + text + "\"");
    }
    return v;
}

}  // namespace

DistributionSpec parse_dist_spec(const std::string& text, Units units) {
    const auto words = split_words(text);
    const std::string where = "distribution \"" + text + "\"";
    if (words.empty()) {
        raise(ErrorKind::ParseError, where + ": empty specification");
    }
    const std::string& kind = words[0];
    DistributionSpec spec;
    if (kind == "constant") {
        if (words.size() != 2) raise(ErrorKind::ParseError, where + ": expected constant <value>");
        spec = DistributionSpec::constant(parse_double(words[1], where), units);
    } else if (kind == "uniform") {
        if (words.size() != 3) {
            raise(ErrorKind::ParseError, where + ": expected uniform <low> <high>");
        }
        spec = DistributionSpec::uniform(parse_double(words[1], where),
                                         parse_double(words[2], where), units);
    } else if (kind == "truncated_normal" || kind == "normal") {
        if (words.size() != 5) {
            raise(ErrorKind::ParseError,
                  where + ": expected truncated_normal <mean> <stddev> <low> <high>");
        }
        spec = DistributionSpec::truncated_normal(
            parse_double(words[1], where), parse_double(words[2], where),
            parse_double(words[3], where), parse_double(words[4], where), units);
    } else {
        raise(ErrorKind::ParseError,
              where + ": unknown kind \"" + kind +
                  "\" (expected constant, uniform or truncated_normal)");
    }
    spec.validate();
    return spec;
}

FileConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        raise(ErrorKind::IoError, "cannot open config file " + path.string());
    }
    FileConfig cfg;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            raise(ErrorKind::ParseError, where + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            raise(ErrorKind::ParseError, where + ": empty value for \"" + key + "\"");
        }

        if (key == "delay_dist") {
            cfg.delay_dist = parse_dist_spec(value, Units::Seconds);
        } else if (key == "size_dist") {
            cfg.size_dist = parse_dist_spec(value, Units::Bytes);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, where);
        } else if (key == "max_queue_bytes") {
            const uint64_t v = parse_u64(value, where);
            if (v > 0) cfg.max_queue_bytes = v;
        } else if (key == "wire_overhead_per_record") {
            cfg.wire_overhead_per_record = parse_double(value, where);
        } else {
            raise(ErrorKind::ParseError, where + ": unknown key \"" + key + "\"");
        }
    }
    return cfg;
}

}  // namespace ilp
