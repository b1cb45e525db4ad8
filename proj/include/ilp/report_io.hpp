#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ilp/replay.hpp"

namespace ilp {

// Fixed CSV schemas for external plotting. Numeric formatting is
// deterministic, so a fixed seed yields byte-identical files.

enum class ReportFormat { Table, Csv };

ReportFormat parse_report_format(const std::string& name);

std::string replay_report_csv_header();
std::string replay_report_csv_row(const ReplayReport& report);
std::string replay_report_table(const ReplayReport& report);

std::string sweep_csv_header();
std::string sweep_csv_row(SweepParameter parameter, double value, const ReplayReport& report);
std::string sweep_table(SweepParameter parameter,
                        const std::vector<std::pair<double, ReplayReport>>& rows);

std::string independence_report_text(const IndependenceReport& report);

}  // namespace ilp
