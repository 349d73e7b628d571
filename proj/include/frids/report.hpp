#pragma once

#include "frids/alerts.hpp"
#include "frids/dataset.hpp"
#include "frids/detector.hpp"

#include <span>
#include <string>

namespace frids {

struct ReportInputs {
    DatasetSummary summary;
    const RuleSet* ruleset = nullptr; // optional section
    MetricsReport metrics;
    std::span<const Alert> alerts;
    bool timestamps = false;
};

// The structured text document described in the README: fixed key names,
// deterministic bytes unless timestamps are requested.
std::string render_report(const ReportInputs& inputs);
void write_report(const ReportInputs& inputs, const std::string& path);

// The metrics block as re-read from a report file; numbers round-trip
// exactly because the writer emits shortest-form doubles.
struct ParsedReport {
    DatasetSummary summary;
    MetricsReport metrics;
    std::size_t alert_count = 0;
    std::size_t suppressed_count = 0;
};

ParsedReport read_report(const std::string& path);
ParsedReport parse_report(const std::string& text);

} // namespace frids
