#pragma once

#include "frids/config.hpp"
#include "frids/detector.hpp"
#include "frids/report.hpp"

#include <iosfwd>
#include <string>

namespace frids {

// Pipeline entry points behind the CLI subcommands. Each takes the fully
// merged RunConfig (flag overrides already applied) and throws
// ConfigError / InputError / InvariantError for the CLI to map to exit
// codes.

void run_summarize(const RunConfig& config, const std::string& dataset_path,
                   std::ostream& out);

struct TrainOutput {
    RuleSet ruleset;
    std::vector<std::string> skipped_categories;
};

// Evolves one rule per attack class present in the training data, writes
// the rules file and the per-class history CSVs.
TrainOutput run_train(const RunConfig& config, std::ostream& log);

struct DetectOutput {
    MetricsReport metrics;
    std::size_t alert_count = 0;
};

// Classifies the test dataset with a saved ruleset; writes the alert export
// and the report. All inputs are loaded before any output is opened.
DetectOutput run_detect(const RunConfig& config, std::ostream& log);

void run_evaluate(const RunConfig& config, std::ostream& out);

void run_fuzzify_demo(const RunConfig& config, const std::string& dataset_path,
                      std::size_t record_index, std::ostream& out);

} // namespace frids
