#pragma once

#include "frids/alerts.hpp"
#include "frids/dataset.hpp"
#include "frids/evolution.hpp"
#include "frids/fuzzy.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace frids {

// Everything a run needs, in one file; no semantics hide in the environment.
struct RunConfig {
    std::string train_dataset;
    std::string test_dataset;

    std::string rules_path = "out/rules.json";
    std::string report_path = "out/report.txt";
    std::string alerts_path = "out/alerts.csv";
    std::string history_stem = "out/history"; // per-class CSVs: <stem>_<class>.csv

    std::uint64_t seed = 1;
    GaParams ga;
    double default_threshold = 0.5;
    std::map<AttackCategory, double> rule_thresholds;

    // Numeric features not named here use the default partition.
    std::vector<FuzzySetDescriptor> default_sets;
    std::map<std::string, std::vector<FuzzySetDescriptor>> partition_overrides;

    PriorityBands priority_bands;
    SuppressionPolicy suppression;

    // Per-category quota applied to the training set before fitting; 0 uses
    // the whole file.
    std::size_t train_quota = 0;

    AttackCategory unknown_label_category = AttackCategory::r2l;
    bool timestamps = false;

    bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError on malformed JSON or violated invariants.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

void validate_config(const RunConfig& config);

// The partition overrides keyed by feature index, ready for
// build_feature_space.
std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>>
resolved_partition_overrides(const RunConfig& config);

double threshold_for(const RunConfig& config, AttackCategory category);

} // namespace frids
