#pragma once

#include "frids/dataset.hpp"
#include "frids/evolution.hpp"
#include "frids/rule.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace frids {

// Resolution order for equal degrees.
inline constexpr std::array<AttackCategory, 4> kTieOrder = {
    AttackCategory::dos, AttackCategory::probe, AttackCategory::r2l,
    AttackCategory::u2r};

struct ClassifierRule {
    FuzzyRule rule;
    double threshold = 0.5;
    // Convergence record of the training run that produced this rule.
    std::vector<GenerationStats> history;
};

// One evolved rule per attack category (any subset), the firing thresholds,
// and everything needed to reproduce the training-time feature view.
struct RuleSet {
    std::vector<ClassifierRule> rules; // at most one per category
    NormalizationModel model;
    FeatureSpace space;

    const ClassifierRule* rule_for(AttackCategory category) const;
};

void validate_ruleset(const RuleSet& ruleset);

struct DetectionOutcome {
    std::size_t record_index = 0;
    // Effective degree per category; the normal slot stays 0 and the normal
    // evidence lives in normal_degree.
    std::array<double, kCategoryCount> degrees{};
    double abnormal_degree = 0.0;
    double normal_degree = 1.0;
    AttackCategory predicted = AttackCategory::normal;
    bool fired = false;
};

struct MetricsReport {
    // matrix[true][predicted], both indexed by AttackCategory.
    std::array<std::array<std::size_t, kCategoryCount>, kCategoryCount> matrix{};
    std::optional<double> detection_rate;      // empty when no attack records
    std::optional<double> false_positive_rate; // empty when no normal records
    std::array<std::optional<double>, kCategoryCount> recall;
    std::size_t total = 0;
};

// Evaluates every rule on the normalized record; the abnormal degree is the
// max over rules, the normal degree its extended complement, and the
// prediction the strongest firing rule (ties per kTieOrder) or normal.
DetectionOutcome classify(const RuleSet& ruleset, std::span<const double> values,
                          std::size_t record_index = 0);

std::vector<DetectionOutcome> classify_dataset(const RuleSet& ruleset,
                                               const Dataset& dataset);

MetricsReport metrics_from(std::span<const DetectionOutcome> outcomes,
                           std::span<const AttackCategory> true_categories);

MetricsReport evaluate(const RuleSet& ruleset, const Dataset& dataset);

// Rule-file round trip (JSON, documented in the README).
void save_ruleset(const RuleSet& ruleset, const std::string& path);
RuleSet load_ruleset(const std::string& path);
std::string ruleset_to_json(const RuleSet& ruleset);
RuleSet ruleset_from_json(const std::string& text);

} // namespace frids
