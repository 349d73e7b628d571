#pragma once

#include "frids/dataset.hpp"
#include "frids/detector.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace frids {

enum class AlertPriority { high, medium, low };

std::string_view to_string(AlertPriority p);

struct Alert {
    std::size_t record_index = 0;
    AttackCategory category = AttackCategory::dos;
    double degree = 0.0;
    AlertPriority priority = AlertPriority::low;
    bool suppressed = false;
};

// Degree bands for priorities; high >= medium and both in [0,1].
struct PriorityBands {
    double high = 0.9;
    double medium = 0.7;

    bool operator==(const PriorityBands&) const = default;
};

// Per-category alert caps; categories without an entry are uncapped.
// Suppressed alerts are kept and marked, never dropped.
struct SuppressionPolicy {
    std::map<AttackCategory, std::size_t> per_category_cap;

    bool operator==(const SuppressionPolicy&) const = default;
};

// One alert per abnormal-predicted outcome, in record order. Suppression
// keeps the highest-degree alerts per category (ties to the earlier record).
std::vector<Alert> generate_alerts(std::span<const DetectionOutcome> outcomes,
                                   const PriorityBands& bands,
                                   const SuppressionPolicy& suppression);

// Comma-separated export: index,category,degree,priority,suppressed.
std::string alerts_to_csv(std::span<const Alert> alerts);

} // namespace frids
