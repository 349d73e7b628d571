#include "frids/alerts.hpp"

#include "frids/errors.hpp"
#include "frids/text.hpp"

#include <algorithm>

namespace frids {

std::string_view to_string(AlertPriority p) {
    switch (p) {
    case AlertPriority::high: return "high";
    case AlertPriority::medium: return "medium";
    case AlertPriority::low: return "low";
    }
    return "low";
}

std::vector<Alert> generate_alerts(std::span<const DetectionOutcome> outcomes,
                                   const PriorityBands& bands,
                                   const SuppressionPolicy& suppression) {
    if (bands.medium > bands.high || bands.high < 0 || bands.high > 1 ||
        bands.medium < 0 || bands.medium > 1)
        throw InvariantError("priority bands must satisfy 0 <= medium <= high <= 1");

    std::vector<Alert> alerts;
    for (const auto& outcome : outcomes) {
        if (outcome.predicted == AttackCategory::normal)
            continue;
        Alert alert;
        alert.record_index = outcome.record_index;
        alert.category = outcome.predicted;
        alert.degree = outcome.degrees[static_cast<std::size_t>(outcome.predicted)];
        alert.priority = alert.degree >= bands.high     ? AlertPriority::high
                         : alert.degree >= bands.medium ? AlertPriority::medium
                                                        : AlertPriority::low;
        alerts.push_back(alert);
    }

    for (const auto& [category, cap] : suppression.per_category_cap) {
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < alerts.size(); ++i)
            if (alerts[i].category == category)
                positions.push_back(i);
        if (positions.size() <= cap)
            continue;
        // Keep the `cap` strongest; equal degrees keep the earlier record.
        std::stable_sort(positions.begin(), positions.end(),
                         [&](std::size_t a, std::size_t b) {
                             return alerts[a].degree > alerts[b].degree;
                         });
        for (std::size_t i = cap; i < positions.size(); ++i)
            alerts[positions[i]].suppressed = true;
    }
    return alerts;
}

std::string alerts_to_csv(std::span<const Alert> alerts) {
    std::string out = "index,category,degree,priority,suppressed\n";
    for (const auto& alert : alerts) {
        out += std::to_string(alert.record_index);
        out += ',';
        out += to_string(alert.category);
        out += ',';
        out += format_double(alert.degree);
        out += ',';
        out += to_string(alert.priority);
        out += ',';
        out += alert.suppressed ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace frids
