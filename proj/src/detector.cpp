#include "frids/detector.hpp"

#include "frids/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>

namespace frids {

using nlohmann::json;

const ClassifierRule* RuleSet::rule_for(AttackCategory category) const {
    for (const auto& entry : rules)
        if (entry.rule.target == category)
            return &entry;
    return nullptr;
}

void validate_ruleset(const RuleSet& ruleset) {
    std::array<bool, kCategoryCount> seen{};
    for (const auto& entry : ruleset.rules) {
        if (entry.rule.target == AttackCategory::normal)
            throw InvariantError("ruleset: rule targets the normal class");
        auto& flag = seen[static_cast<std::size_t>(entry.rule.target)];
        if (flag)
            throw InvariantError("ruleset: duplicate rule for category " +
                                 std::string(to_string(entry.rule.target)));
        flag = true;
        if (entry.threshold < 0.0 || entry.threshold > 1.0)
            throw InvariantError("ruleset: threshold out of [0,1] for category " +
                                 std::string(to_string(entry.rule.target)));
        if (entry.rule.conditions.empty())
            throw InvariantError("ruleset: empty rule body for category " +
                                 std::string(to_string(entry.rule.target)));
        // encode re-checks slot and condition bounds against the space
        encode(entry.rule, ruleset.space);
    }
}

DetectionOutcome classify(const RuleSet& ruleset, std::span<const double> values,
                          std::size_t record_index) {
    DetectionOutcome outcome;
    outcome.record_index = record_index;

    std::vector<ExtendedFuzzyValue> rule_values;
    rule_values.reserve(ruleset.rules.size());
    for (const auto& entry : ruleset.rules) {
        const ExtendedFuzzyValue v = truth_degree(entry.rule, values);
        rule_values.push_back(v);
        outcome.degrees[static_cast<std::size_t>(entry.rule.target)] = v.effective();
    }

    ExtendedFuzzyValue abnormal{0.0, 0.0};
    if (!rule_values.empty())
        abnormal = disjunction(rule_values);
    outcome.abnormal_degree = abnormal.effective();
    outcome.normal_degree = complement(abnormal).effective();

    const ClassifierRule* winner = nullptr;
    double winner_degree = -1.0;
    for (AttackCategory category : kTieOrder) {
        const ClassifierRule* entry = ruleset.rule_for(category);
        if (!entry)
            continue;
        const double degree = outcome.degrees[static_cast<std::size_t>(category)];
        if (degree >= entry->threshold && degree > winner_degree) {
            winner = entry;
            winner_degree = degree;
        }
    }
    if (winner) {
        outcome.predicted = winner->rule.target;
        outcome.fired = true;
    }
    return outcome;
}

std::vector<DetectionOutcome> classify_dataset(const RuleSet& ruleset,
                                               const Dataset& dataset) {
    std::vector<DetectionOutcome> outcomes;
    outcomes.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        const NormalizedRecord normalized = normalize(dataset.records[i], ruleset.model);
        outcomes.push_back(classify(ruleset, normalized.values, i));
    }
    return outcomes;
}

MetricsReport metrics_from(std::span<const DetectionOutcome> outcomes,
                           std::span<const AttackCategory> true_categories) {
    if (outcomes.size() != true_categories.size())
        throw InvariantError("metrics_from: outcome/label count mismatch");

    MetricsReport report;
    report.total = outcomes.size();
    std::size_t attacks = 0, attacks_flagged = 0;
    std::size_t normals = 0, normals_flagged = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto truth = static_cast<std::size_t>(true_categories[i]);
        const auto predicted = static_cast<std::size_t>(outcomes[i].predicted);
        ++report.matrix[truth][predicted];
        if (true_categories[i] == AttackCategory::normal) {
            ++normals;
            if (outcomes[i].predicted != AttackCategory::normal)
                ++normals_flagged;
        } else {
            ++attacks;
            if (outcomes[i].predicted != AttackCategory::normal)
                ++attacks_flagged;
        }
    }
    if (attacks > 0)
        report.detection_rate = static_cast<double>(attacks_flagged) /
                                static_cast<double>(attacks);
    if (normals > 0)
        report.false_positive_rate = static_cast<double>(normals_flagged) /
                                     static_cast<double>(normals);
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        std::size_t row_total = 0;
        for (std::size_t p = 0; p < kCategoryCount; ++p)
            row_total += report.matrix[c][p];
        if (row_total > 0)
            report.recall[c] = static_cast<double>(report.matrix[c][c]) /
                               static_cast<double>(row_total);
    }
    return report;
}

MetricsReport evaluate(const RuleSet& ruleset, const Dataset& dataset) {
    if (dataset.empty())
        throw InvariantError("evaluate: empty dataset");
    const std::vector<DetectionOutcome> outcomes = classify_dataset(ruleset, dataset);
    std::vector<AttackCategory> truths;
    truths.reserve(dataset.size());
    for (const auto& record : dataset.records)
        truths.push_back(record.category);
    return metrics_from(outcomes, truths);
}

namespace {

json set_to_json(const FuzzySetDescriptor& set) {
    json j;
    j["name"] = set.name;
    switch (set.shape) {
    case FuzzyShape::triangular:
        j["shape"] = "triangular";
        j["points"] = {set.a, set.b, set.c};
        break;
    case FuzzyShape::trapezoidal:
        j["shape"] = "trapezoidal";
        j["points"] = {set.a, set.b, set.c, set.d};
        break;
    case FuzzyShape::crisp_equality:
        j["shape"] = "crisp";
        j["category"] = set.category;
        break;
    }
    return j;
}

FuzzySetDescriptor set_from_json(const json& j) {
    const std::string name = j.at("name").get<std::string>();
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "triangular") {
        const auto pts = j.at("points").get<std::vector<double>>();
        if (pts.size() != 3)
            throw InvariantError("fuzzy set '" + name + "': triangular needs 3 points");
        return make_triangular(name, pts[0], pts[1], pts[2]);
    }
    if (shape == "trapezoidal") {
        const auto pts = j.at("points").get<std::vector<double>>();
        if (pts.size() != 4)
            throw InvariantError("fuzzy set '" + name + "': trapezoidal needs 4 points");
        return make_trapezoidal(name, pts[0], pts[1], pts[2], pts[3]);
    }
    if (shape == "crisp")
        return make_crisp(name, j.at("category").get<std::size_t>());
    throw InvariantError("fuzzy set '" + name + "': unknown shape '" + shape + "'");
}

} // namespace

std::string ruleset_to_json(const RuleSet& ruleset) {
    json j;
    j["format"] = "frids-rules-v1";

    json ranges = json::array();
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (is_symbolic_feature(i))
            continue;
        ranges.push_back({{"feature", feature_names()[i]},
                          {"min", ruleset.model.ranges[i].min},
                          {"max", ruleset.model.ranges[i].max}});
    }
    json dictionaries;
    for (std::size_t s = 0; s < kSymbolicFeatures.size(); ++s)
        dictionaries[feature_names()[kSymbolicFeatures[s]]] =
            ruleset.model.dictionaries[s];
    j["normalization"] = {{"ranges", ranges}, {"dictionaries", dictionaries}};

    json partitions = json::array();
    for (std::size_t i = 0; i < ruleset.space.size(); ++i) {
        const FeatureDescriptor& feature = ruleset.space.features[i];
        if (feature.symbolic)
            continue;
        json sets = json::array();
        for (const auto& set : feature.sets)
            sets.push_back(set_to_json(set));
        partitions.push_back({{"feature", feature.name}, {"sets", sets}});
    }
    j["partitions"] = partitions;

    json rules = json::array();
    for (const auto& entry : ruleset.rules) {
        json conditions = json::array();
        for (const auto& cond : entry.rule.conditions)
            conditions.push_back(
                {{"feature", ruleset.space.features[cond.feature].name},
                 {"value", cond.set.name}});
        json history = json::array();
        for (const auto& row : entry.history)
            history.push_back({row.generation, row.best, row.mean});
        rules.push_back({{"target", std::string(to_string(entry.rule.target))},
                         {"threshold", entry.threshold},
                         {"conditions", conditions},
                         {"text", rule_to_text(entry.rule, ruleset.space)},
                         {"history", history}});
    }
    j["rules"] = rules;
    return j.dump(2) + "\n";
}

RuleSet ruleset_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("rules file: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "frids-rules-v1")
            throw InputError("rules file: unsupported format tag");

        RuleSet ruleset;
        const json& normalization = j.at("normalization");
        for (const auto& entry : normalization.at("ranges")) {
            const std::string name = entry.at("feature").get<std::string>();
            const auto index = feature_index(name);
            if (!index || is_symbolic_feature(*index))
                throw InvariantError("rules file: bad numeric feature '" + name + "'");
            ruleset.model.ranges[*index].min = entry.at("min").get<double>();
            ruleset.model.ranges[*index].max = entry.at("max").get<double>();
            if (ruleset.model.ranges[*index].min > ruleset.model.ranges[*index].max)
                throw InvariantError("rules file: min > max for feature '" + name + "'");
        }
        const json& dictionaries = normalization.at("dictionaries");
        for (std::size_t s = 0; s < kSymbolicFeatures.size(); ++s)
            ruleset.model.dictionaries[s] =
                dictionaries.at(feature_names()[kSymbolicFeatures[s]])
                    .get<std::vector<std::string>>();

        std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>> overrides;
        for (const auto& entry : j.at("partitions")) {
            const std::string name = entry.at("feature").get<std::string>();
            const auto index = feature_index(name);
            if (!index)
                throw InvariantError("rules file: unknown partition feature '" + name + "'");
            std::vector<FuzzySetDescriptor> sets;
            for (const auto& set : entry.at("sets"))
                sets.push_back(set_from_json(set));
            overrides.emplace_back(*index, std::move(sets));
        }
        ruleset.space = build_feature_space(ruleset.model, overrides);

        for (const auto& entry : j.at("rules")) {
            ClassifierRule rule_entry;
            std::string condition_text = "IF ";
            const auto& conditions = entry.at("conditions");
            for (std::size_t i = 0; i < conditions.size(); ++i) {
                if (i > 0)
                    condition_text += " AND ";
                condition_text += conditions[i].at("feature").get<std::string>() +
                                  " IS " + conditions[i].at("value").get<std::string>();
            }
            condition_text += " THEN " + entry.at("target").get<std::string>();
            rule_entry.rule = rule_from_text(condition_text, ruleset.space);
            rule_entry.threshold = entry.at("threshold").get<double>();
            if (entry.contains("history"))
                for (const auto& row : entry.at("history"))
                    rule_entry.history.push_back({row.at(0).get<std::size_t>(),
                                                  row.at(1).get<double>(),
                                                  row.at(2).get<double>()});
            ruleset.rules.push_back(std::move(rule_entry));
        }
        validate_ruleset(ruleset);
        return ruleset;
    } catch (const json::exception& e) {
        throw InputError(std::string("rules file: missing or mistyped field: ") + e.what());
    }
}

void save_ruleset(const RuleSet& ruleset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write rules file: " + path);
    out << ruleset_to_json(ruleset);
    if (!out)
        throw InputError("I/O error while writing rules file: " + path);
}

RuleSet load_ruleset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open rules file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return ruleset_from_json(text);
}

} // namespace frids
