#include "frids/config.hpp"

#include "frids/errors.hpp"
#include "frids/rule.hpp"

#include <json.hpp>

#include <fstream>

namespace frids {

using nlohmann::json;

namespace {

json set_to_json(const FuzzySetDescriptor& set) {
    json j;
    j["name"] = set.name;
    if (set.shape == FuzzyShape::triangular) {
        j["shape"] = "triangular";
        j["points"] = {set.a, set.b, set.c};
    } else if (set.shape == FuzzyShape::trapezoidal) {
        j["shape"] = "trapezoidal";
        j["points"] = {set.a, set.b, set.c, set.d};
    } else {
        j["shape"] = "crisp";
        j["category"] = set.category;
    }
    return j;
}

FuzzySetDescriptor set_from_json(const json& j) {
    const std::string name = j.at("name").get<std::string>();
    const std::string shape = j.at("shape").get<std::string>();
    const auto points = j.value("points", std::vector<double>{});
    if (shape == "triangular") {
        if (points.size() != 3)
            throw ConfigError("partition set '" + name + "': triangular needs 3 points");
        return make_triangular(name, points[0], points[1], points[2]);
    }
    if (shape == "trapezoidal") {
        if (points.size() != 4)
            throw ConfigError("partition set '" + name + "': trapezoidal needs 4 points");
        return make_trapezoidal(name, points[0], points[1], points[2], points[3]);
    }
    throw ConfigError("partition set '" + name + "': unknown shape '" + shape + "'");
}

AttackCategory parse_category(const std::string& name, const char* where) {
    const auto category = category_from_string(name);
    if (!category)
        throw ConfigError(std::string(where) + ": unknown category '" + name + "'");
    return *category;
}

} // namespace

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    RunConfig config;
    try {
        if (j.contains("datasets")) {
            const json& datasets = j.at("datasets");
            config.train_dataset = datasets.value("train", "");
            config.test_dataset = datasets.value("test", "");
        }

        if (j.contains("outputs")) {
            const json& outputs = j.at("outputs");
            config.rules_path = outputs.value("rules", config.rules_path);
            config.report_path = outputs.value("report", config.report_path);
            config.alerts_path = outputs.value("alerts", config.alerts_path);
            config.history_stem = outputs.value("history", config.history_stem);
        }

        config.seed = j.value("seed", std::uint64_t{1});
        if (j.contains("ga")) {
            const json& ga = j.at("ga");
            config.ga.population_size = ga.value("population_size", config.ga.population_size);
            config.ga.generations = ga.value("generations", config.ga.generations);
            config.ga.crossover_rate = ga.value("crossover_rate", config.ga.crossover_rate);
            config.ga.mutation_rate = ga.value("mutation_rate", config.ga.mutation_rate);
            config.ga.elite_count = ga.value("elite_count", config.ga.elite_count);
            config.ga.eval_subsample = ga.value("eval_subsample", config.ga.eval_subsample);
        }
        if (j.contains("weights")) {
            const json& weights = j.at("weights");
            config.ga.weights.sensitivity =
                weights.value("sensitivity", config.ga.weights.sensitivity);
            config.ga.weights.specificity =
                weights.value("specificity", config.ga.weights.specificity);
            config.ga.weights.length = weights.value("length", config.ga.weights.length);
        }

        if (j.contains("thresholds")) {
            const json& thresholds = j.at("thresholds");
            config.default_threshold = thresholds.value("default", config.default_threshold);
            if (thresholds.contains("per_rule"))
                for (const auto& [key, value] : thresholds.at("per_rule").items())
                    config.rule_thresholds[parse_category(key, "thresholds.per_rule")] =
                        value.get<double>();
        }
        config.ga.threshold = config.default_threshold;

        if (j.contains("partitions")) {
            const json& partitions = j.at("partitions");
            if (partitions.contains("default")) {
                config.default_sets.clear();
                for (const auto& set : partitions.at("default"))
                    config.default_sets.push_back(set_from_json(set));
            }
            if (partitions.contains("per_feature"))
                for (const auto& [name, sets] : partitions.at("per_feature").items()) {
                    std::vector<FuzzySetDescriptor> list;
                    for (const auto& set : sets)
                        list.push_back(set_from_json(set));
                    config.partition_overrides[name] = std::move(list);
                }
        }

        if (j.contains("priority_bands")) {
            config.priority_bands.high = j.at("priority_bands").value("high", 0.9);
            config.priority_bands.medium = j.at("priority_bands").value("medium", 0.7);
        }
        if (j.contains("suppression"))
            for (const auto& [key, value] : j.at("suppression").items())
                config.suppression.per_category_cap[parse_category(key, "suppression")] =
                    value.get<std::size_t>();

        config.train_quota = j.value("train_quota", std::size_t{0});
        if (j.contains("unknown_label_category"))
            config.unknown_label_category = parse_category(
                j.at("unknown_label_category").get<std::string>(), "unknown_label_category");
        config.timestamps = j.value("timestamps", false);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: missing or mistyped field: ") + e.what());
    }

    if (config.default_sets.empty())
        config.default_sets = default_partition();
    validate_config(config);
    return config;
}

std::string config_to_json(const RunConfig& config) {
    json j;
    j["datasets"] = {{"train", config.train_dataset}, {"test", config.test_dataset}};
    j["outputs"] = {{"rules", config.rules_path},
                    {"report", config.report_path},
                    {"alerts", config.alerts_path},
                    {"history", config.history_stem}};
    j["seed"] = config.seed;
    j["ga"] = {{"population_size", config.ga.population_size},
               {"generations", config.ga.generations},
               {"crossover_rate", config.ga.crossover_rate},
               {"mutation_rate", config.ga.mutation_rate},
               {"elite_count", config.ga.elite_count},
               {"eval_subsample", config.ga.eval_subsample}};
    j["weights"] = {{"sensitivity", config.ga.weights.sensitivity},
                    {"specificity", config.ga.weights.specificity},
                    {"length", config.ga.weights.length}};
    json per_rule;
    for (const auto& [category, threshold] : config.rule_thresholds)
        per_rule[std::string(to_string(category))] = threshold;
    j["thresholds"] = {{"default", config.default_threshold}, {"per_rule", per_rule}};

    json default_sets = json::array();
    for (const auto& set : config.default_sets)
        default_sets.push_back(set_to_json(set));
    json per_feature;
    for (const auto& [name, sets] : config.partition_overrides) {
        json list = json::array();
        for (const auto& set : sets)
            list.push_back(set_to_json(set));
        per_feature[name] = std::move(list);
    }
    j["partitions"] = {{"default", default_sets}, {"per_feature", per_feature}};

    j["priority_bands"] = {{"high", config.priority_bands.high},
                           {"medium", config.priority_bands.medium}};
    json suppression;
    for (const auto& [category, cap] : config.suppression.per_category_cap)
        suppression[std::string(to_string(category))] = cap;
    j["suppression"] = suppression;
    j["train_quota"] = config.train_quota;
    j["unknown_label_category"] = std::string(to_string(config.unknown_label_category));
    j["timestamps"] = config.timestamps;
    return j.dump(2) + "\n";
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return config_from_json(text);
}

void validate_config(const RunConfig& config) {
    try {
        validate_ga_params(config.ga);
        for (const auto& set : config.default_sets)
            validate_set(set);
        for (const auto& [name, sets] : config.partition_overrides)
            for (const auto& set : sets)
                validate_set(set);
    } catch (const InvariantError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    for (const auto& [name, sets] : config.partition_overrides) {
        const auto index = feature_index(name);
        if (!index)
            throw ConfigError("config: partitions.per_feature names unknown feature '" +
                              name + "'");
        if (is_symbolic_feature(*index))
            throw ConfigError("config: feature '" + name +
                              "' is symbolic and takes no partition");
        if (sets.empty())
            throw ConfigError("config: feature '" + name + "' has an empty partition");
    }
    if (config.default_sets.empty())
        throw ConfigError("config: default partition is empty");

    if (config.default_threshold < 0 || config.default_threshold > 1)
        throw ConfigError("config: thresholds.default out of [0,1]");
    for (const auto& [category, threshold] : config.rule_thresholds)
        if (threshold < 0 || threshold > 1)
            throw ConfigError("config: threshold for " +
                              std::string(to_string(category)) + " out of [0,1]");
    if (config.priority_bands.high < 0 || config.priority_bands.high > 1 ||
        config.priority_bands.medium < 0 || config.priority_bands.medium > 1 ||
        config.priority_bands.medium > config.priority_bands.high)
        throw ConfigError("config: priority bands must satisfy 0 <= medium <= high <= 1");
}

std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>>
resolved_partition_overrides(const RunConfig& config) {
    std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>> overrides;
    for (const auto& [name, sets] : config.partition_overrides)
        overrides.emplace_back(*feature_index(name), sets);
    return overrides;
}

double threshold_for(const RunConfig& config, AttackCategory category) {
    auto it = config.rule_thresholds.find(category);
    return it == config.rule_thresholds.end() ? config.default_threshold : it->second;
}

} // namespace frids
