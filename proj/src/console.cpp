#include "frids/console.hpp"

#include "frids/errors.hpp"
#include "frids/text.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

namespace frids {

namespace {

// Stream tags for derive_seed; keeping them distinct keeps the per-class GA
// runs independent of which other classes are present.
constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kClassStreamBase = 1;

const std::array<AttackCategory, 4> kAttackOrder = {
    AttackCategory::probe, AttackCategory::dos, AttackCategory::u2r,
    AttackCategory::r2l};

Dataset load_required_dataset(const std::string& path, const RunConfig& config,
                              const char* role) {
    if (path.empty())
        throw ConfigError(std::string("no ") + role + " dataset configured");
    return load_dataset(path, config.unknown_label_category);
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write file: " + path);
    out << text;
    if (!out)
        throw InputError("I/O error while writing: " + path);
}

} // namespace

void run_summarize(const RunConfig& config, const std::string& dataset_path,
                   std::ostream& out) {
    const Dataset dataset = load_required_dataset(dataset_path, config, "input");
    const DatasetSummary summary = summarize(dataset);
    out << "dataset: " << dataset_path << "\n";
    out << "normal: " << summary.count(AttackCategory::normal) << "\n";
    out << "probe: " << summary.count(AttackCategory::probe) << "\n";
    out << "dos: " << summary.count(AttackCategory::dos) << "\n";
    out << "u2r: " << summary.count(AttackCategory::u2r) << "\n";
    out << "r2l: " << summary.count(AttackCategory::r2l) << "\n";
    out << "total: " << summary.total << "\n";
}

TrainOutput run_train(const RunConfig& config, std::ostream& log) {
    Dataset dataset = load_required_dataset(config.train_dataset, config, "train");
    if (dataset.empty())
        throw InputError("training dataset is empty: " + config.train_dataset);
    if (config.train_quota > 0)
        dataset = stratified_sample(dataset, config.train_quota,
                                    derive_seed(config.seed, kSampleStream));

    const NormalizationModel model = fit_normalization(dataset);
    const FeatureSpace space = build_feature_space(
        model, resolved_partition_overrides(config), config.default_sets);
    const std::vector<NormalizedRecord> records = normalize_dataset(dataset, model);
    const DatasetSummary summary = summarize(dataset);

    TrainOutput output;
    output.ruleset.model = model;
    output.ruleset.space = space;

    for (std::size_t i = 0; i < kAttackOrder.size(); ++i) {
        const AttackCategory category = kAttackOrder[i];
        const std::size_t available = summary.count(category);
        if (available == 0 || available == summary.total) {
            log << "train: skipping " << to_string(category)
                << " (needs records of the class and of other classes)\n";
            output.skipped_categories.emplace_back(to_string(category));
            continue;
        }
        GaParams params = config.ga;
        params.seed = derive_seed(config.seed,
                                  kClassStreamBase + static_cast<std::uint64_t>(category));
        params.threshold = threshold_for(config, category);
        const EvolutionResult result = evolve(category, records, space, params);

        ClassifierRule entry;
        entry.rule = decode(result.best, space);
        entry.threshold = params.threshold;
        entry.history = result.history;
        output.ruleset.rules.push_back(std::move(entry));

        log << "train: " << to_string(category) << " best fitness "
            << format_double(result.best_report.fitness) << " (sensitivity "
            << format_double(result.best_report.sensitivity) << ", specificity "
            << format_double(result.best_report.specificity) << ")\n";
    }
    if (output.ruleset.rules.empty())
        throw InputError("training data contains no usable attack class");

    validate_ruleset(output.ruleset);
    write_text_file(config.rules_path, ruleset_to_json(output.ruleset));
    for (const auto& entry : output.ruleset.rules) {
        std::string csv = "generation,best,mean\n";
        for (const auto& row : entry.history) {
            csv += std::to_string(row.generation);
            csv += ',';
            csv += format_double(row.best);
            csv += ',';
            csv += format_double(row.mean);
            csv += '\n';
        }
        write_text_file(config.history_stem + "_" +
                            std::string(to_string(entry.rule.target)) + ".csv",
                        csv);
    }
    return output;
}

DetectOutput run_detect(const RunConfig& config, std::ostream& log) {
    // Inputs first; nothing is written until both loads succeed.
    const RuleSet ruleset = load_ruleset(config.rules_path);
    const Dataset dataset = load_required_dataset(config.test_dataset, config, "test");

    const std::vector<DetectionOutcome> outcomes = classify_dataset(ruleset, dataset);
    std::vector<AttackCategory> truths;
    truths.reserve(dataset.size());
    for (const auto& record : dataset.records)
        truths.push_back(record.category);

    DetectOutput output;
    output.metrics = metrics_from(outcomes, truths);
    const std::vector<Alert> alerts =
        generate_alerts(outcomes, config.priority_bands, config.suppression);
    output.alert_count = alerts.size();

    write_text_file(config.alerts_path, alerts_to_csv(alerts));
    ReportInputs inputs;
    inputs.summary = summarize(dataset);
    inputs.ruleset = &ruleset;
    inputs.metrics = output.metrics;
    inputs.alerts = alerts;
    inputs.timestamps = config.timestamps;
    const std::filesystem::path parent =
        std::filesystem::path(config.report_path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    write_report(inputs, config.report_path);

    log << "detect: " << dataset.size() << " records, " << alerts.size()
        << " alerts, detection_rate "
        << (output.metrics.detection_rate ? format_double(*output.metrics.detection_rate)
                                          : std::string("undefined"))
        << ", false_positive_rate "
        << (output.metrics.false_positive_rate
                ? format_double(*output.metrics.false_positive_rate)
                : std::string("undefined"))
        << "\n";
    return output;
}

void run_evaluate(const RunConfig& config, std::ostream& out) {
    const RuleSet ruleset = load_ruleset(config.rules_path);
    const Dataset dataset = load_required_dataset(config.test_dataset, config, "test");
    const MetricsReport metrics = evaluate(ruleset, dataset);

    out << "[metrics]\n";
    out << "records: " << metrics.total << "\n";
    out << "detection_rate: "
        << (metrics.detection_rate ? format_double(*metrics.detection_rate)
                                   : std::string("undefined"))
        << "\n";
    out << "false_positive_rate: "
        << (metrics.false_positive_rate ? format_double(*metrics.false_positive_rate)
                                        : std::string("undefined"))
        << "\n";
    const char* names[] = {"normal", "probe", "dos", "u2r", "r2l"};
    for (std::size_t c = 0; c < kCategoryCount; ++c)
        out << "recall_" << names[c] << ": "
            << (metrics.recall[c] ? format_double(*metrics.recall[c])
                                  : std::string("undefined"))
            << "\n";
    out << "matrix_columns: normal probe dos u2r r2l\n";
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        out << "matrix_" << names[c] << ":";
        for (std::size_t p = 0; p < kCategoryCount; ++p)
            out << " " << metrics.matrix[c][p];
        out << "\n";
    }
}

void run_fuzzify_demo(const RunConfig& config, const std::string& dataset_path,
                      std::size_t record_index, std::ostream& out) {
    const Dataset dataset = load_required_dataset(dataset_path, config, "input");
    if (record_index >= dataset.size())
        throw InputError("record index " + std::to_string(record_index) +
                         " out of range (dataset has " + std::to_string(dataset.size()) +
                         " records)");
    const NormalizationModel model = fit_normalization(dataset);
    const FeatureSpace space = build_feature_space(
        model, resolved_partition_overrides(config), config.default_sets);
    const ConnectionRecord& record = dataset.records[record_index];
    const NormalizedRecord normalized = normalize(record, model);

    out << "record: " << record_index << " label: " << record.label
        << " category: " << to_string(record.category) << "\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        const FeatureDescriptor& feature = space.features[i];
        out << feature.name << ": ";
        if (feature.symbolic) {
            const std::size_t index = static_cast<std::size_t>(normalized.values[i]);
            out << "value=" << (index < feature.categories.size()
                                    ? feature.categories[index]
                                    : std::string("<oov>"))
                << " index=" << index << "\n";
        } else {
            out << "raw=" << format_double(record.numeric[i])
                << " normalized=" << format_double(normalized.values[i]);
            for (const auto& set : feature.sets)
                out << " " << set.name << "="
                    << format_double(membership_at(set, normalized.values[i]).effective());
            out << "\n";
        }
    }
}

} // namespace frids
