#include "frids/dataset.hpp"

#include "frids/errors.hpp"
#include "frids/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <unordered_map>
#include <unordered_set>

namespace frids {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "duration", "protocol_type", "service", "flag", "src_bytes", "dst_bytes",
        "land", "wrong_fragment", "urgent", "hot", "num_failed_logins", "logged_in",
        "num_compromised", "root_shell", "su_attempted", "num_root",
        "num_file_creations", "num_shells", "num_access_files", "num_outbound_cmds",
        "is_host_login", "is_guest_login", "count", "srv_count", "serror_rate",
        "srv_serror_rate", "rerror_rate", "srv_rerror_rate", "same_srv_rate",
        "diff_srv_rate", "srv_diff_host_rate", "dst_host_count", "dst_host_srv_count",
        "dst_host_same_srv_rate", "dst_host_diff_srv_rate",
        "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate",
        "dst_host_serror_rate", "dst_host_srv_serror_rate", "dst_host_rerror_rate",
        "dst_host_srv_rerror_rate"};
    return names;
}

std::optional<std::size_t> feature_index(std::string_view name) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return i;
    return std::nullopt;
}

bool is_symbolic_feature(std::size_t feature) {
    return feature == kSymbolicFeatures[0] || feature == kSymbolicFeatures[1] ||
           feature == kSymbolicFeatures[2];
}

std::string_view to_string(AttackCategory c) {
    switch (c) {
    case AttackCategory::normal: return "normal";
    case AttackCategory::probe: return "probe";
    case AttackCategory::dos: return "dos";
    case AttackCategory::u2r: return "u2r";
    case AttackCategory::r2l: return "r2l";
    }
    return "normal";
}

std::optional<AttackCategory> category_from_string(std::string_view s) {
    if (s == "normal") return AttackCategory::normal;
    if (s == "probe") return AttackCategory::probe;
    if (s == "dos") return AttackCategory::dos;
    if (s == "u2r") return AttackCategory::u2r;
    if (s == "r2l") return AttackCategory::r2l;
    return std::nullopt;
}

namespace {

// Standard KDD99 taxonomy over the union of the training ("10 percent")
// and test ("corrected") label sets; reproduces the published per-category
// counts of both files.
const std::unordered_map<std::string_view, AttackCategory>& label_table() {
    static const std::unordered_map<std::string_view, AttackCategory> table = {
        {"normal", AttackCategory::normal},
        // dos
        {"back", AttackCategory::dos},
        {"land", AttackCategory::dos},
        {"neptune", AttackCategory::dos},
        {"pod", AttackCategory::dos},
        {"smurf", AttackCategory::dos},
        {"teardrop", AttackCategory::dos},
        {"apache2", AttackCategory::dos},
        {"mailbomb", AttackCategory::dos},
        {"processtable", AttackCategory::dos},
        {"udpstorm", AttackCategory::dos},
        // probe
        {"ipsweep", AttackCategory::probe},
        {"nmap", AttackCategory::probe},
        {"portsweep", AttackCategory::probe},
        {"satan", AttackCategory::probe},
        {"mscan", AttackCategory::probe},
        {"saint", AttackCategory::probe},
        // u2r
        {"buffer_overflow", AttackCategory::u2r},
        {"loadmodule", AttackCategory::u2r},
        {"perl", AttackCategory::u2r},
        {"rootkit", AttackCategory::u2r},
        {"httptunnel", AttackCategory::u2r},
        {"ps", AttackCategory::u2r},
        {"sqlattack", AttackCategory::u2r},
        {"xterm", AttackCategory::u2r},
        // r2l
        {"ftp_write", AttackCategory::r2l},
        {"guess_passwd", AttackCategory::r2l},
        {"imap", AttackCategory::r2l},
        {"multihop", AttackCategory::r2l},
        {"phf", AttackCategory::r2l},
        {"spy", AttackCategory::r2l},
        {"warezclient", AttackCategory::r2l},
        {"warezmaster", AttackCategory::r2l},
        {"named", AttackCategory::r2l},
        {"sendmail", AttackCategory::r2l},
        {"snmpgetattack", AttackCategory::r2l},
        {"snmpguess", AttackCategory::r2l},
        {"worm", AttackCategory::r2l},
        {"xlock", AttackCategory::r2l},
        {"xsnoop", AttackCategory::r2l},
    };
    return table;
}

} // namespace

std::optional<AttackCategory> lookup_label(std::string_view label) {
    const auto& table = label_table();
    auto it = table.find(label);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

AttackCategory map_label(std::string_view label, AttackCategory unknown_default) {
    if (auto hit = lookup_label(label))
        return *hit;
    std::cerr << "warning: unknown attack label '" << label << "' mapped to "
              << to_string(unknown_default) << "\n";
    return unknown_default;
}

std::size_t NormalizationModel::category_index(std::size_t sym,
                                               std::string_view value) const {
    const auto& dict = dictionaries[sym];
    for (std::size_t i = 0; i < dict.size(); ++i)
        if (dict[i] == value)
            return i;
    return dict.size();
}

namespace {

std::size_t symbolic_slot(std::size_t feature) {
    for (std::size_t s = 0; s < kSymbolicFeatures.size(); ++s)
        if (kSymbolicFeatures[s] == feature)
            return s;
    throw InvariantError("feature is not symbolic");
}

double parse_numeric_field(std::string_view field, std::size_t field_no,
                           std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw InputError("line " + std::to_string(line_no) + ": field " +
                         std::to_string(field_no + 1) + " is not numeric: '" +
                         std::string(field) + "'");
    return value;
}

} // namespace

ConnectionRecord parse_record(std::string_view line, std::size_t line_no,
                              AttackCategory unknown_default) {
    ConnectionRecord record;
    record.line = std::string(line);

    std::array<std::string_view, kFeatureCount + 1> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = comma == std::string_view::npos
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        if (count < fields.size())
            fields[count] = field;
        ++count;
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (count != kFeatureCount + 1)
        throw InputError("line " + std::to_string(line_no) + ": field count " +
                         std::to_string(count) + " != " +
                         std::to_string(kFeatureCount + 1));

    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (is_symbolic_feature(i))
            record.symbolic[symbolic_slot(i)] = std::string(fields[i]);
        else
            record.numeric[i] = parse_numeric_field(fields[i], i, line_no);
    }

    std::string_view label = fields[kFeatureCount];
    if (!label.empty() && label.back() == '.')
        label.remove_suffix(1);
    record.label = std::string(label);
    record.category = lookup_label(record.label).value_or(unknown_default);
    return record;
}

std::string serialize_record(const ConnectionRecord& record) {
    return record.line;
}

Dataset load_dataset(const std::string& path, AttackCategory unknown_default) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open dataset file: " + path);

    Dataset dataset;
    std::unordered_set<std::string> unknown_labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        ConnectionRecord record = parse_record(line, line_no, unknown_default);
        if (!lookup_label(record.label) && unknown_labels.insert(record.label).second)
            std::cerr << "warning: " << path << ": unknown attack label '"
                      << record.label << "' mapped to " << to_string(unknown_default)
                      << "\n";
        dataset.records.push_back(std::move(record));
    }
    if (in.bad())
        throw InputError("I/O error while reading: " + path);
    return dataset;
}

DatasetSummary summarize(const Dataset& dataset) {
    DatasetSummary summary;
    for (const auto& record : dataset.records)
        ++summary.counts[static_cast<std::size_t>(record.category)];
    summary.total = dataset.records.size();
    return summary;
}

NormalizationModel fit_normalization(const Dataset& dataset) {
    if (dataset.empty())
        throw InvariantError("fit_normalization: empty dataset");

    NormalizationModel model;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (is_symbolic_feature(i))
            continue;
        model.ranges[i].min = dataset.records.front().numeric[i];
        model.ranges[i].max = dataset.records.front().numeric[i];
    }
    std::array<std::unordered_map<std::string, std::size_t>, 3> seen;
    for (const auto& record : dataset.records) {
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            if (is_symbolic_feature(i))
                continue;
            model.ranges[i].min = std::min(model.ranges[i].min, record.numeric[i]);
            model.ranges[i].max = std::max(model.ranges[i].max, record.numeric[i]);
        }
        for (std::size_t s = 0; s < kSymbolicFeatures.size(); ++s) {
            const std::string& value = record.symbolic[s];
            if (seen[s].emplace(value, model.dictionaries[s].size()).second)
                model.dictionaries[s].push_back(value);
        }
    }
    return model;
}

NormalizedRecord normalize(const ConnectionRecord& record,
                           const NormalizationModel& model) {
    NormalizedRecord out;
    out.values.resize(kFeatureCount);
    out.category = record.category;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (is_symbolic_feature(i)) {
            const std::size_t s = symbolic_slot(i);
            out.values[i] =
                static_cast<double>(model.category_index(s, record.symbolic[s]));
        } else {
            const auto& range = model.ranges[i];
            if (range.max == range.min)
                out.values[i] = 0.0;
            else
                out.values[i] = std::clamp(
                    (record.numeric[i] - range.min) / (range.max - range.min), 0.0, 1.0);
        }
    }
    return out;
}

std::vector<NormalizedRecord> normalize_dataset(const Dataset& dataset,
                                                const NormalizationModel& model) {
    std::vector<NormalizedRecord> out;
    out.reserve(dataset.size());
    for (const auto& record : dataset.records)
        out.push_back(normalize(record, model));
    return out;
}

Dataset stratified_sample(const Dataset& dataset,
                          const std::array<std::size_t, kCategoryCount>& quotas,
                          std::uint64_t seed) {
    std::array<std::vector<std::size_t>, kCategoryCount> by_category;
    for (std::size_t i = 0; i < dataset.records.size(); ++i)
        by_category[static_cast<std::size_t>(dataset.records[i].category)].push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        auto& pool = by_category[c];
        const std::size_t take = std::min(quotas[c], pool.size());
        // Partial Fisher-Yates; rng is consumed in category order so the
        // draw is a pure function of (dataset, quotas, seed).
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + rng.index(pool.size() - i);
            std::swap(pool[i], pool[j]);
            chosen.push_back(pool[i]);
        }
    }
    std::sort(chosen.begin(), chosen.end());

    Dataset sample;
    sample.records.reserve(chosen.size());
    for (std::size_t idx : chosen)
        sample.records.push_back(dataset.records[idx]);
    return sample;
}

Dataset stratified_sample(const Dataset& dataset, std::size_t quota_per_category,
                          std::uint64_t seed) {
    std::array<std::size_t, kCategoryCount> quotas;
    quotas.fill(quota_per_category);
    return stratified_sample(dataset, quotas, seed);
}

} // namespace frids
