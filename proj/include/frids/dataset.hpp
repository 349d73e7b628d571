#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frids {

// KDD Cup 99 connection records: 41 features plus a dot-terminated label.
inline constexpr std::size_t kFeatureCount = 41;

// 0-based positions of the symbolic features (protocol_type, service, flag).
inline constexpr std::array<std::size_t, 3> kSymbolicFeatures = {1, 2, 3};

// Canonical feature names in file order.
const std::array<std::string, kFeatureCount>& feature_names();
std::optional<std::size_t> feature_index(std::string_view name);
bool is_symbolic_feature(std::size_t feature);

enum class AttackCategory : std::uint8_t { normal = 0, probe, dos, u2r, r2l };
inline constexpr std::size_t kCategoryCount = 5;

std::string_view to_string(AttackCategory c);
std::optional<AttackCategory> category_from_string(std::string_view s);

// Bundled label table covering every label in the two official files.
// Unknown labels fall back to `unknown_default` (a warning is the caller's
// concern; lookup_label exposes the miss).
std::optional<AttackCategory> lookup_label(std::string_view label);
AttackCategory map_label(std::string_view label,
                         AttackCategory unknown_default = AttackCategory::r2l);

struct ConnectionRecord {
    // Original record text (label dot intact) so serialization is byte-exact.
    std::string line;
    // Numeric feature values; symbolic slots hold 0 and are never read.
    std::array<double, kFeatureCount> numeric{};
    // protocol_type, service, flag.
    std::array<std::string, 3> symbolic;
    std::string label; // trailing '.' stripped
    AttackCategory category = AttackCategory::normal;
};

struct Dataset {
    std::vector<ConnectionRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

struct DatasetSummary {
    std::array<std::size_t, kCategoryCount> counts{}; // indexed by AttackCategory
    std::size_t total = 0;

    std::size_t count(AttackCategory c) const {
        return counts[static_cast<std::size_t>(c)];
    }
    bool operator==(const DatasetSummary&) const = default;
};

// Min-max ranges for the numeric features plus first-seen category
// dictionaries for the symbolic ones.
struct NormalizationModel {
    struct Range {
        double min = 0.0;
        double max = 0.0;

        bool operator==(const Range&) const = default;
    };
    std::array<Range, kFeatureCount> ranges{}; // symbolic slots unused
    std::array<std::vector<std::string>, 3> dictionaries;

    // Index of `value` in the dictionary of symbolic slot `sym`; the
    // reserved out-of-vocabulary index equals the dictionary size.
    std::size_t category_index(std::size_t sym, std::string_view value) const;
    std::size_t oov_index(std::size_t sym) const { return dictionaries[sym].size(); }

    bool operator==(const NormalizationModel&) const = default;
};

struct NormalizedRecord {
    std::vector<double> values;
    AttackCategory category = AttackCategory::normal;
};

// Throws InputError with the line number on field-count or numeric-parse
// failures. line_no is 1-based and only used for diagnostics.
ConnectionRecord parse_record(std::string_view line, std::size_t line_no = 0,
                              AttackCategory unknown_default = AttackCategory::r2l);

// The original record text; restores the trailing label dot by construction.
std::string serialize_record(const ConnectionRecord& record);

// Loads a whole file; aborts with context on the first malformed record.
// Warns (stderr, once per distinct label) about labels missing from the
// bundled table.
Dataset load_dataset(const std::string& path,
                     AttackCategory unknown_default = AttackCategory::r2l);

DatasetSummary summarize(const Dataset& dataset);

// Min/max per numeric feature, first-seen dictionaries for symbolic ones.
// Throws InvariantError on an empty dataset.
NormalizationModel fit_normalization(const Dataset& dataset);

// Numeric: (x - min) / (max - min) clamped to [0,1], 0 for constant
// features. Symbolic: dictionary index, OOV index for unseen categories.
NormalizedRecord normalize(const ConnectionRecord& record, const NormalizationModel& model);
std::vector<NormalizedRecord> normalize_dataset(const Dataset& dataset,
                                                const NormalizationModel& model);

// Deterministic per-category sample of min(quota, available) records,
// preserving the original record order.
Dataset stratified_sample(const Dataset& dataset,
                          const std::array<std::size_t, kCategoryCount>& quotas,
                          std::uint64_t seed);
Dataset stratified_sample(const Dataset& dataset, std::size_t quota_per_category,
                          std::uint64_t seed);

} // namespace frids
