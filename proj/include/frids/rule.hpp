#pragma once

#include "frids/dataset.hpp"
#include "frids/fuzzy.hpp"
#include "frids/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frids {

// The paper's length term (1 - chromosome_length/10) bounds rules to ten
// conditions; the cap is structural, enforced at construction and repair.
inline constexpr int kMaxRuleLength = 10;

// One axis of the search space: a numeric feature carries its linguistic
// partition, a symbolic one its known category names.
struct FeatureDescriptor {
    std::string name;
    bool symbolic = false;
    std::vector<FuzzySetDescriptor> sets; // numeric only
    std::vector<std::string> categories;  // symbolic only

    std::size_t condition_count() const {
        return symbolic ? categories.size() : sets.size();
    }
};

struct FeatureSpace {
    std::vector<FeatureDescriptor> features;

    std::size_t size() const { return features.size(); }
    int max_rule_length() const {
        return std::min<int>(kMaxRuleLength, static_cast<int>(features.size()));
    }
};

// Default three-way partition {low, medium, high} over the normalized axis;
// shoulders so the boundary sets cover the interval ends.
std::vector<FuzzySetDescriptor> default_partition();

// Feature space over the 41 KDD features: symbolic features take their
// categories from the normalization model, numeric ones the given
// partitions (by feature index; missing entries use `fallback`).
FeatureSpace build_feature_space(
    const NormalizationModel& model,
    const std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>>&
        partition_overrides = {},
    const std::vector<FuzzySetDescriptor>& fallback = default_partition());

struct Gene {
    bool active = false;
    std::uint16_t condition = 0; // canonical 0 while inactive

    bool operator==(const Gene&) const = default;
};

struct Chromosome {
    std::vector<Gene> genes; // one slot per feature
    AttackCategory target = AttackCategory::dos;

    int active_count() const;
    bool operator==(const Chromosome&) const = default;
};

// Throws InvariantError when length, slot, or condition bounds are broken.
void validate_chromosome(const Chromosome& chromosome, const FeatureSpace& space);

struct RuleCondition {
    std::size_t feature = 0;
    std::size_t condition = 0; // index into the feature's sets/categories
    bool crisp = false;
    FuzzySetDescriptor set; // resolved descriptor (crisp sets included)
};

struct FuzzyRule {
    std::vector<RuleCondition> conditions;
    AttackCategory target = AttackCategory::dos;
};

// Chromosome -> rule (error on zero active genes) and back; encode restores
// the canonical chromosome exactly.
FuzzyRule decode(const Chromosome& chromosome, const FeatureSpace& space);
Chromosome encode(const FuzzyRule& rule, const FeatureSpace& space);

// Min over the per-condition memberships of the normalized record.
ExtendedFuzzyValue truth_degree(const FuzzyRule& rule, std::span<const double> values);

// True iff the effective truth degree reaches the threshold (boundary fires).
bool predict(const FuzzyRule& rule, std::span<const double> values, double threshold);

// Uniform draw: k in [1, max length] active genes on distinct slots, uniform
// condition per slot.
Chromosome random_chromosome(Rng& rng, const FeatureSpace& space, AttackCategory target);

// Human-readable form, e.g. "IF src_bytes IS high AND protocol_type IS icmp
// THEN dos"; parses back against the same feature space.
std::string rule_to_text(const FuzzyRule& rule, const FeatureSpace& space);
FuzzyRule rule_from_text(const std::string& text, const FeatureSpace& space);

} // namespace frids
