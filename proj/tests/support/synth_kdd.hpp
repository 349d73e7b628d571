#pragma once

#include "frids/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frids::testsupport {

struct LabelCount {
    std::string label;
    std::size_t count = 0;
};

// One record line in the official 42-field format (dot-terminated label),
// drawn from a per-label archetype with seeded jitter.
std::string synth_record(Rng& rng, const std::string& label);

// A whole file: the plan's records in a deterministically shuffled order.
std::string synth_kdd_file(std::uint64_t seed, std::span<const LabelCount> plan);

// Training-shaped corpus (~10k records, all five categories) used when the
// official files are absent.
std::vector<LabelCount> default_train_plan();

// The checked-in fixture's plan; data/kdd_fixture.csv is this with seed
// kFixtureSeed.
std::vector<LabelCount> fixture_plan();
inline constexpr std::uint64_t kFixtureSeed = 20240101;

} // namespace frids::testsupport
