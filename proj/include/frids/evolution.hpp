#pragma once

#include "frids/dataset.hpp"
#include "frids/rule.hpp"
#include "frids/rng.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace frids {

struct FitnessWeights {
    double sensitivity = 0.5;
    double specificity = 0.3;
    double length = 0.2;

    bool operator==(const FitnessWeights&) const = default;
};

// Throws InvariantError unless all weights are >= 0 and their sum is > 0.
void validate_weights(const FitnessWeights& weights);

// Fuzzy confusion counts plus the derived rule-quality terms.
struct FitnessReport {
    double tp = 0.0, tn = 0.0, fp = 0.0, fn = 0.0;
    std::size_t p = 0, q = 0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double length_term = 0.0;
    double fitness = 0.0;
};

struct ConfusionCounts {
    double tp = 0.0, tn = 0.0, fp = 0.0, fn = 0.0;
    std::size_t p = 0, q = 0;
};

struct GaParams {
    std::size_t population_size = 100;
    std::size_t generations = 50;
    double crossover_rate = 0.7;
    double mutation_rate = 0.02; // per gene slot
    std::size_t elite_count = 2;
    std::uint64_t seed = 1;
    FitnessWeights weights;
    double threshold = 0.5; // downstream prediction threshold
    // Records drawn per class partition each generation; 0 evaluates the
    // full partitions. Subsampled fitness is not deterministic across
    // partitions of different sizes and weakens the elitism guarantee.
    std::size_t eval_subsample = 0;

    bool operator==(const GaParams&) const = default;
};

void validate_ga_params(const GaParams& params);

// Degree-space core: counts from the effective truth degrees of the rule on
// the class partition and the rest.
ConfusionCounts confusion_from_degrees(std::span<const double> class_degrees,
                                       std::span<const double> other_degrees);

// Evaluates the rule over both partitions and reduces to the four sums.
// Throws InvariantError when either partition is empty.
ConfusionCounts confusion(const FuzzyRule& rule,
                          std::span<const NormalizedRecord> class_data,
                          std::span<const NormalizedRecord> other_data);

FitnessReport fitness(const ConfusionCounts& counts, const FitnessWeights& weights,
                      int chromosome_length);

// Roulette wheel over non-negative fitnesses; exact boundary hits resolve to
// the lower index, an all-zero wheel falls back to a uniform draw.
std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

// Single-point crossover at a uniform slot boundary (skipped with
// probability 1 - rate); children are repaired to the length bounds.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a,
                                            const Chromosome& parent_b, Rng& rng,
                                            double rate, const FeatureSpace& space);

// Per-slot perturbation: with probability rate an active gene either
// deactivates or resamples its condition (uniform sub-choice), an inactive
// one activates with a fresh uniform condition.
Chromosome mutate(const Chromosome& chromosome, Rng& rng, double rate,
                  const FeatureSpace& space);

// Deactivates uniformly chosen active genes down to the length cap and
// activates one uniformly chosen gene when none are active.
void repair_chromosome(Chromosome& chromosome, Rng& rng, const FeatureSpace& space);

struct GenerationStats {
    std::size_t generation = 0;
    double best = 0.0;
    double mean = 0.0;
};

struct EvolutionResult {
    Chromosome best;
    FitnessReport best_report;
    std::vector<GenerationStats> history; // entry 0 is the initial population
};

// The generational loop: elitism plus select -> crossover -> mutate.
// `records` must contain at least one record of the target class and one of
// another class.
EvolutionResult evolve(AttackCategory target, std::span<const NormalizedRecord> records,
                       const FeatureSpace& space, const GaParams& params);

struct ExhaustiveResult {
    Chromosome best;
    FitnessReport best_report;
    std::size_t candidates = 0;
};

// Brute-force search over every chromosome with up to max_length active
// genes; ties resolve to the lexicographically smallest gene encoding.
// Throws InvariantError when the space exceeds max_candidates.
ExhaustiveResult exhaustive_best(AttackCategory target,
                                 std::span<const NormalizedRecord> records,
                                 const FeatureSpace& space, int max_length,
                                 const FitnessWeights& weights,
                                 std::size_t max_candidates = 10000);

} // namespace frids
