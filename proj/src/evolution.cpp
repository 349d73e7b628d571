#include "frids/evolution.hpp"

#include "frids/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frids {

void validate_weights(const FitnessWeights& weights) {
    if (weights.sensitivity < 0 || weights.specificity < 0 || weights.length < 0)
        throw InvariantError("fitness weights must be non-negative");
    if (weights.sensitivity + weights.specificity + weights.length <= 0)
        throw InvariantError("fitness weights must not all be zero");
}

void validate_ga_params(const GaParams& params) {
    validate_weights(params.weights);
    if (params.population_size < 2)
        throw InvariantError("population_size must be at least 2");
    if (params.elite_count < 1 || params.elite_count >= params.population_size)
        throw InvariantError("elite_count must be in [1, population_size)");
    if (params.crossover_rate < 0 || params.crossover_rate > 1)
        throw InvariantError("crossover_rate must be in [0,1]");
    if (params.mutation_rate < 0 || params.mutation_rate > 1)
        throw InvariantError("mutation_rate must be in [0,1]");
    if (params.threshold < 0 || params.threshold > 1)
        throw InvariantError("threshold must be in [0,1]");
}

ConfusionCounts confusion_from_degrees(std::span<const double> class_degrees,
                                       std::span<const double> other_degrees) {
    if (class_degrees.empty() || other_degrees.empty())
        throw InvariantError("confusion: both partitions must be non-empty");
    ConfusionCounts counts;
    counts.p = class_degrees.size();
    counts.q = other_degrees.size();
    for (double d : class_degrees) {
        counts.tp += d;
        counts.fn += 1.0 - d;
    }
    for (double d : other_degrees) {
        counts.fp += d;
        counts.tn += 1.0 - d;
    }
    return counts;
}

ConfusionCounts confusion(const FuzzyRule& rule,
                          std::span<const NormalizedRecord> class_data,
                          std::span<const NormalizedRecord> other_data) {
    if (class_data.empty() || other_data.empty())
        throw InvariantError("confusion: both partitions must be non-empty");
    std::vector<double> class_degrees, other_degrees;
    class_degrees.reserve(class_data.size());
    other_degrees.reserve(other_data.size());
    for (const auto& record : class_data)
        class_degrees.push_back(truth_degree(rule, record.values).effective());
    for (const auto& record : other_data)
        other_degrees.push_back(truth_degree(rule, record.values).effective());
    return confusion_from_degrees(class_degrees, other_degrees);
}

FitnessReport fitness(const ConfusionCounts& counts, const FitnessWeights& weights,
                      int chromosome_length) {
    validate_weights(weights);
    if (chromosome_length < 1 || chromosome_length > kMaxRuleLength)
        throw InvariantError("fitness: chromosome_length out of [1,10]");
    FitnessReport report;
    report.tp = counts.tp;
    report.tn = counts.tn;
    report.fp = counts.fp;
    report.fn = counts.fn;
    report.p = counts.p;
    report.q = counts.q;
    report.sensitivity = counts.tp / (counts.tp + counts.fn);
    report.specificity = counts.tn / (counts.tn + counts.fp);
    report.length_term = 1.0 - chromosome_length / 10.0;
    report.fitness = weights.sensitivity * report.sensitivity +
                     weights.specificity * report.specificity +
                     weights.length * report.length_term;
    return report;
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty())
        throw InvariantError("roulette_select: empty population");
    double total = 0.0;
    for (double f : fitnesses) {
        if (f < 0.0)
            throw InvariantError("roulette_select: negative fitness");
        total += f;
    }
    if (total <= 0.0)
        return rng.index(fitnesses.size()); // uniform fallback

    const double u = rng.unit() * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        cumulative += fitnesses[i];
        if (u <= cumulative)
            return i;
    }
    return fitnesses.size() - 1; // guards rounding in the final sum
}

void repair_chromosome(Chromosome& chromosome, Rng& rng, const FeatureSpace& space) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < chromosome.genes.size(); ++i)
        if (chromosome.genes[i].active)
            active.push_back(i);

    const int cap = space.max_rule_length();
    while (static_cast<int>(active.size()) > cap) {
        const std::size_t pick = rng.index(active.size());
        Gene& gene = chromosome.genes[active[pick]];
        gene.active = false;
        gene.condition = 0;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (active.empty()) {
        const std::size_t slot = rng.index(chromosome.genes.size());
        Gene& gene = chromosome.genes[slot];
        gene.active = true;
        gene.condition = static_cast<std::uint16_t>(
            rng.index(space.features[slot].condition_count()));
    }
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a,
                                            const Chromosome& parent_b, Rng& rng,
                                            double rate, const FeatureSpace& space) {
    if (parent_a.genes.size() != parent_b.genes.size())
        throw InvariantError("crossover: parent size mismatch");
    if (parent_a.target != parent_b.target)
        throw InvariantError("crossover: parents target different classes");

    Chromosome child_a = parent_a;
    Chromosome child_b = parent_b;
    const std::size_t n = parent_a.genes.size();
    if (n >= 2 && rng.chance(rate)) {
        const std::size_t cut = 1 + rng.index(n - 1); // boundary in 1..n-1
        for (std::size_t i = cut; i < n; ++i)
            std::swap(child_a.genes[i], child_b.genes[i]);
    }
    repair_chromosome(child_a, rng, space);
    repair_chromosome(child_b, rng, space);
    return {std::move(child_a), std::move(child_b)};
}

Chromosome mutate(const Chromosome& chromosome, Rng& rng, double rate,
                  const FeatureSpace& space) {
    Chromosome out = chromosome;
    for (std::size_t i = 0; i < out.genes.size(); ++i) {
        if (!rng.chance(rate))
            continue;
        Gene& gene = out.genes[i];
        if (!gene.active) {
            gene.active = true;
            gene.condition = static_cast<std::uint16_t>(
                rng.index(space.features[i].condition_count()));
        } else if (rng.chance(0.5)) {
            gene.active = false;
            gene.condition = 0;
        } else {
            gene.condition = static_cast<std::uint16_t>(
                rng.index(space.features[i].condition_count()));
        }
    }
    repair_chromosome(out, rng, space);
    return out;
}

namespace {

struct SplitData {
    std::vector<NormalizedRecord> class_data;
    std::vector<NormalizedRecord> other_data;
};

SplitData split_by_target(AttackCategory target, std::span<const NormalizedRecord> records) {
    SplitData split;
    for (const auto& record : records) {
        if (record.category == target)
            split.class_data.push_back(record);
        else
            split.other_data.push_back(record);
    }
    return split;
}

std::vector<const NormalizedRecord*> sample_partition(
    const std::vector<NormalizedRecord>& partition, std::size_t take, Rng& rng) {
    std::vector<const NormalizedRecord*> out;
    if (take == 0 || take >= partition.size()) {
        out.reserve(partition.size());
        for (const auto& r : partition)
            out.push_back(&r);
        return out;
    }
    std::vector<std::size_t> indices(partition.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rng.index(indices.size() - i);
        std::swap(indices[i], indices[j]);
        out.push_back(&partition[indices[i]]);
    }
    return out;
}

FitnessReport evaluate_chromosome(const Chromosome& chromosome, const FeatureSpace& space,
                                  std::span<const NormalizedRecord* const> class_data,
                                  std::span<const NormalizedRecord* const> other_data,
                                  const FitnessWeights& weights) {
    const FuzzyRule rule = decode(chromosome, space);
    std::vector<double> class_degrees, other_degrees;
    class_degrees.reserve(class_data.size());
    other_degrees.reserve(other_data.size());
    for (const auto* record : class_data)
        class_degrees.push_back(truth_degree(rule, record->values).effective());
    for (const auto* record : other_data)
        other_degrees.push_back(truth_degree(rule, record->values).effective());
    return fitness(confusion_from_degrees(class_degrees, other_degrees), weights,
                   chromosome.active_count());
}

} // namespace

EvolutionResult evolve(AttackCategory target, std::span<const NormalizedRecord> records,
                       const FeatureSpace& space, const GaParams& params) {
    validate_ga_params(params);
    if (target == AttackCategory::normal)
        throw InvariantError("evolve: target must be an attack category");

    const SplitData split = split_by_target(target, records);
    if (split.class_data.empty())
        throw InvariantError("evolve: no records of target class " +
                             std::string(to_string(target)));
    if (split.other_data.empty())
        throw InvariantError("evolve: no records outside target class " +
                             std::string(to_string(target)));

    Rng rng(params.seed);
    std::vector<Chromosome> population;
    population.reserve(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i)
        population.push_back(random_chromosome(rng, space, target));

    EvolutionResult result;
    std::vector<FitnessReport> reports(params.population_size);
    std::vector<double> fitnesses(params.population_size);
    bool have_best = false;

    const auto evaluate_population = [&](std::size_t generation) {
        const auto class_sample = sample_partition(split.class_data, params.eval_subsample, rng);
        const auto other_sample = sample_partition(split.other_data, params.eval_subsample, rng);
        double sum = 0.0;
        double best = 0.0;
        std::size_t best_index = 0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            reports[i] = evaluate_chromosome(population[i], space, class_sample,
                                             other_sample, params.weights);
            fitnesses[i] = reports[i].fitness;
            sum += fitnesses[i];
            if (i == 0 || fitnesses[i] > best) {
                best = fitnesses[i];
                best_index = i;
            }
        }
        if (!have_best || best > result.best_report.fitness) {
            result.best = population[best_index];
            result.best_report = reports[best_index];
            have_best = true;
        }
        result.history.push_back({generation, best, sum / static_cast<double>(population.size())});
    };

    evaluate_population(0);

    for (std::size_t generation = 1; generation <= params.generations; ++generation) {
        // Elites: highest fitness first, ties to the lower index.
        std::vector<std::size_t> order(population.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return fitnesses[a] > fitnesses[b];
        });

        std::vector<Chromosome> next;
        next.reserve(params.population_size);
        for (std::size_t i = 0; i < params.elite_count; ++i)
            next.push_back(population[order[i]]);

        while (next.size() < params.population_size) {
            const std::size_t ia = roulette_select(fitnesses, rng);
            const std::size_t ib = roulette_select(fitnesses, rng);
            auto [child_a, child_b] =
                crossover(population[ia], population[ib], rng, params.crossover_rate, space);
            next.push_back(mutate(child_a, rng, params.mutation_rate, space));
            if (next.size() < params.population_size)
                next.push_back(mutate(child_b, rng, params.mutation_rate, space));
        }
        population = std::move(next);
        evaluate_population(generation);
    }
    return result;
}

namespace {

// Gene-sequence ordering used for deterministic tie-breaking.
bool encoding_less(const Chromosome& a, const Chromosome& b) {
    for (std::size_t i = 0; i < a.genes.size(); ++i) {
        const auto ka = std::make_pair(a.genes[i].active ? 1 : 0, a.genes[i].condition);
        const auto kb = std::make_pair(b.genes[i].active ? 1 : 0, b.genes[i].condition);
        if (ka != kb)
            return ka < kb;
    }
    return false;
}

std::size_t count_candidates(const FeatureSpace& space, int max_length,
                             std::size_t limit) {
    // Sum over subsets of up to max_length features of the product of their
    // condition counts, aborting once past the limit.
    std::size_t total = 0;
    const std::size_t n = space.size();

    // Iterative DFS over (start feature, depth); recursion depth <= 10.
    struct Frame {
        std::size_t feature;
        std::size_t product;
        int depth;
    };
    std::vector<Frame> frames;
    for (std::size_t f = 0; f < n; ++f)
        frames.push_back({f, 1, 1});
    while (!frames.empty()) {
        const Frame frame = frames.back();
        frames.pop_back();
        const std::size_t product = frame.product * space.features[frame.feature].condition_count();
        if (product == 0)
            continue;
        total += product;
        if (total > limit)
            return total;
        if (frame.depth < max_length)
            for (std::size_t f = frame.feature + 1; f < n; ++f)
                frames.push_back({f, product, frame.depth + 1});
    }
    return total;
}

} // namespace

ExhaustiveResult exhaustive_best(AttackCategory target,
                                 std::span<const NormalizedRecord> records,
                                 const FeatureSpace& space, int max_length,
                                 const FitnessWeights& weights,
                                 std::size_t max_candidates) {
    validate_weights(weights);
    if (max_length < 1)
        throw InvariantError("exhaustive_best: max_length must be >= 1");
    max_length = std::min(max_length, space.max_rule_length());

    const std::size_t space_size = count_candidates(space, max_length, max_candidates);
    if (space_size > max_candidates)
        throw InvariantError("exhaustive_best: rule space exceeds " +
                             std::to_string(max_candidates) + " candidates");

    const SplitData split = split_by_target(target, records);
    if (split.class_data.empty() || split.other_data.empty())
        throw InvariantError("exhaustive_best: both partitions must be non-empty");
    std::vector<const NormalizedRecord*> class_ptrs, other_ptrs;
    for (const auto& r : split.class_data)
        class_ptrs.push_back(&r);
    for (const auto& r : split.other_data)
        other_ptrs.push_back(&r);

    ExhaustiveResult result;
    Chromosome current;
    current.genes.resize(space.size());
    current.target = target;
    bool have_best = false;

    // Depth-first enumeration of feature subsets and condition assignments.
    auto visit = [&](auto&& self, std::size_t first_feature, int depth) -> void {
        for (std::size_t f = first_feature; f < space.size(); ++f) {
            const std::size_t conditions = space.features[f].condition_count();
            for (std::size_t c = 0; c < conditions; ++c) {
                current.genes[f] = {true, static_cast<std::uint16_t>(c)};
                ++result.candidates;
                const FitnessReport report = evaluate_chromosome(
                    current, space, class_ptrs, other_ptrs, weights);
                if (!have_best || report.fitness > result.best_report.fitness ||
                    (report.fitness == result.best_report.fitness &&
                     encoding_less(current, result.best))) {
                    result.best = current;
                    result.best_report = report;
                    have_best = true;
                }
                if (depth < max_length)
                    self(self, f + 1, depth + 1);
            }
            current.genes[f] = {false, 0};
        }
    };
    visit(visit, 0, 1);
    return result;
}

} // namespace frids
