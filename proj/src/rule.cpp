#include "frids/rule.hpp"

#include "frids/errors.hpp"

#include <algorithm>
#include <sstream>

namespace frids {

std::vector<FuzzySetDescriptor> default_partition() {
    return {make_trapezoidal("low", 0.0, 0.0, 0.25, 0.5),
            make_triangular("medium", 0.25, 0.5, 0.75),
            make_trapezoidal("high", 0.5, 0.75, 1.0, 1.0)};
}

FeatureSpace build_feature_space(
    const NormalizationModel& model,
    const std::vector<std::pair<std::size_t, std::vector<FuzzySetDescriptor>>>&
        partition_overrides,
    const std::vector<FuzzySetDescriptor>& fallback) {
    FeatureSpace space;
    space.features.resize(kFeatureCount);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        FeatureDescriptor& desc = space.features[i];
        desc.name = feature_names()[i];
        if (is_symbolic_feature(i)) {
            desc.symbolic = true;
            const std::size_t sym = i == kSymbolicFeatures[0] ? 0
                                  : i == kSymbolicFeatures[1] ? 1
                                                              : 2;
            desc.categories = model.dictionaries[sym];
        } else {
            desc.sets = fallback;
        }
    }
    for (const auto& [feature, sets] : partition_overrides) {
        if (feature >= kFeatureCount)
            throw InvariantError("partition override for unknown feature index " +
                                 std::to_string(feature));
        if (is_symbolic_feature(feature))
            throw InvariantError("partition override for symbolic feature '" +
                                 feature_names()[feature] + "'");
        space.features[feature].sets = sets;
    }
    return space;
}

int Chromosome::active_count() const {
    return static_cast<int>(
        std::count_if(genes.begin(), genes.end(), [](const Gene& g) { return g.active; }));
}

void validate_chromosome(const Chromosome& chromosome, const FeatureSpace& space) {
    if (chromosome.genes.size() != space.size())
        throw InvariantError("chromosome has " + std::to_string(chromosome.genes.size()) +
                             " slots for a " + std::to_string(space.size()) +
                             "-feature space");
    if (chromosome.target == AttackCategory::normal)
        throw InvariantError("chromosome target must be an attack category");
    const int active = chromosome.active_count();
    if (active < 1 || active > space.max_rule_length())
        throw InvariantError("chromosome has " + std::to_string(active) +
                             " active genes, expected 1.." +
                             std::to_string(space.max_rule_length()));
    for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
        const Gene& gene = chromosome.genes[i];
        if (gene.active && gene.condition >= space.features[i].condition_count())
            throw InvariantError("gene " + std::to_string(i) + " condition " +
                                 std::to_string(gene.condition) + " out of range");
    }
}

FuzzyRule decode(const Chromosome& chromosome, const FeatureSpace& space) {
    if (chromosome.genes.size() != space.size())
        throw InvariantError("decode: chromosome/feature-space size mismatch");
    FuzzyRule rule;
    rule.target = chromosome.target;
    for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
        const Gene& gene = chromosome.genes[i];
        if (!gene.active)
            continue;
        const FeatureDescriptor& feature = space.features[i];
        if (gene.condition >= feature.condition_count())
            throw InvariantError("decode: gene condition out of range at feature " +
                                 std::to_string(i));
        RuleCondition cond;
        cond.feature = i;
        cond.condition = gene.condition;
        cond.crisp = feature.symbolic;
        cond.set = feature.symbolic
                       ? make_crisp(feature.categories[gene.condition], gene.condition)
                       : feature.sets[gene.condition];
        rule.conditions.push_back(std::move(cond));
    }
    if (rule.conditions.empty())
        throw InvariantError("decode: chromosome has no active genes");
    return rule;
}

Chromosome encode(const FuzzyRule& rule, const FeatureSpace& space) {
    Chromosome chromosome;
    chromosome.genes.resize(space.size());
    chromosome.target = rule.target;
    for (const RuleCondition& cond : rule.conditions) {
        if (cond.feature >= space.size())
            throw InvariantError("encode: condition feature out of range");
        Gene& gene = chromosome.genes[cond.feature];
        if (gene.active)
            throw InvariantError("encode: duplicate condition for feature " +
                                 std::to_string(cond.feature));
        gene.active = true;
        gene.condition = static_cast<std::uint16_t>(cond.condition);
    }
    validate_chromosome(chromosome, space);
    return chromosome;
}

ExtendedFuzzyValue truth_degree(const FuzzyRule& rule, std::span<const double> values) {
    if (rule.conditions.empty())
        throw InvariantError("truth_degree: rule has no conditions");
    ExtendedFuzzyValue worst{1.0, 0.0};
    bool first = true;
    for (const RuleCondition& cond : rule.conditions) {
        const ExtendedFuzzyValue v = membership_at(cond.set, values[cond.feature]);
        if (first || v.effective() < worst.effective()) {
            worst = v;
            first = false;
        }
    }
    return worst;
}

bool predict(const FuzzyRule& rule, std::span<const double> values, double threshold) {
    return truth_degree(rule, values).effective() >= threshold;
}

Chromosome random_chromosome(Rng& rng, const FeatureSpace& space, AttackCategory target) {
    if (space.size() == 0)
        throw InvariantError("random_chromosome: empty feature space");
    if (target == AttackCategory::normal)
        throw InvariantError("random_chromosome: target must be an attack category");
    Chromosome chromosome;
    chromosome.genes.resize(space.size());
    chromosome.target = target;

    const std::size_t k = 1 + rng.index(static_cast<std::size_t>(space.max_rule_length()));
    std::vector<std::size_t> slots(space.size());
    for (std::size_t i = 0; i < slots.size(); ++i)
        slots[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.index(slots.size() - i);
        std::swap(slots[i], slots[j]);
        Gene& gene = chromosome.genes[slots[i]];
        gene.active = true;
        gene.condition = static_cast<std::uint16_t>(
            rng.index(space.features[slots[i]].condition_count()));
    }
    return chromosome;
}

std::string rule_to_text(const FuzzyRule& rule, const FeatureSpace& space) {
    std::ostringstream out;
    out << "IF ";
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
        const RuleCondition& cond = rule.conditions[i];
        if (i > 0)
            out << " AND ";
        out << space.features[cond.feature].name << " IS " << cond.set.name;
    }
    out << " THEN " << to_string(rule.target);
    return out.str();
}

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string word;
    while (in >> word)
        words.push_back(word);
    return words;
}

} // namespace

FuzzyRule rule_from_text(const std::string& text, const FeatureSpace& space) {
    const std::vector<std::string> words = split_words(text);
    // Grammar: IF <feature> IS <value> (AND <feature> IS <value>)* THEN <category>
    if (words.size() < 6 || words.front() != "IF")
        throw InputError("rule text: expected 'IF <feature> IS <value> ... THEN <category>'");
    if (words[words.size() - 2] != "THEN")
        throw InputError("rule text: missing THEN clause");

    FuzzyRule rule;
    const auto target = category_from_string(words.back());
    if (!target || *target == AttackCategory::normal)
        throw InputError("rule text: bad target category '" + words.back() + "'");
    rule.target = *target;

    std::size_t pos = 1;
    const std::size_t end = words.size() - 2;
    while (pos < end) {
        if (pos + 3 > end || words[pos + 1] != "IS")
            throw InputError("rule text: malformed condition near '" + words[pos] + "'");
        const std::string& feature_name = words[pos];
        const std::string& value_name = words[pos + 2];

        std::size_t feature = space.size();
        for (std::size_t i = 0; i < space.size(); ++i)
            if (space.features[i].name == feature_name) {
                feature = i;
                break;
            }
        if (feature == space.size())
            throw InputError("rule text: unknown feature '" + feature_name + "'");

        const FeatureDescriptor& desc = space.features[feature];
        RuleCondition cond;
        cond.feature = feature;
        cond.crisp = desc.symbolic;
        bool found = false;
        for (std::size_t i = 0; i < desc.condition_count(); ++i) {
            const std::string& name = desc.symbolic ? desc.categories[i] : desc.sets[i].name;
            if (name == value_name) {
                cond.condition = i;
                cond.set = desc.symbolic ? make_crisp(name, i) : desc.sets[i];
                found = true;
                break;
            }
        }
        if (!found)
            throw InputError("rule text: feature '" + feature_name + "' has no value '" +
                             value_name + "'");
        rule.conditions.push_back(std::move(cond));

        pos += 3;
        if (pos < end) {
            if (words[pos] != "AND")
                throw InputError("rule text: expected AND near '" + words[pos] + "'");
            ++pos;
        }
    }
    if (rule.conditions.empty())
        throw InputError("rule text: no conditions");
    return rule;
}

} // namespace frids
