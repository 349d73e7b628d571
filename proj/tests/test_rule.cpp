#include "frids/rule.hpp"

#include "frids/errors.hpp"

#include <doctest.h>

#include <set>

using namespace frids;

namespace {

// Three numeric features with the default partition plus one symbolic
// feature with three categories; enough structure for every rule-level path.
FeatureSpace small_space() {
    FeatureSpace space;
    for (int i = 0; i < 3; ++i) {
        FeatureDescriptor f;
        f.name = "num" + std::to_string(i);
        f.sets = default_partition();
        space.features.push_back(std::move(f));
    }
    FeatureDescriptor sym;
    sym.name = "proto";
    sym.symbolic = true;
    sym.categories = {"tcp", "udp", "icmp"};
    space.features.push_back(std::move(sym));
    return space;
}

Chromosome make_chromosome(const FeatureSpace& space,
                           std::initializer_list<std::pair<std::size_t, std::uint16_t>> genes,
                           AttackCategory target = AttackCategory::dos) {
    Chromosome c;
    c.genes.resize(space.size());
    c.target = target;
    for (auto [slot, condition] : genes)
        c.genes[slot] = {true, condition};
    return c;
}

} // namespace

TEST_CASE("decode produces one condition per active gene") {
    const auto space = small_space();
    const auto chromosome = make_chromosome(space, {{0, 2}, {3, 1}});
    const FuzzyRule rule = decode(chromosome, space);
    REQUIRE(rule.conditions.size() == 2);
    CHECK(rule.conditions[0].feature == 0);
    CHECK(rule.conditions[0].set.name == "high");
    CHECK(rule.conditions[1].crisp);
    CHECK(rule.conditions[1].set.name == "udp");
    CHECK(rule.target == AttackCategory::dos);

    Chromosome empty;
    empty.genes.resize(space.size());
    empty.target = AttackCategory::dos;
    CHECK_THROWS_AS(decode(empty, space), InvariantError);
}

TEST_CASE("ten active genes decode to ten conditions") {
    FeatureSpace wide;
    for (int i = 0; i < 12; ++i) {
        FeatureDescriptor f;
        f.name = "f" + std::to_string(i);
        f.sets = default_partition();
        wide.features.push_back(std::move(f));
    }
    Chromosome c;
    c.genes.resize(wide.size());
    c.target = AttackCategory::probe;
    for (int i = 0; i < 10; ++i)
        c.genes[static_cast<std::size_t>(i)] = {true, 0};
    CHECK(decode(c, wide).conditions.size() == 10);
    validate_chromosome(c, wide);

    c.genes[10] = {true, 0}; // eleventh gene breaks the cap
    CHECK_THROWS_AS(validate_chromosome(c, wide), InvariantError);
}

TEST_CASE("truth_degree is the min over conditions") {
    const auto space = small_space();
    // medium(x) at 0.45 -> 0.8; medium(x) at 0.375 -> 0.5
    const auto chromosome = make_chromosome(space, {{0, 1}, {1, 1}});
    const FuzzyRule rule = decode(chromosome, space);
    const std::vector<double> values = {0.45, 0.375, 0.0, 0.0};
    CHECK(truth_degree(rule, values).effective() == doctest::Approx(0.5));
}

TEST_CASE("a mismatched crisp condition forces degree zero") {
    const auto space = small_space();
    const auto chromosome = make_chromosome(space, {{0, 1}, {3, 2}}); // proto IS icmp
    const FuzzyRule rule = decode(chromosome, space);
    const std::vector<double> match = {0.5, 0.0, 0.0, 2.0};
    const std::vector<double> mismatch = {0.5, 0.0, 0.0, 0.0};
    CHECK(truth_degree(rule, match).effective() == 1.0);
    CHECK(truth_degree(rule, mismatch).effective() == 0.0);
}

TEST_CASE("single-condition degree passes through") {
    const auto space = small_space();
    const auto chromosome = make_chromosome(space, {{2, 1}});
    const FuzzyRule rule = decode(chromosome, space);
    // medium at 0.4325 -> (0.4325-0.25)/0.25 = 0.73
    const std::vector<double> values = {0.0, 0.0, 0.4325, 0.0};
    CHECK(truth_degree(rule, values).effective() == doctest::Approx(0.73));
}

TEST_CASE("predict fires on the boundary") {
    const auto space = small_space();
    const FuzzyRule rule = decode(make_chromosome(space, {{0, 1}}), space);
    const std::vector<double> at_06 = {0.4, 0.0, 0.0, 0.0};  // medium -> 0.6
    const std::vector<double> at_05 = {0.375, 0.0, 0.0, 0.0}; // medium -> 0.5
    const std::vector<double> at_00 = {0.0, 0.0, 0.0, 0.0};  // medium -> 0.0
    CHECK(predict(rule, at_06, 0.5));
    CHECK(predict(rule, at_05, 0.5));
    CHECK(predict(rule, at_00, 0.0)); // degenerate always-fire
    CHECK(!predict(rule, at_00, 0.1));
}

TEST_CASE("random chromosomes are deterministic, valid, and span all lengths") {
    FeatureSpace kdd;
    for (int i = 0; i < 41; ++i) {
        FeatureDescriptor f;
        f.name = "f" + std::to_string(i);
        f.sets = default_partition();
        kdd.features.push_back(std::move(f));
    }

    Rng a(99), b(99);
    CHECK(random_chromosome(a, kdd, AttackCategory::dos) ==
          random_chromosome(b, kdd, AttackCategory::dos));

    Rng rng(123);
    std::set<int> lengths;
    for (int i = 0; i < 10000; ++i) {
        const Chromosome c = random_chromosome(rng, kdd, AttackCategory::dos);
        validate_chromosome(c, kdd);
        lengths.insert(c.active_count());
    }
    for (int len = 1; len <= 10; ++len)
        CHECK(lengths.count(len) == 1);
}

TEST_CASE("deactivating a gene never lowers the truth degree") {
    const auto space = small_space();
    Rng rng(321);
    for (int trial = 0; trial < 500; ++trial) {
        Chromosome c = random_chromosome(rng, space, AttackCategory::dos);
        std::vector<double> values;
        for (std::size_t i = 0; i < space.size(); ++i)
            values.push_back(space.features[i].symbolic
                                 ? static_cast<double>(rng.index(4))
                                 : rng.unit() * 1.5 - 0.25);
        const double full = truth_degree(decode(c, space), values).effective();
        CHECK(full >= 0.0);
        CHECK(full <= 1.0);
        if (c.active_count() < 2)
            continue;
        for (std::size_t slot = 0; slot < c.genes.size(); ++slot) {
            if (!c.genes[slot].active)
                continue;
            Chromosome reduced = c;
            reduced.genes[slot] = {false, 0};
            const double sub = truth_degree(decode(reduced, space), values).effective();
            CHECK(sub >= full);
        }
    }
}

TEST_CASE("encode inverts decode exactly") {
    const auto space = small_space();
    Rng rng(555);
    for (int trial = 0; trial < 1000; ++trial) {
        const Chromosome c = random_chromosome(rng, space, AttackCategory::r2l);
        CHECK(encode(decode(c, space), space) == c);
    }
}

TEST_CASE("build_feature_space applies per-feature partition overrides") {
    NormalizationModel model;
    model.dictionaries[0] = {"tcp", "udp"};
    model.dictionaries[1] = {"http"};
    model.dictionaries[2] = {"SF"};
    const auto src_bytes = feature_index("src_bytes");
    REQUIRE(src_bytes.has_value());
    const std::vector<FuzzySetDescriptor> binary = {
        make_trapezoidal("small", 0.0, 0.0, 0.4, 0.6),
        make_trapezoidal("large", 0.4, 0.6, 1.0, 1.0)};

    const FeatureSpace space = build_feature_space(model, {{*src_bytes, binary}});
    REQUIRE(space.size() == kFeatureCount);
    CHECK(space.features[*src_bytes].sets.size() == 2);
    CHECK(space.features[*src_bytes].sets[0].name == "small");
    CHECK(space.features[0].sets.size() == 3); // untouched features keep the default
    CHECK(space.features[1].symbolic);
    CHECK(space.features[1].categories == std::vector<std::string>{"tcp", "udp"});

    CHECK_THROWS_AS(build_feature_space(model, {{1, binary}}), InvariantError);
    CHECK_THROWS_AS(build_feature_space(model, {{kFeatureCount + 3, binary}}),
                    InvariantError);
}

TEST_CASE("rule text round-trips through the parser") {
    const auto space = small_space();
    Rng rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const Chromosome c = random_chromosome(rng, space, AttackCategory::u2r);
        const FuzzyRule rule = decode(c, space);
        const std::string text = rule_to_text(rule, space);
        const FuzzyRule parsed = rule_from_text(text, space);
        CHECK(encode(parsed, space) == c);
        CHECK(rule_to_text(parsed, space) == text);
    }

    const FuzzyRule sample = rule_from_text("IF num0 IS high AND proto IS icmp THEN dos", space);
    CHECK(sample.conditions.size() == 2);
    CHECK(sample.target == AttackCategory::dos);
    CHECK_THROWS_AS(rule_from_text("IF num0 IS tall THEN dos", space), InputError);
    CHECK_THROWS_AS(rule_from_text("num0 IS high THEN dos", space), InputError);
    CHECK_THROWS_AS(rule_from_text("IF num0 IS high THEN normal", space), InputError);
}
