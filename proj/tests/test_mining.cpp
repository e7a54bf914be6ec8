#include "doctest.h"

#include <array>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "situwalk/mining.hpp"

using namespace situwalk;

namespace {

Item season(const char* v) { return make_item(Dimension::Season, v); }
Item daypart(const char* v) { return make_item(Dimension::DayPart, v); }
Item location(const char* v) { return make_item(Dimension::LocationType, v); }
Item cls(const char* v) { return make_item(Dimension::Class, v); }

const ClosedPattern* find_closed(const std::vector<ClosedPattern>& patterns, const Itemset& set) {
    for (const auto& p : patterns)
        if (p.closed == set) return &p;
    return nullptr;
}

/// Random situation-shaped context: per-dimension value pools whose total
/// size stays within max_items, each transaction drawing at most one value
/// per dimension.
FormalContext random_context(std::mt19937& rng, std::size_t max_items,
                             std::size_t max_transactions) {
    static constexpr Dimension dims[] = {Dimension::Season, Dimension::DayPart,
                                         Dimension::LocationType, Dimension::Class};
    std::uniform_int_distribution<std::size_t> pool_size(1, 3);
    std::array<std::size_t, 4> pools{};
    std::size_t total = 0;
    for (auto& p : pools) {
        p = pool_size(rng);
        total += p;
    }
    while (total > max_items) {
        for (auto& p : pools)
            if (p > 1 && total > max_items) {
                --p;
                --total;
            }
    }
    std::uniform_int_distribution<std::size_t> tx_count(1, max_transactions);
    std::bernoulli_distribution has(0.8);
    std::vector<Itemset> transactions;
    const std::size_t n = tx_count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Item> items;
        for (std::size_t d = 0; d < 4; ++d) {
            if (!has(rng)) continue;
            std::uniform_int_distribution<std::size_t> pick(0, pools[d] - 1);
            items.push_back(make_item(dims[d], "v" + std::to_string(d) + "_" +
                                                   std::to_string(pick(rng))));
        }
        transactions.push_back(make_itemset(std::move(items)));
    }
    return FormalContext(std::move(transactions));
}

void check_against_oracle(const FormalContext& ctx, const Rational& minsup,
                          const Rational& minconf) {
    const oracle::MiningTables tables(ctx);
    const auto brute = oracle::brute_closed(tables, minsup);
    const auto mined = mine_closed(ctx, minsup);

    REQUIRE(mined.size() == brute.size());
    for (const auto& p : mined) {
        const auto it = brute.find(tables.mask_of(p.closed));
        REQUIRE(it != brute.end());
        CHECK(p.support == it->second.support);
        std::set<std::uint32_t> got;
        for (const auto& g : p.generators) got.insert(tables.mask_of(g));
        const std::set<std::uint32_t> want(it->second.generators.begin(),
                                           it->second.generators.end());
        CHECK(got == want);
    }

    const auto rules = generate_igb(ctx, mined, minconf);
    std::set<oracle::BruteRule> got;
    for (const auto& r : rules)
        got.insert({tables.mask_of(r.premise), tables.mask_of(r.conclusion), r.support,
                    r.confidence});
    CHECK(got == oracle::brute_igb(tables, brute, minconf));
}

} // namespace

TEST_SUITE("mining") {
    TEST_CASE("fixture closed sets at minsup 1/5") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto patterns = mine_closed(ctx, Rational(1, 5));
        const auto* beach = find_closed(
            patterns, make_itemset({season("été"), daypart("matin"), location("plage"), cls("surf")}));
        REQUIRE(beach != nullptr);
        CHECK(beach->support == Rational(1, 5));
        const std::vector<Itemset> want = {
            {location("plage")},
            {cls("surf")},
            make_itemset({season("été"), daypart("matin")}),
        };
        CHECK(beach->generators.size() == 3);
        for (const auto& g : want)
            CHECK(std::count(beach->generators.begin(), beach->generators.end(), g) == 1);
    }

    TEST_CASE("fixture closed sets at minsup 2/5") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto patterns = mine_closed(ctx, Rational(2, 5));
        const auto* midi = find_closed(patterns, {daypart("midi")});
        REQUIRE(midi != nullptr);
        CHECK(midi->support == Rational(2, 5));
        const auto* art = find_closed(patterns, {cls("art")});
        REQUIRE(art != nullptr);
        CHECK(art->support == Rational(2, 5));
    }

    TEST_CASE("minsup 1 keeps only the closure of the empty set") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto patterns = mine_closed(ctx, Rational(1));
        REQUIRE(patterns.size() == 1);
        CHECK(patterns[0].closed == closure(ctx, {}));
    }

    TEST_CASE("igb contains the printemps rule at minconf 1") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto rules = generate_igb(ctx, mine_closed(ctx, Rational(1, 5)), Rational(1));
        bool found = false;
        for (const auto& r : rules) {
            if (r.premise == Itemset{season("printemps")}) {
                CHECK(r.conclusion ==
                      make_itemset({daypart("soir"), location("théâtre"), cls("art")}));
                CHECK(r.support == Rational(1, 5));
                CHECK(r.confidence == Rational(1));
                found = true;
            }
            CHECK(r.confidence >= Rational(1));
            CHECK_FALSE(r.conclusion.empty());
        }
        CHECK(found);
        // {midi} is its own closure: no rule with premise {midi} at minconf 1
        for (const auto& r : rules) CHECK_FALSE(r.premise == Itemset{daypart("midi")});
    }

    TEST_CASE("miner matches brute force on the fixture") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        check_against_oracle(ctx, Rational(1, 5), Rational(1));
        check_against_oracle(ctx, Rational(2, 5), Rational(1, 2));
    }

    TEST_CASE("miner matches brute force on random contexts") {
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> num(1, 4);
        for (int round = 0; round < 40; ++round) {
            const FormalContext ctx = random_context(rng, 8, 8);
            check_against_oracle(ctx, Rational(1, num(rng)), Rational(num(rng), 4));
        }
    }

    TEST_CASE("derive: augmentation") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto rules = generate_igb(ctx, mine_closed(ctx, Rational(1, 5)), Rational(1));
        const AssociationRule* printemps = nullptr;
        for (const auto& r : rules)
            if (r.premise == Itemset{season("printemps")}) printemps = &r;
        REQUIRE(printemps != nullptr);

        const auto derived =
            derive(ctx, *printemps, DerivationMode::Augmentation, {daypart("soir")});
        CHECK(derived.premise == make_itemset({season("printemps"), daypart("soir")}));
        CHECK(derived.conclusion == make_itemset({location("théâtre"), cls("art")}));
        CHECK(derived.support == Rational(1, 5));
        CHECK(derived.confidence == Rational(1));
    }

    TEST_CASE("derive: decomposition requires the closure condition") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto rules = generate_igb(ctx, mine_closed(ctx, Rational(1, 5)), Rational(1));
        const AssociationRule* printemps = nullptr;
        for (const auto& r : rules)
            if (r.premise == Itemset{season("printemps")}) printemps = &r;
        REQUIRE(printemps != nullptr);

        // ω({printemps,soir,théâtre}) is the whole row 2, so this subset is valid
        const Itemset subset = make_itemset({daypart("soir"), location("théâtre")});
        const auto derived = derive(ctx, *printemps, DerivationMode::Decomposition, subset);
        CHECK(derived.premise == Itemset{season("printemps")});
        CHECK(derived.conclusion == subset);
        CHECK(derived.confidence == Rational(1));

        // subset must be a proper subset
        CHECK_THROWS_AS(
            derive(ctx, *printemps, DerivationMode::Decomposition, printemps->conclusion),
            DomainError);
    }

    TEST_CASE("derived rules stay consistent with direct computation") {
        std::mt19937 rng(23);
        for (int round = 0; round < 20; ++round) {
            const FormalContext ctx = random_context(rng, 6, 6);
            const auto patterns = mine_closed(ctx, Rational(1, static_cast<int>(ctx.size())));
            const auto rules = generate_igb(ctx, patterns, Rational(1, 2));
            for (const auto& r : rules) {
                if (r.conclusion.size() < 2) continue;
                Itemset subset{r.conclusion.front()};
                const auto a1 = derive(ctx, r, DerivationMode::Augmentation, subset);
                CHECK(a1.support ==
                      support(ctx, set_union(a1.premise, a1.conclusion)));
                CHECK(a1.confidence ==
                      a1.support / support(ctx, a1.premise));
            }
        }
    }

    TEST_CASE("class_rules projects and merges") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const auto generic = generate_igb(ctx, mine_closed(ctx, Rational(1, 5)), Rational(1));
        const auto projected = class_rules(generic);
        bool printemps_art = false;
        for (const auto& r : projected) {
            CHECK(r.kind == RuleKind::ClassRule);
            REQUIRE(r.conclusion.size() == 1);
            CHECK(r.conclusion[0].dimension == Dimension::Class);
            for (const auto& it : r.premise) CHECK(it.dimension != Dimension::Class);
            if (r.premise == Itemset{season("printemps")} && r.conclusion[0] == cls("art"))
                printemps_art = true;
        }
        CHECK(printemps_art);
    }

    TEST_CASE("class_rules keeps the best duplicate") {
        AssociationRule weak{"R1", {season("hiver")}, make_itemset({location("plage"), cls("art")}),
                             Rational(1, 5), Rational(4, 5), RuleKind::Generic};
        AssociationRule strong{"R2", {season("hiver")}, {cls("art")}, Rational(1, 5), Rational(1),
                               RuleKind::Generic};
        AssociationRule with_class_premise{"R3", make_itemset({cls("surf")}), {cls("art")},
                                           Rational(1, 5), Rational(1), RuleKind::Generic};
        const auto projected = class_rules({weak, strong, with_class_premise});
        REQUIRE(projected.size() == 1);
        CHECK(projected[0].confidence == Rational(1));
    }

    TEST_CASE("rule file round-trip with ids in file order") {
        const auto rules = load_rules(fixture("rules.tsv"));
        REQUIRE(rules.size() == 5);
        CHECK(rules[3].id == "R4");
        CHECK(rules[3].premise == make_itemset({season("printemps"), daypart("soir")}));
        CHECK(rules[3].conclusion == Itemset{cls("art")});
        CHECK(rules[4].confidence == Rational(1, 2));

        const std::string tmp = "/tmp/rules_roundtrip.tsv";
        save_rules(tmp, rules);
        const auto reloaded = load_rules(tmp);
        REQUIRE(reloaded.size() == rules.size());
        for (std::size_t i = 0; i < rules.size(); ++i) {
            CHECK(reloaded[i].premise == rules[i].premise);
            CHECK(reloaded[i].conclusion == rules[i].conclusion);
            CHECK(reloaded[i].support == rules[i].support);
            CHECK(reloaded[i].confidence == rules[i].confidence);
        }
    }
}
