#include "doctest.h"

#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "situwalk/formal_context.hpp"

using namespace situwalk;

namespace {

Item season(const char* v) { return make_item(Dimension::Season, v); }
Item daypart(const char* v) { return make_item(Dimension::DayPart, v); }
Item location(const char* v) { return make_item(Dimension::LocationType, v); }
Item cls(const char* v) { return make_item(Dimension::Class, v); }

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace

TEST_SUITE("formal-context") {
    TEST_CASE("fixture loads with 5 transactions and 16 distinct items") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        CHECK(ctx.size() == 5);
        // 4 seasons + 3 day parts + 5 location types + 4 classes
        CHECK(ctx.universe().size() == 16);
    }

    TEST_CASE("empty data section is a valid context") {
        const auto path = write_temp("ctx_empty.tsv", "season\tdaypart\tlocation\tclass\n");
        const FormalContext ctx = load_context(path);
        CHECK(ctx.size() == 0);
        CHECK(ctx.universe().empty());
    }

    TEST_CASE("two class values in one row name the row") {
        const auto path = write_temp("ctx_dupclass.tsv",
                                     "season\tclass\tclass\n"
                                     "hiver\tart\tsurf\n");
        CHECK_THROWS_WITH_AS(load_context(path), doctest::Contains("line 2"), ParseError);
    }

    TEST_CASE("wrong column count names the row") {
        const auto path = write_temp("ctx_short.tsv",
                                     "season\tdaypart\tlocation\tclass\n"
                                     "hiver\tmatin\tplage\n");
        CHECK_THROWS_WITH_AS(load_context(path), doctest::Contains("line 2"), ParseError);
    }

    TEST_CASE("closure on the fixture") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        // midi appears in rows 1 and 5 whose only common item it is
        CHECK(closure(ctx, {daypart("midi")}) == Itemset{daypart("midi")});
        // printemps appears only in row 2
        CHECK(closure(ctx, {season("printemps")}) ==
              make_itemset({season("printemps"), daypart("soir"), location("théâtre"), cls("art")}));
        // nothing is common to all five rows
        CHECK(closure(ctx, {}).empty());
    }

    TEST_CASE("closure of an uncontained itemset is the universe") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        const Itemset no_extent = make_itemset({season("hiver"), season("été")});
        CHECK(closure(ctx, no_extent) == ctx.universe());
    }

    TEST_CASE("closure rejects items outside the universe") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        CHECK_THROWS_AS(closure(ctx, {location("volcan")}), DomainError);
    }

    TEST_CASE("support on the fixture") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        CHECK(support(ctx, make_itemset({season("printemps"), daypart("soir")})) == Rational(1, 5));
        CHECK(support(ctx, {}) == Rational(1));
        CHECK(support(ctx, make_itemset({season("été"), daypart("matin")})) == Rational(1, 5));
    }

    TEST_CASE("closure properties on random itemsets") {
        const FormalContext ctx = load_context(fixture("context.tsv"));
        std::mt19937 rng(7);
        const auto& universe = ctx.universe();
        std::uniform_int_distribution<std::size_t> size_dist(0, 4);
        std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
        for (int round = 0; round < 1000; ++round) {
            std::vector<Item> items;
            const std::size_t k = size_dist(rng);
            for (std::size_t i = 0; i < k; ++i) items.push_back(universe[pick(rng)]);
            const Itemset x = make_itemset(std::move(items));
            const Itemset cx = closure(ctx, x);
            CHECK(is_subset(x, cx));       // extensive
            CHECK(closure(ctx, cx) == cx); // idempotent
            Itemset y = x;
            if (!y.empty()) y.pop_back(); // y ⊆ x ⇒ ω(y) ⊆ ω(x)
            CHECK(is_subset(closure(ctx, y), cx));
        }
    }
}
