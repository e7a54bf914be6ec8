#include "doctest.h"

#include "fixtures.hpp"
#include "situwalk/enrichment.hpp"
#include "situwalk/eval.hpp"
#include "situwalk/recommend.hpp"

using namespace situwalk;

// The two pipelines interact through predicted interests: an interest found
// during query enrichment joins the person's description, which changes
// their community membership and therefore future friend candidates.

TEST_SUITE("pipeline") {
    TEST_CASE("a predicted interest creates a recommendation on rerun") {
        const auto triples = parse_ntriples(
            "<u:alice> <http://xmlns.com/foaf/0.1/based_near> <loc:paris> .\n"
            "<u:bob> <http://xmlns.com/foaf/0.1/based_near> <loc:paris> .\n"
            "<u:bob> <http://xmlns.com/foaf/0.1/interest> <art> .\n"
            "<u:carol> <http://xmlns.com/foaf/0.1/based_near> <loc:lyon> .\n"
            "<u:carol> <http://xmlns.com/foaf/0.1/interest> <art> .");
        const SocialGraph before = load_foaf(triples);

        // alice shares no interest yet: nothing to recommend
        CHECK(recommend_friends(before, discover_communities(before, 4), "u:alice")
                  .candidates.empty());

        // alice asks about Mona Lisa at the Louvre in a spring evening; the
        // fixture rule base resolves the interest
        const RuleBase rules = RuleBase::from_file(fixture("rules.tsv"));
        const TripleStore store = TripleStore::from_file(fixture("concepts.nt"));
        LearningBase lb;
        const Situation louvre("musée", Season::Spring, DayPart::Evening);
        const EnrichmentResult res = enrich_query("Mona Lisa", louvre, rules, store, lb);
        CHECK(res.interest == "art");

        const SocialGraph after = interest_update(before, "u:alice", res.interest);
        const auto communities = discover_communities(after, 4);
        const Recommendation rec = recommend_friends(after, communities, "u:alice");
        REQUIRE(rec.candidates.size() == 1);
        // bob shares the new interest and the location; carol only the interest
        CHECK(rec.candidates[0].person == "u:bob");
        CHECK(rec.candidates[0].location_label == "loc:paris");
        CHECK(rec.candidates[0].interest_label == "art");

        // accepting the candidate grows alice's circle, visible in growth rows
        const SocialGraph linked = apply_recommendations(after, rec, {"u:bob"});
        const auto rows = growth_stats(after, linked, communities);
        bool paris_grew = false;
        for (const auto& row : rows) {
            if (row.label != "loc:paris") continue;
            paris_grew = true;
            CHECK(row.before_avg == Rational(0));
            CHECK(row.after_avg == Rational(1));
            CHECK_FALSE(row.percent.has_value()); // growth from zero is undefined
        }
        CHECK(paris_grew);
    }

    TEST_CASE("fallback interests reach the next mining run through the learning base") {
        const TripleStore store = TripleStore::from_file(fixture("concepts.nt"));
        LearningBase lb;
        // beach evenings appear in no context row, so the mined rule can
        // reach full confidence
        const Situation beach("plage", Season::Summer, DayPart::Evening);
        enrich_query("sport", beach, RuleBase{}, store, lb);
        REQUIRE(lb.size() == 1);

        // the logged pair becomes a transaction and mines into a class rule
        FormalContext ctx = load_context(fixture("context.tsv"));
        std::vector<Itemset> transactions = ctx.transactions();
        for (auto& t : lb.as_transactions()) transactions.push_back(std::move(t));
        ctx = FormalContext(std::move(transactions));

        const auto classifier =
            class_rules(generate_igb(ctx, mine_closed(ctx, Rational(1, 6)), Rational(1)));
        bool beach_polo_rule = false;
        for (const auto& r : classifier)
            if (r.conclusion[0].value == "beach_polo") beach_polo_rule = true;
        CHECK(beach_polo_rule);

        // and that rule now answers the same situation without the fallback
        const RuleBase learned(classifier);
        LearningBase lb2;
        const auto res = enrich_query("sport", beach, learned, store, lb2);
        CHECK(res.from_rule);
        CHECK(res.interest == "beach_polo");
        CHECK(lb2.size() == 0);
    }
}
