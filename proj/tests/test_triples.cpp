#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "situwalk/triples.hpp"

using namespace situwalk;

TEST_SUITE("triples") {
    TEST_CASE("statement lines parse to triples") {
        const auto triples = parse_ntriples("<u:a> <foaf:knows> <u:b> .");
        REQUIRE(triples.size() == 1);
        CHECK(triples[0].subject == "u:a");
        CHECK(triples[0].predicate == "foaf:knows");
        CHECK(triples[0].object == Term::iri("u:b"));
    }

    TEST_CASE("literals with language tags") {
        const auto triples =
            parse_ntriples("<c:MonaLisa> <rdfs:label> \"Mona Lisa\"@EN .");
        REQUIRE(triples.size() == 1);
        CHECK(triples[0].object.kind == Term::Kind::Literal);
        CHECK(triples[0].object.value == "Mona Lisa");
        CHECK(triples[0].object.lang == "en");
    }

    TEST_CASE("comments and blank lines are skipped") {
        const auto triples = parse_ntriples("# header\n\n<a:x> <a:p> \"v\" .\n");
        CHECK(triples.size() == 1);
    }

    TEST_CASE("malformed lines abort with the line number") {
        CHECK_THROWS_WITH_AS(parse_ntriples("<a:x> <a:p> <a:y>"),
                             doctest::Contains("line 1"), ParseError);
        CHECK_THROWS_WITH_AS(parse_ntriples("<ok:s> <ok:p> <ok:o> .\n<a:x> <a:p> oops ."),
                             doctest::Contains("line 2"), ParseError);
        CHECK_THROWS_AS(parse_ntriples("<a:x> <a:p> _:blank ."), ParseError);
        CHECK_THROWS_AS(parse_ntriples("<a:x> <a:p> \"1\"^^<xsd:int> ."), ParseError);
        CHECK_THROWS_AS(parse_ntriples("<a:x> <a:p> \"bad\\q\" ."), ParseError);
    }

    TEST_CASE("escapes round-trip") {
        const std::string line = "<a:x> <a:p> \"a\\\"b\\\\c\\nd\\te\" .";
        const auto triples = parse_ntriples(line);
        REQUIRE(triples.size() == 1);
        CHECK(triples[0].object.value == "a\"b\\c\nd\te");
        CHECK(serialize_triple(triples[0]) == line);
    }

    TEST_CASE("parse-serialize-parse is the identity on the fixture store") {
        const auto first = parse_ntriples(read_file(fixture("concepts.nt")));
        const auto second = parse_ntriples(serialize_ntriples(first));
        CHECK(TripleStore(first).triples() == TripleStore(second).triples());
    }

    TEST_CASE("store deduplicates and orders") {
        const auto triples = parse_ntriples("<a:x> <a:p> <a:y> .\n<a:x> <a:p> <a:y> .");
        const TripleStore store(triples);
        CHECK(store.size() == 1);
    }

    TEST_CASE("query by bound positions") {
        const TripleStore store = TripleStore::from_file(fixture("concepts.nt"));
        const auto subjects = store.query("http://dbpedia.org/resource/Mona_Lisa",
                                          std::string(vocab::kDctermsSubject), std::nullopt);
        REQUIRE(subjects.size() == 2);
        CHECK(subjects[0].object.value == "http://dbpedia.org/resource/Category:1910s_films");
        CHECK(subjects[1].object.value == "http://dbpedia.org/resource/Category:Art");

        const auto exact = store.query("http://dbpedia.org/resource/Mona_Lisa",
                                       std::string(vocab::kDctermsSubject),
                                       Term::iri("http://dbpedia.org/resource/Category:Art"));
        CHECK(exact.size() == 1);

        CHECK(store.query("u:nobody", std::nullopt, std::nullopt).empty());
    }

    TEST_CASE("random stores: query results match the pattern and the store") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> pick(0, 3);
        for (int round = 0; round < 200; ++round) {
            std::vector<Triple> triples;
            const int count = pick(rng) + 2;
            for (int i = 0; i < count; ++i) {
                triples.push_back({"s:" + std::to_string(pick(rng)),
                                   "p:" + std::to_string(pick(rng)),
                                   Term::iri("o:" + std::to_string(pick(rng)))});
            }
            const TripleStore store(std::move(triples));
            TriplePattern pattern;
            if (pick(rng) < 2) pattern.subject = "s:" + std::to_string(pick(rng));
            if (pick(rng) < 2) pattern.predicate = "p:" + std::to_string(pick(rng));
            if (pick(rng) < 1) pattern.object = Term::iri("o:" + std::to_string(pick(rng)));
            const auto results = store.query(pattern);
            for (const auto& t : results) {
                if (pattern.subject) CHECK(t.subject == *pattern.subject);
                if (pattern.predicate) CHECK(t.predicate == *pattern.predicate);
                if (pattern.object) CHECK(t.object == *pattern.object);
                CHECK(std::count(store.triples().begin(), store.triples().end(), t) == 1);
            }
            // completeness: every store triple matching the pattern is returned
            std::size_t matching = 0;
            for (const auto& t : store.triples()) {
                const bool ok = (!pattern.subject || t.subject == *pattern.subject) &&
                                (!pattern.predicate || t.predicate == *pattern.predicate) &&
                                (!pattern.object || t.object == *pattern.object);
                if (ok) ++matching;
            }
            CHECK(results.size() == matching);
        }
    }
}
