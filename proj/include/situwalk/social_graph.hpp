#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/graph.hpp"
#include "situwalk/text.hpp"
#include "situwalk/triples.hpp"

namespace situwalk {

using PersonId = std::string;

/// Person graph extracted from FOAF data: symmetric knows relation, interest
/// sets, and exactly one location per person. Immutable in use; the
/// recommendation operations return updated copies.
class SocialGraph {
public:
    SocialGraph() = default;

    SocialGraph(std::set<PersonId> persons, std::set<std::pair<PersonId, PersonId>> knows,
                std::map<PersonId, std::set<std::string>> interests,
                std::map<PersonId, std::string> location)
        : persons_(std::move(persons)),
          knows_(std::move(knows)),
          interests_(std::move(interests)),
          location_(std::move(location)) {
        std::vector<PersonId> missing;
        for (const auto& p : persons_) {
            if (!location_.count(p)) missing.push_back(p);
            interests_.try_emplace(p);
        }
        if (!missing.empty()) {
            std::string who;
            for (const auto& p : missing) who += (who.empty() ? "" : ", ") + p;
            throw DomainError("missing location for: " + who);
        }
        for (const auto& [a, b] : knows_)
            if (!persons_.count(a) || !persons_.count(b))
                throw DomainError("knows edge endpoint is not a person");
    }

    const std::set<PersonId>& persons() const noexcept { return persons_; }
    const std::set<std::pair<PersonId, PersonId>>& knows() const noexcept { return knows_; }

    bool knows_each_other(const PersonId& a, const PersonId& b) const {
        return knows_.count(ordered(a, b)) > 0;
    }
    const std::set<std::string>& interests_of(const PersonId& p) const {
        auto it = interests_.find(p);
        if (it == interests_.end()) throw DomainError("unknown person: " + p);
        return it->second;
    }
    const std::string& location_of(const PersonId& p) const {
        auto it = location_.find(p);
        if (it == location_.end()) throw DomainError("unknown person: " + p);
        return it->second;
    }

    std::size_t knows_degree(const PersonId& p) const {
        std::size_t d = 0;
        for (const auto& [a, b] : knows_)
            if (a == p || b == p) ++d;
        return d;
    }

    SocialGraph with_knows(const PersonId& a, const PersonId& b) const {
        if (!persons_.count(a) || !persons_.count(b))
            throw DomainError("unknown person in knows edge");
        if (a == b) throw DomainError("cannot befriend oneself");
        SocialGraph g = *this;
        g.knows_.insert(ordered(a, b));
        return g;
    }

    SocialGraph with_interest(const PersonId& p, const std::string& interest) const {
        if (!persons_.count(p)) throw DomainError("unknown person: " + p);
        SocialGraph g = *this;
        g.interests_[p].insert(interest);
        return g;
    }

    static std::pair<PersonId, PersonId> ordered(PersonId a, PersonId b) {
        return a <= b ? std::make_pair(std::move(a), std::move(b))
                      : std::make_pair(std::move(b), std::move(a));
    }

    /// Persons in increasing order with their dense indices; the common node
    /// numbering for all graphs derived from this one.
    std::vector<PersonId> index_order() const { return {persons_.begin(), persons_.end()}; }

    friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

private:
    std::set<PersonId> persons_;
    std::set<std::pair<PersonId, PersonId>> knows_;
    std::map<PersonId, std::set<std::string>> interests_;
    std::map<PersonId, std::string> location_;
};

/// Builds the person graph from FOAF-shaped triples. knows statements are
/// symmetrized; triples with other predicates are ignored. Every person must
/// end up with exactly one based_near location; with `lenient` the
/// lexicographically smallest of several wins, otherwise several is an error.
inline SocialGraph load_foaf(const std::vector<Triple>& triples, bool lenient = false) {
    std::set<PersonId> persons;
    std::set<std::pair<PersonId, PersonId>> knows;
    std::map<PersonId, std::set<std::string>> interests;
    std::map<PersonId, std::set<std::string>> locations;

    auto iri_object = [](const Triple& t) {
        if (!t.object.is_iri())
            throw DomainError("object of " + t.predicate + " must be an IRI: " + t.subject);
        return t.object.value;
    };

    for (const auto& t : triples) {
        if (t.predicate == vocab::kFoafKnows) {
            const std::string other = iri_object(t);
            persons.insert(t.subject);
            persons.insert(other);
            if (t.subject != other) knows.insert(SocialGraph::ordered(t.subject, other));
        } else if (t.predicate == vocab::kFoafInterest) {
            persons.insert(t.subject);
            interests[t.subject].insert(iri_object(t));
        } else if (t.predicate == vocab::kFoafBasedNear) {
            persons.insert(t.subject);
            locations[t.subject].insert(iri_object(t));
        }
    }

    std::map<PersonId, std::string> location;
    for (const auto& [p, locs] : locations) {
        if (locs.size() > 1 && !lenient) {
            throw DomainError("person " + p + " has " + std::to_string(locs.size()) +
                              " based_near locations (strict mode)");
        }
        location[p] = *locs.begin();
    }
    return SocialGraph(std::move(persons), std::move(knows), std::move(interests),
                       std::move(location));
}

/// Compact fixture form: TSV `person  knows|interest|based_near  target`.
inline SocialGraph load_social_tsv(const std::string& path, bool lenient = false) {
    std::vector<Triple> triples;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 3)
            throw ParseError("expected 3 columns `person relation target`", row.line);
        const std::string rel = trim(row.fields[1]);
        std::string predicate;
        if (rel == "knows") predicate = std::string(vocab::kFoafKnows);
        else if (rel == "interest") predicate = std::string(vocab::kFoafInterest);
        else if (rel == "based_near") predicate = std::string(vocab::kFoafBasedNear);
        else throw ParseError("unknown relation: " + rel, row.line);
        triples.push_back({trim(row.fields[0]), std::move(predicate),
                           Term::iri(trim(row.fields[2]))});
    }
    return load_foaf(triples, lenient);
}

/// Same-location graph: an edge joins two persons based near the same place,
/// so each location class forms a clique.
inline SimpleGraph location_graph(const SocialGraph& sg) {
    const auto order = sg.index_order();
    SimpleGraph g(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (sg.location_of(order[i]) == sg.location_of(order[j])) g.add_edge(i, j);
    return g;
}

/// Shared-interest graph over `members` (node ids follow the members' sorted
/// order).
inline SimpleGraph interest_graph(const SocialGraph& sg, const std::set<PersonId>& members) {
    std::vector<PersonId> order(members.begin(), members.end());
    for (const auto& p : order)
        if (!sg.persons().count(p)) throw DomainError("unknown member: " + p);
    SimpleGraph g(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& a = sg.interests_of(order[i]);
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto& b = sg.interests_of(order[j]);
            const auto& small = a.size() <= b.size() ? a : b;
            const auto& large = a.size() <= b.size() ? b : a;
            for (const auto& x : small)
                if (large.count(x)) {
                    g.add_edge(i, j);
                    break;
                }
        }
    }
    return g;
}

} // namespace situwalk
