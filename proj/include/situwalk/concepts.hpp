#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/text.hpp"
#include "situwalk/triples.hpp"

namespace situwalk {

struct ConceptConfig {
    /// IRIs with this prefix are treated as categories regardless of their
    /// broader-links.
    std::string category_prefix = std::string(vocab::kCategoryPrefix);
    /// Maximum hop count both for sub-category walks and for the semantic
    /// connection test toward the location concept.
    int depth = 2;
};

/// The concept whose rdfs:label equals the query after normalization
/// (case-fold, trim, spaces and underscores equivalent); smallest IRI wins
/// when several match.
inline std::optional<std::string> concept_by_label(const TripleStore& store,
                                                   const std::string& label) {
    const std::string wanted = normalize_token(label);
    std::optional<std::string> best;
    for (const auto& t : store.query(std::nullopt, std::string(vocab::kRdfsLabel), std::nullopt)) {
        if (t.object.is_iri()) continue;
        if (normalize_token(t.object.value) != wanted) continue;
        if (!best || t.subject < *best) best = t.subject;
    }
    return best;
}

/// Last path segment of an IRI as a token; the category prefix is stripped
/// first so category IRIs yield their plain name.
inline std::string local_name(const std::string& iri, const ConceptConfig& cfg = {}) {
    std::string rest = iri;
    if (!cfg.category_prefix.empty() && rest.starts_with(cfg.category_prefix)) {
        rest = rest.substr(cfg.category_prefix.size());
    } else {
        const auto cut = rest.find_last_of("/#");
        if (cut != std::string::npos) rest = rest.substr(cut + 1);
        if (const auto colon = rest.rfind(':'); colon != std::string::npos)
            rest = rest.substr(colon + 1);
    }
    return normalize_token(rest);
}

namespace detail {

/// A concept counts as a category when something links to it via
/// skos:broader or when its IRI carries the configured category prefix.
inline bool is_category(const TripleStore& store, const std::string& iri,
                        const ConceptConfig& cfg) {
    if (!cfg.category_prefix.empty() && iri.starts_with(cfg.category_prefix)) return true;
    return !store.query(std::nullopt, std::string(vocab::kSkosBroader), Term::iri(iri)).empty();
}

/// Undirected bounded-depth reachability over skos:broader and
/// dcterms:subject.
inline bool connected_within(const TripleStore& store, const std::string& from,
                             const std::string& to, int depth) {
    if (from == to) return true;
    std::set<std::string> seen{from};
    std::deque<std::pair<std::string, int>> frontier{{from, 0}};
    const std::string broader(vocab::kSkosBroader), subject(vocab::kDctermsSubject);
    while (!frontier.empty()) {
        auto [iri, dist] = frontier.front();
        frontier.pop_front();
        if (dist == depth) continue;
        std::vector<std::string> next;
        for (const auto& pred : {broader, subject}) {
            for (const auto& t : store.query(iri, pred, std::nullopt))
                if (t.object.is_iri()) next.push_back(t.object.value);
            for (const auto& t : store.query(std::nullopt, pred, Term::iri(iri)))
                next.push_back(t.subject);
        }
        for (auto& n : next) {
            if (n == to) return true;
            if (seen.insert(n).second) frontier.push_back({n, dist + 1});
        }
    }
    return false;
}

/// Concepts reachable from `root` against the direction of skos:broader
/// (i.e. its sub-categories) within `depth` hops.
inline std::set<std::string> narrower_within(const TripleStore& store, const std::string& root,
                                             int depth) {
    std::set<std::string> out;
    std::deque<std::pair<std::string, int>> frontier{{root, 0}};
    std::set<std::string> seen{root};
    while (!frontier.empty()) {
        auto [iri, dist] = frontier.front();
        frontier.pop_front();
        if (dist == depth) continue;
        for (const auto& t :
             store.query(std::nullopt, std::string(vocab::kSkosBroader), Term::iri(iri))) {
            if (seen.insert(t.subject).second) {
                out.insert(t.subject);
                frontier.push_back({t.subject, dist + 1});
            }
        }
    }
    return out;
}

} // namespace detail

/// Interest candidates for a query concept given the location-type concept.
/// For a category: its sub-categories (broader-paths of length <= depth)
/// that are semantically connected to the location. For anything else: the
/// categories it is dcterms:subject of, filtered the same way.
inline std::vector<std::string> extract_interest(const TripleStore& store,
                                                 const std::string& query_concept,
                                                 const std::string& location_concept,
                                                 const ConceptConfig& cfg = {}) {
    if (cfg.depth < 1) throw DomainError("interest extraction depth must be >= 1");
    if (!store.mentions(query_concept)) throw DomainError("unknown concept: " + query_concept);
    if (!store.mentions(location_concept))
        throw DomainError("unknown concept: " + location_concept);

    std::set<std::string> candidates;
    if (detail::is_category(store, query_concept, cfg)) {
        candidates = detail::narrower_within(store, query_concept, cfg.depth);
    } else {
        for (const auto& t :
             store.query(query_concept, std::string(vocab::kDctermsSubject), std::nullopt))
            if (t.object.is_iri()) candidates.insert(t.object.value);
    }

    std::vector<std::string> out;
    for (const auto& c : candidates)
        if (detail::connected_within(store, c, location_concept, cfg.depth)) out.push_back(c);
    return out; // set iteration is already lexicographic
}

/// Highest occurrence count wins; ties go to the lexicographically smaller
/// IRI.
inline std::string most_frequent(const std::vector<std::string>& concepts) {
    if (concepts.empty()) throw DomainError("most_frequent over an empty concept list");
    std::map<std::string, std::size_t> counts;
    for (const auto& c : concepts) ++counts[c];
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [iri, count] : counts) {
        if (!best || count > best_count) {
            best = &iri;
            best_count = count;
        }
    }
    return *best;
}

} // namespace situwalk
