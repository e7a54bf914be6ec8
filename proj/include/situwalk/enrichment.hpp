#pragma once

#include <array>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "situwalk/concepts.hpp"
#include "situwalk/errors.hpp"
#include "situwalk/mining.hpp"
#include "situwalk/situation.hpp"
#include "situwalk/triples.hpp"

namespace situwalk {

/// Classification rule base: situation premises concluding one interest.
class RuleBase {
public:
    RuleBase() = default;
    explicit RuleBase(std::vector<AssociationRule> rules) : rules_(std::move(rules)) {
        for (const auto& r : rules_) {
            for (const auto& it : r.premise)
                if (it.dimension == Dimension::Class)
                    throw DomainError("rule " + r.id + " has a class item in its premise");
            if (r.conclusion.size() != 1 || r.conclusion[0].dimension != Dimension::Class)
                throw DomainError("rule " + r.id + " does not conclude exactly one class");
        }
    }

    static RuleBase from_file(const std::string& path) { return RuleBase(load_rules(path)); }

    const std::vector<AssociationRule>& rules() const noexcept { return rules_; }
    bool empty() const noexcept { return rules_.empty(); }

private:
    std::vector<AssociationRule> rules_;
};

/// Append-only (situation, interest) log feeding the next mining run.
class LearningBase {
public:
    struct Entry {
        Situation situation;
        std::string interest;
    };

    void append(Situation s, std::string interest) {
        entries_.push_back({std::move(s), normalize_token(interest)});
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Appends all entries to a TSV `location  season  daypart  interest`.
    void append_to_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::app);
        if (!out) throw DomainError("cannot open learning base for append: " + path);
        for (const auto& e : entries_)
            out << e.situation.location_type << '\t' << season_token(e.situation.season) << '\t'
                << day_part_token(e.situation.day_part) << '\t' << e.interest << '\n';
    }

    static LearningBase from_file(const std::string& path) {
        LearningBase lb;
        for (const auto& row : read_tsv(path)) {
            if (row.fields.size() != 4)
                throw ParseError("expected 4 columns `location season daypart interest`",
                                 row.line);
            const Item season_item = item_from_bare_token(row.fields[1]);
            const Item daypart_item = item_from_bare_token(row.fields[2]);
            if (season_item.dimension != Dimension::Season ||
                daypart_item.dimension != Dimension::DayPart)
                throw ParseError("unknown season or day-part token", row.line);
            Season season{};
            for (auto s : {Season::Spring, Season::Summer, Season::Autumn, Season::Winter})
                if (season_token(s) == season_item.value) season = s;
            DayPart part{};
            for (auto d : {DayPart::Morning, DayPart::Midday, DayPart::Evening})
                if (day_part_token(d) == daypart_item.value) part = d;
            lb.append(Situation(row.fields[0], season, part), row.fields[3]);
        }
        return lb;
    }

    /// Entries as mining transactions: three situation items plus the
    /// interest as the class.
    std::vector<Itemset> as_transactions() const {
        std::vector<Itemset> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) {
            Itemset t = e.situation.as_itemset();
            t = set_union(t, {make_item(Dimension::Class, e.interest)});
            out.push_back(std::move(t));
        }
        return out;
    }

private:
    std::vector<Entry> entries_;
};

struct EnrichmentResult {
    std::string enriched_query;
    std::string interest; // canonical token
    Situation situation;
    bool from_rule;                       // rule match vs knowledge-base fallback
    std::string rule_id;                  // when from_rule
    int rule_overlap = 0;                 // when from_rule
    std::vector<std::string> considered;  // fallback: candidate concepts
};

/// Rules whose premise shares at least two dimensions with the situation,
/// with their overlap scores, in rule-base order.
inline std::vector<std::pair<AssociationRule, int>> eligible_rules(const RuleBase& rb,
                                                                   const Situation& s) {
    std::vector<std::pair<AssociationRule, int>> out;
    for (const auto& r : rb.rules()) {
        const int score = overlap(s, r.premise);
        if (score >= kSimilarityGate) out.emplace_back(r, score);
    }
    return out;
}

/// Best eligible rule by overlap, then confidence, then support, then rule id
/// (ascending). Returns nothing for an empty list.
inline std::optional<AssociationRule> select_rule(
    const std::vector<std::pair<AssociationRule, int>>& scored) {
    const std::pair<AssociationRule, int>* best = nullptr;
    auto better = [](const std::pair<AssociationRule, int>& a,
                     const std::pair<AssociationRule, int>& b) {
        if (a.second != b.second) return a.second > b.second;
        if (a.first.confidence != b.first.confidence) return a.first.confidence > b.first.confidence;
        if (a.first.support != b.first.support) return a.first.support > b.first.support;
        return a.first.id < b.first.id;
    };
    for (const auto& candidate : scored)
        if (!best || better(candidate, *best)) best = &candidate;
    if (!best) return std::nullopt;
    return best->first;
}

/// The query-enrichment pipeline: classify the situation against the rule
/// base; on a match, take the rule's interest; otherwise fall back to the
/// knowledge base (and record the new (situation, interest) pair in the
/// learning base). The enriched query is the original query, one space, and
/// the interest's surface form.
inline EnrichmentResult enrich_query(const std::string& query, const Situation& s,
                                     const RuleBase& rb, const TripleStore& store,
                                     LearningBase& lb, const ConceptConfig& cfg = {}) {
    const std::string q = trim(query);
    if (q.empty()) throw DomainError("query is empty");

    EnrichmentResult res{.enriched_query = {},
                         .interest = {},
                         .situation = s,
                         .from_rule = false,
                         .rule_id = {},
                         .rule_overlap = 0,
                         .considered = {}};

    if (auto chosen = select_rule(eligible_rules(rb, s))) {
        res.from_rule = true;
        res.rule_id = chosen->id;
        res.rule_overlap = overlap(s, chosen->premise);
        res.interest = chosen->conclusion[0].value;
    } else {
        const auto query_concept = concept_by_label(store, q);
        if (!query_concept)
            throw DomainError("no interest found: query \"" + q + "\" maps to no concept");
        const auto location_concept = concept_by_label(store, s.location_type);
        if (!location_concept)
            throw DomainError("no interest found: location type \"" + s.location_type +
                              "\" maps to no concept");
        res.considered = extract_interest(store, *query_concept, *location_concept, cfg);
        if (res.considered.empty())
            throw DomainError("no interest found: no concept relates \"" + q + "\" to \"" +
                              s.location_type + "\"");
        res.interest = local_name(most_frequent(res.considered), cfg);
        lb.append(s, res.interest);
    }
    res.enriched_query = q + " " + token_surface(res.interest);
    return res;
}

/// A remembered (situation, interest) case for the case-based baseline.
struct CbrCase {
    Situation situation;
    std::string interest;
};

/// Weighted per-dimension similarity with an acceptance threshold. The
/// default per-dimension metric is equality (1 or 0).
struct CbrConfig {
    std::array<double, 3> weights{1.0, 1.0, 1.0}; // location, season, day part
    double threshold = 2.0;
    std::function<double(const std::string&, const std::string&)> location_sim;

    double dimension_weight_sum() const { return weights[0] + weights[1] + weights[2]; }
};

/// Retrieves the stored case maximizing the weighted similarity sum; returns
/// nothing when even the best case scores below the threshold. Ties keep the
/// earliest case.
inline std::optional<std::pair<CbrCase, double>> cbr_select(const std::vector<CbrCase>& cases,
                                                            const Situation& s,
                                                            const CbrConfig& cfg = {}) {
    if (!(cfg.dimension_weight_sum() > 0)) throw DomainError("CBR weights must sum to > 0");
    for (double w : cfg.weights)
        if (w < 0) throw DomainError("CBR weights must be nonnegative");

    std::optional<std::pair<CbrCase, double>> best;
    for (const auto& c : cases) {
        double score = 0.0;
        if (cfg.location_sim)
            score += cfg.weights[0] * cfg.location_sim(s.location_type, c.situation.location_type);
        else if (s.location_type == c.situation.location_type)
            score += cfg.weights[0];
        if (s.season == c.situation.season) score += cfg.weights[1];
        if (s.day_part == c.situation.day_part) score += cfg.weights[2];
        if (!best || score > best->second) best = {c, score};
    }
    if (!best || best->second < cfg.threshold) return std::nullopt;
    return best;
}

} // namespace situwalk
