#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/formal_context.hpp"
#include "situwalk/items.hpp"
#include "situwalk/rational.hpp"

namespace situwalk {

/// A frequent closed itemset together with its complete set of minimal
/// generators (subsets with the same closure, minimal under inclusion).
struct ClosedPattern {
    Itemset closed;
    Rational support;
    std::vector<Itemset> generators;
};

enum class RuleKind { Generic, ClassRule };

struct AssociationRule {
    std::string id;
    Itemset premise;
    Itemset conclusion;
    Rational support;
    Rational confidence;
    RuleKind kind = RuleKind::Generic;

    std::string str() const {
        return id + ": " + itemset_str(premise) + " => " + itemset_str(conclusion) +
               " (sup " + support.str() + ", conf " + confidence.str() + ")";
    }
};

namespace detail {

/// Every closed itemset with a non-empty extent is an intersection of some
/// set of transactions; folding each transaction into the accumulated family
/// of intersections enumerates them all.
inline std::set<Itemset> closed_family(const FormalContext& ctx) {
    std::set<Itemset> family;
    for (const auto& t : ctx.transactions()) {
        std::set<Itemset> next = family;
        next.insert(t);
        for (const auto& c : family) next.insert(set_intersection(c, t));
        family = std::move(next);
    }
    return family;
}

/// Minimal generators of `f`: smallest subsets with the same extent. Since
/// g ⊆ f implies extent(g) ⊇ extent(f), equality of supports is equality of
/// extents. Searched bottom-up by size so minimality falls out of pruning.
inline std::vector<Itemset> minimal_generators(const FormalContext& ctx, const Itemset& f,
                                               const Rational& f_support) {
    std::vector<Itemset> found;
    const std::size_t m = f.size();
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k <= m; ++k) {
        idx.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Itemset g;
            g.reserve(k);
            for (std::size_t i : idx) g.push_back(f[i]);
            bool covered = false;
            for (const auto& seen : found)
                if (is_subset(seen, g)) {
                    covered = true;
                    break;
                }
            if (!covered && support(ctx, g) == f_support) found.push_back(g);

            // next k-combination of {0..m-1}
            if (k == 0) break;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found.empty() && k == 0) break; // ∅ generates f; nothing else can be minimal
    }
    std::sort(found.begin(), found.end(), itemset_less);
    return found;
}

} // namespace detail

/// All closed itemsets with support >= minsup, each with its minimal
/// generators, ordered by (size, lexicographic).
inline std::vector<ClosedPattern> mine_closed(const FormalContext& ctx, const Rational& minsup) {
    if (!(Rational(0) < minsup && minsup <= Rational(1)))
        throw DomainError("minsup must be in (0,1], got " + minsup.str());
    std::vector<ClosedPattern> out;
    for (const auto& c : detail::closed_family(ctx)) {
        const Rational sup = support(ctx, c);
        if (sup < minsup) continue;
        out.push_back({c, sup, detail::minimal_generators(ctx, c, sup)});
    }
    std::sort(out.begin(), out.end(),
              [](const ClosedPattern& a, const ClosedPattern& b) {
                  return itemset_less(a.closed, b.closed);
              });
    return out;
}

namespace detail {

/// Smallest-premise test for the generic base: a premise is rejected when any
/// proper subset already reaches minconf toward the same closed target.
inline bool proper_subset_reaches_minconf(const FormalContext& ctx, const Itemset& premise,
                                          const Rational& target_support,
                                          const Rational& minconf) {
    const std::size_t m = premise.size();
    for (std::size_t mask = 0; mask + 1 < (std::size_t(1) << m); ++mask) {
        Itemset sub;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t(1) << i)) sub.push_back(premise[i]);
        if (target_support / support(ctx, sub) >= minconf) return true;
    }
    return false;
}

} // namespace detail

/// Generic rule base over the mined patterns: for each frequent closed set I
/// and each minimal generator g of a frequent closed subset of I, emit
/// g => I \ g when the confidence clears minconf and no proper subset of g
/// does. Premises can be empty (rules stating an unconditional frequent set).
inline std::vector<AssociationRule> generate_igb(const FormalContext& ctx,
                                                 const std::vector<ClosedPattern>& patterns,
                                                 const Rational& minconf) {
    if (!(Rational(0) < minconf && minconf <= Rational(1)))
        throw DomainError("minconf must be in (0,1], got " + minconf.str());
    std::vector<AssociationRule> rules;
    for (const auto& target : patterns) {
        for (const auto& f : patterns) {
            if (!is_subset(f.closed, target.closed)) continue;
            for (const auto& g : f.generators) {
                Itemset conclusion = set_difference(target.closed, g);
                if (conclusion.empty()) continue;
                const Rational conf = target.support / f.support;
                if (conf < minconf) continue;
                if (detail::proper_subset_reaches_minconf(ctx, g, target.support, minconf))
                    continue;
                rules.push_back({"", g, std::move(conclusion), target.support, conf,
                                 RuleKind::Generic});
            }
        }
    }
    std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.premise != b.premise) return itemset_less(a.premise, b.premise);
        return itemset_less(a.conclusion, b.conclusion);
    });
    for (std::size_t i = 0; i < rules.size(); ++i) rules[i].id = "R" + std::to_string(i + 1);
    return rules;
}

enum class DerivationMode { Augmentation, Decomposition };

/// Derivation axioms over the generic base. Augmentation moves part of the
/// conclusion into the premise; Decomposition truncates the conclusion when
/// the closure condition ω(premise ∪ subset) = premise ∪ conclusion holds.
/// Support and confidence are recomputed against the context.
inline AssociationRule derive(const FormalContext& ctx, const AssociationRule& rule,
                              DerivationMode mode, const Itemset& subset) {
    if (subset.empty() || !is_subset(subset, rule.conclusion) || subset == rule.conclusion)
        throw DomainError("derivation: subset must be a non-empty proper subset of the conclusion");
    AssociationRule out;
    if (mode == DerivationMode::Augmentation) {
        out.premise = set_union(rule.premise, subset);
        out.conclusion = set_difference(rule.conclusion, subset);
    } else {
        const Itemset extended = set_union(rule.premise, subset);
        const Itemset full = set_union(rule.premise, rule.conclusion);
        if (closure(ctx, extended) != full)
            throw DomainError("derivation: closure(premise ∪ subset) differs from the rule's itemset");
        out.premise = rule.premise;
        out.conclusion = subset;
    }
    out.id = rule.id;
    out.kind = rule.kind;
    out.support = support(ctx, set_union(out.premise, out.conclusion));
    out.confidence = out.support / support(ctx, out.premise);
    return out;
}

/// Projection onto class conclusions: keeps rules concluding an interest with
/// a class-free premise, trims the conclusion to the class item, and merges
/// duplicates keeping the best (confidence, support).
inline std::vector<AssociationRule> class_rules(const std::vector<AssociationRule>& rules) {
    std::map<std::pair<Itemset, Item>, AssociationRule> merged;
    for (const auto& r : rules) {
        bool premise_has_class = false;
        for (const auto& it : r.premise)
            if (it.dimension == Dimension::Class) premise_has_class = true;
        if (premise_has_class) continue;
        const Item* cls = nullptr;
        for (const auto& it : r.conclusion)
            if (it.dimension == Dimension::Class) {
                cls = &it;
                break;
            }
        if (!cls) continue;
        AssociationRule projected{r.id, r.premise, {*cls}, r.support, r.confidence,
                                  RuleKind::ClassRule};
        auto key = std::make_pair(r.premise, *cls);
        auto [pos, inserted] = merged.try_emplace(std::move(key), projected);
        if (!inserted) {
            auto& kept = pos->second;
            if (std::pair(projected.confidence, projected.support) >
                std::pair(kept.confidence, kept.support))
                kept = projected;
        }
    }
    std::vector<AssociationRule> out;
    out.reserve(merged.size());
    for (auto& [key, rule] : merged) out.push_back(std::move(rule));
    std::sort(out.begin(), out.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.premise != b.premise) return itemset_less(a.premise, b.premise);
        return a.conclusion < b.conclusion;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = "R" + std::to_string(i + 1);
    return out;
}

/// Rule-base file: one rule per line, `premise-tokens  class  support  confidence`
/// with premise tokens comma-separated ("-" for an empty premise). Rule ids
/// follow file order: R1, R2, ...
inline std::vector<AssociationRule> load_rules(const std::string& path) {
    std::vector<AssociationRule> rules;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 4)
            throw ParseError("expected 4 columns `premise class support confidence`", row.line);
        std::vector<Item> premise_items;
        const std::string premise_field = trim(row.fields[0]);
        if (premise_field != "-") {
            for (const auto& tok : split(premise_field, ',')) {
                if (trim(tok).empty()) throw ParseError("empty premise token", row.line);
                premise_items.push_back(item_from_bare_token(tok));
            }
        }
        AssociationRule r;
        r.id = "R" + std::to_string(rules.size() + 1);
        r.premise = make_itemset(std::move(premise_items));
        r.conclusion = {make_item(Dimension::Class, row.fields[1])};
        try {
            r.support = Rational::parse(row.fields[2]);
            r.confidence = Rational::parse(row.fields[3]);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), row.line);
        }
        if (!(Rational(0) < r.confidence && r.confidence <= Rational(1)))
            throw ParseError("confidence out of (0,1]: " + r.confidence.str(), row.line);
        r.kind = RuleKind::ClassRule;
        rules.push_back(std::move(r));
    }
    return rules;
}

inline void save_rules(const std::string& path, const std::vector<AssociationRule>& rules) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write file: " + path);
    for (const auto& r : rules) {
        std::string premise;
        for (std::size_t i = 0; i < r.premise.size(); ++i) {
            if (i) premise += ",";
            premise += r.premise[i].value;
        }
        if (premise.empty()) premise = "-";
        const Item* cls = nullptr;
        for (const auto& it : r.conclusion)
            if (it.dimension == Dimension::Class) cls = &it;
        if (!cls) throw DomainError("rule " + r.id + " has no class conclusion; cannot serialize");
        out << premise << '\t' << cls->value << '\t' << r.support.str() << '\t'
            << r.confidence.str() << '\n';
    }
}

} // namespace situwalk
