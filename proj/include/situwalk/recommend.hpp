#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "situwalk/community.hpp"
#include "situwalk/errors.hpp"
#include "situwalk/graph.hpp"
#include "situwalk/social_graph.hpp"

namespace situwalk {

/// A community found by one of the two passes, labeled by the members'
/// shared location and (for the second pass) their dominant shared interest.
struct LabeledCommunity {
    enum class Level { Location, Interest };

    Level level;
    std::string location_label;
    std::optional<std::string> interest_label; // Interest level; none for singletons
    std::set<PersonId> members;
};

struct Recommendation {
    PersonId target;
    struct Candidate {
        PersonId person;
        std::string location_label;
        std::optional<std::string> interest_label;
    };
    std::vector<Candidate> candidates;
};

namespace detail {

/// Most common interest shared by at least two members; ties lexicographic.
inline std::optional<std::string> shared_interest_label(const SocialGraph& sg,
                                                        const std::set<PersonId>& members) {
    if (members.size() < 2) return std::nullopt;
    std::map<std::string, std::size_t> counts;
    for (const auto& p : members)
        for (const auto& i : sg.interests_of(p)) ++counts[i];
    std::optional<std::string> best;
    std::size_t best_count = 1;
    for (const auto& [interest, count] : counts) {
        if (count > best_count) {
            best = interest;
            best_count = count;
        }
    }
    return best;
}

} // namespace detail

/// Two-pass community discovery: Walktrap over the same-location graph, then
/// Walktrap over the shared-interest graph inside each location community.
/// Location communities come first, then interest communities, each ordered
/// by (label, smallest member).
inline std::vector<LabeledCommunity> discover_communities(
    const SocialGraph& sg, int t = 4, WalkBackend backend = WalkBackend::Dense) {
    const std::vector<PersonId> order = sg.index_order();
    std::vector<LabeledCommunity> out;

    const Partition location_pass = detect_walktrap(location_graph(sg), t, backend);
    std::vector<std::set<PersonId>> location_members;
    for (const auto& block : location_pass.blocks) {
        std::set<PersonId> members;
        for (auto idx : block) members.insert(order[idx]);
        const std::string& label = sg.location_of(*members.begin());
        for (const auto& p : members)
            if (sg.location_of(p) != label)
                throw DomainError("location community mixes locations; clustering is inconsistent");
        out.push_back({LabeledCommunity::Level::Location, label, std::nullopt, members});
        location_members.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const LabeledCommunity& a, const LabeledCommunity& b) {
        if (a.location_label != b.location_label) return a.location_label < b.location_label;
        return *a.members.begin() < *b.members.begin();
    });

    std::vector<LabeledCommunity> interest_level;
    for (const auto& members : location_members) {
        const std::vector<PersonId> sub_order(members.begin(), members.end());
        const Partition interest_pass =
            detect_walktrap(interest_graph(sg, members), t, backend);
        for (const auto& block : interest_pass.blocks) {
            std::set<PersonId> sub;
            for (auto idx : block) sub.insert(sub_order[idx]);
            const std::string& label = sg.location_of(*sub.begin());
            interest_level.push_back({LabeledCommunity::Level::Interest, label,
                                      detail::shared_interest_label(sg, sub), sub});
        }
    }
    std::sort(interest_level.begin(), interest_level.end(),
              [](const LabeledCommunity& a, const LabeledCommunity& b) {
                  if (a.location_label != b.location_label)
                      return a.location_label < b.location_label;
                  if (a.interest_label != b.interest_label) return a.interest_label < b.interest_label;
                  return *a.members.begin() < *b.members.begin();
              });
    out.insert(out.end(), interest_level.begin(), interest_level.end());
    return out;
}

/// Members of the target's interest communities that the target does not
/// already know, ordered by (location label, interest label, person).
inline Recommendation recommend_friends(const SocialGraph& sg,
                                        const std::vector<LabeledCommunity>& communities,
                                        const PersonId& target) {
    if (!sg.persons().count(target)) throw DomainError("unknown person: " + target);
    Recommendation rec{target, {}};
    for (const auto& c : communities) {
        if (c.level != LabeledCommunity::Level::Interest) continue;
        if (!c.members.count(target)) continue;
        for (const auto& p : c.members) {
            if (p == target) continue;
            if (sg.knows_each_other(target, p)) continue;
            rec.candidates.push_back({p, c.location_label, c.interest_label});
        }
    }
    return rec; // communities are already label-ordered and members sorted
}

/// New graph with knows edges added for the accepted candidates.
inline SocialGraph apply_recommendations(const SocialGraph& sg, const Recommendation& rec,
                                         const std::vector<PersonId>& accepted) {
    SocialGraph out = sg;
    for (const auto& p : accepted) {
        bool offered = false;
        for (const auto& c : rec.candidates)
            if (c.person == p) offered = true;
        if (!offered) throw DomainError("accepted person was never recommended: " + p);
        if (out.knows_each_other(rec.target, p))
            throw DomainError("stale recommendation: " + rec.target + " already knows " + p);
        out = out.with_knows(rec.target, p);
    }
    return out;
}

/// Adds a newly predicted interest to the person's description. Rerunning
/// discovery afterwards reflects the change; adding an interest the person
/// already has is a no-op.
inline SocialGraph interest_update(const SocialGraph& sg, const PersonId& person,
                                   const std::string& new_interest) {
    return sg.with_interest(person, new_interest);
}

} // namespace situwalk
