#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

enum class Dimension { Season, DayPart, LocationType, Class };

inline std::string_view dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Season: return "season";
        case Dimension::DayPart: return "daypart";
        case Dimension::LocationType: return "location";
        case Dimension::Class: return "class";
    }
    return "?";
}

inline Dimension dimension_from_name(std::string_view name) {
    if (name == "season") return Dimension::Season;
    if (name == "daypart") return Dimension::DayPart;
    if (name == "location") return Dimension::LocationType;
    if (name == "class") return Dimension::Class;
    throw ParseError("unknown dimension name: " + std::string(name));
}

/// One attribute value of a transaction. Identity is the (dimension, value)
/// pair; values are stored in canonical token form.
struct Item {
    Dimension dimension;
    std::string value;

    friend auto operator<=>(const Item&, const Item&) = default;
};

inline Item make_item(Dimension d, std::string_view raw) {
    std::string v = normalize_token(raw);
    if (v.empty()) throw DomainError("empty item value");
    return {d, std::move(v)};
}

inline constexpr std::array<std::string_view, 4> kSeasonTokens = {"printemps", "été", "automne",
                                                                  "hiver"};
inline constexpr std::array<std::string_view, 3> kDayPartTokens = {"matin", "midi", "soir"};

/// Classifies a bare token from a rule or learning-base file. Tokens from the
/// fixed season/day-part vocabularies map to those dimensions; anything else
/// is a location type.
inline Item item_from_bare_token(std::string_view raw) {
    std::string v = normalize_token(raw);
    if (v.empty()) throw DomainError("empty item value");
    for (auto s : kSeasonTokens)
        if (v == s) return {Dimension::Season, std::move(v)};
    for (auto d : kDayPartTokens)
        if (v == d) return {Dimension::DayPart, std::move(v)};
    return {Dimension::LocationType, std::move(v)};
}

/// Itemsets are sorted, duplicate-free vectors; set operations stay in
/// canonical form by construction.
using Itemset = std::vector<Item>;

inline Itemset make_itemset(std::vector<Item> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

inline bool contains(const Itemset& set, const Item& item) {
    return std::binary_search(set.begin(), set.end(), item);
}

inline bool is_subset(const Itemset& a, const Itemset& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Itemset set_union(const Itemset& a, const Itemset& b) {
    Itemset out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Itemset set_intersection(const Itemset& a, const Itemset& b) {
    Itemset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Itemset set_difference(const Itemset& a, const Itemset& b) {
    Itemset out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Ordering used everywhere outputs must be reproducible: smaller sets first,
/// then element-wise.
inline bool itemset_less(const Itemset& a, const Itemset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline std::string itemset_str(const Itemset& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out += ",";
        out += set[i].value;
    }
    out += "}";
    return out;
}

} // namespace situwalk
