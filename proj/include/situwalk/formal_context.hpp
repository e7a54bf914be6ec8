#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/items.hpp"
#include "situwalk/rational.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

/// Transaction table over items: one row per observed (situation, interest)
/// record. Immutable once built.
class FormalContext {
public:
    FormalContext() = default;

    explicit FormalContext(std::vector<Itemset> transactions)
        : transactions_(std::move(transactions)) {
        for (std::size_t row = 0; row < transactions_.size(); ++row) {
            check_row(transactions_[row], row + 1);
            universe_ = set_union(universe_, transactions_[row]);
        }
    }

    const std::vector<Itemset>& transactions() const noexcept { return transactions_; }
    const Itemset& universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return transactions_.size(); }

    bool in_universe(const Itemset& items) const { return is_subset(items, universe_); }

private:
    static void check_row(const Itemset& t, std::size_t row) {
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t[i].dimension == t[i - 1].dimension)
                throw DomainError("transaction " + std::to_string(row) + ": duplicate " +
                                  std::string(dimension_name(t[i].dimension)) + " item");
        }
    }

    std::vector<Itemset> transactions_;
    Itemset universe_;
};

/// Reads the context TSV: a header row naming the dimension of each column
/// (season/daypart/location/class), then one token per column per row, with
/// "-" for an absent value.
inline FormalContext load_context(const std::string& path) {
    const auto rows = read_tsv(path);
    if (rows.empty()) throw ParseError("context file has no header: " + path);

    std::vector<Dimension> columns;
    for (const auto& name : rows[0].fields) {
        try {
            columns.push_back(dimension_from_name(normalize_token(name)));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), rows[0].line);
        }
    }

    std::vector<Itemset> transactions;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != columns.size())
            throw ParseError("expected " + std::to_string(columns.size()) + " columns, got " +
                                 std::to_string(row.fields.size()),
                             row.line);
        std::vector<Item> items;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::string cell = trim(row.fields[c]);
            if (cell == "-" || cell.empty()) continue;
            items.push_back(make_item(columns[c], cell));
        }
        Itemset t = make_itemset(std::move(items));
        for (std::size_t i = 1; i < t.size(); ++i)
            if (t[i].dimension == t[i - 1].dimension)
                throw ParseError("two " + std::string(dimension_name(t[i].dimension)) +
                                     " values in one row",
                                 row.line);
        transactions.push_back(std::move(t));
    }
    return FormalContext(std::move(transactions));
}

/// Galois closure: intersection of all transactions containing `items`.
/// When no transaction contains them (empty extent) the closure is the whole
/// universe, the standard convention for the top of the lattice.
inline Itemset closure(const FormalContext& ctx, const Itemset& items) {
    if (!ctx.in_universe(items)) throw DomainError("item outside universe: " + itemset_str(items));
    bool any = false;
    Itemset acc;
    for (const auto& t : ctx.transactions()) {
        if (!is_subset(items, t)) continue;
        if (!any) {
            acc = t;
            any = true;
        } else {
            acc = set_intersection(acc, t);
        }
    }
    return any ? acc : ctx.universe();
}

/// Relative support: |transactions containing items| / |transactions|.
inline Rational support(const FormalContext& ctx, const Itemset& items) {
    if (!ctx.in_universe(items)) throw DomainError("item outside universe: " + itemset_str(items));
    if (ctx.size() == 0) return Rational(0);
    std::int64_t count = 0;
    for (const auto& t : ctx.transactions())
        if (is_subset(items, t)) ++count;
    return {count, static_cast<std::int64_t>(ctx.size())};
}

} // namespace situwalk
