#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "situwalk/community.hpp"
#include "situwalk/errors.hpp"
#include "situwalk/graph.hpp"
#include "situwalk/rational.hpp"
#include "situwalk/recommend.hpp"
#include "situwalk/situation.hpp"
#include "situwalk/social_graph.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

/// Fraction of returned resources that are relevant. Undefined (an error)
/// for an empty returned set rather than silently zero.
inline Rational precision(const std::set<std::string>& returned,
                          const std::set<std::string>& relevant) {
    if (returned.empty()) throw DomainError("precision over an empty returned set");
    std::int64_t hits = 0;
    for (const auto& r : returned)
        if (relevant.count(r)) ++hits;
    return {hits, static_cast<std::int64_t>(returned.size())};
}

/// One query's ranked results with the relevance judgments.
struct Judgment {
    std::string query_id;
    std::vector<std::string> returned; // ranked, duplicate-free
    std::set<std::string> relevant;
};

inline Rational precision_at_k(const Judgment& j, std::size_t k) {
    if (k < 1) throw DomainError("k must be >= 1");
    const std::size_t cut = std::min(k, j.returned.size());
    std::set<std::string> prefix(j.returned.begin(), j.returned.begin() + cut);
    return precision(prefix, j.relevant);
}

inline Rational mean_precision(const std::vector<Rational>& values) {
    if (values.empty()) throw DomainError("mean of no precision values");
    Rational sum(0);
    for (const auto& v : values) sum = sum + v;
    return sum / Rational(static_cast<std::int64_t>(values.size()));
}

/// Judgments file: TSV `query_id  rank  resource_id  relevant(0/1)`, grouped
/// by query id, ranks dense from 1 within each query.
inline std::vector<Judgment> load_judgments(const std::string& path) {
    std::map<std::string, std::map<int, std::pair<std::string, bool>>> grouped;
    std::vector<std::string> order;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 4)
            throw ParseError("expected 4 columns `query_id rank resource relevant`", row.line);
        const std::string qid = trim(row.fields[0]);
        int rank = 0;
        try {
            rank = std::stoi(row.fields[1]);
        } catch (const std::exception&) {
            throw ParseError("bad rank: " + row.fields[1], row.line);
        }
        const std::string flag = trim(row.fields[3]);
        if (flag != "0" && flag != "1") throw ParseError("relevant flag must be 0 or 1", row.line);
        if (!grouped.count(qid)) order.push_back(qid);
        auto [it, fresh] = grouped[qid].try_emplace(rank, trim(row.fields[2]), flag == "1");
        if (!fresh) throw ParseError("duplicate rank " + row.fields[1] + " for " + qid, row.line);
    }
    std::vector<Judgment> out;
    for (const auto& qid : order) {
        Judgment j;
        j.query_id = qid;
        std::set<std::string> seen;
        for (const auto& [rank, entry] : grouped[qid]) {
            if (!seen.insert(entry.first).second)
                throw ParseError("duplicate resource " + entry.first + " in query " + qid);
            j.returned.push_back(entry.first);
            if (entry.second) j.relevant.insert(entry.first);
        }
        out.push_back(std::move(j));
    }
    return out;
}

/// One diary-study row: who asked what, when and where, with the interest the
/// participant reported as ground truth. The location is either a raw GPS
/// pair or an already-mapped location type.
struct QueryRecord {
    std::string user;
    CivilTime time;
    std::variant<std::string, GeoPoint> where; // location type token or raw GPS
    std::string interest;
    std::string query;
};

/// Diary file: TSV `user  timestamp  location  interest  query` where
/// location is "lat,lon" or a location-type token.
inline std::vector<QueryRecord> load_diary(const std::string& path) {
    std::vector<QueryRecord> out;
    for (const auto& row : read_tsv(path)) {
        if (row.fields.size() != 5)
            throw ParseError("expected 5 columns `user timestamp location interest query`",
                             row.line);
        std::variant<std::string, GeoPoint> where;
        const std::string loc = trim(row.fields[2]);
        const auto comma = loc.find(',');
        try {
            if (comma != std::string::npos) {
                where = GeoPoint(std::stod(loc.substr(0, comma)), std::stod(loc.substr(comma + 1)));
            } else {
                where = normalize_token(loc);
            }
            const std::string query = trim(row.fields[4]);
            if (query.empty()) throw DomainError("empty query");
            out.push_back({trim(row.fields[0]), CivilTime::parse(row.fields[1]), std::move(where),
                           normalize_token(row.fields[3]), query});
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), row.line);
        } catch (const std::exception& e) {
            throw ParseError(std::string(e.what()), row.line);
        }
    }
    return out;
}

/// Average-degree growth of each community between two snapshots of the same
/// person set. `percent` is empty when the before-average is zero (undefined
/// growth rather than a made-up number).
struct GrowthRow {
    std::string label;
    Rational before_avg;
    Rational after_avg;
    std::optional<Rational> percent;
};

inline Rational percent_increase(const Rational& before, const Rational& after) {
    if (before == Rational(0)) throw DomainError("percent increase from zero is undefined");
    return (after - before) / before * Rational(100);
}

inline std::vector<GrowthRow> growth_stats(const SocialGraph& before, const SocialGraph& after,
                                           const std::vector<LabeledCommunity>& communities) {
    if (before.persons() != after.persons())
        throw DomainError("growth_stats requires identical person sets");
    std::vector<GrowthRow> rows;
    for (const auto& c : communities) {
        if (c.level != LabeledCommunity::Level::Location) continue;
        Rational before_sum(0), after_sum(0);
        for (const auto& p : c.members) {
            before_sum = before_sum + Rational(static_cast<std::int64_t>(before.knows_degree(p)));
            after_sum = after_sum + Rational(static_cast<std::int64_t>(after.knows_degree(p)));
        }
        const Rational size(static_cast<std::int64_t>(c.members.size()));
        GrowthRow row{c.location_label, before_sum / size, after_sum / size, std::nullopt};
        if (!(row.before_avg == Rational(0)))
            row.percent = percent_increase(row.before_avg, row.after_avg);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Deterministic planted-partition graphs: `blocks` groups with intra-group
/// edge probability p_in and inter-group probability p_out, then a minimal
/// set of deterministic bridges so the graph is connected.
struct BenchGraphConfig {
    std::size_t blocks = 4;
    double p_in = 0.5;
    double p_out = 0.01;
    std::uint64_t seed = 42;
};

inline SimpleGraph planted_partition(std::size_t n, const BenchGraphConfig& cfg) {
    if (n < 2) throw DomainError("benchmark graphs need at least 2 nodes");
    const std::size_t blocks = std::max<std::size_t>(1, std::min(cfg.blocks, n));
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (n + 1)));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    auto block_of = [&](std::size_t v) { return v % blocks; };
    SimpleGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double p = block_of(u) == block_of(v) ? cfg.p_in : cfg.p_out;
            if (coin(rng) < p) g.add_edge(u, v);
        }
    const Partition comps = connected_components(g);
    for (std::size_t b = 1; b < comps.blocks.size(); ++b)
        g.add_edge(comps.blocks[0].front(), comps.blocks[b].front());
    return g;
}

inline std::uint64_t graph_checksum(const SimpleGraph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (i * 8)) & 0xFF;
            h *= 1099511628211ULL;
        }
    };
    mix(g.node_count());
    for (const auto& e : g.edges()) {
        const auto [u, v] = std::minmax(e.u, e.v);
        mix(u);
        mix(v);
    }
    return h;
}

struct BenchRow {
    std::string algorithm;
    std::size_t n = 0;
    std::size_t edges = 0;
    double median_seconds = 0.0;
    double modularity = 0.0;
    std::uint64_t checksum = 0;
};

/// Aggregated evaluation output: per-query precisions with their mean, plus
/// whatever timing and growth rows the run produced.
struct Report {
    std::vector<std::pair<std::string, Rational>> precisions; // query id -> value
    std::optional<Rational> mean;
    std::vector<BenchRow> timing;
    std::vector<GrowthRow> growth;
};

inline Report precision_report(const std::vector<Judgment>& judgments, std::size_t k) {
    Report report;
    std::vector<Rational> values;
    for (const auto& j : judgments) {
        const Rational p = precision_at_k(j, k);
        if (p < Rational(0) || p > Rational(1))
            throw DomainError("precision out of [0,1] for " + j.query_id);
        report.precisions.emplace_back(j.query_id, p);
        values.push_back(p);
    }
    if (!values.empty()) report.mean = mean_precision(values);
    return report;
}

/// Times both detectors on identical generated graphs: one warm-up, then
/// `repetitions` timed runs, reporting the median. Runs sequentially so the
/// two columns are comparable.
inline std::vector<BenchRow> bench_compare(const std::vector<std::size_t>& sizes,
                                           const BenchGraphConfig& cfg, std::size_t repetitions = 5,
                                           int walk_length = 4,
                                           WalkBackend backend = WalkBackend::Dense) {
    if (repetitions < 1) throw DomainError("repetitions must be >= 1");
    std::vector<BenchRow> rows;
    for (const std::size_t n : sizes) {
        const SimpleGraph g = planted_partition(n, cfg);
        const std::uint64_t checksum = graph_checksum(g);
        struct Algo {
            std::string name;
            std::function<Partition()> run;
        };
        const std::vector<Algo> algos = {
            {"walktrap", [&] { return detect_walktrap(g, walk_length, backend); }},
            {"girvan-newman", [&] { return detect_girvan_newman(g); }},
        };
        for (const auto& algo : algos) {
            Partition result = algo.run(); // warm-up, also the reported partition
            std::vector<double> seconds;
            for (std::size_t rep = 0; rep < repetitions; ++rep) {
                const auto start = std::chrono::steady_clock::now();
                Partition p = algo.run();
                const auto stop = std::chrono::steady_clock::now();
                seconds.push_back(std::chrono::duration<double>(stop - start).count());
            }
            std::sort(seconds.begin(), seconds.end());
            rows.push_back({algo.name, n, g.edge_count(), seconds[seconds.size() / 2],
                            modularity(g, result), checksum});
        }
    }
    return rows;
}

} // namespace situwalk
