// Command-line front door: mine, situate, enrich, communities, recommend,
// evaluate, bench. Results go to stdout as TSV/plain text; diagnostics go to
// stderr. Exit codes: 0 success, 2 usage/config problems, 3 data errors.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "situwalk/community.hpp"
#include "situwalk/concepts.hpp"
#include "situwalk/enrichment.hpp"
#include "situwalk/eval.hpp"
#include "situwalk/formal_context.hpp"
#include "situwalk/mining.hpp"
#include "situwalk/recommend.hpp"
#include "situwalk/situation.hpp"
#include "situwalk/social_graph.hpp"
#include "situwalk/triples.hpp"

namespace {

using namespace situwalk;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_ratio(const std::string& text, const std::string& flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

void require_unit_interval(const Rational& r, const std::string& flag) {
    if (!(Rational(0) < r && r <= Rational(1)))
        throw UsageError(flag + " must be in (0,1], got " + r.str());
}

SocialGraph load_graph_input(const std::string& path, bool lenient) {
    if (path.ends_with(".nt")) return load_foaf(parse_ntriples(read_file(path)), lenient);
    return load_social_tsv(path, lenient);
}

std::string joined_members(const std::set<PersonId>& members) {
    std::string out;
    for (const auto& p : members) {
        if (!out.empty()) out += ",";
        out += p;
    }
    return out;
}

// ----------------------------------------------------------------- mine ---

struct MineArgs {
    std::string context_path;
    std::string learning_base_path;
    std::string out_path;
    std::string minsup = "1/5";
    std::string minconf = "1";
};

int run_mine(const MineArgs& args) {
    const Rational minsup = parse_ratio(args.minsup, "--minsup");
    const Rational minconf = parse_ratio(args.minconf, "--minconf");
    require_unit_interval(minsup, "--minsup");
    require_unit_interval(minconf, "--minconf");

    FormalContext ctx = load_context(args.context_path);
    if (!args.learning_base_path.empty()) {
        std::vector<Itemset> transactions = ctx.transactions();
        for (auto& t : LearningBase::from_file(args.learning_base_path).as_transactions())
            transactions.push_back(std::move(t));
        ctx = FormalContext(std::move(transactions));
    }
    const auto patterns = mine_closed(ctx, minsup);
    const auto generic = generate_igb(ctx, patterns, minconf);
    const auto classifier = class_rules(generic);
    save_rules(args.out_path, classifier);

    std::cout << "transactions\t" << ctx.size() << "\n"
              << "items\t" << ctx.universe().size() << "\n"
              << "closed_patterns\t" << patterns.size() << "\n"
              << "generic_rules\t" << generic.size() << "\n"
              << "class_rules\t" << classifier.size() << "\n"
              << "minsup\t" << minsup.str() << "\n"
              << "minconf\t" << minconf.str() << "\n"
              << "rules_file\t" << args.out_path << "\n";
    return 0;
}

// -------------------------------------------------------------- situate ---

struct SituateArgs {
    std::string gazetteer_path;
    double lat = 0.0;
    double lon = 0.0;
    std::string time;
};

int run_situate(const SituateArgs& args) {
    const Gazetteer gz = load_gazetteer(args.gazetteer_path);
    const Situation s =
        build_situation(gz, GeoPoint(args.lat, args.lon), CivilTime::parse(args.time));
    std::cout << s.location_type << '\t' << season_token(s.season) << '\t'
              << day_part_token(s.day_part) << "\n";
    return 0;
}

// --------------------------------------------------------------- enrich ---

struct EnrichArgs {
    std::string query;
    std::string gazetteer_path;
    std::string rules_path;
    std::string store_path;
    std::string learning_base_path;
    double lat = 0.0;
    double lon = 0.0;
    std::string time;
    int depth = 2;
    std::string category_prefix = std::string(vocab::kCategoryPrefix);
};

int run_enrich(const EnrichArgs& args) {
    if (args.depth < 1) throw UsageError("--depth must be >= 1");
    const Gazetteer gz = load_gazetteer(args.gazetteer_path);
    const RuleBase rb = RuleBase::from_file(args.rules_path);
    const TripleStore store = TripleStore::from_file(args.store_path);
    ConceptConfig cfg;
    cfg.depth = args.depth;
    cfg.category_prefix = args.category_prefix;

    const Situation s =
        build_situation(gz, GeoPoint(args.lat, args.lon), CivilTime::parse(args.time));
    std::cerr << "situation: " << s.str() << "\n";

    LearningBase lb;
    const EnrichmentResult res = enrich_query(args.query, s, rb, store, lb, cfg);
    if (res.from_rule) {
        std::cerr << "rule " << res.rule_id << " selected (overlap " << res.rule_overlap
                  << ")\n";
    } else {
        std::cerr << "no eligible rule; knowledge-base fallback over " << res.considered.size()
                  << " candidate concepts\n";
        for (const auto& c : res.considered) std::cerr << "  candidate: " << c << "\n";
        if (!args.learning_base_path.empty()) {
            lb.append_to_file(args.learning_base_path);
            std::cerr << "learning base += (" << s.str() << ", " << res.interest << ")\n";
        }
    }
    std::cout << res.enriched_query << "\n";
    return 0;
}

// ---------------------------------------------------- communities/recs ---

struct GraphArgs {
    std::string graph_path;
    std::string edges_path; // communities only: raw edge-list mode
    std::string algo = "walktrap";
    bool lenient = false;
    bool sparse_walks = false;
    int walk_length = 4;
    std::string target;     // recommend only
    std::string apply_path; // recommend only: write the accepted graph
};

WalkBackend backend_of(bool sparse) {
    return sparse ? WalkBackend::Sparse : WalkBackend::Dense;
}

void require_walk_length(int t) {
    if (t < 1) throw UsageError("--t must be >= 1");
}

int run_communities(const GraphArgs& args) {
    require_walk_length(args.walk_length);
    if (!args.edges_path.empty()) {
        const SimpleGraph g = load_edge_list(args.edges_path);
        Partition p;
        if (args.algo == "walktrap")
            p = detect_walktrap(g, args.walk_length, backend_of(args.sparse_walks));
        else if (args.algo == "gn")
            p = detect_girvan_newman(g);
        else
            throw UsageError("--algo must be walktrap or gn");
        write_partition(std::cout, p);
        return 0;
    }
    if (args.graph_path.empty()) throw UsageError("need --graph or --edges");
    const SocialGraph sg = load_graph_input(args.graph_path, args.lenient);
    for (const auto& c : discover_communities(sg, args.walk_length, backend_of(args.sparse_walks))) {
        const bool location = c.level == LabeledCommunity::Level::Location;
        std::cout << (location ? "location" : "interest") << '\t' << c.location_label << '\t'
                  << (c.interest_label ? *c.interest_label : "-") << '\t'
                  << joined_members(c.members) << "\n";
    }
    return 0;
}

int run_recommend(const GraphArgs& args) {
    require_walk_length(args.walk_length);
    const SocialGraph sg = load_graph_input(args.graph_path, args.lenient);
    const auto communities =
        discover_communities(sg, args.walk_length, backend_of(args.sparse_walks));
    const Recommendation rec = recommend_friends(sg, communities, args.target);
    for (const auto& c : rec.candidates)
        std::cout << rec.target << '\t' << c.person << '\t' << c.location_label << '\t'
                  << (c.interest_label ? *c.interest_label : "-") << "\n";
    if (!args.apply_path.empty()) {
        std::vector<PersonId> accepted;
        for (const auto& c : rec.candidates) accepted.push_back(c.person);
        const SocialGraph updated = apply_recommendations(sg, rec, accepted);
        std::ofstream out(args.apply_path, std::ios::binary);
        if (!out) throw DomainError("cannot write file: " + args.apply_path);
        for (const auto& p : updated.persons()) {
            out << p << "\tbased_near\t" << updated.location_of(p) << "\n";
            for (const auto& i : updated.interests_of(p)) out << p << "\tinterest\t" << i << "\n";
        }
        for (const auto& [a, b] : updated.knows()) out << a << "\tknows\t" << b << "\n";
        std::cerr << "accepted " << accepted.size() << " candidates; graph written to "
                  << args.apply_path << "\n";
    }
    return 0;
}

// ------------------------------------------------------------- evaluate ---

struct EvaluateArgs {
    std::string judgments_path;
    std::string diary_path;
    std::string rules_path;
    std::string gazetteer_path;
    std::string store_path;
    std::string growth_before;
    std::string growth_after;
    std::string records_path;
    std::size_t k = 10;
    int depth = 2;
    int walk_length = 4;
    bool lenient = false;
    double cbr_threshold = 2.0;
};

int run_evaluate(const EvaluateArgs& args) {
    if (args.k < 1) throw UsageError("--k must be >= 1");
    require_walk_length(args.walk_length);
    std::vector<nlohmann::json> records;

    if (!args.judgments_path.empty()) {
        const Report report = precision_report(load_judgments(args.judgments_path), args.k);
        for (const auto& [query_id, p] : report.precisions) {
            std::cout << "precision\t" << query_id << '\t' << p.str() << "\n";
            records.push_back({{"type", "precision"},
                               {"query_id", query_id},
                               {"k", args.k},
                               {"value", p.str()},
                               {"value_real", p.to_double()}});
        }
        if (report.mean) {
            std::cout << "mean_precision\t" << report.mean->str() << "\n";
            records.push_back({{"type", "mean_precision"},
                               {"value", report.mean->str()},
                               {"value_real", report.mean->to_double()}});
        }
    }

    if (!args.diary_path.empty()) {
        if (args.rules_path.empty())
            throw UsageError("--diary needs --rules (and --gazetteer for GPS rows)");
        const auto diary = load_diary(args.diary_path);
        const RuleBase rb = RuleBase::from_file(args.rules_path);
        std::optional<Gazetteer> gz;
        if (!args.gazetteer_path.empty()) gz = load_gazetteer(args.gazetteer_path);
        std::optional<TripleStore> store;
        if (!args.store_path.empty()) store = TripleStore::from_file(args.store_path);
        ConceptConfig cfg;
        cfg.depth = args.depth;
        CbrConfig cbr_cfg;
        cbr_cfg.threshold = args.cbr_threshold;

        std::vector<CbrCase> cases;
        std::size_t rules_hits = 0, cbr_hits = 0, total = 0;
        for (const auto& rec : diary) {
            std::string rules_pred = "-", cbr_pred = "-", situation_str = "-";
            try {
                Situation s = [&] {
                    if (std::holds_alternative<GeoPoint>(rec.where)) {
                        if (!gz) throw DomainError("diary row has GPS but no --gazetteer given");
                        return build_situation(*gz, std::get<GeoPoint>(rec.where), rec.time);
                    }
                    return Situation(std::get<std::string>(rec.where), season_of(rec.time),
                                     day_part_of(rec.time));
                }();
                situation_str = s.str();
                if (const auto rule = select_rule(eligible_rules(rb, s))) {
                    rules_pred = rule->conclusion[0].value;
                } else if (store) {
                    // knowledge-base fallback, same path as enrichment
                    const auto qc = concept_by_label(*store, rec.query);
                    const auto lc = concept_by_label(*store, s.location_type);
                    if (qc && lc) {
                        const auto interests = extract_interest(*store, *qc, *lc, cfg);
                        if (!interests.empty())
                            rules_pred = local_name(most_frequent(interests), cfg);
                    }
                }
                if (const auto hit = cbr_select(cases, s, cbr_cfg)) cbr_pred = hit->first.interest;
                cases.push_back({s, rec.interest});
            } catch (const DomainError& e) {
                std::cerr << "diary row skipped: " << e.what() << "\n";
            }
            ++total;
            if (rules_pred == rec.interest) ++rules_hits;
            if (cbr_pred == rec.interest) ++cbr_hits;
            std::cout << "prediction\t" << rec.user << '\t' << rec.query << '\t' << situation_str
                      << '\t' << rules_pred << '\t' << cbr_pred << '\t' << rec.interest << "\n";
            records.push_back({{"type", "prediction"},
                               {"user", rec.user},
                               {"query", rec.query},
                               {"situation", situation_str},
                               {"rules", rules_pred},
                               {"cbr", cbr_pred},
                               {"truth", rec.interest}});
        }
        if (total > 0) {
            std::cout << "accuracy\trules\t" << Rational(rules_hits, total).str() << "\n";
            std::cout << "accuracy\tcbr\t" << Rational(cbr_hits, total).str() << "\n";
            records.push_back({{"type", "accuracy"},
                               {"rules", Rational(rules_hits, total).str()},
                               {"cbr", Rational(cbr_hits, total).str()}});
        }
    }

    if (!args.growth_before.empty() || !args.growth_after.empty()) {
        if (args.growth_before.empty() || args.growth_after.empty())
            throw UsageError("growth needs both --growth-before and --growth-after");
        const SocialGraph before = load_graph_input(args.growth_before, args.lenient);
        const SocialGraph after = load_graph_input(args.growth_after, args.lenient);
        const auto communities = discover_communities(before, args.walk_length);
        for (const auto& row : growth_stats(before, after, communities)) {
            std::cout << "growth\t" << row.label << '\t' << row.before_avg.str() << '\t'
                      << row.after_avg.str() << '\t'
                      << (row.percent ? row.percent->str() : "undefined") << "\n";
            records.push_back({{"type", "growth"},
                               {"community", row.label},
                               {"before_avg", row.before_avg.str()},
                               {"after_avg", row.after_avg.str()},
                               {"percent", row.percent ? row.percent->str() : "undefined"}});
        }
    }

    if (!args.records_path.empty()) {
        std::ofstream out(args.records_path, std::ios::binary);
        if (!out) throw DomainError("cannot write file: " + args.records_path);
        for (const auto& r : records) out << r.dump() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- bench ---

struct BenchArgs {
    std::vector<std::size_t> sizes = {100, 125, 150, 175, 200, 225};
    std::uint64_t seed = 42;
    std::size_t reps = 5;
    std::size_t blocks = 9;
    double p_in = 0.5;
    double p_out = 0.01;
    int walk_length = 4;
    bool sparse_walks = false;
};

int run_bench(const BenchArgs& args) {
    require_walk_length(args.walk_length);
    for (auto n : args.sizes)
        if (n < 2) throw UsageError("--sizes entries must be >= 2");
    BenchGraphConfig cfg;
    cfg.blocks = args.blocks;
    cfg.p_in = args.p_in;
    cfg.p_out = args.p_out;
    cfg.seed = args.seed;
    std::cout << "algorithm\tn\tedges\tmedian_seconds\tmodularity\tchecksum\n";
    for (const auto& row : bench_compare(args.sizes, cfg, args.reps, args.walk_length,
                                         backend_of(args.sparse_walks))) {
        std::cout << row.algorithm << '\t' << row.n << '\t' << row.edges << '\t'
                  << row.median_seconds << '\t' << row.modularity << '\t' << row.checksum
                  << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Situation-aware query enrichment and random-walk friend recommendation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; command-line flags win");

    MineArgs mine_args;
    auto* mine = app.add_subcommand("mine", "Mine classification rules from a context file");
    mine->add_option("--context", mine_args.context_path, "Context TSV")
        ->required()
        ->check(CLI::ExistingFile);
    mine->add_option("--learning-base", mine_args.learning_base_path,
                     "Learning-base TSV whose entries join the context")
        ->check(CLI::ExistingFile);
    mine->add_option("--out", mine_args.out_path, "Rule-base file to write")->required();
    mine->add_option("--minsup", mine_args.minsup, "Minimum support, e.g. 1/5 or 0.2");
    mine->add_option("--minconf", mine_args.minconf, "Minimum confidence, e.g. 1 or 0.8");

    SituateArgs situate_args;
    auto* situate = app.add_subcommand("situate", "Build the semantic situation for a GPS point");
    situate->add_option("--gazetteer", situate_args.gazetteer_path, "Gazetteer TSV")
        ->required()
        ->check(CLI::ExistingFile);
    situate->add_option("--lat", situate_args.lat, "Latitude")->required();
    situate->add_option("--lon", situate_args.lon, "Longitude")->required();
    situate->add_option("--time", situate_args.time, "Timestamp YYYY-MM-DDTHH:MM")->required();

    EnrichArgs enrich_args;
    auto* enrich = app.add_subcommand("enrich", "Enrich a query from the mobile situation");
    enrich->add_option("--query", enrich_args.query, "Query text")->required();
    enrich->add_option("--lat", enrich_args.lat, "Latitude")->required();
    enrich->add_option("--lon", enrich_args.lon, "Longitude")->required();
    enrich->add_option("--time", enrich_args.time, "Timestamp YYYY-MM-DDTHH:MM")->required();
    enrich->add_option("--gazetteer", enrich_args.gazetteer_path, "Gazetteer TSV")
        ->required()
        ->check(CLI::ExistingFile);
    enrich->add_option("--rules", enrich_args.rules_path, "Rule-base TSV")
        ->required()
        ->check(CLI::ExistingFile);
    enrich->add_option("--store", enrich_args.store_path, "N-Triples knowledge base")
        ->required()
        ->check(CLI::ExistingFile);
    enrich->add_option("--learning-base", enrich_args.learning_base_path,
                       "Learning-base TSV to append to on fallback");
    enrich->add_option("--depth", enrich_args.depth, "Concept-walk depth");
    enrich->add_option("--category-prefix", enrich_args.category_prefix,
                       "IRI prefix marking categories");

    GraphArgs communities_args;
    auto* communities =
        app.add_subcommand("communities", "Two-pass community discovery over a social graph");
    communities->add_option("--graph", communities_args.graph_path, "Social graph (.tsv or .nt)")
        ->check(CLI::ExistingFile);
    communities->add_option("--edges", communities_args.edges_path,
                            "Raw edge list `u v [weight]`; prints node/community pairs")
        ->check(CLI::ExistingFile);
    communities->add_option("--algo", communities_args.algo,
                            "Detector for --edges: walktrap or gn");
    communities->add_option("--t", communities_args.walk_length, "Random-walk length");
    communities->add_flag("--lenient", communities_args.lenient,
                          "Keep the smallest location when a person has several");
    communities->add_flag("--sparse-walks", communities_args.sparse_walks,
                          "Row-by-row sparse P^t instead of dense matrix powers");

    GraphArgs recommend_args;
    auto* recommend = app.add_subcommand("recommend", "Friend candidates for a target person");
    recommend->add_option("--graph", recommend_args.graph_path, "Social graph (.tsv or .nt)")
        ->required()
        ->check(CLI::ExistingFile);
    recommend->add_option("--target", recommend_args.target, "Person id")->required();
    recommend->add_option("--t", recommend_args.walk_length, "Random-walk length");
    recommend->add_flag("--lenient", recommend_args.lenient,
                        "Keep the smallest location when a person has several");
    recommend->add_option("--apply", recommend_args.apply_path,
                          "Accept all candidates and write the updated graph TSV here");
    recommend->add_flag("--sparse-walks", recommend_args.sparse_walks,
                        "Row-by-row sparse P^t instead of dense matrix powers");

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand("evaluate", "Precision, prediction and growth reports");
    evaluate->add_option("--judgments", evaluate_args.judgments_path, "Judgments TSV")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--k", evaluate_args.k, "Precision cutoff");
    evaluate->add_option("--diary", evaluate_args.diary_path, "Diary TSV")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--rules", evaluate_args.rules_path, "Rule-base TSV")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--gazetteer", evaluate_args.gazetteer_path, "Gazetteer TSV")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--store", evaluate_args.store_path, "N-Triples knowledge base")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--cbr-threshold", evaluate_args.cbr_threshold,
                         "CBR acceptance threshold");
    evaluate->add_option("--depth", evaluate_args.depth, "Concept-walk depth");
    evaluate->add_option("--growth-before", evaluate_args.growth_before, "Graph before")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--growth-after", evaluate_args.growth_after, "Graph after")
        ->check(CLI::ExistingFile);
    evaluate->add_option("--t", evaluate_args.walk_length, "Random-walk length");
    evaluate->add_flag("--lenient", evaluate_args.lenient, "Lenient FOAF loading");
    evaluate->add_option("--records", evaluate_args.records_path,
                         "Write line-delimited JSON records here");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Walktrap vs divisive clustering timing");
    bench->add_option("--sizes", bench_args.sizes, "Graph sizes")->delimiter(',');
    bench->add_option("--seed", bench_args.seed, "Generator seed");
    bench->add_option("--reps", bench_args.reps, "Timed repetitions per size");
    bench->add_option("--blocks", bench_args.blocks, "Planted blocks");
    bench->add_option("--p-in", bench_args.p_in, "Intra-block edge probability");
    bench->add_option("--p-out", bench_args.p_out, "Inter-block edge probability");
    bench->add_option("--t", bench_args.walk_length, "Random-walk length");
    bench->add_flag("--sparse-walks", bench_args.sparse_walks,
                    "Row-by-row sparse P^t instead of dense matrix powers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(mine)) return run_mine(mine_args);
        if (app.got_subcommand(situate)) return run_situate(situate_args);
        if (app.got_subcommand(enrich)) return run_enrich(enrich_args);
        if (app.got_subcommand(communities)) return run_communities(communities_args);
        if (app.got_subcommand(recommend)) return run_recommend(recommend_args);
        if (app.got_subcommand(evaluate)) return run_evaluate(evaluate_args);
        if (app.got_subcommand(bench)) return run_bench(bench_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
