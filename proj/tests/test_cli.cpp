#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "situwalk/text.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult cli(const std::string& args) {
    static int counter = 0;
    const std::string err_path = "/tmp/situwalk_cli_err_" + std::to_string(++counter) + ".txt";
    const std::string cmd = std::string(SITUWALK_CLI_PATH) + " " + args + " 2>" + err_path;
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_path);
    std::stringstream buf;
    buf << err.rdbuf();
    result.err = buf.str();
    return result;
}

std::vector<std::vector<std::string>> tsv_lines(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& line : situwalk::split_lines(text)) rows.push_back(situwalk::split(line, '\t'));
    return rows;
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("mine writes a rule base containing the printemps rule") {
        const std::string out_path = "/tmp/cli_mined_rules.tsv";
        const auto res = cli("mine --context " + fixture("context.tsv") + " --out " + out_path +
                             " --minsup 1/5 --minconf 1");
        CHECK(res.exit_code == 0);
        CHECK(res.out.find("class_rules\t") != std::string::npos);
        CHECK(res.out.find("minsup\t1/5") != std::string::npos);
        const std::string rules = situwalk::read_file(out_path);
        CHECK(rules.find("printemps\tart\t1/5\t1") != std::string::npos);
    }

    TEST_CASE("mine folds learning-base entries into the context") {
        const std::string lb_path = "/tmp/cli_mine_lb.tsv";
        std::ofstream(lb_path) << "plage\tété\tmatin\tsurf\n"
                               << "plage\tété\tmatin\tsurf\n";
        const std::string out_path = "/tmp/cli_mined_with_lb.tsv";
        const auto res = cli("mine --context " + fixture("context.tsv") + " --learning-base " +
                             lb_path + " --out " + out_path + " --minsup 2/7 --minconf 1");
        CHECK(res.exit_code == 0);
        CHECK(res.out.find("transactions\t7") != std::string::npos);
        // {plage} now has support 3/7 and still closes to the beach row
        const std::string rules = situwalk::read_file(out_path);
        CHECK(rules.find("plage\tsurf\t3/7\t1") != std::string::npos);
    }

    TEST_CASE("mine: missing file exits 2 naming the path") {
        const auto res = cli("mine --context /nonexistent/ctx.tsv --out /tmp/x.tsv");
        CHECK(res.exit_code == 2);
        CHECK(res.err.find("/nonexistent/ctx.tsv") != std::string::npos);
    }

    TEST_CASE("mine: minconf 0 is a usage error") {
        const auto res = cli("mine --context " + fixture("context.tsv") +
                             " --out /tmp/x.tsv --minconf 0");
        CHECK(res.exit_code == 2);
    }

    TEST_CASE("situate prints the three dimensions") {
        const auto res = cli("situate --gazetteer " + fixture("gazetteer.tsv") +
                             " --lat 35.1877778 --lon 8.655 --time 2012-01-29T13:00");
        CHECK(res.exit_code == 0);
        CHECK(res.out == "montagne\thiver\tmidi\n");
    }

    TEST_CASE("enrich: worked example to stdout, trace to stderr") {
        const auto res = cli("enrich --query \"Mona Lisa\" --lat 48.8606349 --lon 2.3375548 "
                             "--time 2012-03-18T18:05 --gazetteer " +
                             fixture("gazetteer.tsv") + " --rules " + fixture("rules.tsv") +
                             " --store " + fixture("concepts.nt"));
        CHECK(res.exit_code == 0);
        CHECK(res.out == "Mona Lisa art\n");
        CHECK(res.err.find("rule R4 selected (overlap 2)") != std::string::npos);
    }

    TEST_CASE("enrich: fallback appends one learning-base line") {
        const std::string lb_path = "/tmp/cli_learning_base.tsv";
        std::remove(lb_path.c_str());
        // beach in summer morning with an empty rule base forces the fallback
        const std::string empty_rules = "/tmp/cli_empty_rules.tsv";
        std::ofstream(empty_rules) << "";
        const auto res = cli("enrich --query sport --lat 36.8892 --lon 10.3229 "
                             "--time 2012-07-10T09:00 --gazetteer " +
                             fixture("gazetteer.tsv") + " --rules " + empty_rules + " --store " +
                             fixture("concepts.nt") + " --learning-base " + lb_path);
        CHECK(res.exit_code == 0);
        CHECK(res.out == "sport beach polo\n");
        const auto rows = situwalk::read_tsv(lb_path);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].fields ==
              std::vector<std::string>{"plage", "été", "matin", "beach_polo"});
    }

    TEST_CASE("enrich: unmapped GPS exits 3") {
        const auto res = cli("enrich --query sport --lat 0 --lon -30 --time 2012-07-10T09:00 "
                             "--gazetteer " +
                             fixture("gazetteer.tsv") + " --rules " + fixture("rules.tsv") +
                             " --store " + fixture("concepts.nt"));
        CHECK(res.exit_code == 3);
        CHECK(res.err.find("unmapped location") != std::string::npos);
    }

    TEST_CASE("communities prints 4 location rows then 7 interest rows") {
        const auto res = cli("communities --graph " + fixture("social16.tsv"));
        CHECK(res.exit_code == 0);
        const auto rows = tsv_lines(res.out);
        REQUIRE(rows.size() == 11);
        for (std::size_t i = 0; i < 4; ++i) CHECK(rows[i][0] == "location");
        for (std::size_t i = 4; i < 11; ++i) CHECK(rows[i][0] == "interest");
        CHECK(rows[0] == std::vector<std::string>{"location", "lyon", "-", "U10,U7,U9"});
        bool tunis_art = false;
        for (const auto& r : rows)
            if (r[0] == "interest" && r[1] == "tunis" && r[2] == "art" &&
                r[3] == "U12,U13,U8")
                tunis_art = true;
        CHECK(tunis_art);
    }

    TEST_CASE("communities agree between dense and sparse walks") {
        const auto dense = cli("communities --graph " + fixture("social16.tsv"));
        const auto sparse = cli("communities --graph " + fixture("social16.tsv") +
                                " --sparse-walks");
        CHECK(dense.exit_code == 0);
        CHECK(sparse.exit_code == 0);
        CHECK(dense.out == sparse.out);
    }

    TEST_CASE("communities on a raw edge list prints node/community pairs") {
        const std::string edges = "/tmp/cli_bridge.edges";
        std::ofstream(edges) << "0\t1\n0\t2\n1\t2\n3\t4\n3\t5\n4\t5\n2\t3\n";
        const auto walk = cli("communities --edges " + edges);
        CHECK(walk.exit_code == 0);
        CHECK(walk.out == "0\t0\n1\t0\n2\t0\n3\t1\n4\t1\n5\t1\n");
        const auto gn = cli("communities --edges " + edges + " --algo gn");
        CHECK(gn.exit_code == 0);
        CHECK(gn.out == walk.out);
        CHECK(cli("communities --edges " + edges + " --algo nope").exit_code == 2);
    }

    TEST_CASE("recommend U8 prints U12 and U13") {
        const auto res = cli("recommend --graph " + fixture("social16.tsv") + " --target U8");
        CHECK(res.exit_code == 0);
        CHECK(res.out == "U8\tU12\ttunis\tart\nU8\tU13\ttunis\tart\n");
    }

    TEST_CASE("recommend --apply feeds growth reporting") {
        const std::string after_path = "/tmp/cli_after_graph.tsv";
        const auto rec = cli("recommend --graph " + fixture("social16.tsv") +
                             " --target U8 --apply " + after_path);
        CHECK(rec.exit_code == 0);

        const auto growth = cli("evaluate --growth-before " + fixture("social16.tsv") +
                                " --growth-after " + after_path);
        CHECK(growth.exit_code == 0);
        // tunis went from degrees (U8=0,U12=1,U13=1) avg 2/3 to (2,2,2) avg 2
        CHECK(growth.out.find("growth\ttunis\t2/3\t2\t200") != std::string::npos);
    }

    TEST_CASE("evaluate reports per-query precision and the mean") {
        const auto res = cli("evaluate --judgments " + fixture("judgments_ours.tsv"));
        CHECK(res.exit_code == 0);
        CHECK(res.out.find("precision\tq01\t1\n") != std::string::npos);
        CHECK(res.out.find("precision\tq06\t0\n") != std::string::npos);
        CHECK(res.out.find("mean_precision\t47/100\n") != std::string::npos);
    }

    TEST_CASE("evaluate diary compares rule and cbr predictions, writes records") {
        const std::string records = "/tmp/cli_records.jsonl";
        const auto res = cli("evaluate --diary " + fixture("diary.tsv") + " --rules " +
                             fixture("rules.tsv") + " --gazetteer " + fixture("gazetteer.tsv") +
                             " --store " + fixture("concepts.nt") + " --records " + records);
        CHECK(res.exit_code == 0);
        // row 4 fires R4; row 5 fires R2; row 6 falls back to the store
        CHECK(res.out.find("prediction\t4\tMona Lisa\t(musée,printemps,soir)\tart\t") !=
              std::string::npos);
        CHECK(res.out.find("prediction\t5\tSport\t(plage,été,matin)\tsurf\t") !=
              std::string::npos);
        CHECK(res.out.find("prediction\t6\tSport\t(montagne,hiver,midi)\tski\t") !=
              std::string::npos);
        CHECK(res.out.find("accuracy\trules\t") != std::string::npos);
        CHECK(res.out.find("accuracy\tcbr\t") != std::string::npos);
        const auto lines = situwalk::split_lines(situwalk::read_file(records));
        CHECK(lines.size() >= 7);
    }

    TEST_CASE("bench is seed-deterministic in its generated graphs") {
        const std::string args = "bench --sizes 10,14 --reps 1 --blocks 2 --seed 7";
        const auto a = cli(args);
        const auto b = cli(args);
        CHECK(a.exit_code == 0);
        const auto rows_a = tsv_lines(a.out);
        const auto rows_b = tsv_lines(b.out);
        REQUIRE(rows_a.size() == 5); // header + 2 sizes x 2 algorithms
        REQUIRE(rows_a.size() == rows_b.size());
        for (std::size_t i = 1; i < rows_a.size(); ++i) {
            CHECK(rows_a[i][0] == rows_b[i][0]);
            CHECK(rows_a[i][6 - 1] == rows_b[i][6 - 1]); // checksum column
        }
    }

    TEST_CASE("config file supplies defaults, flags win") {
        const std::string cfg_path = "/tmp/cli_config.ini";
        std::ofstream(cfg_path) << "[situate]\n"
                                << "gazetteer=" << fixture("gazetteer.tsv") << "\n"
                                << "lat=35.1877778\n"
                                << "lon=8.655\n"
                                << "time=2012-01-29T13:00\n";
        const auto from_config = cli("--config " + cfg_path + " situate");
        CHECK(from_config.exit_code == 0);
        CHECK(from_config.out == "montagne\thiver\tmidi\n");

        const auto overridden =
            cli("--config " + cfg_path + " situate --time 2012-07-29T09:00");
        CHECK(overridden.exit_code == 0);
        CHECK(overridden.out == "montagne\tété\tmatin\n");
    }

    TEST_CASE("unknown subcommand or missing required flag exits 2") {
        CHECK(cli("frobnicate").exit_code == 2);
        CHECK(cli("situate --lat 1 --lon 2").exit_code == 2);
        CHECK(cli("communities --graph " + fixture("social16.tsv") + " --t 0").exit_code == 2);
    }
}
