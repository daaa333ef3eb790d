// test_cli.cpp -- end-to-end tests that spawn the built CLI binary
//
// The binary path arrives in the RACOPT_CLI environment variable (set by the
// CTest fixture). Exit codes follow the stable contract: 0 success, 2 input
// error, 3 cap refusal.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>
#include <racopt/json_io.hpp>

using namespace racopt;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_binary() {
    const char* bin = std::getenv("RACOPT_CLI");
    REQUIRE_MESSAGE(bin != nullptr, "RACOPT_CLI must point at the built binary");
    return bin;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + std::string(cli_binary()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "racopt_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << content;
    return path;
}

std::filesystem::path write_matrix(const std::string& name, const DecodingMatrix& m) {
    return write_temp(name, to_json(m).dump());
}

}  // namespace

TEST_CASE("value prints the exact and decimal value") {
    const auto file = write_matrix("gmaj22.json", majority_strategy(GameParams(2, 2)));
    const auto r = run("value " + file.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "3/4 (0.75)\n");
}

TEST_CASE("value rejects malformed files with exit 2") {
    const auto bad_rows = write_temp("bad_rows.json", R"({"n":2,"d":2,"rows":[[0,0]]})");
    CHECK(run("value " + bad_rows.string()).exit_code == 2);
    const auto not_json = write_temp("not_json.json", "rows: nope");
    CHECK(run("value " + not_json.string()).exit_code == 2);
    CHECK(run("value /no/such/file.json").exit_code == 2);
}

TEST_CASE("value refuses capped word spaces with exit 3") {
    const auto big = write_matrix("big.json", majority_strategy(GameParams(20, 4)));
    CHECK(run("value " + big.string()).exit_code == 3);  // 4^20 > 10^8
    // a tightened cap refuses even small games; --force lifts it again
    const auto small = write_matrix("small.json", majority_strategy(GameParams(2, 2)));
    CHECK(run("value " + small.string() + " --cap 3").exit_code == 3);
    CHECK(run("value " + small.string() + " --cap 3 --force").exit_code == 0);
    CHECK(run("value " + small.string(), "RACOPT_CAP=3 ").exit_code == 3);
}

TEST_CASE("optimal-value single cells") {
    CHECK(run("optimal-value 2 5").out == "3/5 (0.6)\n");
    CHECK(run("optimal-value 1 9").out == "1/1 (1.0)\n");
    CHECK(run("optimal-value 4 2").out == "11/16 (0.6875)\n");
    CHECK(run("optimal-value 0 2").exit_code == 2);
    CHECK(run("optimal-value 7").exit_code == 2);  // d missing
}

TEST_CASE("optimal-value table bounds guard") {
    CHECK(run("optimal-value --table 1001 2").exit_code == 2);
    CHECK(run("optimal-value --table 2 0").exit_code == 2);
}

TEST_CASE("CSV and JSON tables carry identical exact rationals") {
    const auto csv = run("optimal-value --table 6 5 --format csv");
    const auto js = run("optimal-value --table 6 5 --format json");
    CHECK(csv.exit_code == 0);
    CHECK(js.exit_code == 0);

    const json parsed = json::parse(js.out);
    CHECK(parsed["n_max"] == 6);
    CHECK(parsed["d_max"] == 5);

    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n\\d,1,2,3,4,5");
    for (int n = 1; n <= 6; ++n) {
        std::string line;
        REQUIRE(std::getline(lines, line));
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(cell == std::to_string(n));
        for (int d = 1; d <= 5; ++d) {
            REQUIRE(std::getline(cells, cell, ','));
            CHECK(cell == parsed["rows"][n - 1][d - 1].get<std::string>());
        }
    }
}

TEST_CASE("check certifies the pinned examples") {
    const auto gmaj33 = write_matrix("gmaj33.json", majority_strategy(GameParams(3, 3)));
    const auto r = run("check " + gmaj33.string() + " --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["regime"] == "General");
    CHECK(j["optimal"] == true);
    CHECK(j["gap"] == "0/1");

    const auto flat = write_matrix("flat22.json",
                                   DecodingMatrix(GameParams(2, 2), {{0, 0}, {0, 0}}));
    const json jf = json::parse(run("check " + flat.string() + " --format json").out);
    CHECK(jf["optimal"] == false);
    CHECK(jf["gap"] == "1/4");

    const auto p2 = write_matrix("p2.json", DecodingMatrix(GameParams(2, 2), {{0, 0}, {1, 0}}));
    const json jp = json::parse(run("check " + p2.string() + " --format json").out);
    CHECK(jp["regime"] == "NEquals2");
    CHECK(jp["property1"] == false);
    CHECK(jp["property2"] == true);
    CHECK(jp["optimal"] == true);
    CHECK(jp["gap"] == "0/1");
}

TEST_CASE("check omits value and gap when the word space is capped away") {
    const auto big = write_matrix("big2.json", majority_strategy(GameParams(20, 4)));
    const auto r = run("check " + big.string() + " --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["optimal"] == true);
    CHECK_FALSE(j.contains("value"));
    CHECK_FALSE(j.contains("gap"));
}

TEST_CASE("improve emits a replayable trace whose matrices re-parse and re-certify") {
    const auto flat = write_matrix("flat33.json",
                                   DecodingMatrix(GameParams(3, 3),
                                                  {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    const auto r = run("improve " + flat.string() + " --format json");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);

    const auto initial = matrix_from_json(j["initial"]);
    const auto final_matrix = matrix_from_json(j["final"]);
    CHECK(satisfies_property1(final_matrix));
    CHECK(strategy_value(final_matrix) == optimal_value(GameParams(3, 3)));
    CHECK(j["values"].back() == fraction_string(optimal_value(GameParams(3, 3))));

    // replay the steps on the re-parsed initial matrix
    DecodingMatrix replay = initial;
    for (const json& s : j["steps"])
        replay = replay.with_entry(s["y"].get<int>(), s["j"].get<int>(), s["to"].get<int>());
    CHECK(replay == final_matrix);

    // a Property-1 input normalizes with zero steps
    const auto gmaj = write_matrix("gmaj32.json", majority_strategy(GameParams(3, 2)));
    const json j2 = json::parse(run("improve " + gmaj.string() + " --format json").out);
    CHECK(j2["steps"].empty());
    CHECK(matrix_from_json(j2["final"]) == majority_strategy(GameParams(3, 2)));

    // and the emitted final matrix round-trips through check as optimal
    const auto refile = write_temp("final33.json", j["final"].dump());
    const json recheck = json::parse(run("check " + refile.string() + " --format json").out);
    CHECK(recheck["optimal"] == true);
    CHECK(recheck["gap"] == "0/1");
}

TEST_CASE("count with and without the oracle") {
    CHECK(run("count 3 3").out == "count: 216\n");
    const auto r = run("count 2 2 --oracle");
    CHECK(r.out == "count: 12\noracle: 12\nverdict: AGREE\n");
    const auto r52 = run("count 5 2 --oracle");
    CHECK(r52.out == "count: 32\noracle: 32\nverdict: AGREE\n");
    CHECK(run("count 1 9").out == "count: unavailable\n");  // no formula, oracle capped
    CHECK(run("count 4 4 --oracle").exit_code == 3);        // 4^16 matrices past the cap
}

TEST_CASE("witness surfaces both constructions") {
    const auto gmaj33 = write_matrix("gmaj33w.json", majority_strategy(GameParams(3, 3)));
    const json j3 = json::parse(
        run("witness " + gmaj33.string() + " --column 1 --y1 1 --y2 2 --format json").out);
    CHECK(j3["lemma"] == 3);
    CHECK(j3["witness"] == json({0, 0, 1}));
    CHECK(j3["max_sim"].get<int>() > j3["merged_max_sim"].get<int>());

    const auto f = write_matrix("lemma5.json",
                                DecodingMatrix(GameParams(4, 2), {{0, 0, 0, 0}, {0, 0, 1, 1}}));
    const json j5 = json::parse(run("witness " + f.string() + " --format json").out);
    CHECK(j5["lemma"] == 5);
    CHECK(j5["witness"] == json({1, 1, 0, 1}));
    CHECK(j5["max_sim"] == 1);

    // missing cell in the general regime, and inapplicable regimes, are input errors
    CHECK(run("witness " + gmaj33.string()).exit_code == 2);
    const auto n2 = write_matrix("n2.json", majority_strategy(GameParams(2, 3)));
    CHECK(run("witness " + n2.string()).exit_code == 2);
    const auto gmaj42 = write_matrix("gmaj42.json", majority_strategy(GameParams(4, 2)));
    CHECK(run("witness " + gmaj42.string()).exit_code == 2);  // satisfies Property 2
}

TEST_CASE("digits flag controls decimal rendering") {
    CHECK(run("optimal-value 3 3 --digits 4").out == "17/27 (0.6296)\n");
    CHECK(run("optimal-value 3 3 --digits 1").out == "17/27 (0.6)\n");
    CHECK(run("optimal-value 3 3 --digits 0").exit_code == 2);
}

TEST_CASE("unknown subcommands and flags fail as input errors") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("value").exit_code == 2);
    CHECK(run("optimal-value 2 2 --format yaml").exit_code == 2);
}
