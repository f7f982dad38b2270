#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lh/bench.hpp"
#include "lh/cli.hpp"
#include "lh/io.hpp"

using namespace lh;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    io::write_text(path, text);
    return path;
}

}  // namespace

TEST_CASE("degree subcommand") {
    auto r = run({"degree", "--n", "6", "--d", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("generic      96") != std::string::npos);
    CHECK(r.out.find("refined      96") != std::string::npos);

    r = run({"degree", "--n", "3", "--multiaffine", "--format", "machine"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["multiaffine"] == "9");

    r = run({"degree", "--degrees", "1,2,2,2", "--format", "machine"});
    CHECK(nlohmann::json::parse(r.out)["refined"] == "1");

    CHECK(run({"degree", "--d", "3"}).code == cli::kInputError);
    CHECK(run({"degree", "--n", "2", "--degrees", "2,2,2"}).code == cli::kInputError);
}

TEST_CASE("tropical-check subcommand") {
    auto r = run({"tropical-check", "--n", "4", "--d", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(1,1,1,1;0)") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);

    CHECK(run({"tropical-check", "--degrees", "2,3,4"}).code == 0);
    CHECK(run({"tropical-check", "--degrees", "1,2"}).code == cli::kInputError);

    r = run({"tropical-check", "--univariate", "--format", "machine"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cells"].size() == 2);
    CHECK(j["cells"][0]["normal"] == "-1/2");
    CHECK(j["cells"][1]["normal"] == "-1");
    CHECK(j["roots"].size() == 3);
}

TEST_CASE("solve subcommand exit codes") {
    const auto ok = write_temp("lh_cli_ok.json", R"({"format": 1, "n": 2, "objective": [1, 0.5],
      "constraint": [{"exponents": [0, 0], "re": 1}, {"exponents": [1, 0], "re": 2},
                     {"exponents": [0, 1], "re": -3}, {"exponents": [0, 2], "re": 1.5}]})");
    const auto out_path = std::filesystem::temp_directory_path() / "lh_cli_result.json";
    auto r = run({"solve", ok.string(), "--output", out_path.string(), "--seed", "4"});
    CHECK(r.code == cli::kOk);
    std::ifstream in(out_path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j["found"] == 1);
    CHECK(j["seed"] == 4);
    CHECK(j["points"][0]["x"][0][0].template get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    r = run({"solve", ok.string(), "--format", "machine"});
    CHECK(r.code == cli::kOk);
    CHECK(nlohmann::json::parse(r.out)["expected_count"] == 1);

    const auto dup = write_temp("lh_cli_dup.json", "{\"format\": 1, \"n\": 1, \"objective\": [1],\n"
                                                   "\"constraint\": [{\"exponents\": [2], \"re\": 1},\n"
                                                   "{\"exponents\": [2], \"re\": 2}]}");
    r = run({"solve", dup.string()});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("duplicate") != std::string::npos);

    const auto bad_support = write_temp("lh_cli_support.json", R"({"format": 1, "n": 2, "objective": [1, 1],
      "constraint": [{"exponents": [0, 0], "re": 1}, {"exponents": [1, 1], "re": 1},
                     {"exponents": [1, 0], "re": 1}, {"exponents": [0, 1], "re": 1}]})");
    CHECK(run({"solve", bad_support.string()}).code == cli::kInputError);

    CHECK(run({"solve", "/nonexistent/problem.json"}).code == cli::kInputError);
    CHECK(run({"solve"}).code == cli::kInputError);
    CHECK(run({}).code == cli::kInputError);

    // a tracker that cannot take a single step fails every path
    r = run({"solve", ok.string(), "--tol", "0"});
    CHECK(r.code != cli::kOk);

    for (const auto& p : {ok, dup, bad_support, out_path}) std::filesystem::remove(p);
}

TEST_CASE("bench subcommand and harness") {
    auto r = run({"bench", "--d", "2", "--n-min", "2", "--n-max", "3", "--reps", "2", "--format", "machine"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["expected"] == "2");
        CHECK(j["exact"] == true);
        CHECK(j["explicit"]["paths"] == 2);
        CHECK(j["oracle"]["paths"] == (rows == 0 ? 8 : 16));
        ++rows;
    }
    CHECK(rows == 2);

    bench::BenchConfig empty;
    empty.repetitions = 0;
    CHECK(bench::run_bench(empty).empty());
    const std::string table = bench::format_table({});
    CHECK(table.find("expected") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 1);

    bench::BenchConfig capped;
    capped.d = 3;
    capped.n_min = capped.n_max = 6;
    capped.oracle_path_cap = 100;
    capped.repetitions = 1;
    const auto rows3 = bench::run_bench(capped);
    REQUIRE(rows3.size() == 1);
    CHECK(rows3[0].expected == 96);
    CHECK_FALSE(rows3[0].oracle);
    CHECK(bench::format_table(rows3).find("NA") != std::string::npos);

    CHECK(bench::instance_seed(1, 2, 3, 4) == bench::instance_seed(1, 2, 3, 4));
    CHECK(bench::instance_seed(1, 2, 3, 4) != bench::instance_seed(1, 2, 3, 5));
    bench::BenchConfig bad;
    bad.n_min = 5;
    bad.n_max = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("thread count from the environment") {
    ::setenv("LH_THREADS", "3", 1);
    CHECK(cli::env_threads() == 3);
    ::setenv("LH_THREADS", "zero", 1);
    CHECK(cli::env_threads() == 1);
    ::unsetenv("LH_THREADS");
    CHECK(cli::env_threads() == 1);
}
