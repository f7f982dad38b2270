#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "lh/io.hpp"
#include "lh/solver.hpp"

using namespace lh;

namespace {

const char* kCanonical = R"({
  "format": 1,
  "n": 2,
  "objective": [0.10000000000000001, -2],
  "constraint": [
    {"exponents": [0, 0], "re": -1, "im": 0},
    {"exponents": [0, 2], "re": 1, "im": 0.25},
    {"exponents": [2, 0], "re": 0.33333333333333331, "im": 0}
  ],
  "seed": 12
}
)";

std::size_t error_line(const std::string& text) {
    try {
        io::parse_problem(text);
    } catch (const io::FormatError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("canonical files round-trip byte for byte") {
    const auto file = io::parse_problem(kCanonical);
    CHECK(file.problem.u == std::vector<double>{0.1, -2.0});
    CHECK(file.seed == 12u);
    CHECK(file.problem.f.coefficient({0, 2}) == cplx{1.0, 0.25});
    CHECK(io::serialize_problem(file) == kCanonical);
}

TEST_CASE("serialisation preserves every double") {
    const auto problem = random_dense_problem(3, 3, 99, CoefficientMode::Complex);
    const io::ProblemFile file{problem, std::nullopt};
    const std::string text = io::serialize_problem(file);
    const auto back = io::parse_problem(text);
    CHECK(back.problem.u == problem.u);
    CHECK(back.problem.f == problem.f);
    CHECK_FALSE(back.seed);
    CHECK(io::serialize_problem(back) == text);
}

TEST_CASE("format errors carry the offending line and field") {
    const std::string dup = R"({
  "format": 1,
  "n": 1,
  "objective": [1],
  "constraint": [
    {"exponents": [2], "re": 1},
    {"exponents": [0], "re": -1},
    {"exponents": [2], "re": 3}
  ]
})";
    try {
        io::parse_problem(dup);
        FAIL("expected a FormatError");
    } catch (const io::FormatError& e) {
        CHECK(e.line() == 8);
        CHECK(e.field() == "/constraint/2/exponents");
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }

    CHECK(error_line("{\n\"format\": 2, \"n\": 1, \"objective\": [1], \"constraint\": [{\"exponents\": [1], \"re\": 1}]}") == 2);
    CHECK(error_line("{\"format\": 1,\n \"n\": 2,\n \"objective\": [1],\n \"constraint\": []}") == 3);
    CHECK(error_line("{\"format\": 1, \"n\": 1, \"objective\": [1],\n\n \"constraint\": [{\"exponents\": [-1], \"re\": 1}]}") == 3);
    CHECK(error_line("{\"format\": 1, \"n\": 1, \"objective\": [1], \"constraint\": [{\"exponents\": [1], \"re\": 1}],\n \"extra\": 0}") == 2);
    CHECK(error_line("{\"format\": 1,\n \"n\": 1,\n") > 0);
    CHECK(error_line("{\"format\": 1, \"n\": 1, \"objective\": [1],\n \"constraint\": [{\"exponents\": [0], \"re\": 1}]}") == 2);
    CHECK(error_line("{\"format\": 1, \"n\": 1, \"objective\": [\"a\"], \"constraint\": [{\"exponents\": [1], \"re\": 1}]}") == 1);
}

TEST_CASE("result documents are consistent with the report") {
    LinearObjectiveProblem p{{1.0, 1.0}, SparsePolynomial(2, {{{0, 0}, -1.0}, {{2, 0}, 1.0}, {{0, 2}, 1.0}})};
    const auto report = solve(p);
    const auto j = nlohmann::json::parse(io::serialize_result(report, {3, 1, true}));
    CHECK(j["format"] == 1);
    CHECK(j["expected_count"] == 2);
    CHECK(j["found"] == 2);
    CHECK(j["seed"] == 3);
    CHECK(j["converged"].get<int>() + j["diverged"].get<int>() + j["failed"].get<int>() == j["paths_tracked"].get<int>());
    CHECK(j["points"].size() == 2);
    CHECK(j["paths"].size() == 2);
    CHECK(j["global_minimum"].is_number());
    for (const auto& pt : j["points"]) {
        CHECK(pt["x"].size() == 2);
        CHECK(pt["is_real"] == true);
    }
    const auto brief = nlohmann::json::parse(io::serialize_result(report, {0, 1, false}));
    CHECK_FALSE(brief.contains("paths"));
}

TEST_CASE("files on disk") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "lh_io_test_problem.json";
    io::write_text(path, kCanonical);
    CHECK(io::serialize_problem(io::load_problem(path)) == kCanonical);
    std::filesystem::remove(path);
    CHECK_THROWS(io::load_problem(dir / "lh_io_test_missing.json"));
}
