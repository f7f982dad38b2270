#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lh/lagrange.hpp"
#include "lh/solver.hpp"

namespace lh::io {

/// Malformed or invalid input. what() names the field and, when known, the line.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string field, std::size_t line, const std::string& message);

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }  // 0 when unknown

private:
    std::string field_;
    std::size_t line_;
};

struct ProblemFile {
    LinearObjectiveProblem problem;
    std::optional<std::uint64_t> seed;
};

/// Problem document:
///   {"format": 1, "n": 2, "objective": [u_1, ..., u_n],
///    "constraint": [{"exponents": [a_1, ..., a_n], "re": c, "im": c}, ...],
///    "seed": 7}
/// "im" and "seed" are optional; unknown keys are rejected.
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

/// Canonical text: fixed key order, one constraint term per line, terms in
/// exponent order, shortest round-trip decimal for every double.
std::string serialize_problem(const ProblemFile& file);

struct ResultOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool include_paths = true;
};

/// Result document for a solve() report.
std::string serialize_result(const SolveReport& report, const ResultOptions& opts = {});

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace lh::io
