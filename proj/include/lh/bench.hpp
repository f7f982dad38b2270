#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lh/degree.hpp"

namespace lh::bench {

struct BenchConfig {
    std::uint32_t d = 2;
    std::uint32_t n_min = 2;
    std::uint32_t n_max = 4;
    std::uint32_t repetitions = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool oracle = true;
    std::uint64_t oracle_path_cap = 20000;  // larger total-degree runs are reported as NA

    void validate() const;
};

/// Timing and count summary for one side (explicit start or oracle) of a cell.
struct SideStats {
    std::uint64_t paths = 0;                 // per repetition
    std::vector<std::uint64_t> found;        // per repetition
    std::vector<std::uint64_t> converged;    // per repetition
    std::vector<double> times;               // per repetition, seconds of tracking
    std::string error;                       // set when a repetition threw

    bool available() const { return !times.empty() && error.empty(); }
    double mean_time() const;
    double median_time() const;
};

struct BenchRow {
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    std::uint32_t repetitions = 0;
    degree::BigInt expected;
    SideStats explicit_start;
    std::optional<SideStats> oracle;  // absent: skipped (path cap or disabled)

    /// Every repetition found exactly `expected` points.
    bool exact() const;
};

/// Instance seed for repetition r of cell (d, n).
std::uint64_t instance_seed(std::uint64_t seed, std::uint32_t d, std::uint32_t n, std::uint32_t r);

std::vector<BenchRow> run_bench(const BenchConfig& cfg);

std::string format_table(const std::vector<BenchRow>& rows);
/// One JSON object per line.
std::string format_machine(const std::vector<BenchRow>& rows);

}  // namespace lh::bench
