#include "lh/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lh/solver.hpp"

namespace lh::bench {

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string counts(const std::vector<std::uint64_t>& v) {
    if (v.empty()) return "-";
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi ? std::to_string(*lo) : std::to_string(*lo) + ".." + std::to_string(*hi);
}

nlohmann::ordered_json side_json(const SideStats& s) {
    nlohmann::ordered_json j;
    j["paths"] = s.paths;
    j["found"] = s.found;
    j["converged"] = s.converged;
    j["times"] = s.times;
    if (s.available()) {
        j["mean_time"] = s.mean_time();
        j["median_time"] = s.median_time();
    }
    if (!s.error.empty()) j["error"] = s.error;
    return j;
}

void record(SideStats& side, const SolveReport& r) {
    side.paths = r.paths_tracked;
    side.found.push_back(r.found.size());
    side.converged.push_back(r.n_converged);
    side.times.push_back(r.wall_time);
}

}  // namespace

void BenchConfig::validate() const {
    if (d < 1) throw std::invalid_argument("bench degree must be positive");
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("bench needs 1 <= n_min <= n_max");
}

double SideStats::mean_time() const {
    if (times.empty()) return 0.0;
    return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
}

double SideStats::median_time() const {
    if (times.empty()) return 0.0;
    std::vector<double> t = times;
    std::sort(t.begin(), t.end());
    const std::size_t m = t.size() / 2;
    return t.size() % 2 ? t[m] : 0.5 * (t[m - 1] + t[m]);
}

bool BenchRow::exact() const {
    if (!explicit_start.available()) return false;
    return std::all_of(explicit_start.found.begin(), explicit_start.found.end(),
                       [&](std::uint64_t f) { return degree::BigInt(f) == expected; });
}

std::uint64_t instance_seed(std::uint64_t seed, std::uint32_t d, std::uint32_t n, std::uint32_t r) {
    // splitmix64 over the packed cell coordinates
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + (static_cast<std::uint64_t>(d) << 40) +
                                                      (static_cast<std::uint64_t>(n) << 20) + r);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<BenchRow> rows;
    if (cfg.repetitions == 0) return rows;
    for (std::uint32_t n = cfg.n_min; n <= cfg.n_max; ++n) {
        BenchRow row;
        row.d = cfg.d;
        row.n = n;
        row.repetitions = cfg.repetitions;
        const std::vector<std::uint32_t> ds(n, cfg.d);
        row.expected = degree::refined_hypersurface_degree(ds);
        const degree::BigInt bezout = degree::BigInt(cfg.d) * boost::multiprecision::pow(degree::BigInt(cfg.d), n);
        const bool run_oracle = cfg.oracle && bezout <= cfg.oracle_path_cap;
        if (run_oracle) row.oracle.emplace();
        for (std::uint32_t r = 0; r < cfg.repetitions; ++r) {
            const std::uint64_t s = instance_seed(cfg.seed, cfg.d, n, r);
            const LinearObjectiveProblem problem = random_dense_problem(n, cfg.d, s);
            SolverConfig sc;
            sc.seed = s;
            sc.threads = cfg.threads;
            try {
                record(row.explicit_start, solve(problem, sc));
            } catch (const std::exception& e) {
                row.explicit_start.error = e.what();
            }
            if (run_oracle) {
                try {
                    record(*row.oracle, solve_oracle_total_degree(lagrange_linear_hypersurface(problem), sc,
                                                                  linear_form(problem.u), row.expected));
                } catch (const std::exception& e) {
                    row.oracle->error = e.what();
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_table(const std::vector<BenchRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"d", "n", "reps", "expected", "paths", "found", "mean_s", "median_s", "oracle_paths",
                     "oracle_found", "oracle_mean_s", "oracle_median_s"});
    for (const auto& r : rows) {
        std::vector<std::string> line{std::to_string(r.d), std::to_string(r.n), std::to_string(r.repetitions),
                                      r.expected.str()};
        const auto& e = r.explicit_start;
        if (e.available()) {
            line.insert(line.end(), {std::to_string(e.paths), counts(e.found), fixed(e.mean_time(), 4),
                                     fixed(e.median_time(), 4)});
        } else {
            line.insert(line.end(), {"NA", "NA", "NA", "NA"});
        }
        if (r.oracle && r.oracle->available()) {
            const auto& o = *r.oracle;
            line.insert(line.end(), {std::to_string(o.paths), counts(o.found), fixed(o.mean_time(), 4),
                                     fixed(o.median_time(), 4)});
        } else {
            line.insert(line.end(), {"NA", "NA", "NA", "NA"});
        }
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    std::ostringstream out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i) out << "  ";
            out << std::string(width[i] - line[i].size(), ' ') << line[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string format_machine(const std::vector<BenchRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["d"] = r.d;
        j["n"] = r.n;
        j["repetitions"] = r.repetitions;
        j["expected"] = r.expected.str();
        j["exact"] = r.exact();
        j["explicit"] = side_json(r.explicit_start);
        j["oracle"] = r.oracle ? side_json(*r.oracle) : nlohmann::ordered_json(nullptr);
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace lh::bench
