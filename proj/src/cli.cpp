#include "lh/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lh/bench.hpp"
#include "lh/degree.hpp"
#include "lh/io.hpp"
#include "lh/solver.hpp"
#include "lh/tropical.hpp"

namespace lh::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string complex_str(cplx c) {
    if (c.imag() == 0.0) return num(c.real());
    return num(c.real()) + (c.imag() < 0 ? "-" : "+") + num(std::abs(c.imag())) + "i";
}

std::string vector_str(const CVector& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + complex_str(v[i]);
    return s + ")";
}

template <typename T>
std::string list_str(const std::vector<T>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

struct Common {
    std::string format = "table";
    std::string output;
    unsigned threads = 0;
};

unsigned resolve_threads(unsigned flag) { return flag > 0 ? flag : env_threads(); }

void add_common(CLI::App* cmd, Common& c, bool with_output) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "machine"}));
    cmd->add_option("--threads", c.threads, "Tracking threads (default: LH_THREADS or 1)");
    if (with_output) cmd->add_option("--output", c.output, "Write the result to this file");
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string problem;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> real_tol;
    Common common;
};

void print_solve_table(std::ostream& out, const SolveReport& r) {
    out << "expected   " << (r.expected_count ? r.expected_count->str() : "unknown") << "\n";
    out << "paths      " << r.paths_tracked << " tracked, " << r.n_converged << " converged, " << r.n_diverged
        << " diverged, " << r.n_failed << " failed\n";
    const auto nreal = std::count_if(r.found.begin(), r.found.end(), [](const CriticalPoint& p) { return p.is_real; });
    out << "found      " << r.found.size() << " (" << nreal << " real)\n";
    if (const auto* m = r.minimum()) {
        out << "minimum    objective " << num(*m->objective_value) << " at x = " << vector_str(m->x.real().cast<cplx>())
            << "\n";
    } else {
        out << "minimum    none (no real critical point)\n";
    }
    if (r.min_gradient_norm) out << "min |grad f| over real points " << num(*r.min_gradient_norm) << "\n";
    out << "time       " << num(r.wall_time) << " s\n";
    for (const auto& w : r.warnings) out << "warning    " << w << "\n";
    for (std::size_t i = 0; i < r.found.size(); ++i) {
        const auto& p = r.found[i];
        out << "  [" << i << "] " << (p.is_real ? "real    " : "nonreal ") << "x = " << vector_str(p.x)
            << "  lambda = " << vector_str(p.lambda) << "  residual " << num(p.residual);
        if (p.objective_value) out << "  objective " << num(*p.objective_value);
        out << "\n";
    }
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    io::ProblemFile file;
    try {
        file = io::load_problem(a.problem);
    } catch (const std::exception& e) {
        err << "error: " << a.problem << ": " << e.what() << "\n";
        return kInputError;
    }
    SolverConfig cfg;
    cfg.seed = a.seed ? *a.seed : file.seed.value_or(0);
    cfg.threads = resolve_threads(a.common.threads);
    if (a.tol) cfg.tracker.endpoint_tol = *a.tol;
    if (a.real_tol) cfg.real_tol = *a.real_tol;

    SolveReport report;
    try {
        report = solve(file.problem, cfg);
    } catch (const SupportError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kMismatch;
    }

    const std::string doc = io::serialize_result(report, {cfg.seed, cfg.threads, true});
    if (!a.common.output.empty()) {
        try {
            io::write_text(a.common.output, doc);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    if (a.common.format == "machine") {
        out << doc;
    } else {
        print_solve_table(out, report);
    }
    const bool exact = report.expected_count && degree::BigInt(report.found.size()) == *report.expected_count;
    if (!exact || report.n_failed > 0) {
        err << "count mismatch or failed paths: found " << report.found.size() << ", expected "
            << (report.expected_count ? report.expected_count->str() : "?") << ", failed " << report.n_failed << "\n";
        return kMismatch;
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct DegreeArgs {
    std::optional<std::uint32_t> n;
    std::optional<std::uint32_t> d;
    std::vector<std::uint32_t> degrees;
    std::uint32_t d0 = 1;
    bool multiaffine = false;
    Common common;
};

int cmd_degree(const DegreeArgs& a, std::ostream& out, std::ostream& err) {
    Json j;
    try {
        std::vector<std::uint32_t> ds = a.degrees;
        if (ds.empty() && a.d) {
            if (!a.n) throw std::invalid_argument("--d needs --n");
            ds.assign(*a.n, *a.d);
        }
        if (a.n && !ds.empty() && ds.size() != *a.n) throw std::invalid_argument("--degrees length differs from --n");
        if (ds.empty() && !a.multiaffine) throw std::invalid_argument("give --d with --n, --degrees, or --multiaffine");
        if (!ds.empty()) {
            const auto n = static_cast<std::uint32_t>(ds.size());
            j["n"] = n;
            j["degrees"] = ds;
            const bool uniform = std::all_of(ds.begin(), ds.end(), [&](auto v) { return v == ds.front(); });
            if (uniform) {
                degree::DegreeProfile p{a.d0, {ds.front()}, n};
                p.validate();
                j["generic"] = degree::algebraic_degree_generic(p).str();
            }
            if (a.d0 == 1) {
                std::vector<std::uint32_t> sorted = ds;
                std::sort(sorted.begin(), sorted.end());
                j["refined"] = degree::refined_hypersurface_degree(sorted).str();
                j["established"] = degree::refined_degree_established(sorted);
            }
            const std::uint32_t top = *std::max_element(ds.begin(), ds.end());
            j["bezout"] = degree::bezout_number(std::vector<std::uint32_t>(n + 1, top)).str();
        }
        if (a.multiaffine) {
            if (!a.n) throw std::invalid_argument("--multiaffine needs --n");
            j["n"] = *a.n;
            j["multiaffine"] = degree::derangement(*a.n + 1).str();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    if (a.common.format == "machine") {
        out << j.dump() << "\n";
    } else {
        if (j.contains("degrees")) out << "degrees      " << list_str(j["degrees"].get<std::vector<std::uint32_t>>()) << "\n";
        if (j.contains("generic")) out << "generic      " << j["generic"].get<std::string>() << "\n";
        if (j.contains("refined")) {
            out << "refined      " << j["refined"].get<std::string>();
            if (!j["established"].get<bool>()) out << "  (outside the established families)";
            out << "\n";
        }
        if (j.contains("bezout")) out << "bezout       " << j["bezout"].get<std::string>() << "\n";
        if (j.contains("multiaffine")) out << "multiaffine  " << j["multiaffine"].get<std::string>() << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct TropicalArgs {
    std::optional<std::uint32_t> n;
    std::optional<std::uint32_t> d;
    std::vector<std::uint32_t> degrees;
    bool allow_low = false;
    bool univariate = false;
    Common common;
};

std::string solution_str(const tropical::TropicalSolution& s) {
    std::string out = "(";
    for (std::size_t i = 0; i + 1 < s.values.size(); ++i) out += (i ? "," : "") + tropical::to_string(s.values[i]);
    return out + ";" + tropical::to_string(s.b()) + ")";
}

int cmd_univariate(const TropicalArgs& a, std::ostream& out) {
    using tropical::Rational;
    const std::vector<cplx> coeffs{-1.0, 2.0, -1.0, 1.0};
    const std::vector<Rational> weights{0, 3, 1, 2};
    std::vector<tropical::LiftedPoint> pts;
    for (std::size_t j = 0; j < coeffs.size(); ++j) pts.push_back({static_cast<std::int64_t>(j), weights[j]});
    const auto cells = tropical::lower_hull_cells_univariate(pts);
    const std::vector<tropical::TropicalRow> rows{tropical::univariate_row(pts)};
    const auto sols = tropical::solve_tropical(rows);
    const auto tracked = tropical::solve_univariate_polyhedral(coeffs, weights);

    bool pass = cells.size() == sols.size();
    for (const auto& c : cells) {
        pass = pass && std::any_of(sols.begin(), sols.end(), [&](const auto& s) { return s.values[0] == c.normal; });
    }
    for (const auto& p : tracked.paths) pass = pass && p.status == PathStatus::Converged;
    pass = pass && tracked.paths.size() == 3;

    if (a.common.format == "machine") {
        Json j;
        j["polynomial"] = "x^3 - x^2 + 2x - 1";
        j["weights"] = {0, 3, 1, 2};
        Json jc = Json::array();
        for (const auto& c : cells) jc.push_back({{"points", c.points}, {"normal", tropical::to_string(c.normal)}});
        j["cells"] = jc;
        Json roots = Json::array();
        for (const auto& p : tracked.paths) {
            roots.push_back({{"re", p.endpoint[0].real()}, {"im", p.endpoint[0].imag()}, {"residual", p.residual}});
        }
        j["roots"] = roots;
        j["pass"] = pass;
        out << j.dump() << "\n";
    } else {
        out << "f = x^3 - x^2 + 2x - 1, weights (0, 3, 1, 2)\n";
        for (const auto& c : cells) {
            out << "cell {";
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                out << (i ? ", " : "") << "(" << pts[c.points[i]].exponent << "," << pts[c.points[i]].weight << ")";
            }
            out << "}  inner normal (" << c.normal << ", 1)\n";
        }
        for (const auto& cell : tracked.cells) {
            out << "cell " << cell.normal << ": " << cell.start_points.size() << " start point(s), t = s^"
                << cell.denominator << "\n";
        }
        for (const auto& p : tracked.paths) {
            out << "root " << complex_str(p.endpoint[0]) << "  residual " << num(p.residual) << "\n";
        }
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kOk : kMismatch;
}

int cmd_tropical(const TropicalArgs& a, std::ostream& out, std::ostream& err) {
    if (a.univariate) return cmd_univariate(a, out);
    std::vector<std::uint32_t> ds = a.degrees;
    bool uniform = false;
    if (ds.empty()) {
        if (!a.n || !a.d) {
            err << "error: give --n with --d, --degrees, or --univariate\n";
            return kInputError;
        }
        ds.assign(*a.n, *a.d);
        uniform = true;
    }
    std::sort(ds.begin(), ds.end());
    if (ds.front() < 2 && !a.allow_low) {
        err << "error: the liftings assume every degree >= 2 (use --allow-low-degree to override)\n";
        return kInputError;
    }
    std::vector<tropical::TropicalSolution> sols;
    try {
        const auto lifting = uniform ? tropical::uniform_lifting(ds.size(), ds.front()) : tropical::refined_lifting(ds);
        sols = tropical::solve_tropical(tropical::build_tropical_system(ds, lifting));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    const bool pass = tropical::is_unique_unit_solution(sols);
    if (a.common.format == "machine") {
        Json j;
        j["degrees"] = ds;
        j["lifting"] = uniform ? "uniform" : "refined";
        Json js = Json::array();
        for (const auto& s : sols) {
            Json as = Json::array();
            for (const auto& v : s.a()) as.push_back(tropical::to_string(v));
            js.push_back({{"a", as}, {"b", tropical::to_string(s.b())}});
        }
        j["solutions"] = js;
        j["pass"] = pass;
        out << j.dump() << "\n";
    } else {
        out << "degrees " << list_str(ds) << ", " << (uniform ? "uniform" : "refined") << " lifting\n";
        out << sols.size() << " solution(s)\n";
        for (const auto& s : sols) out << "  (a;b) = " << solution_str(s) << "\n";
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    bench::BenchConfig cfg;
    bool no_oracle = false;
    Common common;
};

int cmd_bench(BenchArgs a, std::ostream& out, std::ostream& err) {
    a.cfg.threads = resolve_threads(a.common.threads);
    a.cfg.oracle = !a.no_oracle;
    std::vector<bench::BenchRow> rows;
    try {
        rows = bench::run_bench(a.cfg);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    const std::string text = a.common.format == "machine" ? bench::format_machine(rows) : bench::format_table(rows);
    out << text;
    if (!a.common.output.empty()) {
        try {
            io::write_text(a.common.output, text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    const bool all_exact = std::all_of(rows.begin(), rows.end(), [](const bench::BenchRow& r) { return r.exact(); });
    return all_exact ? kOk : kMismatch;
}

}  // namespace

unsigned env_threads() {
    const char* v = std::getenv("LH_THREADS");
    if (v == nullptr || *v == '\0') return 1;
    char* end = nullptr;
    const unsigned long t = std::strtoul(v, &end, 10);
    if (*end != '\0' || t == 0 || t > 1024) return 1;
    return static_cast<unsigned>(t);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical points of linear objectives on hypersurfaces by homotopy continuation", "lh"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Find all critical points of a problem file");
    solve_cmd->add_option("problem", solve_args.problem, "Problem file")->required();
    solve_cmd->add_option("--seed", solve_args.seed, "Random seed (overrides the file's seed)");
    solve_cmd->add_option("--tol", solve_args.tol, "Endpoint residual tolerance");
    solve_cmd->add_option("--real-tol", solve_args.real_tol, "Relative tolerance for classifying points as real");
    add_common(solve_cmd, solve_args.common, true);

    DegreeArgs degree_args;
    auto* degree_cmd = app.add_subcommand("degree", "Print algebraic degree counts");
    degree_cmd->add_option("--n", degree_args.n, "Number of variables");
    degree_cmd->add_option("--d", degree_args.d, "Degree of a dense hypersurface");
    degree_cmd->add_option("--degrees", degree_args.degrees, "Per-coordinate degrees d_1..d_n")->delimiter(',');
    degree_cmd->add_option("--d0", degree_args.d0, "Objective degree for the generic count");
    degree_cmd->add_flag("--multiaffine", degree_args.multiaffine, "Count for multiaffine objective and constraint");
    add_common(degree_cmd, degree_args.common, false);

    TropicalArgs trop_args;
    auto* trop_cmd = app.add_subcommand("tropical-check", "Verify the start cell of the lifted Lagrange system");
    trop_cmd->add_option("--n", trop_args.n, "Number of variables");
    trop_cmd->add_option("--d", trop_args.d, "Uniform degree");
    trop_cmd->add_option("--degrees", trop_args.degrees, "Per-coordinate degrees")->delimiter(',');
    trop_cmd->add_flag("--allow-low-degree", trop_args.allow_low, "Accept degrees below 2");
    trop_cmd->add_flag("--univariate", trop_args.univariate, "Run the univariate cubic demonstration");
    add_common(trop_cmd, trop_args.common, false);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Time the explicit start system against the total-degree oracle");
    bench_cmd->add_option("--d", bench_args.cfg.d, "Degree");
    bench_cmd->add_option("--n-min", bench_args.cfg.n_min, "Smallest n");
    bench_cmd->add_option("--n-max", bench_args.cfg.n_max, "Largest n");
    bench_cmd->add_option("--reps", bench_args.cfg.repetitions, "Repetitions per cell");
    bench_cmd->add_option("--seed", bench_args.cfg.seed, "Base seed");
    bench_cmd->add_option("--oracle-cap", bench_args.cfg.oracle_path_cap, "Skip oracle cells with more paths (NA)");
    bench_cmd->add_flag("--no-oracle", bench_args.no_oracle, "Skip the total-degree oracle");
    add_common(bench_cmd, bench_args.common, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (app.get_subcommands().empty()) err << app.help();
        return kInputError;
    }

    if (solve_cmd->parsed()) return cmd_solve(solve_args, out, err);
    if (degree_cmd->parsed()) return cmd_degree(degree_args, out, err);
    if (trop_cmd->parsed()) return cmd_tropical(trop_args, out, err);
    return cmd_bench(bench_args, out, err);
}

}  // namespace lh::cli
