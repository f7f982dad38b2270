#include "lh/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "lh/start_system.hpp"

namespace lh {

namespace {

double inf_dist(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

cplx random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, phase(rng));
}

bool lex_less(const CVector& a, const CVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

void tally(SolveReport& report) {
    report.paths_tracked = report.paths.size();
    for (const auto& p : report.paths) {
        switch (p.status) {
            case PathStatus::Converged: ++report.n_converged; break;
            case PathStatus::Diverged: ++report.n_diverged; break;
            case PathStatus::Failed: ++report.n_failed; break;
        }
    }
}

// Dedup, real classification, ordering and global minimum from the converged
// endpoints (already in the caller's original coordinates).
void assemble_points(SolveReport& report, std::vector<CVector> endpoints, std::vector<double> residual,
                     double dedup_radius, double real_tol, const std::optional<SparsePolynomial>& objective) {
    const auto n = static_cast<Eigen::Index>(report.n);
    const std::vector<std::size_t> keep = deduplicate(endpoints, dedup_radius, report.merges);
    if (report.merges > 0) {
        report.warnings.push_back(std::to_string(report.merges) +
                                  " converged endpoint(s) merged during deduplication (nongeneric instance?)");
    }
    std::vector<CriticalPoint> points;
    points.reserve(keep.size());
    for (std::size_t k : keep) {
        CriticalPoint cp;
        cp.x = endpoints[k].head(n);
        cp.lambda = endpoints[k].tail(endpoints[k].size() - n);
        cp.residual = residual[k];
        points.push_back(std::move(cp));
    }
    std::sort(points.begin(), points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        CVector za(a.x.size() + a.lambda.size());
        CVector zb(b.x.size() + b.lambda.size());
        za << a.x, a.lambda;
        zb << b.x, b.lambda;
        return lex_less(za, zb);
    });
    classify_real(points, real_tol, objective);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].objective_value) continue;
        if (!report.global_minimum || *points[i].objective_value < *points[*report.global_minimum].objective_value) {
            report.global_minimum = i;
        }
    }
    report.found = std::move(points);
}

// Paths that did not converge, or whose endpoint coincides with another
// path's endpoint (a sign that one of them jumped).
std::vector<std::size_t> suspect_paths(const std::vector<PathResult>& paths, double radius) {
    std::vector<std::size_t> conv;
    std::vector<bool> flag(paths.size(), false);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].status == PathStatus::Converged) {
            conv.push_back(i);
        } else {
            flag[i] = true;
        }
    }
    std::sort(conv.begin(), conv.end(), [&](std::size_t a, std::size_t b) {
        return paths[a].endpoint[0].real() < paths[b].endpoint[0].real();
    });
    for (std::size_t i = 0; i < conv.size(); ++i) {
        const CVector& zi = paths[conv[i]].endpoint;
        for (std::size_t j = i + 1; j < conv.size(); ++j) {
            const CVector& zj = paths[conv[j]].endpoint;
            if (zj[0].real() - zi[0].real() > radius) break;
            if (inf_dist(zi, zj) <= radius) flag[conv[i]] = flag[conv[j]] = true;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (flag[i]) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<std::uint32_t> coordinate_degrees(const SparsePolynomial& f) {
    std::vector<std::uint32_t> d(f.nvars(), 0);
    for (std::size_t i = 0; i < f.nvars(); ++i) d[i] = f.degree_in(i);
    return d;
}

void check_simplex_support(const SparsePolynomial& f, std::span<const std::uint32_t> degrees) {
    if (degrees.size() != f.nvars()) throw std::invalid_argument("degree list length mismatch");
    std::uint64_t lcm = 1;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] == 0) {
            throw SupportError("variable x" + std::to_string(i + 1) +
                               " does not appear in f; the binomial start needs every coordinate degree >= 1");
        }
        lcm = std::lcm(lcm, static_cast<std::uint64_t>(degrees[i]));
    }
    for (const auto& [alpha, c] : f.terms()) {
        std::uint64_t weight = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) weight += alpha[i] * (lcm / degrees[i]);
        if (weight > lcm) {
            std::string mono;
            for (auto e : alpha) mono += (mono.empty() ? "" : ",") + std::to_string(e);
            throw SupportError("monomial (" + mono +
                               ") lies outside Conv{0, d_i e_i}; use the total-degree oracle for this problem");
        }
    }
}

std::vector<std::size_t> deduplicate(std::span<const CVector> points, double radius, std::uint64_t& merges) {
    merges = 0;
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    if (points.empty()) return order;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a][0].real() < points[b][0].real();
    });
    std::vector<std::size_t> reps;  // sorted by Re z_0 since we sweep in that order
    for (std::size_t idx : order) {
        const double key = points[idx][0].real();
        bool dup = false;
        for (std::size_t r = reps.size(); r-- > 0;) {
            if (key - points[reps[r]][0].real() > radius) break;
            if (inf_dist(points[idx], points[reps[r]]) <= radius) {
                dup = true;
                break;
            }
        }
        if (dup) {
            ++merges;
        } else {
            reps.push_back(idx);
        }
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

double min_pairwise_distance(std::span<const CVector> points) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a][0].real() < points[b][0].real();
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (points[order[j]][0].real() - points[order[i]][0].real() >= best) break;
            best = std::min(best, inf_dist(points[order[i]], points[order[j]]));
        }
    }
    return best;
}

RealPartition classify_real(std::vector<CriticalPoint>& points, double real_tol,
                            const std::optional<SparsePolynomial>& objective) {
    RealPartition part;
    auto coord_real = [real_tol](cplx c) { return std::abs(c.imag()) < real_tol * (1.0 + std::abs(c.real())); };
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto& p = points[k];
        bool real = true;
        for (Eigen::Index i = 0; i < p.x.size() && real; ++i) real = coord_real(p.x[i]);
        for (Eigen::Index i = 0; i < p.lambda.size() && real; ++i) real = coord_real(p.lambda[i]);
        p.is_real = real;
        p.objective_value.reset();
        if (real) {
            part.real.push_back(k);
            if (objective) {
                const CVector xr = p.x.real().cast<cplx>();
                p.objective_value = evaluate(*objective, as_span(xr)).real();
            }
        } else {
            part.nonreal.push_back(k);
        }
    }
    return part;
}

LinearObjectiveProblem random_dense_problem(std::size_t n, std::uint32_t d, std::uint64_t seed, CoefficientMode mode) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    LinearObjectiveProblem p;
    p.u.resize(n);
    for (auto& ui : p.u) ui = (rng() & 1U) ? mag(rng) : -mag(rng);
    p.f = random_generic(n, dense_support(n, d), rng(), mode);
    return p;
}

SolveReport solve(const LinearObjectiveProblem& problem, const SolverConfig& cfg) {
    SolveReport report;
    report.warnings = problem.validate();
    const std::size_t n = problem.dimension();
    report.n = n;
    report.m = 1;

    const std::vector<std::uint32_t> degrees = coordinate_degrees(problem.f);
    check_simplex_support(problem.f, degrees);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
    std::vector<std::uint32_t> sorted(n);
    LinearObjectiveProblem permuted{std::vector<double>(n), problem.f.permuted(perm)};
    for (std::size_t k = 0; k < n; ++k) {
        sorted[k] = degrees[perm[k]];
        permuted.u[k] = problem.u[perm[k]];
    }

    const degree::BigInt expected = degree::refined_hypersurface_degree(sorted);
    report.expected_count = expected;
    if (!degree::refined_degree_established(sorted)) {
        report.warnings.emplace_back("degree profile lies outside the families with an established count");
    }
    if (expected == 0) {
        report.algebraic_degree_zero = true;
        report.warnings.emplace_back("algebraic degree zero: no critical points, no paths tracked");
        return report;
    }

    std::mt19937_64 rng(cfg.seed);
    report.gamma = random_unit(rng);

    std::vector<cplx> coeffs(n + 1);
    coeffs[0] = permuted.f.coefficient(Exponent(n, 0));
    if (coeffs[0] == cplx{}) coeffs[0] = random_unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = sorted[i];
        coeffs[i + 1] = permuted.f.coefficient(e);
    }
    const BinomialStart start = build_binomial_start(permuted, coeffs, sorted);
    const std::vector<CVector> roots = start.roots();

    const StraightLineHomotopy h(std::make_shared<CompiledSystem>(start.system()),
                                 std::make_shared<CompiledLagrangeHypersurface>(permuted), report.gamma);
    const auto t0 = std::chrono::steady_clock::now();
    report.paths = track_all(h, roots, cfg.tracker, cfg.threads);
    TrackerConfig strict = cfg.tracker;
    for (unsigned round = 0; round < cfg.retrack_rounds; ++round) {
        const std::vector<std::size_t> suspects = suspect_paths(report.paths, cfg.dedup_radius);
        if (suspects.empty()) break;
        strict.max_step /= 4.0;
        strict.initial_step = std::min(strict.initial_step, strict.max_step);
        std::vector<CVector> starts;
        for (std::size_t i : suspects) starts.push_back(roots[i]);
        const std::vector<PathResult> redo = track_all(h, starts, strict, cfg.threads);
        for (std::size_t k = 0; k < suspects.size(); ++k) {
            if (redo[k].status == PathStatus::Converged) report.paths[suspects[k]] = redo[k];
        }
        report.retracked += suspects.size();
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tally(report);
    if (report.n_converged == 0) {
        throw std::runtime_error("all " + std::to_string(report.paths_tracked) + " paths failed to converge");
    }

    std::vector<CVector> endpoints;
    std::vector<double> res;
    for (const auto& p : report.paths) {
        if (p.status != PathStatus::Converged) continue;
        CVector z(static_cast<Eigen::Index>(n + 1));
        for (std::size_t k = 0; k < n; ++k) z[static_cast<Eigen::Index>(perm[k])] = p.endpoint[static_cast<Eigen::Index>(k)];
        z[static_cast<Eigen::Index>(n)] = p.endpoint[static_cast<Eigen::Index>(n)];
        endpoints.push_back(std::move(z));
        res.push_back(p.residual);
    }
    assemble_points(report, std::move(endpoints), std::move(res), cfg.dedup_radius, cfg.real_tol,
                    linear_form(problem.u));

    for (const auto& cp : report.found) {
        if (!cp.is_real) continue;
        const CVector xr = cp.x.real().cast<cplx>();
        double g2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) g2 += std::norm(evaluate(partial(problem.f, i), as_span(xr)));
        const double g = std::sqrt(g2);
        if (!report.min_gradient_norm || g < *report.min_gradient_norm) report.min_gradient_norm = g;
    }
    return report;
}

SolveReport solve_oracle_total_degree(const SquareSystem& system, const SolverConfig& cfg,
                                      const std::optional<SparsePolynomial>& objective,
                                      const std::optional<degree::BigInt>& expected) {
    system.validate();
    SolveReport report;
    report.n = system.num_primal;
    report.m = system.num_multipliers();
    report.expected_count = expected;

    std::mt19937_64 rng(cfg.seed);
    report.gamma = random_unit(rng);
    const TotalDegreeStart start = build_total_degree_start(system, cfg.seed + 0x9e3779b97f4a7c15ULL);
    const std::vector<CVector> roots = start.roots();
    const StraightLineHomotopy h(start.system(), system, report.gamma);

    const auto t0 = std::chrono::steady_clock::now();
    report.paths = track_all(h, roots, cfg.tracker, cfg.threads);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    tally(report);

    std::vector<CVector> endpoints;
    std::vector<double> res;
    for (const auto& p : report.paths) {
        if (p.status != PathStatus::Converged) continue;
        endpoints.push_back(p.endpoint);
        res.push_back(p.residual);
    }
    assemble_points(report, std::move(endpoints), std::move(res), cfg.dedup_radius, cfg.real_tol, objective);
    return report;
}

}  // namespace lh
