#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lh/degree.hpp"
#include "lh/lagrange.hpp"
#include "lh/tracker.hpp"

namespace lh {

/// Raised when f's support is not inside Conv{0, d_1 e_1, ..., d_n e_n}.
class SupportError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SolverConfig {
    TrackerConfig tracker;
    double dedup_radius = 1e-8;
    double real_tol = 1e-8;
    std::uint64_t seed = 0;  // drives gamma and any substituted start coefficients
    unsigned threads = 1;
    // Rounds of re-tracking, each with a 4x smaller step cap, for paths that
    // failed or landed on the same endpoint as another path.
    unsigned retrack_rounds = 2;
};

struct CriticalPoint {
    CVector x;
    CVector lambda;
    double residual = 0.0;
    bool is_real = false;
    std::optional<double> objective_value;  // present iff is_real and an objective is known
};

struct SolveReport {
    std::size_t n = 0;
    std::size_t m = 1;
    std::optional<degree::BigInt> expected_count;
    std::uint64_t paths_tracked = 0;
    std::uint64_t n_converged = 0;
    std::uint64_t n_diverged = 0;
    std::uint64_t n_failed = 0;
    std::uint64_t merges = 0;     // converged endpoints folded into an existing point
    std::uint64_t retracked = 0;  // path re-runs with a smaller step cap
    std::vector<CriticalPoint> found;
    std::optional<std::size_t> global_minimum;  // index into found
    std::optional<double> min_gradient_norm;    // min |grad f| over real points
    bool algebraic_degree_zero = false;
    std::vector<std::string> warnings;
    std::vector<PathResult> paths;
    double wall_time = 0.0;  // seconds spent tracking
    cplx gamma{1.0, 0.0};

    const CriticalPoint* minimum() const { return global_minimum ? &found[*global_minimum] : nullptr; }
};

/// Per-coordinate degrees d_i = max exponent of x_i in f.
std::vector<std::uint32_t> coordinate_degrees(const SparsePolynomial& f);

/// Throws SupportError unless every exponent of f lies in Conv{0, d_i e_i}.
void check_simplex_support(const SparsePolynomial& f, std::span<const std::uint32_t> degrees);

/// All critical points of min u^T x s.t. f = 0 via the binomial start system.
SolveReport solve(const LinearObjectiveProblem& problem, const SolverConfig& cfg = {});

/// Solves `system` from a total-degree start. Used as an independent check.
/// `objective` (a polynomial in the primal variables) fills objective values;
/// `expected` is copied into the report when known.
SolveReport solve_oracle_total_degree(const SquareSystem& system, const SolverConfig& cfg = {},
                                      const std::optional<SparsePolynomial>& objective = std::nullopt,
                                      const std::optional<degree::BigInt>& expected = std::nullopt);

struct RealPartition {
    std::vector<std::size_t> real;
    std::vector<std::size_t> nonreal;
};

/// Flags points whose every coordinate (x and lambda) has
/// |Im| < real_tol * (1 + |Re|), strictly. When `objective` is given,
/// real points get objective(Re x).
RealPartition classify_real(std::vector<CriticalPoint>& points, double real_tol,
                            const std::optional<SparsePolynomial>& objective = std::nullopt);

/// Greedy clustering in max-norm. Returns the indices of the kept
/// representatives; `merges` counts the points folded away.
std::vector<std::size_t> deduplicate(std::span<const CVector> points, double radius, std::uint64_t& merges);

/// Random instance: dense degree-d f (all monomials of total degree <= d)
/// and u with |u_i| in [0.1, 1], both driven by `seed`.
LinearObjectiveProblem random_dense_problem(std::size_t n, std::uint32_t d, std::uint64_t seed,
                                            CoefficientMode mode = CoefficientMode::Real);

/// Smallest max-norm distance between two entries; +inf for fewer than two.
double min_pairwise_distance(std::span<const CVector> points);

}  // namespace lh
