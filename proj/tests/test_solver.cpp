#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lh/solver.hpp"

using namespace lh;

namespace {

std::vector<CVector> stacked(const SolveReport& r) {
    std::vector<CVector> out;
    for (const auto& p : r.found) {
        CVector z(p.x.size() + p.lambda.size());
        z << p.x, p.lambda;
        out.push_back(z);
    }
    return out;
}

}  // namespace

TEST_CASE("dense instances give the generic count and agree with the total-degree oracle") {
    for (std::uint32_t d = 2; d <= 3; ++d) {
        for (std::size_t n = 2; n <= 3; ++n) {
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto problem = random_dense_problem(n, d, 1000 * d + 10 * n + seed);
                SolverConfig cfg;
                cfg.seed = seed;
                const auto r = solve(problem, cfg);
                degree::BigInt expect = d;
                for (std::size_t i = 1; i < n; ++i) expect *= d - 1;
                CHECK(r.expected_count == expect);
                CHECK(r.found.size() == static_cast<std::size_t>(expect));
                CHECK(r.n_diverged == 0);
                CHECK(r.n_converged + r.n_diverged + r.n_failed == r.paths_tracked);
                for (const auto& p : r.found) CHECK(p.residual < 1e-8);

                const auto oracle = solve_oracle_total_degree(lagrange_linear_hypersurface(problem), cfg);
                CHECK(testing::same_point_sets(stacked(r), stacked(oracle), 1e-8));
            }
        }
    }
}

TEST_CASE("real coefficients give conjugate-closed solution sets") {
    const auto problem = random_dense_problem(3, 3, 77);
    const auto r = solve(problem);
    const auto pts = stacked(r);
    std::vector<CVector> conj;
    for (const auto& z : pts) conj.push_back(z.conjugate());
    CHECK(testing::same_point_sets(pts, conj, 1e-8));
}

TEST_CASE("global minimum is the smallest objective among real points") {
    const auto r = solve(random_dense_problem(3, 2, 4));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : r.found) {
        if (p.is_real) {
            REQUIRE(p.objective_value);
            best = std::min(best, *p.objective_value);
        } else {
            CHECK_FALSE(p.objective_value);
        }
    }
    if (std::isfinite(best)) {
        REQUIRE(r.minimum());
        CHECK(*r.minimum()->objective_value == best);
    } else {
        CHECK_FALSE(r.minimum());
    }
}

TEST_CASE("unit circle has the two points -u/|u| and u/|u|") {
    LinearObjectiveProblem p{{3.0, 4.0}, SparsePolynomial(2, {{{0, 0}, -1.0}, {{2, 0}, 1.0}, {{0, 2}, 1.0}})};
    const auto r = solve(p);
    REQUIRE(r.found.size() == 2);
    REQUIRE(r.minimum());
    const auto& m = *r.minimum();
    CHECK(m.x[0].real() == doctest::Approx(-0.6).epsilon(1e-12));
    CHECK(m.x[1].real() == doctest::Approx(-0.8).epsilon(1e-12));
    CHECK(*m.objective_value == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("no real critical points leaves the minimum absent") {
    // x^2 + y^2 + 1 = 0 has no real points
    LinearObjectiveProblem p{{1.0, 1.0}, SparsePolynomial(2, {{{0, 0}, 1.0}, {{2, 0}, 1.0}, {{0, 2}, 1.0}})};
    const auto r = solve(p);
    CHECK(r.found.size() == 2);
    CHECK_FALSE(r.minimum());
    CHECK_FALSE(r.min_gradient_norm);
}

TEST_CASE("degree-zero support tracks nothing") {
    LinearObjectiveProblem p{{1.0, 1.0, 1.0},
                             SparsePolynomial(3, {{{0, 0, 0}, 1.0}, {{1, 0, 0}, 2.0}, {{0, 1, 0}, -1.0}, {{0, 0, 2}, 1.0}})};
    const auto r = solve(p);
    CHECK(r.expected_count == 0);
    CHECK(r.algebraic_degree_zero);
    CHECK(r.paths_tracked == 0);
    CHECK(r.found.empty());
}

TEST_CASE("coordinates are reordered internally and restored") {
    // degrees (3, 2): sorted order differs from input order
    LinearObjectiveProblem p{{0.7, -0.4}, random_generic(2, simplex_support(std::vector<std::uint32_t>{3, 2}), 12, CoefficientMode::Real)};
    const auto r = solve(p);
    CHECK(r.expected_count == 2 * 2);
    REQUIRE(r.found.size() == 4);
    const auto L = lagrange_linear_hypersurface(p);
    for (const auto& z : stacked(r)) {
        for (const auto& q : L.polys) CHECK(std::abs(evaluate(q, as_span(z))) < 1e-8 * (1 + term_magnitude(q, as_span(z))));
    }
}

TEST_CASE("support outside the simplex is rejected") {
    // x*y with degrees (1, 1): exponent (1,1) lies outside Conv{0, e1, e2}
    LinearObjectiveProblem p{{1.0, 1.0}, SparsePolynomial(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}, {{1, 1}, 1.0}})};
    CHECK_THROWS_AS(solve(p), SupportError);
    CHECK(coordinate_degrees(p.f) == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("real classification is strict at the boundary") {
    const double tol = 1e-8;
    auto point = [](cplx x) {
        CriticalPoint p;
        p.x = CVector::Constant(1, x);
        p.lambda = CVector::Constant(1, 1.0);
        return p;
    };
    std::vector<CriticalPoint> pts{point({2.0, 0.0}), point({2.0, 0.5 * tol * 3.0}), point({2.0, 1.5 * tol * 3.0}),
                                   point({0.0, tol})};
    const auto part = classify_real(pts, tol, SparsePolynomial(1, {{{1}, 2.0}}));
    CHECK(pts[0].is_real);
    CHECK(pts[1].is_real);
    CHECK_FALSE(pts[2].is_real);
    CHECK_FALSE(pts[3].is_real);  // |Im| == tol * (1 + |Re|) is not real
    CHECK(part.real == std::vector<std::size_t>{0, 1});
    CHECK(part.nonreal == std::vector<std::size_t>{2, 3});
    CHECK(*pts[0].objective_value == 4.0);
}

TEST_CASE("deduplication") {
    std::vector<CVector> pts{CVector::Constant(2, 1.0), CVector::Constant(2, 1.0 + 1e-10), CVector::Constant(2, 2.0),
                             CVector::Constant(2, cplx(1.0, 1e-3))};
    std::uint64_t merges = 0;
    const auto kept = deduplicate(pts, 1e-8, merges);
    CHECK(kept.size() == 3);
    CHECK(merges == 1);
    CHECK(min_pairwise_distance(std::span<const CVector>(pts).first(1)) == std::numeric_limits<double>::infinity());
    CHECK(min_pairwise_distance(pts) == doctest::Approx(1e-10).epsilon(1e-3));
}

TEST_CASE("random dense problems are deterministic") {
    const auto a = random_dense_problem(3, 2, 5);
    const auto b = random_dense_problem(3, 2, 5);
    CHECK(a.u == b.u);
    CHECK(a.f == b.f);
    for (double u : a.u) {
        CHECK(std::abs(u) >= 0.1);
        CHECK(std::abs(u) <= 1.0);
    }
}

TEST_CASE("failed and colliding paths are re-tracked with smaller steps") {
    const auto p = random_dense_problem(4, 4, 101);
    SolverConfig loose;
    loose.seed = 1;
    loose.tracker.max_step = loose.tracker.initial_step = 0.5;
    loose.tracker.corrector_tol = 1e-3;
    loose.retrack_rounds = 0;
    const auto before = solve(p, loose);
    CHECK(before.retracked == 0);
    REQUIRE(before.found.size() < 108);

    loose.retrack_rounds = 2;
    const auto after = solve(p, loose);
    CHECK(after.retracked > 0);
    CHECK(after.found.size() > before.found.size());
    CHECK(after.n_failed + after.n_diverged < before.n_failed + before.n_diverged);

    const auto clean = solve(p);
    CHECK(clean.retracked == 0);
    CHECK(clean.found.size() == 108);
}
