#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lh/tropical.hpp"

using namespace lh;
using namespace lh::tropical;

namespace {

std::vector<LiftedPoint> example_points() { return {{0, 0}, {1, 3}, {2, 1}, {3, 2}}; }

// Normals of lower hull edges by checking every pair against every point.
std::set<Rational> brute_lower_normals(const std::vector<LiftedPoint>& pts) {
    std::set<Rational> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (pts[j].exponent <= pts[i].exponent) continue;
            const Rational slope = (pts[j].weight - pts[i].weight) / Rational(pts[j].exponent - pts[i].exponent);
            bool lower = true;
            for (const auto& p : pts) {
                const Rational line = pts[i].weight + slope * Rational(p.exponent - pts[i].exponent);
                lower = lower && p.weight >= line;
            }
            if (lower) out.insert(-slope);
        }
    }
    return out;
}

std::vector<std::uint32_t> sorted_degrees(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::uint32_t> d(2, 5);
    std::vector<std::uint32_t> ds(n);
    for (auto& v : ds) v = d(rng);
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace

TEST_CASE("rational formatting") {
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(3)) == "3");
}

TEST_CASE("lower hull of the cubic example") {
    const auto pts = example_points();
    const auto cells = lower_hull_cells_univariate(pts);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].points == std::vector<std::size_t>{0, 2});
    CHECK(cells[0].normal == Rational(-1, 2));
    CHECK(cells[1].points == std::vector<std::size_t>{2, 3});
    CHECK(cells[1].normal == Rational(-1));
}

TEST_CASE("lower hull input checks and collinear points") {
    CHECK_THROWS_AS(lower_hull_cells_univariate(std::vector<LiftedPoint>{{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(lower_hull_cells_univariate(std::vector<LiftedPoint>{{0, 0}, {0, 1}}), std::invalid_argument);
    const auto cells = lower_hull_cells_univariate(std::vector<LiftedPoint>{{0, 0}, {1, 1}, {2, 2}, {3, 5}});
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].points == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("hull normals, brute-force edges and tropical solutions coincide") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> w(-6, 6), den(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + trial % 5;
        std::vector<LiftedPoint> pts;
        for (int e = 0; e < k; ++e) pts.push_back({e, Rational(w(rng), den(rng))});
        std::set<Rational> hull;
        for (const auto& c : lower_hull_cells_univariate(pts)) hull.insert(c.normal);
        std::set<Rational> trop;
        const std::vector<TropicalRow> rows{univariate_row(pts)};
        for (const auto& s : solve_tropical(rows)) trop.insert(s.values[0]);
        const auto brute = brute_lower_normals(pts);
        CHECK(hull == brute);
        CHECK(trop == brute);
    }
}

TEST_CASE("tropical solutions attain every row minimum twice") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const auto ds = sorted_degrees(rng, n);
        Lifting lift = refined_lifting(ds);
        std::uniform_int_distribution<int> jitter(-2, 2);
        for (auto& row : lift.omega)
            for (auto& v : row) v += Rational(jitter(rng), 3);
        const auto rows = build_tropical_system(ds, lift);
        for (const auto& s : solve_tropical(rows)) {
            for (const auto& row : rows) {
                std::vector<Rational> vals;
                for (const auto& t : row.terms) vals.push_back(t.value(s.values));
                const Rational lo = *std::min_element(vals.begin(), vals.end());
                CHECK(std::count(vals.begin(), vals.end(), lo) >= 2);
            }
        }
    }
}

TEST_CASE("uniform and refined liftings have the unique unit solution") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::uint32_t d = 2; d <= 4; ++d) {
            const std::vector<std::uint32_t> ds(n, d);
            CHECK(is_unique_unit_solution(solve_tropical(build_tropical_system(ds, uniform_lifting(n, d)))));
            CHECK(is_unique_unit_solution(solve_tropical(build_tropical_system(ds, refined_lifting(ds)))));
        }
    }
    const std::vector<std::uint32_t> mixed{2, 3, 4};
    const auto sols = solve_tropical(build_tropical_system(mixed, refined_lifting(mixed)));
    REQUIRE(sols.size() == 1);
    CHECK(std::all_of(sols[0].a().begin(), sols[0].a().end(), [](const Rational& v) { return v == 1; }));
    CHECK(sols[0].b() == 0);
}

TEST_CASE("without a lifting the unit point is not an isolated solution") {
    const std::vector<std::uint32_t> ds{2, 2};
    CHECK_FALSE(is_unique_unit_solution(solve_tropical(build_tropical_system(ds, zero_lifting(2)))));
}

TEST_CASE("system construction checks") {
    const std::vector<std::uint32_t> ds{2, 3};
    Lifting short_lift = refined_lifting(ds);
    short_lift.omega.pop_back();
    CHECK_THROWS(build_tropical_system(ds, short_lift));
    TropicalRow single{{TropicalTerm{{1}, 0}}};
    CHECK_THROWS(single.validate(1));
    std::vector<TropicalRow> not_square{TropicalRow{{TropicalTerm{{1, 0}, 0}, TropicalTerm{{0, 1}, 0}}}};
    CHECK_THROWS(solve_tropical(not_square));
}

TEST_CASE("cell homotopy of the cubic example") {
    const std::vector<cplx> coeffs{-1.0, 2.0, -1.0, 1.0};
    const std::vector<Rational> weights{0, 3, 1, 2};
    const auto cell = univariate_cell_homotopy(coeffs, weights, Rational(-1, 2));
    CHECK(cell.denominator == 2);
    REQUIRE(cell.polys.size() == 1);
    // y^3 s - y^2 + 2 y s^5 - 1 in (y, s)
    CHECK(cell.polys[0] == SparsePolynomial(2, {{{3, 1}, 1.0}, {{2, 0}, -1.0}, {{1, 5}, 2.0}, {{0, 0}, -1.0}}));
    REQUIRE(cell.start_points.size() == 2);
    for (const auto& z : cell.start_points) CHECK(std::abs(z[0] * z[0] + 1.0) < 1e-14);

    const auto other = univariate_cell_homotopy(coeffs, weights, Rational(-1));
    REQUIRE(other.start_points.size() == 1);
    CHECK(std::abs(other.start_points[0][0] - 1.0) < 1e-14);

    const auto result = solve_univariate_polyhedral(coeffs, weights);
    REQUIRE(result.paths.size() == 3);
    for (const auto& p : result.paths) {
        CHECK(p.status == PathStatus::Converged);
        const cplx x = p.endpoint[0];
        CHECK(std::abs(x * x * x - x * x + 2.0 * x - 1.0) < 1e-10);
    }
}
