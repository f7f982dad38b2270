#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lh/evaluator.hpp"
#include "lh/lagrange.hpp"

using namespace lh;

TEST_CASE("Lagrange system of a degree-one example") {
    const double c0 = 0.3, c1 = -1.2, c2 = 0.7, c3 = 2.5, u1 = 0.9, u2 = -0.4;
    LinearObjectiveProblem p{{u1, u2}, SparsePolynomial(2, {{{0, 0}, c0}, {{1, 0}, c1}, {{0, 1}, c2}, {{0, 2}, c3}})};
    const auto L = lagrange_linear_hypersurface(p);
    REQUIRE(L.size() == 3);
    CHECK(L.num_primal == 2);
    CHECK(L.num_multipliers() == 1);
    // variables (x1, x2, lambda)
    CHECK(L.polys[0] == SparsePolynomial(3, {{{0, 0, 0}, u1}, {{0, 0, 1}, -c1}}));
    CHECK(L.polys[1] == SparsePolynomial(3, {{{0, 0, 0}, u2}, {{0, 0, 1}, -c2}, {{0, 1, 1}, -2 * c3}}));
    CHECK(L.polys[2] == p.f.embedded(3));
    CHECK(L.variable_names == std::vector<std::string>{"x1", "x2", "lambda"});
}

TEST_CASE("problem validation") {
    LinearObjectiveProblem bad{{1.0}, SparsePolynomial(2, {{{1, 0}, 1.0}})};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    LinearObjectiveProblem constant{{1.0, 1.0}, SparsePolynomial::constant(2, 3.0)};
    CHECK_THROWS_AS(constant.validate(), std::invalid_argument);
    LinearObjectiveProblem zero_u{{0.0, 1.0}, SparsePolynomial(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}})};
    CHECK_FALSE(zero_u.validate().empty());
}

TEST_CASE("general Lagrange system reduces to the linear one") {
    const auto f = random_generic(3, dense_support(3, 2), 9);
    const std::vector<double> u{0.5, -0.2, 0.8};
    const auto a = lagrange_linear_hypersurface({u, f});
    const std::vector<SparsePolynomial> cons{f};
    const auto b = lagrange_general(linear_form(u), cons);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.polys[i] == b.polys[i]);
}

TEST_CASE("specialised evaluator agrees with the generic one and with finite differences") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const std::uint32_t d = 2 + trial % 3;
        LinearObjectiveProblem p;
        for (std::size_t i = 0; i < n; ++i) p.u.push_back(0.1 + 0.1 * static_cast<double>(i));
        p.f = random_generic(n, dense_support(n, d), 500 + trial);
        const auto L = lagrange_linear_hypersurface(p);
        CompiledSystem generic(L);
        CompiledLagrangeHypersurface special(p);
        REQUIRE(special.dimension() == n + 1);
        const CVector z = testing::random_point(n + 1, rng, 0.7);
        std::vector<cplx> s1(generic.scratch_size()), s2(special.scratch_size());
        CVector v1, v2;
        CMatrix J1, J2;
        generic.evaluate(as_span(z), s1, v1, &J1);
        special.evaluate(as_span(z), s2, v2, &J2);
        const double scale = 1.0 + J1.cwiseAbs().maxCoeff();
        CHECK((v1 - v2).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK((J1 - J2).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK((J2 - testing::fd_jacobian(L.polys, z)).cwiseAbs().maxCoeff() <= 1e-6 * scale);

        Eigen::VectorXd m1, m2;
        generic.magnitudes(as_span(z), s1, m1);
        special.magnitudes(as_span(z), s2, m2);
        CHECK((m1 - m2).cwiseAbs().maxCoeff() <= 1e-12 * (1 + m1.maxCoeff()));
        for (std::size_t i = 0; i <= n; ++i) {
            CHECK(m1[static_cast<Eigen::Index>(i)] == doctest::Approx(term_magnitude(L.polys[i], as_span(z))).epsilon(1e-12));
        }
    }
}
