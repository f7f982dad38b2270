#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lh/evaluator.hpp"
#include "lh/poly.hpp"

using namespace lh;

TEST_CASE("add_term merges and drops exact zeros") {
    SparsePolynomial p(2);
    p.add_term({1, 0}, 2.0);
    p.add_term({1, 0}, -2.0);
    CHECK(p.is_zero());
    p.add_term({0, 3}, cplx{1, 1});
    p.add_term({0, 3}, cplx{1, -1});
    CHECK(p.size() == 1);
    CHECK(p.coefficient({0, 3}) == cplx{2, 0});
    CHECK(p.total_degree() == 3);
    CHECK(p.degree_in(0) == 0);
    CHECK_THROWS_AS(p.add_term({1}, 1.0), std::invalid_argument);
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
    std::mt19937_64 rng(11);
    const auto a = random_generic(3, dense_support(3, 3), 1);
    const auto b = random_generic(3, dense_support(3, 2), 2);
    for (int k = 0; k < 10; ++k) {
        const CVector z = testing::random_point(3, rng);
        const cplx va = testing::naive_eval(a, z), vb = testing::naive_eval(b, z);
        CHECK(std::abs(evaluate(a * b, as_span(z)) - va * vb) < 1e-10 * (1 + std::abs(va * vb)));
        CHECK(std::abs(evaluate(a - b, as_span(z)) - (va - vb)) < 1e-12 * (1 + std::abs(va) + std::abs(vb)));
        CHECK(std::abs(evaluate(a, as_span(z)) - va) < 1e-12 * (1 + term_magnitude(a, as_span(z))));
    }
    CHECK((a - a).is_zero());
}

TEST_CASE("ipow matches repeated multiplication") {
    const cplx z{0.7, -1.3};
    cplx acc = 1.0;
    for (std::uint32_t e = 0; e < 20; ++e) {
        CHECK(std::abs(ipow(z, e) - acc) <= 1e-12 * std::abs(acc));
        acc *= z;
    }
}

TEST_CASE("support generators have the expected sizes") {
    // C(n + d, d) monomials of total degree <= d
    CHECK(dense_support(3, 2).vertices.size() == 10);
    CHECK(dense_support(4, 3).vertices.size() == 35);
    CHECK(multiaffine_support(3).vertices.size() == 8);
    const std::vector<std::uint32_t> ds{2, 3};
    CHECK(vertex_support(ds).vertices.size() == 3);
    // lattice points with a/2 + b/3 <= 1: brute force
    std::size_t count = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 3; ++b)
            if (3 * a + 2 * b <= 6) ++count;
    CHECK(simplex_support(ds).vertices.size() == count);
}

TEST_CASE("random_generic is deterministic and respects the mode") {
    const auto s = dense_support(2, 3);
    CHECK(random_generic(2, s, 5) == random_generic(2, s, 5));
    CHECK_FALSE(random_generic(2, s, 5) == random_generic(2, s, 6));
    const auto real = random_generic(2, s, 5, CoefficientMode::Real);
    for (const auto& [alpha, c] : real.terms()) {
        CHECK(c.imag() == 0.0);
        CHECK(std::abs(c.real()) >= 0.1);
        CHECK(std::abs(c.real()) <= 1.0);
    }
    const auto complex = random_generic(2, s, 5, CoefficientMode::Complex);
    for (const auto& [alpha, c] : complex.terms()) {
        CHECK(std::abs(std::abs(c) - 1.0) < 1e-14);
    }
}

TEST_CASE("partial derivatives and Jacobians match central differences") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        std::vector<SparsePolynomial> sys;
        for (std::size_t i = 0; i < n; ++i) sys.push_back(random_generic(n, dense_support(n, 3), 100 * trial + i));
        const CVector z = testing::random_point(n, rng, 0.8);
        const CMatrix ref = testing::fd_jacobian(sys, z);
        const CMatrix J = jacobian(sys, as_span(z));
        CHECK((J - ref).cwiseAbs().maxCoeff() <= 1e-6 * (1 + ref.cwiseAbs().maxCoeff()));

        CompiledSystem compiled{std::span<const SparsePolynomial>(sys)};
        std::vector<cplx> scratch(compiled.scratch_size());
        CVector value;
        CMatrix Jc;
        compiled.evaluate(as_span(z), scratch, value, &Jc);
        CHECK((Jc - J).cwiseAbs().maxCoeff() <= 1e-12 * (1 + J.cwiseAbs().maxCoeff()));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(value[static_cast<Eigen::Index>(i)] - evaluate(sys[i], as_span(z))) < 1e-12 * (1 + term_magnitude(sys[i], as_span(z))));
        }
    }
}

TEST_CASE("embedding, permutation and substitution") {
    SparsePolynomial p(2, {{{2, 0}, 1.0}, {{0, 1}, 3.0}});
    const auto e = p.embedded(3);
    CHECK(e.nvars() == 3);
    CHECK(e.coefficient({2, 0, 0}) == cplx{1.0});
    const std::vector<std::size_t> perm{1, 0};
    const auto q = p.permuted(perm);
    CHECK(q.coefficient({0, 2}) == cplx{1.0});
    CHECK(q.coefficient({1, 0}) == cplx{3.0});
    const auto s = p.substituted(0, 2.0);
    CHECK(s.nvars() == 1);
    CHECK(s.coefficient({0}) == cplx{4.0});
    CHECK(s.coefficient({1}) == cplx{3.0});
}
