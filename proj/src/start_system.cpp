#include "lh/start_system.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace lh {

std::vector<cplx> kth_roots(cplx w, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("kth_roots: k must be positive");
    const double r = std::pow(std::abs(w), 1.0 / k);
    const double base = std::arg(w) / k;
    std::vector<cplx> out;
    out.reserve(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        out.push_back(std::polar(r, base + 2.0 * std::numbers::pi * j / k));
    }
    return out;
}

BinomialStart::BinomialStart(std::vector<double> u, std::vector<cplx> coeffs, std::vector<std::uint32_t> degrees)
    : u_(std::move(u)), coeffs_(std::move(coeffs)), degrees_(std::move(degrees)) {
    const std::size_t n = degrees_.size();
    if (n == 0) throw std::invalid_argument("binomial start needs at least one variable");
    if (u_.size() != n) throw std::invalid_argument("objective length does not match degree count");
    if (coeffs_.size() != n + 1) throw std::invalid_argument("expected n + 1 vertex coefficients c_0..c_n");
    for (std::size_t i = 0; i < n; ++i) {
        if (degrees_[i] < 1) throw std::invalid_argument("degrees must be >= 1");
        if (i > 0 && degrees_[i] < degrees_[i - 1]) throw std::invalid_argument("degrees must be sorted ascending");
        if (u_[i] == 0.0) throw std::invalid_argument("objective entry u" + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t i = 0; i <= n; ++i) {
        if (coeffs_[i] == cplx{}) throw std::invalid_argument("vertex coefficient c" + std::to_string(i) + " is zero");
    }

    const std::size_t N = n + 1;
    system_.num_primal = n;
    system_.variable_names = lagrange_variable_names(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        SparsePolynomial li(N);
        li.add_term(Exponent(N, 0), u_[i]);
        Exponent e(N, 0);
        e[i] = degrees_[i] - 1;
        e[n] = 1;
        li.add_term(e, -static_cast<double>(degrees_[i]) * coeffs_[i + 1]);
        system_.polys.push_back(std::move(li));
    }
    SparsePolynomial last(N);
    last.add_term(Exponent(N, 0), coeffs_[0]);
    Exponent e1(N, 0);
    e1[0] = degrees_[0];
    last.add_term(e1, coeffs_[1]);
    system_.polys.push_back(std::move(last));

    x1_roots_ = kth_roots(-coeffs_[0] / coeffs_[1], degrees_[0]);
    for (const cplx x1 : x1_roots_) {
        const double d1 = degrees_[0];
        const cplx lambda = u_[0] / (d1 * coeffs_[1] * ipow(x1, degrees_[0] - 1));
        lambdas_.push_back(lambda);
        std::vector<std::vector<cplx>> per_coord;
        for (std::size_t i = 1; i < n; ++i) {
            if (degrees_[i] == 1) {
                per_coord.emplace_back();
                continue;
            }
            const cplx rhs = u_[i] / (static_cast<double>(degrees_[i]) * lambda * coeffs_[i + 1]);
            per_coord.push_back(kth_roots(rhs, degrees_[i] - 1));
        }
        xi_roots_.push_back(std::move(per_coord));
    }
}

degree::BigInt BinomialStart::root_count() const { return degree::refined_hypersurface_degree(degrees_); }

CVector BinomialStart::root(std::uint64_t index) const {
    const std::size_t n = degrees_.size();
    if (degree::BigInt(index) >= root_count()) throw std::out_of_range("binomial start root index out of range");
    CVector z(static_cast<Eigen::Index>(n + 1));
    // Last coordinate varies fastest.
    std::vector<std::uint32_t> digits(n);
    std::uint64_t rem = index;
    for (std::size_t i = n; i-- > 1;) {
        const std::uint32_t radix = degrees_[i] - 1;
        digits[i] = static_cast<std::uint32_t>(rem % radix);
        rem /= radix;
    }
    digits[0] = static_cast<std::uint32_t>(rem);
    z[0] = x1_roots_[digits[0]];
    for (std::size_t i = 1; i < n; ++i) z[static_cast<Eigen::Index>(i)] = xi_roots_[digits[0]][i - 1][digits[i]];
    z[static_cast<Eigen::Index>(n)] = lambdas_[digits[0]];
    return z;
}

std::vector<CVector> BinomialStart::roots() const {
    const std::uint64_t count = degree::to_u64(root_count());
    std::vector<CVector> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(root(k));
    return out;
}

BinomialStart build_binomial_start(const LinearObjectiveProblem& problem, std::span<const cplx> coeffs,
                                   std::span<const std::uint32_t> degrees) {
    problem.validate();
    if (degrees.size() != problem.dimension()) throw std::invalid_argument("degree list length mismatch");
    return BinomialStart(problem.u, std::vector<cplx>(coeffs.begin(), coeffs.end()),
                         std::vector<std::uint32_t>(degrees.begin(), degrees.end()));
}

TotalDegreeStart::TotalDegreeStart(std::vector<std::uint32_t> degrees, std::vector<cplx> constants)
    : degrees_(std::move(degrees)), constants_(std::move(constants)) {
    const std::size_t N = degrees_.size();
    if (N == 0 || constants_.size() != N) throw std::invalid_argument("total-degree start: size mismatch");
    system_.num_primal = N;
    for (std::size_t i = 0; i < N; ++i) {
        if (degrees_[i] == 0) throw std::invalid_argument("total-degree start: equation " + std::to_string(i) + " is constant");
        SparsePolynomial p(N);
        Exponent e(N, 0);
        e[i] = degrees_[i];
        p.add_term(e, 1.0);
        p.add_term(Exponent(N, 0), -constants_[i]);
        system_.polys.push_back(std::move(p));
        coordinate_roots_.push_back(kth_roots(constants_[i], degrees_[i]));
    }
}

degree::BigInt TotalDegreeStart::root_count() const { return degree::bezout_number(degrees_); }

CVector TotalDegreeStart::root(std::uint64_t index) const {
    const std::size_t N = degrees_.size();
    if (degree::BigInt(index) >= root_count()) throw std::out_of_range("total-degree root index out of range");
    CVector z(static_cast<Eigen::Index>(N));
    for (std::size_t i = N; i-- > 0;) {
        z[static_cast<Eigen::Index>(i)] = coordinate_roots_[i][index % degrees_[i]];
        index /= degrees_[i];
    }
    return z;
}

std::vector<CVector> TotalDegreeStart::roots() const {
    const std::uint64_t count = degree::to_u64(root_count());
    std::vector<CVector> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(root(k));
    return out;
}

TotalDegreeStart build_total_degree_start(const SquareSystem& target, std::uint64_t seed) {
    target.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<std::uint32_t> degrees;
    std::vector<cplx> constants;
    for (const auto& p : target.polys) {
        degrees.push_back(p.total_degree());
        constants.push_back(std::polar(1.0, phase(rng)));
    }
    TotalDegreeStart start(std::move(degrees), std::move(constants));
    return start;
}

}  // namespace lh
