#include "lh/poly.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace lh {

SparsePolynomial::SparsePolynomial(std::size_t nvars, std::initializer_list<std::pair<Exponent, cplx>> terms)
    : nvars_(nvars) {
    for (const auto& [alpha, c] : terms) add_term(alpha, c);
}

SparsePolynomial SparsePolynomial::constant(std::size_t nvars, cplx c) {
    SparsePolynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

SparsePolynomial SparsePolynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index out of range");
    Exponent alpha(nvars, 0);
    alpha[index] = 1;
    SparsePolynomial p(nvars);
    p.add_term(alpha, 1.0);
    return p;
}

bool SparsePolynomial::is_constant() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
        return std::all_of(kv.first.begin(), kv.first.end(), [](std::uint32_t e) { return e == 0; });
    });
}

void SparsePolynomial::check_exponent(const Exponent& alpha) const {
    if (alpha.size() != nvars_) {
        throw std::invalid_argument("exponent vector has length " + std::to_string(alpha.size()) + ", expected " +
                                    std::to_string(nvars_));
    }
}

cplx SparsePolynomial::coefficient(const Exponent& alpha) const {
    check_exponent(alpha);
    auto it = terms_.find(alpha);
    return it == terms_.end() ? cplx{} : it->second;
}

void SparsePolynomial::add_term(const Exponent& alpha, cplx c) {
    check_exponent(alpha);
    if (c == cplx{}) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    }
}

std::uint32_t SparsePolynomial::total_degree() const noexcept {
    std::uint32_t best = 0;
    for (const auto& [alpha, c] : terms_) {
        std::uint32_t s = 0;
        for (auto e : alpha) s += e;
        best = std::max(best, s);
    }
    return best;
}

std::uint32_t SparsePolynomial::degree_in(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("variable index out of range");
    std::uint32_t best = 0;
    for (const auto& [alpha, c] : terms_) best = std::max(best, alpha[var]);
    return best;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& other) {
    if (other.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different variable counts");
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& other) {
    if (other.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different variable counts");
    for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(cplx s) {
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx{}; });
    return *this;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials live in different variable counts");
    SparsePolynomial out(a.nvars_);
    Exponent gamma(a.nvars_);
    for (const auto& [alpha, ca] : a.terms_) {
        for (const auto& [beta, cb] : b.terms_) {
            for (std::size_t k = 0; k < gamma.size(); ++k) gamma[k] = alpha[k] + beta[k];
            out.add_term(gamma, ca * cb);
        }
    }
    return out;
}

SparsePolynomial SparsePolynomial::embedded(std::size_t new_nvars) const {
    if (new_nvars < nvars_) throw std::invalid_argument("cannot embed into fewer variables");
    SparsePolynomial out(new_nvars);
    for (const auto& [alpha, c] : terms_) {
        Exponent beta(alpha);
        beta.resize(new_nvars, 0);
        out.terms_.emplace(std::move(beta), c);
    }
    return out;
}

SparsePolynomial SparsePolynomial::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != nvars_) throw std::invalid_argument("permutation length mismatch");
    SparsePolynomial out(nvars_);
    for (const auto& [alpha, c] : terms_) {
        Exponent beta(nvars_);
        for (std::size_t k = 0; k < nvars_; ++k) beta[k] = alpha.at(perm[k]);
        out.terms_.emplace(std::move(beta), c);
    }
    return out;
}

SparsePolynomial SparsePolynomial::substituted(std::size_t var, cplx value) const {
    if (var >= nvars_) throw std::out_of_range("variable index out of range");
    SparsePolynomial out(nvars_ - 1);
    for (const auto& [alpha, c] : terms_) {
        Exponent beta;
        beta.reserve(nvars_ - 1);
        for (std::size_t k = 0; k < nvars_; ++k) {
            if (k != var) beta.push_back(alpha[k]);
        }
        out.add_term(beta, c * ipow(value, alpha[var]));
    }
    return out;
}

namespace {

void dense_rec(std::size_t n, std::uint32_t remaining, Exponent& cur, std::size_t pos, std::vector<Exponent>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    for (std::uint32_t e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        dense_rec(n, remaining - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

// Lattice points with sum_k alpha_k / d_k <= 1, tracked as a numerator over lcm(d).
void simplex_rec(std::span<const std::uint32_t> d, std::uint64_t lcm, std::uint64_t used, Exponent& cur,
                 std::size_t pos, std::vector<Exponent>& out) {
    if (pos == d.size()) {
        out.push_back(cur);
        return;
    }
    const std::uint64_t w = lcm / d[pos];
    for (std::uint32_t e = 0; used + e * w <= lcm; ++e) {
        cur[pos] = e;
        simplex_rec(d, lcm, used + e * w, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

}  // namespace

SupportDescription dense_support(std::size_t n, std::uint32_t d) {
    SupportDescription s;
    Exponent cur(n, 0);
    dense_rec(n, d, cur, 0, s.vertices);
    return s;
}

SupportDescription vertex_support(std::span<const std::uint32_t> degrees) {
    const std::size_t n = degrees.size();
    SupportDescription s;
    s.vertices.emplace_back(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (degrees[i] == 0) throw std::invalid_argument("vertex degrees must be positive");
        Exponent e(n, 0);
        e[i] = degrees[i];
        s.vertices.push_back(std::move(e));
    }
    return s;
}

SupportDescription simplex_support(std::span<const std::uint32_t> degrees) {
    std::uint64_t lcm = 1;
    for (auto d : degrees) {
        if (d == 0) throw std::invalid_argument("simplex degrees must be positive");
        lcm = std::lcm(lcm, static_cast<std::uint64_t>(d));
    }
    SupportDescription s;
    Exponent cur(degrees.size(), 0);
    simplex_rec(degrees, lcm, 0, cur, 0, s.vertices);
    return s;
}

SupportDescription multiaffine_support(std::size_t n) {
    SupportDescription s;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Exponent e(n, 0);
        for (std::size_t k = 0; k < n; ++k) e[k] = (mask >> k) & 1u;
        s.vertices.push_back(std::move(e));
    }
    return s;
}

SparsePolynomial random_generic(std::size_t nvars, const SupportDescription& support, std::uint64_t seed,
                                CoefficientMode mode) {
    if (support.vertices.empty()) throw std::invalid_argument("support must be nonempty");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SparsePolynomial p(nvars);
    for (const auto& alpha : support.vertices) {
        cplx c;
        if (mode == CoefficientMode::Complex) {
            c = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
        } else {
            const double mag = 0.1 + 0.9 * unit(rng);
            c = unit(rng) < 0.5 ? -mag : mag;
        }
        p.add_term(alpha, c);
    }
    return p;
}

cplx evaluate(const SparsePolynomial& p, std::span<const cplx> point) {
    if (point.size() != p.nvars()) {
        throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                                    std::to_string(p.nvars()) + " variables");
    }
    cplx acc{};
    for (const auto& [alpha, c] : p.terms()) {
        cplx m = c;
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] != 0) m *= ipow(point[k], alpha[k]);
        }
        acc += m;
    }
    return acc;
}

double term_magnitude(const SparsePolynomial& p, std::span<const cplx> point) {
    if (point.size() != p.nvars()) throw std::invalid_argument("dimension mismatch");
    double acc = 0.0;
    for (const auto& [alpha, c] : p.terms()) {
        double m = std::abs(c);
        for (std::size_t k = 0; k < alpha.size(); ++k) {
            if (alpha[k] != 0) m *= std::pow(std::abs(point[k]), static_cast<double>(alpha[k]));
        }
        acc += m;
    }
    return acc;
}

SparsePolynomial partial(const SparsePolynomial& p, std::size_t i) {
    if (i >= p.nvars()) {
        throw std::out_of_range("partial: variable index " + std::to_string(i) + " out of range for " +
                                std::to_string(p.nvars()) + " variables");
    }
    SparsePolynomial out(p.nvars());
    for (const auto& [alpha, c] : p.terms()) {
        if (alpha[i] == 0) continue;
        Exponent beta(alpha);
        beta[i] -= 1;
        out.add_term(beta, c * static_cast<double>(alpha[i]));
    }
    return out;
}

CMatrix jacobian(std::span<const SparsePolynomial> system, std::span<const cplx> point) {
    const auto n = static_cast<Eigen::Index>(point.size());
    CMatrix jac(static_cast<Eigen::Index>(system.size()), n);
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (system[i].nvars() != point.size()) throw std::invalid_argument("jacobian: dimension mismatch");
        for (Eigen::Index j = 0; j < n; ++j) {
            jac(static_cast<Eigen::Index>(i), j) = evaluate(partial(system[i], static_cast<std::size_t>(j)), point);
        }
    }
    return jac;
}

}  // namespace lh
