#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lh {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Multi-index of a monomial. Length equals the ambient variable count.
using Exponent = std::vector<std::uint32_t>;

inline std::span<const cplx> as_span(const CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

/// Integer power by repeated squaring. std::pow(complex, int) goes through exp/log.
inline cplx ipow(cplx base, std::uint32_t e) {
    cplx result{1.0, 0.0};
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e != 0) base *= base;
    }
    return result;
}

/// Sparse multivariate polynomial with complex coefficients.
///
/// Terms are kept in lexicographic order of their exponent vectors and no
/// stored coefficient is exactly zero, so two polynomials compare equal iff
/// they have the same terms.
class SparsePolynomial {
public:
    using TermMap = std::map<Exponent, cplx>;

    explicit SparsePolynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    SparsePolynomial(std::size_t nvars, std::initializer_list<std::pair<Exponent, cplx>> terms);

    static SparsePolynomial constant(std::size_t nvars, cplx c);
    static SparsePolynomial variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;

    cplx coefficient(const Exponent& alpha) const;

    /// Adds c·x^alpha, merging with an existing term and dropping exact zeros.
    void add_term(const Exponent& alpha, cplx c);

    std::uint32_t total_degree() const noexcept;
    std::uint32_t degree_in(std::size_t var) const;

    SparsePolynomial& operator+=(const SparsePolynomial& other);
    SparsePolynomial& operator-=(const SparsePolynomial& other);
    SparsePolynomial& operator*=(cplx s);

    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
    friend SparsePolynomial operator*(SparsePolynomial a, cplx s) { return a *= s; }
    friend SparsePolynomial operator*(cplx s, SparsePolynomial a) { return a *= s; }
    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
    friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

    /// Same polynomial viewed in `new_nvars >= nvars()` variables (new ones appended).
    SparsePolynomial embedded(std::size_t new_nvars) const;

    /// Relabels variables: variable k of the result is variable perm[k] of *this.
    SparsePolynomial permuted(std::span<const std::size_t> perm) const;

    /// Substitutes value for variable `var` and drops it from the variable list.
    SparsePolynomial substituted(std::size_t var, cplx value) const;

private:
    void check_exponent(const Exponent& alpha) const;

    std::size_t nvars_;
    TermMap terms_;
};

/// Generators of a Newton polytope, used verbatim as a monomial support.
struct SupportDescription {
    std::vector<Exponent> vertices;
};

/// All monomials of total degree <= d in n variables.
SupportDescription dense_support(std::size_t n, std::uint32_t d);
/// The vertex set {0, d_1 e_1, ..., d_n e_n}.
SupportDescription vertex_support(std::span<const std::uint32_t> degrees);
/// All lattice points of Conv{0, d_1 e_1, ..., d_n e_n}.
SupportDescription simplex_support(std::span<const std::uint32_t> degrees);
/// The cube {0,1}^n.
SupportDescription multiaffine_support(std::size_t n);

enum class CoefficientMode { Complex, Real };

/// Polynomial with the given support and i.i.d. generic coefficients.
///
/// Complex mode draws unit-modulus coefficients with uniform phase. Real
/// mode draws from [-1, -0.1] U [0.1, 1]. Deterministic in `seed`.
SparsePolynomial random_generic(std::size_t nvars, const SupportDescription& support, std::uint64_t seed,
                                CoefficientMode mode = CoefficientMode::Complex);

cplx evaluate(const SparsePolynomial& p, std::span<const cplx> point);

/// d p / d x_i (zero-based index).
SparsePolynomial partial(const SparsePolynomial& p, std::size_t i);

/// Entry (i, j) is d p_i / d x_j at point. Reference path; see CompiledSystem for the fast one.
CMatrix jacobian(std::span<const SparsePolynomial> system, std::span<const cplx> point);

/// Sum of |c_alpha z^alpha| over the terms. Scale for backward-error residuals.
double term_magnitude(const SparsePolynomial& p, std::span<const cplx> point);

}  // namespace lh
