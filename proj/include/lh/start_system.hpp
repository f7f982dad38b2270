#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lh/degree.hpp"
#include "lh/lagrange.hpp"

namespace lh {

/// The k distinct k-th roots of w, ordered by increasing argument from arg(w)/k.
std::vector<cplx> kth_roots(cplx w, std::uint32_t k);

/// Binomial start system
///   u_i - d_i lambda c_i x_i^{d_i - 1} = 0   (i = 1..n)
///   c_0 + c_1 x_1^{d_1} = 0
/// with its roots in closed form. Roots are indexed by a mixed-radix digit
/// string (x_1 choice, x_2 choice, ..., x_n choice) and produced on demand.
class BinomialStart {
public:
    BinomialStart(std::vector<double> u, std::vector<cplx> coeffs, std::vector<std::uint32_t> degrees);

    const SquareSystem& system() const noexcept { return system_; }
    const std::vector<std::uint32_t>& degrees() const noexcept { return degrees_; }
    const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }

    degree::BigInt root_count() const;
    /// Root with the given index in [0, root_count()), as (x_1..x_n, lambda).
    CVector root(std::uint64_t index) const;
    std::vector<CVector> roots() const;

private:
    std::vector<double> u_;
    std::vector<cplx> coeffs_;  // c_0 .. c_n
    std::vector<std::uint32_t> degrees_;
    SquareSystem system_;
    std::vector<cplx> x1_roots_;
    // per coordinate i >= 2 and per x_1 choice: the (d_i - 1) roots of x_i.
    std::vector<std::vector<std::vector<cplx>>> xi_roots_;
    std::vector<cplx> lambdas_;
};

/// Builds the binomial start for `problem`, whose coordinates are already
/// ordered so that degrees are ascending. `coeffs` holds c_0..c_n, the
/// coefficients of the vertices 0, d_1 e_1, ..., d_n e_n.
BinomialStart build_binomial_start(const LinearObjectiveProblem& problem, std::span<const cplx> coeffs,
                                   std::span<const std::uint32_t> degrees);

/// {z_i^{D_i} - g_i} with D_i the total degree of target equation i and g_i random on the unit circle.
class TotalDegreeStart {
public:
    TotalDegreeStart(std::vector<std::uint32_t> degrees, std::vector<cplx> constants);

    const SquareSystem& system() const noexcept { return system_; }
    const std::vector<std::uint32_t>& degrees() const noexcept { return degrees_; }
    degree::BigInt root_count() const;
    CVector root(std::uint64_t index) const;
    std::vector<CVector> roots() const;

private:
    std::vector<std::uint32_t> degrees_;
    std::vector<cplx> constants_;
    std::vector<std::vector<cplx>> coordinate_roots_;
    SquareSystem system_;
};

TotalDegreeStart build_total_degree_start(const SquareSystem& target, std::uint64_t seed);

}  // namespace lh
