#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lh/poly.hpp"
#include "lh/tracker.hpp"

namespace lh::tropical {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

/// One tropical monomial: coeffs . v + offset.
struct TropicalTerm {
    std::vector<Rational> coeffs;
    Rational offset;

    Rational value(std::span<const Rational> v) const;
};

/// min over terms, which must be attained at least twice.
struct TropicalRow {
    std::vector<TropicalTerm> terms;

    void validate(std::size_t nvars) const;
};

/// omega[row][term]. Rows follow the Lagrange layout: rows 0..n-1 have two
/// terms (u_i, lambda x_i^{d_i - 1}) and row n has n + 1 terms (1, x_1^{d_1}, ...).
struct Lifting {
    std::vector<std::vector<Rational>> omega;
};

/// A solution point v with, per row, the pair of term indices used to find it.
/// For Lagrange systems v = (a_1, ..., a_n, b).
struct TropicalSolution {
    std::vector<Rational> values;
    std::vector<std::pair<std::size_t, std::size_t>> active_terms;

    std::span<const Rational> a() const { return std::span<const Rational>(values).first(values.size() - 1); }
    const Rational& b() const { return values.back(); }
};

Lifting zero_lifting(std::size_t n);
/// Single-degree lifting for dense degree-d hypersurfaces.
Lifting uniform_lifting(std::size_t n, std::uint32_t d);
/// Lifting for Newt(f) = Conv{0, d_1 e_1, ..., d_n e_n}, d sorted ascending.
Lifting refined_lifting(std::span<const std::uint32_t> degrees);

/// Tropical system of the lifted Lagrange system in variables (a_1..a_n, b).
std::vector<TropicalRow> build_tropical_system(std::span<const std::uint32_t> degrees, const Lifting& lifting);

/// Every point at which each row's minimum is attained at least twice and
/// that is isolated: one pair of terms is chosen per row, the resulting
/// square linear system solved exactly, and the candidate kept when no term
/// of any row falls below the chosen pair. Singular choices are skipped.
std::vector<TropicalSolution> solve_tropical(std::span<const TropicalRow> rows);

/// True when solutions is exactly {(a = 1, ..., 1, b = 0)}.
bool is_unique_unit_solution(std::span<const TropicalSolution> solutions);

struct LiftedPoint {
    std::int64_t exponent;
    Rational weight;
};

struct HullCell {
    std::vector<std::size_t> points;  // indices into the input, by increasing exponent
    Rational normal;                  // inner normal is (normal, 1)
};

/// Lower edges of the convex hull of {(exponent, weight)}, left to right.
/// Collinear points on an edge all belong to that edge's cell.
std::vector<HullCell> lower_hull_cells_univariate(std::span<const LiftedPoint> points);

/// The single tropical row min_j {e_j a + w_j} of a lifted univariate polynomial.
TropicalRow univariate_row(std::span<const LiftedPoint> points);

/// Homotopy for one cell of a lifted univariate polynomial
/// f = sum c_j x^j: substituting x = y t^a and t = s^q (q clearing all
/// denominators) and dividing by the lowest power of s gives h(y, s) with
/// h(y, 0) the cell's initial form and h(y, 1) = f(y).
struct CellHomotopy {
    Rational normal;
    std::uint64_t denominator = 1;  // q
    std::vector<SparsePolynomial> polys;  // one polynomial in (y, s)
    std::vector<CVector> start_points;    // nonzero roots of h(y, 0)
};

/// coeffs[j] is the coefficient of x^j; weights[j] its lifting.
CellHomotopy univariate_cell_homotopy(std::span<const cplx> coeffs, std::span<const Rational> weights,
                                      const Rational& normal);

/// Roots of f found by tracking every cell homotopy of the lifting.
struct UnivariatePolyhedralResult {
    std::vector<CellHomotopy> cells;
    std::vector<PathResult> paths;  // cell by cell, in start_points order
};
UnivariatePolyhedralResult solve_univariate_polyhedral(std::span<const cplx> coeffs, std::span<const Rational> weights,
                                                       const TrackerConfig& cfg = {});

}  // namespace lh::tropical
