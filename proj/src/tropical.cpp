#include "lh/tropical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "lh/start_system.hpp"

namespace lh::tropical {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

// Solves M v = rhs exactly; false when M is singular.
bool solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs, std::vector<Rational>& out) {
    const std::size_t k = m.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && m[piv][col] == 0) ++piv;
        if (piv == k) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    out.resize(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = rhs[i] / m[i][i];
    return true;
}

std::vector<std::vector<Rational>> lifting_shape(std::size_t n) {
    std::vector<std::vector<Rational>> omega(n + 1);
    for (std::size_t i = 0; i < n; ++i) omega[i].assign(2, Rational(0));
    omega[n].assign(n + 1, Rational(0));
    return omega;
}

std::uint64_t lcm_of_denominators(std::span<const Rational> values) {
    std::uint64_t l = 1;
    for (const auto& v : values) {
        const auto den = static_cast<std::uint64_t>(denominator(v));
        l = std::lcm(l, den);
    }
    return l;
}

// Nonzero roots of sum coeffs[j] y^j (coeffs[0] != 0 after trimming).
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs) {
    while (!coeffs.empty() && coeffs.back() == cplx{}) coeffs.pop_back();
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == cplx{}) ++low;
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));
    if (coeffs.size() < 2) return {};
    const std::size_t deg = coeffs.size() - 1;
    if (std::count_if(coeffs.begin(), coeffs.end(), [](cplx c) { return c != cplx{}; }) == 2) {
        return kth_roots(-coeffs[0] / coeffs[deg], static_cast<std::uint32_t>(deg));
    }
    CMatrix companion = CMatrix::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / coeffs[deg];
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::string to_string(const Rational& q) { return q.str(); }

Rational TropicalTerm::value(std::span<const Rational> v) const {
    Rational acc = offset;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) acc += coeffs[i] * v[i];
    }
    return acc;
}

void TropicalRow::validate(std::size_t nvars) const {
    if (terms.size() < 2) throw std::invalid_argument("tropical row needs at least two terms");
    for (const auto& t : terms) {
        if (t.coeffs.size() != nvars) throw std::invalid_argument("tropical term has the wrong number of coefficients");
    }
}

Lifting zero_lifting(std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    return Lifting{lifting_shape(n)};
}

Lifting uniform_lifting(std::size_t n, std::uint32_t d) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (d == 0) throw std::invalid_argument("degree must be positive");
    Lifting l{lifting_shape(n)};
    const Rational one_minus_d = Rational(1) - Rational(d);
    for (std::size_t i = 0; i < n; ++i) l.omega[i][1] = one_minus_d;
    l.omega[n][1] = -Rational(d);
    for (std::size_t j = 2; j <= n; ++j) l.omega[n][j] = one_minus_d;
    return l;
}

Lifting refined_lifting(std::span<const std::uint32_t> degrees) {
    const std::size_t n = degrees.size();
    if (n == 0) throw std::invalid_argument("n must be positive");
    if (!std::is_sorted(degrees.begin(), degrees.end()) || degrees.front() == 0) {
        throw std::invalid_argument("degrees must be positive and sorted ascending");
    }
    Lifting l{lifting_shape(n)};
    for (std::size_t i = 0; i < n; ++i) l.omega[i][1] = Rational(1) - Rational(degrees[i]);
    l.omega[n][1] = -Rational(degrees[0]);
    for (std::size_t j = 2; j <= n; ++j) l.omega[n][j] = Rational(1) - Rational(degrees[j - 1]);
    return l;
}

std::vector<TropicalRow> build_tropical_system(std::span<const std::uint32_t> degrees, const Lifting& lifting) {
    const std::size_t n = degrees.size();
    if (n == 0) throw std::invalid_argument("n must be positive");
    for (auto d : degrees) {
        if (d == 0) throw std::invalid_argument("degrees must be positive");
    }
    if (lifting.omega.size() != n + 1) throw std::invalid_argument("lifting must have n + 1 rows");
    for (std::size_t i = 0; i <= n; ++i) {
        const std::size_t want = i < n ? 2 : n + 1;
        if (lifting.omega[i].size() != want) {
            throw std::invalid_argument("lifting row " + std::to_string(i + 1) + " needs " + std::to_string(want) +
                                        " entries, has " + std::to_string(lifting.omega[i].size()));
        }
    }
    const std::size_t nv = n + 1;
    std::vector<TropicalRow> rows(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        TropicalTerm u{std::vector<Rational>(nv, Rational(0)), lifting.omega[i][0]};
        TropicalTerm g{std::vector<Rational>(nv, Rational(0)), lifting.omega[i][1]};
        g.coeffs[i] = Rational(degrees[i]) - 1;
        g.coeffs[n] = 1;
        rows[i].terms = {std::move(u), std::move(g)};
    }
    rows[n].terms.push_back({std::vector<Rational>(nv, Rational(0)), lifting.omega[n][0]});
    for (std::size_t j = 0; j < n; ++j) {
        TropicalTerm t{std::vector<Rational>(nv, Rational(0)), lifting.omega[n][j + 1]};
        t.coeffs[j] = Rational(degrees[j]);
        rows[n].terms.push_back(std::move(t));
    }
    return rows;
}

std::vector<TropicalSolution> solve_tropical(std::span<const TropicalRow> rows) {
    const std::size_t k = rows.size();
    if (k == 0) throw std::invalid_argument("tropical system has no rows");
    const std::size_t nv = rows.front().terms.empty() ? 0 : rows.front().terms.front().coeffs.size();
    if (nv != k) throw std::invalid_argument("tropical system must be square (rows == variables)");
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(k);
    for (std::size_t r = 0; r < k; ++r) {
        rows[r].validate(nv);
        const std::size_t t = rows[r].terms.size();
        for (std::size_t p = 0; p < t; ++p) {
            for (std::size_t q = p + 1; q < t; ++q) pairs[r].emplace_back(p, q);
        }
    }

    std::vector<TropicalSolution> out;
    std::vector<std::size_t> choice(k, 0);
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(nv));
    std::vector<Rational> rhs(k);
    std::vector<Rational> v;
    for (;;) {
        for (std::size_t r = 0; r < k; ++r) {
            const auto [p, q] = pairs[r][choice[r]];
            const auto& tp = rows[r].terms[p];
            const auto& tq = rows[r].terms[q];
            for (std::size_t c = 0; c < nv; ++c) m[r][c] = tp.coeffs[c] - tq.coeffs[c];
            rhs[r] = tq.offset - tp.offset;
        }
        if (solve_exact(m, rhs, v)) {
            bool ok = true;
            for (std::size_t r = 0; r < k && ok; ++r) {
                const Rational level = rows[r].terms[pairs[r][choice[r]].first].value(v);
                for (const auto& t : rows[r].terms) {
                    if (t.value(v) < level) {
                        ok = false;
                        break;
                    }
                }
            }
            const bool seen =
                std::any_of(out.begin(), out.end(), [&](const TropicalSolution& s) { return s.values == v; });
            if (ok && !seen) {
                TropicalSolution s;
                s.values = v;
                for (std::size_t r = 0; r < k; ++r) s.active_terms.push_back(pairs[r][choice[r]]);
                out.push_back(std::move(s));
            }
        }
        std::size_t r = k;
        while (r > 0) {
            --r;
            if (++choice[r] < pairs[r].size()) break;
            choice[r] = 0;
            if (r == 0) return out;
        }
    }
}

bool is_unique_unit_solution(std::span<const TropicalSolution> solutions) {
    if (solutions.size() != 1) return false;
    const auto& v = solutions.front().values;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] != 1) return false;
    }
    return v.back() == 0;
}

std::vector<HullCell> lower_hull_cells_univariate(std::span<const LiftedPoint> points) {
    if (points.size() < 2) throw std::invalid_argument("lower hull needs at least two points");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a].exponent < points[b].exponent; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (points[order[i]].exponent == points[order[i - 1]].exponent) {
            throw std::invalid_argument("lifted points must have distinct exponents");
        }
    }
    // Monotone chain; collinear points are kept so they land in their edge's cell.
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        const Rational ax = points[a].exponent - points[o].exponent;
        const Rational ay = points[a].weight - points[o].weight;
        const Rational bx = points[b].exponent - points[o].exponent;
        const Rational by = points[b].weight - points[o].weight;
        return ax * by - ay * bx;
    };
    std::vector<std::size_t> hull;
    for (std::size_t idx : order) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), idx) < 0) hull.pop_back();
        hull.push_back(idx);
    }
    auto slope = [&](std::size_t a, std::size_t b) {
        return (points[b].weight - points[a].weight) / Rational(points[b].exponent - points[a].exponent);
    };
    std::vector<HullCell> cells;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const Rational s = slope(hull[i], hull[i + 1]);
        if (!cells.empty() && -cells.back().normal == s) {
            cells.back().points.push_back(hull[i + 1]);
            continue;
        }
        cells.push_back(HullCell{{hull[i], hull[i + 1]}, -s});
    }
    return cells;
}

TropicalRow univariate_row(std::span<const LiftedPoint> points) {
    TropicalRow row;
    for (const auto& p : points) row.terms.push_back({{Rational(p.exponent)}, p.weight});
    row.validate(1);
    return row;
}

CellHomotopy univariate_cell_homotopy(std::span<const cplx> coeffs, std::span<const Rational> weights,
                                      const Rational& normal) {
    if (coeffs.size() != weights.size()) throw std::invalid_argument("coefficient and weight counts differ");
    if (coeffs.size() < 2) throw std::invalid_argument("polynomial must have degree at least one");
    std::vector<Rational> powers;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == cplx{}) continue;
        support.push_back(j);
        powers.push_back(Rational(static_cast<std::int64_t>(j)) * normal + weights[j]);
    }
    const Rational lowest = *std::min_element(powers.begin(), powers.end());
    for (auto& p : powers) p -= lowest;

    CellHomotopy cell;
    cell.normal = normal;
    cell.denominator = lcm_of_denominators(powers);
    SparsePolynomial h(2);
    std::vector<cplx> initial(coeffs.size(), cplx{});
    for (std::size_t k = 0; k < support.size(); ++k) {
        const Rational scaled = powers[k] * Rational(cell.denominator);
        const auto e = static_cast<std::uint32_t>(numerator(scaled));
        h.add_term({static_cast<std::uint32_t>(support[k]), e}, coeffs[support[k]]);
        if (e == 0) initial[support[k]] = coeffs[support[k]];
    }
    cell.polys.push_back(std::move(h));
    for (cplx r : polynomial_roots(initial)) {
        CVector z(1);
        z[0] = r;
        cell.start_points.push_back(std::move(z));
    }
    return cell;
}

UnivariatePolyhedralResult solve_univariate_polyhedral(std::span<const cplx> coeffs, std::span<const Rational> weights,
                                                       const TrackerConfig& cfg) {
    if (coeffs.size() != weights.size()) throw std::invalid_argument("coefficient and weight counts differ");
    std::vector<LiftedPoint> pts;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == cplx{}) continue;
        pts.push_back({static_cast<std::int64_t>(j), weights[j]});
    }
    UnivariatePolyhedralResult result;
    for (const auto& hull : lower_hull_cells_univariate(pts)) {
        CellHomotopy cell = univariate_cell_homotopy(coeffs, weights, hull.normal);
        const ParameterHomotopy h(cell.polys);
        auto paths = track_all(h, cell.start_points, cfg);
        result.paths.insert(result.paths.end(), paths.begin(), paths.end());
        result.cells.push_back(std::move(cell));
    }
    return result;
}

}  // namespace lh::tropical
