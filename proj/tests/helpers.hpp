#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "lh/poly.hpp"

namespace lh::testing {

inline CVector random_point(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CVector z(static_cast<Eigen::Index>(n));
    for (auto& v : z) v = cplx{g(rng), g(rng)};
    return z;
}

// Naive evaluation: sum c * prod z_i^a_i with std::pow.
inline cplx naive_eval(const SparsePolynomial& p, const CVector& z) {
    cplx s = 0.0;
    for (const auto& [alpha, c] : p.terms()) {
        cplx m = c;
        for (std::size_t i = 0; i < alpha.size(); ++i) m *= std::pow(z[static_cast<Eigen::Index>(i)], static_cast<int>(alpha[i]));
        s += m;
    }
    return s;
}

// Central finite-difference Jacobian of naive_eval.
inline CMatrix fd_jacobian(const std::vector<SparsePolynomial>& sys, const CVector& z, double h = 1e-6) {
    const auto n = static_cast<Eigen::Index>(sys.size());
    const auto m = z.size();
    CMatrix J(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        CVector zp = z, zm = z;
        const double step = h * (1.0 + std::abs(z[j]));
        zp[j] += step;
        zm[j] -= step;
        for (Eigen::Index i = 0; i < n; ++i) {
            J(i, j) = (naive_eval(sys[static_cast<std::size_t>(i)], zp) - naive_eval(sys[static_cast<std::size_t>(i)], zm)) /
                      (2.0 * step);
        }
    }
    return J;
}

// Greedy matching: every point of a has its own partner in b within tol (relative).
inline bool same_point_sets(const std::vector<CVector>& a, const std::vector<CVector>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool hit = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j] || p.size() != b[j].size()) continue;
            const double scale = 1.0 + p.cwiseAbs().maxCoeff();
            if ((p - b[j]).cwiseAbs().maxCoeff() <= tol * scale) {
                used[j] = hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace lh::testing
