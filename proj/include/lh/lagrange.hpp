#pragma once

#include <string>
#include <vector>

#include "lh/poly.hpp"

namespace lh {

/// min u^T x subject to f(x) = 0.
struct LinearObjectiveProblem {
    std::vector<double> u;
    SparsePolynomial f;

    std::size_t dimension() const noexcept { return u.size(); }

    /// Throws std::invalid_argument on hard violations (dimension mismatch,
    /// constant f). Returns warnings for soft ones such as a zero entry in u.
    std::vector<std::string> validate() const;
};

/// Square polynomial system in the variables (x_1..x_n, lambda_1..lambda_m).
struct SquareSystem {
    std::vector<SparsePolynomial> polys;
    std::vector<std::string> variable_names;
    std::size_t num_primal = 0;  // n; the remaining variables are multipliers

    std::size_t size() const noexcept { return polys.size(); }
    std::size_t num_multipliers() const noexcept { return polys.size() - num_primal; }
    void validate() const;
};

/// Default variable labels x1..xn, lambda (or lambda1..lambdam).
std::vector<std::string> lagrange_variable_names(std::size_t n, std::size_t m);

/// {u_i - lambda df/dx_i}_i together with f, in variables (x, lambda).
SquareSystem lagrange_linear_hypersurface(const LinearObjectiveProblem& problem);

/// Lagrange system of min f0 s.t. F = 0 with L = f0 - sum_j lambda_j f_j.
SquareSystem lagrange_general(const SparsePolynomial& f0, std::span<const SparsePolynomial> constraints);

/// The linear polynomial u^T x in n variables.
SparsePolynomial linear_form(std::span<const double> u);

}  // namespace lh
