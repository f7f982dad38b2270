#include "lh/lagrange.hpp"

#include <stdexcept>

namespace lh {

std::vector<std::string> LinearObjectiveProblem::validate() const {
    if (u.empty()) throw std::invalid_argument("objective vector is empty");
    if (f.nvars() != u.size()) {
        throw std::invalid_argument("constraint has " + std::to_string(f.nvars()) + " variables but objective has " +
                                    std::to_string(u.size()) + " entries");
    }
    if (f.is_constant()) throw std::invalid_argument("constraint polynomial is constant");
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) warnings.push_back("objective entry u" + std::to_string(i + 1) + " is zero (nongeneric)");
    }
    return warnings;
}

void SquareSystem::validate() const {
    if (polys.empty()) throw std::invalid_argument("empty system");
    for (const auto& p : polys) {
        if (p.nvars() != polys.size()) {
            throw std::invalid_argument("system is not square: " + std::to_string(polys.size()) +
                                        " equations, polynomial in " + std::to_string(p.nvars()) + " variables");
        }
    }
    if (num_primal > polys.size()) throw std::invalid_argument("num_primal exceeds variable count");
    if (!variable_names.empty() && variable_names.size() != polys.size()) {
        throw std::invalid_argument("variable name count mismatch");
    }
}

std::vector<std::string> lagrange_variable_names(std::size_t n, std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    if (m == 1) {
        names.emplace_back("lambda");
    } else {
        for (std::size_t j = 0; j < m; ++j) names.push_back("lambda" + std::to_string(j + 1));
    }
    return names;
}

SparsePolynomial linear_form(std::span<const double> u) {
    SparsePolynomial p(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        Exponent e(u.size(), 0);
        e[i] = 1;
        p.add_term(e, u[i]);
    }
    return p;
}

SquareSystem lagrange_general(const SparsePolynomial& f0, std::span<const SparsePolynomial> constraints) {
    const std::size_t n = f0.nvars();
    const std::size_t m = constraints.size();
    if (m > n) throw std::invalid_argument("more constraints than variables");
    for (const auto& fj : constraints) {
        if (fj.nvars() != n) throw std::invalid_argument("objective and constraints use different variable counts");
    }
    const std::size_t N = n + m;
    SquareSystem sys;
    sys.num_primal = n;
    sys.variable_names = lagrange_variable_names(n, m);

    const SparsePolynomial f0e = f0.embedded(N);
    std::vector<SparsePolynomial> fe;
    for (const auto& fj : constraints) fe.push_back(fj.embedded(N));

    for (std::size_t i = 0; i < n; ++i) {
        SparsePolynomial li = partial(f0e, i);
        for (std::size_t j = 0; j < m; ++j) {
            li -= SparsePolynomial::variable(N, n + j) * partial(fe[j], i);
        }
        sys.polys.push_back(std::move(li));
    }
    for (auto& fj : fe) sys.polys.push_back(std::move(fj));
    return sys;
}

SquareSystem lagrange_linear_hypersurface(const LinearObjectiveProblem& problem) {
    problem.validate();
    const std::size_t n = problem.dimension();
    const std::size_t N = n + 1;
    const SparsePolynomial fe = problem.f.embedded(N);
    const SparsePolynomial lambda = SparsePolynomial::variable(N, n);

    SquareSystem sys;
    sys.num_primal = n;
    sys.variable_names = lagrange_variable_names(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        SparsePolynomial li = SparsePolynomial::constant(N, problem.u[i]);
        li -= lambda * partial(fe, i);
        sys.polys.push_back(std::move(li));
    }
    sys.polys.push_back(fe);
    return sys;
}

}  // namespace lh
