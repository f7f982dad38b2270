#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "lh/lagrange.hpp"
#include "lh/poly.hpp"

namespace lh {

/// A square map F: C^N -> C^N with Jacobian, evaluated into caller-owned buffers.
///
/// Implementations are immutable after construction; `scratch` must hold at
/// least scratch_size() entries and is the only mutable state, so one
/// evaluator can be shared by many threads that each own their scratch.
class SystemEvaluator {
public:
    virtual ~SystemEvaluator() = default;

    virtual std::size_t dimension() const noexcept = 0;
    virtual std::size_t scratch_size() const noexcept = 0;

    /// value = F(z); jac = dF/dz when jac is non-null. Both are resized as needed.
    virtual void evaluate(std::span<const cplx> z, std::span<cplx> scratch, CVector& value, CMatrix* jac) const = 0;

    /// Per-equation sum of |term| at z, the scale used for relative residuals.
    virtual void magnitudes(std::span<const cplx> z, std::span<cplx> scratch, Eigen::VectorXd& out) const = 0;
};

/// Table of monomials closed under "drop one power of the first variable",
/// so each entry is its parent times one coordinate.
class MonomialTable {
public:
    explicit MonomialTable(std::size_t nvars);

    std::uint32_t index_of(const Exponent& alpha);
    std::size_t size() const noexcept { return recipe_.size(); }
    std::size_t nvars() const noexcept { return nvars_; }

    void evaluate(std::span<const cplx> z, std::span<cplx> out) const;
    /// |monomial| values, stored in the real parts of `out`.
    void evaluate_abs(std::span<const cplx> z, std::span<cplx> out) const;

private:
    struct Step {
        std::uint32_t parent;
        std::uint32_t var;
    };
    std::size_t nvars_;
    std::map<Exponent, std::uint32_t> index_;
    std::vector<Step> recipe_;
};

/// Rows of sparse dot products coef * monomial.
class LinearOps {
public:
    void begin_row();
    void push(cplx coef, std::uint32_t mono);
    std::size_t rows() const noexcept { return row_begin_.empty() ? 0 : row_begin_.size() - 1; }
    std::size_t ops() const noexcept { return coef_re_.size(); }

    /// out[r] = sum of coef * monos[mono] over row r.
    void apply(std::span<const cplx> monos, cplx* out) const;
    /// out[r] = sum of |coef| * Re monos[mono], for tables from evaluate_abs.
    void apply_abs(std::span<const cplx> monos, double* out) const;

    void finish();

private:
    std::vector<std::uint32_t> row_begin_;
    std::vector<std::uint32_t> mono_;
    std::vector<double> coef_re_;
    std::vector<double> coef_im_;
    std::vector<double> coef_abs_;
    bool real_ = true;
};

/// Generic evaluator for N polynomials sharing one variable list.
///
/// Square systems are the usual case. With more variables than equations
/// (a parameter homotopy carrying t as its last variable) the Jacobian
/// passed to evaluate() must have nvars() columns.
class CompiledSystem final : public SystemEvaluator {
public:
    explicit CompiledSystem(std::span<const SparsePolynomial> polys);
    explicit CompiledSystem(const SquareSystem& system) : CompiledSystem(std::span<const SparsePolynomial>(system.polys)) {}

    std::size_t dimension() const noexcept override { return n_; }
    std::size_t scratch_size() const noexcept override { return table_.size(); }
    void evaluate(std::span<const cplx> z, std::span<cplx> scratch, CVector& value, CMatrix* jac) const override;
    void magnitudes(std::span<const cplx> z, std::span<cplx> scratch, Eigen::VectorXd& out) const override;

    std::size_t nvars() const noexcept { return nvars_; }

private:
    std::size_t n_ = 0;
    std::size_t nvars_ = 0;
    MonomialTable table_;
    LinearOps values_;
    LinearOps jac_;  // entry (i, j) is row j * n + i, matching Eigen's column-major storage
};

/// Evaluator specialised to the Lagrange system {u - lambda grad f, f}.
///
/// f, grad f and the upper triangle of the Hessian are produced in one pass
/// over shared monomials of x; the Jacobian is assembled from them.
class CompiledLagrangeHypersurface final : public SystemEvaluator {
public:
    explicit CompiledLagrangeHypersurface(const LinearObjectiveProblem& problem);

    std::size_t dimension() const noexcept override { return n_ + 1; }
    std::size_t scratch_size() const noexcept override { return table_.size() + n_ + 1 + n_ * (n_ + 1) / 2; }
    void evaluate(std::span<const cplx> z, std::span<cplx> scratch, CVector& value, CMatrix* jac) const override;
    void magnitudes(std::span<const cplx> z, std::span<cplx> scratch, Eigen::VectorXd& out) const override;

private:
    std::size_t n_;
    std::vector<double> u_;
    MonomialTable table_;
    LinearOps f_;
    LinearOps grad_;
    LinearOps hess_;  // upper triangle, row-major (i <= j)
};

}  // namespace lh
