#include "lh/evaluator.hpp"

#include <stdexcept>

namespace lh {

MonomialTable::MonomialTable(std::size_t nvars) : nvars_(nvars) {
    index_.emplace(Exponent(nvars, 0), 0);
    recipe_.push_back({0, 0});
}

std::uint32_t MonomialTable::index_of(const Exponent& alpha) {
    if (alpha.size() != nvars_) throw std::invalid_argument("monomial length mismatch");
    if (auto it = index_.find(alpha); it != index_.end()) return it->second;
    std::size_t k = 0;
    while (alpha[k] == 0) ++k;
    Exponent parent(alpha);
    parent[k] -= 1;
    const std::uint32_t p = index_of(parent);
    const auto idx = static_cast<std::uint32_t>(recipe_.size());
    recipe_.push_back({p, static_cast<std::uint32_t>(k)});
    index_.emplace(alpha, idx);
    return idx;
}

void MonomialTable::evaluate(std::span<const cplx> z, std::span<cplx> out) const {
    out[0] = cplx{1.0, 0.0};
    const std::size_t m = recipe_.size();
    for (std::size_t i = 1; i < m; ++i) {
        const cplx a = out[recipe_[i].parent];
        const cplx b = z[recipe_[i].var];
        out[i] = cplx{a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
    }
}

void MonomialTable::evaluate_abs(std::span<const cplx> z, std::span<cplx> out) const {
    out[0] = cplx{1.0, 0.0};
    const std::size_t m = recipe_.size();
    for (std::size_t i = 1; i < m; ++i) out[i] = cplx{out[recipe_[i].parent].real() * std::abs(z[recipe_[i].var]), 0.0};
}

void LinearOps::begin_row() {
    row_begin_.push_back(static_cast<std::uint32_t>(coef_re_.size()));
}

void LinearOps::push(cplx coef, std::uint32_t mono) {
    if (coef == cplx{}) return;
    mono_.push_back(mono);
    coef_re_.push_back(coef.real());
    coef_im_.push_back(coef.imag());
    coef_abs_.push_back(std::abs(coef));
    if (coef.imag() != 0.0) real_ = false;
}

void LinearOps::finish() {
    row_begin_.push_back(static_cast<std::uint32_t>(coef_re_.size()));
}

void LinearOps::apply(std::span<const cplx> monos, cplx* out) const {
    const std::size_t nrows = rows();
    const double* cr = coef_re_.data();
    const double* ci = coef_im_.data();
    const std::uint32_t* mi = mono_.data();
    if (real_) {
        for (std::size_t r = 0; r < nrows; ++r) {
            double re = 0.0;
            double im = 0.0;
            for (std::uint32_t k = row_begin_[r]; k < row_begin_[r + 1]; ++k) {
                const cplx m = monos[mi[k]];
                re += cr[k] * m.real();
                im += cr[k] * m.imag();
            }
            out[r] = cplx{re, im};
        }
        return;
    }
    for (std::size_t r = 0; r < nrows; ++r) {
        double re = 0.0;
        double im = 0.0;
        for (std::uint32_t k = row_begin_[r]; k < row_begin_[r + 1]; ++k) {
            const cplx m = monos[mi[k]];
            re += cr[k] * m.real() - ci[k] * m.imag();
            im += cr[k] * m.imag() + ci[k] * m.real();
        }
        out[r] = cplx{re, im};
    }
}

void LinearOps::apply_abs(std::span<const cplx> monos, double* out) const {
    const std::size_t nrows = rows();
    for (std::size_t r = 0; r < nrows; ++r) {
        double acc = 0.0;
        for (std::uint32_t k = row_begin_[r]; k < row_begin_[r + 1]; ++k) {
            acc += coef_abs_[k] * monos[mono_[k]].real();
        }
        out[r] = acc;
    }
}

CompiledSystem::CompiledSystem(std::span<const SparsePolynomial> polys)
    : n_(polys.size()), nvars_(polys.empty() ? 0 : polys.front().nvars()), table_(nvars_) {
    if (polys.empty()) throw std::invalid_argument("cannot compile an empty system");
    if (nvars_ < n_) throw std::invalid_argument("system has fewer variables than equations");
    for (const auto& p : polys) {
        if (p.nvars() != nvars_) throw std::invalid_argument("polynomials use different variable counts");
        values_.begin_row();
        for (const auto& [alpha, c] : p.terms()) values_.push(c, table_.index_of(alpha));
    }
    values_.finish();
    for (std::size_t j = 0; j < nvars_; ++j) {
        for (const auto& p : polys) {
            jac_.begin_row();
            for (const auto& [alpha, c] : p.terms()) {
                if (alpha[j] == 0) continue;
                Exponent beta(alpha);
                beta[j] -= 1;
                jac_.push(c * static_cast<double>(alpha[j]), table_.index_of(beta));
            }
        }
    }
    jac_.finish();
}

void CompiledSystem::evaluate(std::span<const cplx> z, std::span<cplx> scratch, CVector& value, CMatrix* jac) const {
    value.resize(static_cast<Eigen::Index>(n_));
    table_.evaluate(z, scratch);
    values_.apply(scratch, value.data());
    if (jac == nullptr) return;
    jac->resize(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(nvars_));
    jac_.apply(scratch, jac->data());
}

void CompiledSystem::magnitudes(std::span<const cplx> z, std::span<cplx> scratch, Eigen::VectorXd& out) const {
    out.resize(static_cast<Eigen::Index>(n_));
    table_.evaluate_abs(z, scratch);
    values_.apply_abs(scratch, out.data());
}

CompiledLagrangeHypersurface::CompiledLagrangeHypersurface(const LinearObjectiveProblem& problem)
    : n_(problem.dimension()), u_(problem.u), table_(problem.dimension()) {
    problem.validate();
    const auto& f = problem.f;
    f_.begin_row();
    for (const auto& [alpha, c] : f.terms()) f_.push(c, table_.index_of(alpha));
    f_.finish();
    for (std::size_t i = 0; i < n_; ++i) {
        grad_.begin_row();
        for (const auto& [alpha, c] : f.terms()) {
            if (alpha[i] == 0) continue;
            Exponent beta(alpha);
            beta[i] -= 1;
            grad_.push(c * static_cast<double>(alpha[i]), table_.index_of(beta));
        }
    }
    grad_.finish();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i; j < n_; ++j) {
            hess_.begin_row();
            for (const auto& [alpha, c] : f.terms()) {
                Exponent beta(alpha);
                if (beta[i] == 0) continue;
                double mult = beta[i];
                beta[i] -= 1;
                if (beta[j] == 0) continue;
                mult *= beta[j];
                beta[j] -= 1;
                hess_.push(c * mult, table_.index_of(beta));
            }
        }
    }
    hess_.finish();
}

void CompiledLagrangeHypersurface::evaluate(std::span<const cplx> z, std::span<cplx> scratch, CVector& value,
                                            CMatrix* jac) const {
    const std::size_t nm = table_.size();
    const std::span<cplx> monos = scratch.subspan(0, nm);
    cplx* grad = scratch.data() + nm;
    cplx* hess = grad + n_;
    cplx* fval = hess + n_ * (n_ + 1) / 2;

    value.resize(static_cast<Eigen::Index>(n_ + 1));
    table_.evaluate(z.subspan(0, n_), monos);
    f_.apply(monos, fval);
    grad_.apply(monos, grad);
    const cplx lambda = z[n_];
    for (std::size_t i = 0; i < n_; ++i) value[static_cast<Eigen::Index>(i)] = u_[i] - lambda * grad[i];
    value[static_cast<Eigen::Index>(n_)] = *fval;
    if (jac == nullptr) return;

    hess_.apply(monos, hess);
    CMatrix& J = *jac;
    J.resize(static_cast<Eigen::Index>(n_ + 1), static_cast<Eigen::Index>(n_ + 1));
    const auto n = static_cast<Eigen::Index>(n_);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const cplx v = -lambda * hess[k++];
            J(i, j) = v;
            J(j, i) = v;
        }
        J(i, n) = -grad[i];
        J(n, i) = grad[i];
    }
    J(n, n) = cplx{};
}

void CompiledLagrangeHypersurface::magnitudes(std::span<const cplx> z, std::span<cplx> scratch,
                                              Eigen::VectorXd& out) const {
    const std::size_t nm = table_.size();
    const std::span<cplx> monos = scratch.subspan(0, nm);
    out.resize(static_cast<Eigen::Index>(n_ + 1));
    table_.evaluate_abs(z.subspan(0, n_), monos);
    grad_.apply_abs(monos, out.data());
    double fabs = 0.0;
    f_.apply_abs(monos, &fabs);
    const double lam = std::abs(z[n_]);
    for (std::size_t i = 0; i < n_; ++i) out[static_cast<Eigen::Index>(i)] = std::abs(u_[i]) + lam * out[static_cast<Eigen::Index>(i)];
    out[static_cast<Eigen::Index>(n_)] = fabs;
}

}  // namespace lh
