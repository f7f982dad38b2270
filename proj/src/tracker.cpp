#include "lh/tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace lh {

namespace {

double inf_norm(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool finite(const CVector& v) { return v.allFinite(); }

// First Newton correction larger than this fraction of the predictor's
// displacement means the step landed too far from the path.
constexpr double kMaxCorrectionRatio = 0.1;
// Consecutive Newton updates must shrink at least this fast.
constexpr double kMinContraction = 0.5;
constexpr unsigned kGrowthAfter = 4;
constexpr double kGrowthFactor = 1.5;

}  // namespace

std::string_view to_string(PathStatus s) noexcept {
    switch (s) {
        case PathStatus::Converged: return "converged";
        case PathStatus::Diverged: return "diverged";
        case PathStatus::Failed: return "failed";
    }
    return "unknown";
}

void TrackerConfig::validate() const {
    if (!(min_step > 0.0 && min_step < initial_step && initial_step < 1.0)) {
        throw std::invalid_argument("tracker config requires 0 < min_step < initial_step < 1");
    }
    if (!(max_step >= initial_step && max_step <= 1.0)) throw std::invalid_argument("max_step must lie in [initial_step, 1]");
    if (!(corrector_tol > 0.0 && endpoint_tol > 0.0 && divergence_norm > 0.0 && start_tol > 0.0)) {
        throw std::invalid_argument("tracker tolerances must be positive");
    }
    if (max_corrector_iters == 0) throw std::invalid_argument("max_corrector_iters must be positive");
    if (max_condition <= 1.0) throw std::invalid_argument("max_condition must exceed 1");
}

// ---------------------------------------------------------------------------

StraightLineHomotopy::StraightLineHomotopy(std::shared_ptr<const SystemEvaluator> start,
                                           std::shared_ptr<const SystemEvaluator> target, cplx gamma)
    : start_(std::move(start)), target_(std::move(target)), gamma_(gamma) {
    if (!start_ || !target_) throw std::invalid_argument("homotopy needs both start and target");
    if (start_->dimension() != target_->dimension()) {
        throw std::invalid_argument("start and target systems differ in size");
    }
}

StraightLineHomotopy::StraightLineHomotopy(const SquareSystem& start, const SquareSystem& target, cplx gamma)
    : StraightLineHomotopy(std::make_shared<CompiledSystem>(start), std::make_shared<CompiledSystem>(target), gamma) {
    start.validate();
    target.validate();
}

HomotopyWorkspace StraightLineHomotopy::make_workspace() const {
    const auto n = static_cast<Eigen::Index>(dimension());
    HomotopyWorkspace ws;
    ws.scratch.resize(std::max(start_->scratch_size(), target_->scratch_size()));
    ws.value_a.resize(n);
    ws.value_b.resize(n);
    ws.jac_a.resize(n, n);
    ws.jac_b.resize(n, n);
    ws.mag_a.resize(n);
    ws.mag_b.resize(n);
    return ws;
}

void StraightLineHomotopy::magnitudes(std::span<const cplx> z, double t, HomotopyWorkspace& ws,
                                      Eigen::VectorXd& out) const {
    start_->magnitudes(z, ws.scratch, ws.mag_a);
    target_->magnitudes(z, ws.scratch, ws.mag_b);
    out.noalias() = (1.0 - t) * ws.mag_a + (t * std::abs(gamma_)) * ws.mag_b;
}

void StraightLineHomotopy::evaluate(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H, CMatrix& Hz,
                                    CVector& Ht) const {
    start_->evaluate(z, ws.scratch, ws.value_a, &ws.jac_a);
    target_->evaluate(z, ws.scratch, ws.value_b, &ws.jac_b);
    const double s = 1.0 - t;
    const cplx tg = t * gamma_;
    H.noalias() = s * ws.value_a + tg * ws.value_b;
    Hz.noalias() = s * ws.jac_a + tg * ws.jac_b;
    Ht.noalias() = gamma_ * ws.value_b - ws.value_a;
}

void StraightLineHomotopy::evaluate_value(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H) const {
    start_->evaluate(z, ws.scratch, ws.value_a, nullptr);
    target_->evaluate(z, ws.scratch, ws.value_b, nullptr);
    H.noalias() = (1.0 - t) * ws.value_a + (t * gamma_) * ws.value_b;
}

void StraightLineHomotopy::evaluate_start(std::span<const cplx> z, HomotopyWorkspace& ws, CVector& value) const {
    start_->evaluate(z, ws.scratch, value, nullptr);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<SparsePolynomial> specialise_t(const std::vector<SparsePolynomial>& polys, double t) {
    std::vector<SparsePolynomial> out;
    for (const auto& p : polys) out.push_back(p.substituted(p.nvars() - 1, t));
    return out;
}

}  // namespace

ParameterHomotopy::ParameterHomotopy(std::vector<SparsePolynomial> polys)
    : n_(polys.size()),
      full_(polys),
      start_(std::make_shared<CompiledSystem>(specialise_t(polys, 0.0))),
      target_(std::make_shared<CompiledSystem>(specialise_t(polys, 1.0))) {
    if (full_.nvars() != n_ + 1) throw std::invalid_argument("parameter homotopy needs N equations in N + 1 variables");
}

HomotopyWorkspace ParameterHomotopy::make_workspace() const {
    const auto n = static_cast<Eigen::Index>(n_);
    HomotopyWorkspace ws;
    ws.scratch.resize(std::max({full_.scratch_size(), start_->scratch_size(), target_->scratch_size()}));
    ws.value_a.resize(n);
    ws.value_b.resize(n + 1);
    ws.jac_a.resize(n, n + 1);
    ws.mag_a.resize(n);
    return ws;
}

void ParameterHomotopy::magnitudes(std::span<const cplx> z, double t, HomotopyWorkspace& ws,
                                   Eigen::VectorXd& out) const {
    const auto n = static_cast<Eigen::Index>(n_);
    for (Eigen::Index i = 0; i < n; ++i) ws.value_b[i] = z[static_cast<std::size_t>(i)];
    ws.value_b[n] = t;
    full_.magnitudes(as_span(ws.value_b), ws.scratch, out);
}

void ParameterHomotopy::evaluate(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H, CMatrix& Hz,
                                 CVector& Ht) const {
    const auto n = static_cast<Eigen::Index>(n_);
    for (Eigen::Index i = 0; i < n; ++i) ws.value_b[i] = z[static_cast<std::size_t>(i)];
    ws.value_b[n] = t;
    full_.evaluate(as_span(ws.value_b), ws.scratch, H, &ws.jac_a);
    Hz = ws.jac_a.leftCols(n);
    Ht = ws.jac_a.col(n);
}

void ParameterHomotopy::evaluate_value(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H) const {
    const auto n = static_cast<Eigen::Index>(n_);
    for (Eigen::Index i = 0; i < n; ++i) ws.value_b[i] = z[static_cast<std::size_t>(i)];
    ws.value_b[n] = t;
    full_.evaluate(as_span(ws.value_b), ws.scratch, H, nullptr);
}

void ParameterHomotopy::evaluate_start(std::span<const cplx> z, HomotopyWorkspace& ws, CVector& value) const {
    start_->evaluate(z, ws.scratch, value, nullptr);
}

// ---------------------------------------------------------------------------

Residuals residuals(const SystemEvaluator& system, std::span<const cplx> z) {
    const auto n = static_cast<Eigen::Index>(system.dimension());
    std::vector<cplx> scratch(system.scratch_size());
    CVector value(n);
    Eigen::VectorXd mags(n);
    system.evaluate(z, scratch, value, nullptr);
    system.magnitudes(z, scratch, mags);
    Residuals r{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(value[i]);
        r.absolute = std::max(r.absolute, a);
        r.relative = std::max(r.relative, a / (1.0 + mags[i]));
    }
    if (!value.allFinite()) r = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    return r;
}

CVector newton_refine(const SystemEvaluator& system, CVector z, unsigned max_iters) {
    const auto n = static_cast<Eigen::Index>(system.dimension());
    std::vector<cplx> scratch(system.scratch_size());
    CVector value(n);
    CMatrix jac(n, n);
    Eigen::PartialPivLU<CMatrix> lu(n);
    CVector best = z;
    double best_res = std::numeric_limits<double>::infinity();
    double prev_step = std::numeric_limits<double>::infinity();
    for (unsigned it = 0; it <= max_iters; ++it) {
        system.evaluate(as_span(z), scratch, value, &jac);
        if (!value.allFinite()) break;
        const double res = inf_norm(value);
        if (res < best_res) {
            best_res = res;
            best = z;
        }
        if (it == max_iters || res == 0.0) break;
        lu.compute(jac);
        const CVector delta = lu.solve(value);
        if (!delta.allFinite()) break;
        const double step = inf_norm(delta);
        z -= delta;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + inf_norm(z))) {
            system.evaluate(as_span(z), scratch, value, nullptr);
            if (value.allFinite() && inf_norm(value) < best_res) best = z;
            break;
        }
        if (it > 2 && step > prev_step) break;
        prev_step = step;
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

class PathTracker {
public:
    PathTracker(const Homotopy& h, const TrackerConfig& cfg)
        : h_(h), cfg_(cfg), ws_(h.make_workspace()), n_(static_cast<Eigen::Index>(h.dimension())), lu_(n_) {
        H_.resize(n_);
        Ht_.resize(n_);
        Hz_.resize(n_, n_);
        k1_.resize(n_);
        k2_.resize(n_);
        k3_.resize(n_);
        k4_.resize(n_);
        tmp_.resize(n_);
        delta_.resize(n_);
        zc_.resize(n_);
        mag_.resize(n_);
        scaled_.resize(n_, n_);
        row_scale_.resize(n_);
        col_scale_.resize(n_);
    }

    PathResult run(const CVector& start) {
        if (start.size() != n_) throw std::invalid_argument("start point has wrong dimension");
        h_.evaluate_start(as_span(start), ws_, H_);
        if (!(inf_norm(H_) < cfg_.start_tol)) {
            throw std::invalid_argument("start point does not satisfy the start system (residual " +
                                        std::to_string(inf_norm(H_)) + ")");
        }

        PathResult result;
        CVector z = start;
        double t = 0.0;
        double step = cfg_.initial_step;
        unsigned successes = 0;

        h_.evaluate(as_span(z), t, ws_, H_, Hz_, Ht_);
        if (!tangent_from_current(k1_)) return finish_failed(result, z, t);

        while (t < 1.0) {
            if (result.steps_taken + result.steps_rejected >= cfg_.max_steps) return finish_failed(result, z, t);
            const bool last = (1.0 - t) <= step;
            const double dt = last ? 1.0 - t : step;
            const double t1 = last ? 1.0 : t + dt;

            bool ok = predict(z, t, dt, t1);
            zc_ = tmp_;
            if (ok) ok = correct(z, zc_, t1);
            if (ok) {
                z = zc_;
                t = t1;
                ++result.steps_taken;
                if (inf_norm(z) > cfg_.divergence_norm) {
                    result.status = PathStatus::Diverged;
                    result.endpoint = z;
                    result.final_t = t;
                    result.residual = result.absolute_residual = std::numeric_limits<double>::infinity();
                    return result;
                }
                if (!tangent_from_current(k1_)) return finish_failed(result, z, t);
                if (++successes >= kGrowthAfter) {
                    step = std::min(step * kGrowthFactor, cfg_.max_step);
                    successes = 0;
                }
            } else {
                ++result.steps_rejected;
                successes = 0;
                step *= 0.5;
                if (step < cfg_.min_step) return finish_failed(result, z, t);
            }
        }

        result.final_t = 1.0;
        result.endpoint = newton_refine(h_.target(), z, cfg_.refinement_iters);
        const Residuals r = residuals(h_.target(), as_span(result.endpoint));
        result.residual = r.relative;
        result.absolute_residual = r.absolute;
        if (inf_norm(result.endpoint) > cfg_.divergence_norm) {
            result.status = PathStatus::Diverged;
        } else {
            result.status = r.relative < cfg_.endpoint_tol ? PathStatus::Converged : PathStatus::Failed;
        }
        return result;
    }

private:
    PathResult finish_failed(PathResult& result, const CVector& z, double t) {
        result.status = PathStatus::Failed;
        result.endpoint = z;
        result.final_t = t;
        const Residuals r = residuals(h_.target(), as_span(z));
        result.residual = r.relative;
        result.absolute_residual = r.absolute;
        return result;
    }

    // LU of the row- and column-equilibrated Jacobian. The condition test is applied to
    // the scaled matrix so it does not depend on equation scaling.
    bool factor_current(bool check_condition) {
        if (!Hz_.allFinite()) return false;
        row_scale_ = Hz_.cwiseAbs().rowwise().maxCoeff();
        for (Eigen::Index i = 0; i < n_; ++i) {
            if (row_scale_[i] == 0.0) return false;
            row_scale_[i] = 1.0 / row_scale_[i];
        }
        scaled_.noalias() = row_scale_.asDiagonal() * Hz_;
        col_scale_ = scaled_.cwiseAbs().colwise().maxCoeff().transpose();
        for (Eigen::Index j = 0; j < n_; ++j) {
            if (col_scale_[j] == 0.0) return false;
            col_scale_[j] = 1.0 / col_scale_[j];
        }
        scaled_ = scaled_ * col_scale_.asDiagonal();
        lu_.compute(scaled_);
        if (!check_condition || std::isinf(cfg_.max_condition)) return true;
        const double rc = lu_.rcond();
        return std::isfinite(rc) && rc * cfg_.max_condition >= 1.0;
    }

    // Solves Hz x = rhs with the current factorization.
    void solve_current(const CVector& rhs, CVector& out) {
        out.noalias() = col_scale_.asDiagonal() * lu_.solve(row_scale_.asDiagonal() * rhs);
    }

    // dz/dt = -Hz^{-1} Ht at the most recent evaluation.
    bool tangent_from_current(CVector& out) {
        if (!factor_current(false)) return false;
        solve_current(Ht_, out);
        out = -out;
        return finite(out);
    }

    bool tangent_at(const CVector& z, double t, CVector& out) {
        h_.evaluate(as_span(z), t, ws_, H_, Hz_, Ht_);
        return tangent_from_current(out);
    }

    // Classical RK4 on the Davidenko equation; result left in tmp_.
    bool predict(const CVector& z, double t, double dt, double t1) {
        const double half = 0.5 * dt;
        delta_.noalias() = z + half * k1_;
        if (!tangent_at(delta_, t + half, k2_)) return false;
        delta_.noalias() = z + half * k2_;
        if (!tangent_at(delta_, t + half, k3_)) return false;
        delta_.noalias() = z + dt * k3_;
        if (!tangent_at(delta_, t1, k4_)) return false;
        tmp_.noalias() = z + (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        return finite(tmp_);
    }

    // Newton on H(., t1). On success H_, Hz_, Ht_ hold the evaluation at zc.
    bool correct(const CVector& z, CVector& zc, double t1) {
        const double displacement = (zc - z).cwiseAbs().maxCoeff();
        double prev = std::numeric_limits<double>::infinity();
        for (unsigned it = 0;; ++it) {
            h_.evaluate(as_span(zc), t1, ws_, H_, Hz_, Ht_);
            if (!H_.allFinite()) return false;
            const double scale = 1.0 + inf_norm(zc);
            bool done = inf_norm(H_) < cfg_.corrector_tol * scale;
            if (!done) {
                // Large coordinates put the rounding floor of |H| above the
                // absolute test; fall back to the backward error.
                h_.magnitudes(as_span(zc), t1, ws_, mag_);
                done = (H_.cwiseAbs().array() / (1.0 + mag_.array())).maxCoeff() < cfg_.corrector_tol;
            }
            if (done) return true;
            if (it == cfg_.max_corrector_iters) return false;
            if (!factor_current(true)) return false;
            solve_current(H_, delta_);
            const double dn = inf_norm(delta_);
            if (!std::isfinite(dn)) return false;
            if (it == 0 && dn > kMaxCorrectionRatio * displacement + cfg_.corrector_tol * scale) return false;
            if (it > 0 && dn > kMinContraction * prev) return false;
            zc -= delta_;
            prev = dn;
        }
    }

    const Homotopy& h_;
    const TrackerConfig& cfg_;
    HomotopyWorkspace ws_;
    Eigen::Index n_;
    Eigen::PartialPivLU<CMatrix> lu_;
    CVector H_, Ht_, k1_, k2_, k3_, k4_, tmp_, delta_, zc_;
    CMatrix Hz_;
    CMatrix scaled_;
    Eigen::VectorXd row_scale_;
    Eigen::VectorXd col_scale_;
    Eigen::VectorXd mag_;
};

}  // namespace

PathResult track_path(const Homotopy& h, const CVector& start_point, const TrackerConfig& cfg) {
    cfg.validate();
    PathTracker tracker(h, cfg);
    return tracker.run(start_point);
}

std::vector<PathResult> track_all(const Homotopy& h, std::span<const CVector> starts, const TrackerConfig& cfg,
                                  unsigned threads) {
    cfg.validate();
    std::vector<PathResult> results(starts.size());
    if (starts.empty()) return results;

    auto run_one = [&](std::size_t i) {
        try {
            PathTracker tracker(h, cfg);
            results[i] = tracker.run(starts[i]);
        } catch (const std::invalid_argument&) {
            results[i].status = PathStatus::Failed;
            results[i].endpoint = starts[i];
            results[i].residual = results[i].absolute_residual = std::numeric_limits<double>::infinity();
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(starts.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < starts.size(); ++i) run_one(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < starts.size(); i = next++) run_one(i);
        });
    }
    pool.clear();
    return results;
}

}  // namespace lh
