#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "lh/evaluator.hpp"
#include "lh/lagrange.hpp"

namespace lh {

/// Per-thread buffers for evaluating a homotopy.
struct HomotopyWorkspace {
    std::vector<cplx> scratch;
    Eigen::VectorXd mag_a;
    Eigen::VectorXd mag_b;
    CVector value_a;
    CVector value_b;
    CMatrix jac_a;
    CMatrix jac_b;
};

/// H(z; t) for t in [0, 1] with H(., 0) the start and H(., 1) a nonzero
/// multiple of the target system.
class Homotopy {
public:
    virtual ~Homotopy() = default;

    virtual std::size_t dimension() const noexcept = 0;
    virtual HomotopyWorkspace make_workspace() const = 0;

    /// H(z; t), dH/dz and dH/dt.
    virtual void evaluate(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H, CMatrix& Hz,
                          CVector& Ht) const = 0;

    /// H(z; t) only.
    virtual void evaluate_value(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H) const = 0;

    /// Per-equation sum of |term| of H at (z, t); scale for relative residuals.
    virtual void magnitudes(std::span<const cplx> z, double t, HomotopyWorkspace& ws, Eigen::VectorXd& out) const = 0;

    /// Start system value, for checking start points.
    virtual void evaluate_start(std::span<const cplx> z, HomotopyWorkspace& ws, CVector& value) const = 0;

    /// Target system (without any gamma factor), used for endpoint refinement.
    virtual const SystemEvaluator& target() const noexcept = 0;
};

/// H = (1 - t) B + t gamma L: gamma multiplies the target term.
class StraightLineHomotopy final : public Homotopy {
public:
    StraightLineHomotopy(std::shared_ptr<const SystemEvaluator> start, std::shared_ptr<const SystemEvaluator> target,
                         cplx gamma);
    StraightLineHomotopy(const SquareSystem& start, const SquareSystem& target, cplx gamma);

    cplx gamma() const noexcept { return gamma_; }

    std::size_t dimension() const noexcept override { return start_->dimension(); }
    HomotopyWorkspace make_workspace() const override;
    void evaluate(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H, CMatrix& Hz,
                  CVector& Ht) const override;
    void evaluate_value(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H) const override;
    void magnitudes(std::span<const cplx> z, double t, HomotopyWorkspace& ws, Eigen::VectorXd& out) const override;
    void evaluate_start(std::span<const cplx> z, HomotopyWorkspace& ws, CVector& value) const override;
    const SystemEvaluator& target() const noexcept override { return *target_; }

private:
    std::shared_ptr<const SystemEvaluator> start_;
    std::shared_ptr<const SystemEvaluator> target_;
    cplx gamma_;
};

/// Homotopy given directly as N polynomials in (z_1..z_N, t). Covers
/// polyhedral cell homotopies whose powers of t come from a lifting.
class ParameterHomotopy final : public Homotopy {
public:
    explicit ParameterHomotopy(std::vector<SparsePolynomial> polys);

    std::size_t dimension() const noexcept override { return n_; }
    HomotopyWorkspace make_workspace() const override;
    void evaluate(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H, CMatrix& Hz,
                  CVector& Ht) const override;
    void evaluate_value(std::span<const cplx> z, double t, HomotopyWorkspace& ws, CVector& H) const override;
    void magnitudes(std::span<const cplx> z, double t, HomotopyWorkspace& ws, Eigen::VectorXd& out) const override;
    void evaluate_start(std::span<const cplx> z, HomotopyWorkspace& ws, CVector& value) const override;
    const SystemEvaluator& target() const noexcept override { return *target_; }

private:
    std::size_t n_;
    CompiledSystem full_;
    std::shared_ptr<const CompiledSystem> start_;
    std::shared_ptr<const CompiledSystem> target_;
};

struct TrackerConfig {
    double initial_step = 0.05;
    double min_step = 1e-14;
    double max_step = 0.1;
    double corrector_tol = 1e-12;
    unsigned max_corrector_iters = 3;
    double divergence_norm = 1e8;
    double endpoint_tol = 1e-10;
    std::uint64_t max_steps = 50000;
    double start_tol = 1e-8;
    double max_condition = std::numeric_limits<double>::infinity();  // on the equilibrated Jacobian
    unsigned refinement_iters = 8;

    void validate() const;
};

enum class PathStatus { Converged, Diverged, Failed };

std::string_view to_string(PathStatus s) noexcept;

struct PathResult {
    PathStatus status = PathStatus::Failed;
    CVector endpoint;
    double residual = 0.0;           // relative: max_i |F_i| / (1 + sum |terms of F_i|)
    double absolute_residual = 0.0;  // max_i |F_i|
    std::uint64_t steps_taken = 0;
    std::uint64_t steps_rejected = 0;
    double final_t = 0.0;
};

/// Residuals of `system` at z, as stored in PathResult.
struct Residuals {
    double relative;
    double absolute;
};
Residuals residuals(const SystemEvaluator& system, std::span<const cplx> z);

/// Tracks one path from t = 0 to t = 1. Throws std::invalid_argument when the
/// start point does not satisfy the start system to cfg.start_tol.
PathResult track_path(const Homotopy& h, const CVector& start_point, const TrackerConfig& cfg);

/// Tracks every start point; results are in input order and independent of
/// the thread count.
std::vector<PathResult> track_all(const Homotopy& h, std::span<const CVector> starts, const TrackerConfig& cfg,
                                  unsigned threads = 1);

/// Newton refinement of z against `system`. Returns the refined point.
CVector newton_refine(const SystemEvaluator& system, CVector z, unsigned max_iters);

}  // namespace lh
