#include "docsolve/fde.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace docsolve::fde {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One implicit step: find xi with d*xi - f(t, xi, u) + hist = 0.
Eigen::VectorXd newton_step_solve(const ProblemSpec& p, double t, const Eigen::VectorXd& u,
                                  double diag, const Eigen::VectorXd& hist,
                                  const Eigen::VectorXd& start, int step_index)
{
    constexpr int kMaxIterations = 50;
    constexpr double kTolerance = 1e-12;
    const int n = p.state_dim;
    Eigen::VectorXd xi = start;
    Eigen::VectorXd g = diag * xi - p.eval_dynamics(t, xi, u) + hist;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (g.lpNorm<Eigen::Infinity>() <= kTolerance * std::max(1.0, diag * xi.norm()))
            return xi;
        const Eigen::MatrixXd jac =
            diag * Eigen::MatrixXd::Identity(n, n) - p.dynamics_jac_x(t, xi, u);
        const Eigen::VectorXd delta = jac.partialPivLu().solve(g);
        // damped update: halve until the residual actually drops
        double scale = 1.0;
        for (int half = 0; half < 40; ++half) {
            const Eigen::VectorXd trial = xi - scale * delta;
            const Eigen::VectorXd gt = diag * trial - p.eval_dynamics(t, trial, u) + hist;
            if (gt.lpNorm<Eigen::Infinity>() < g.lpNorm<Eigen::Infinity>() ||
                gt.lpNorm<Eigen::Infinity>() <= kTolerance) {
                xi = trial;
                g = gt;
                scale = -1.0;
                break;
            }
            scale *= 0.5;
        }
        if (scale > 0.0)
            throw ConvergenceError("forward solve: Newton stalled at step " +
                                   std::to_string(step_index));
    }
    if (g.lpNorm<Eigen::Infinity>() <= 1e-9 * std::max(1.0, diag * xi.norm())) return xi;
    throw ConvergenceError("forward solve: Newton did not converge at step " +
                           std::to_string(step_index));
}

} // namespace

SampledFn solve_forward(const ProblemSpec& p, const DistributionKernel& kernel, const Grid& grid,
                        const SampledFn& control)
{
    p.validate();
    if (p.boundary_mode != BoundaryMode::InitialFixed)
        throw DomainError("forward marching requires an initial-value problem");
    if (!(control.grid == grid)) throw DomainError("control must be sampled on the solve grid");
    if (control.dim() != p.control_dim) throw DomainError("control dimension mismatch");

    const auto op = fracops::distributed_matrix(fracops::OperatorKind::DistributedCaputoLeft,
                                                kernel, grid);
    const RowMajorMatrix A = op.weights; // forward sweep walks rows
    const int N = grid.steps;
    const int n = p.state_dim;

    Eigen::MatrixXd x(N + 1, n);
    x.row(0) = p.boundary_value.transpose();
    for (int i = 1; i <= N; ++i) {
        const double t = grid.node(i);
        Eigen::VectorXd hist = Eigen::VectorXd::Zero(n);
        for (int c = 0; c < n; ++c)
            hist[c] = A.row(i).head(i).dot(x.col(c).head(i));
        const Eigen::VectorXd xi = newton_step_solve(p, t, control.values.row(i).transpose(),
                                                     A(i, i), hist, x.row(i - 1).transpose(), i);
        x.row(i) = xi.transpose();
    }
    return SampledFn(grid, std::move(x));
}

SampledFn solve_variational(const ProblemSpec& p, const DistributionKernel& kernel,
                            const Grid& grid, const TrajectoryBundle& base,
                            const SampledFn& direction)
{
    p.validate();
    base.check_dims(p);
    if (!(base.grid == grid) || !(direction.grid == grid))
        throw DomainError("variational solve requires matching grids");
    if (direction.dim() != p.control_dim)
        throw DomainError("perturbation direction dimension mismatch");

    const auto op = fracops::distributed_matrix(fracops::OperatorKind::DistributedCaputoLeft,
                                                kernel, grid);
    const RowMajorMatrix A = op.weights;
    const int N = grid.steps;
    const int n = p.state_dim;

    Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(N + 1, n);
    for (int i = 1; i <= N; ++i) {
        const double t = grid.node(i);
        const Eigen::VectorXd xb = base.state.row(i).transpose();
        const Eigen::VectorXd ub = base.control.row(i).transpose();
        Eigen::VectorXd hist = Eigen::VectorXd::Zero(n);
        for (int c = 0; c < n; ++c)
            hist[c] = A.row(i).head(i).dot(eta.col(c).head(i));
        const Eigen::MatrixXd jac_x = p.dynamics_jac_x(t, xb, ub);
        const Eigen::MatrixXd jac_u = p.dynamics_jac_u(t, xb, ub);
        const Eigen::MatrixXd lhs = A(i, i) * Eigen::MatrixXd::Identity(n, n) - jac_x;
        const Eigen::VectorXd rhs =
            jac_u * direction.values.row(i).transpose() - hist;
        eta.row(i) = lhs.partialPivLu().solve(rhs).transpose();
    }
    return SampledFn(grid, std::move(eta));
}

double evaluate_objective(const ProblemSpec& p, const TrajectoryBundle& bundle)
{
    bundle.check_dims(p);
    const Eigen::VectorXd q = trapezoid_weights(bundle.grid);
    double total = 0.0;
    for (int i = 0; i < bundle.grid.num_nodes(); ++i)
        total += q[i] * p.eval_cost(bundle.grid.node(i), bundle.state.row(i).transpose(),
                                    bundle.control.row(i).transpose());
    return total;
}

} // namespace docsolve::fde
