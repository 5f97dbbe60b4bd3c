#include "docsolve/fracops.hpp"

#include <cmath>
#include <vector>

namespace docsolve::fracops {

namespace {

void require_order_open(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional order must lie in (0, 1)");
}

// Backward-difference matrix: the alpha -> 1 limit of the L1 Caputo scheme.
Eigen::MatrixXd backward_difference(const Grid& grid)
{
    const int n = grid.num_nodes();
    const double h = grid.step();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        m(i, i) = 1.0 / h;
        m(i, i - 1) = -1.0 / h;
    }
    return m;
}

Eigen::MatrixXd caputo_left_weights(double alpha, const Grid& grid)
{
    if (alpha == 1.0) return backward_difference(grid);
    require_order_open(alpha);
    const int N = grid.steps;
    const double h = grid.step();
    const double coef = std::pow(h, -alpha) / std::tgamma(2.0 - alpha);

    // w_d = d^(1-alpha) - (d-1)^(1-alpha) for lag d = i - k
    std::vector<double> lagw(N + 1, 0.0);
    std::vector<double> pw(N + 1, 0.0);
    for (int d = 0; d <= N; ++d) pw[d] = std::pow(static_cast<double>(d), 1.0 - alpha);
    for (int d = 1; d <= N; ++d) lagw[d] = coef * (pw[d] - pw[d - 1]);

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int i = 1; i <= N; ++i) {
        for (int k = 0; k < i; ++k) {
            const double w = lagw[i - k];
            m(i, k + 1) += w;
            m(i, k) -= w;
        }
    }
    return m;
}

Eigen::MatrixXd rl_left_weights(double alpha, const Grid& grid)
{
    if (alpha == 1.0) return backward_difference(grid); // correction has zero weight 1/Gamma(0)
    require_order_open(alpha);
    Eigen::MatrixXd m = caputo_left_weights(alpha, grid);
    const int N = grid.steps;
    const double h = grid.step();
    const double g1 = std::tgamma(1.0 - alpha);
    for (int i = 1; i <= N; ++i) m(i, 0) += std::pow(i * h, -alpha) / g1;
    m(0, 0) += std::pow(h, -alpha) / g1; // singular node: correction one step in
    return m;
}

Eigen::MatrixXd rl_integral_right_weights(double order, const Grid& grid)
{
    if (order == 0.0) return Eigen::MatrixXd::Identity(grid.num_nodes(), grid.num_nodes());
    if (!(order > 0.0 && order <= 1.0))
        throw DomainError("integral order must lie in (0, 1]");
    const int N = grid.steps;
    const double h = grid.step();
    const double g = std::tgamma(order);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int i = 0; i < N; ++i) {
        for (int k = i; k < N; ++k) {
            const double tau0 = (k - i) * h;
            const double tau1 = (k + 1 - i) * h;
            const double m0 = (std::pow(tau1, order) - std::pow(tau0, order)) / order;
            const double m1 = (std::pow(tau1, order + 1.0) - std::pow(tau0, order + 1.0)) /
                                  (order + 1.0) -
                              tau0 * m0;
            m(i, k) += (m0 - m1 / h) / g;
            m(i, k + 1) += (m1 / h) / g;
        }
    }
    return m; // row N stays zero: the integration range is empty at t = b
}

Eigen::MatrixXd single_order_weights(OperatorKind kind, double alpha, const Grid& grid)
{
    switch (kind) {
    case OperatorKind::CaputoLeft:
    case OperatorKind::DistributedCaputoLeft:
        return caputo_left_weights(alpha, grid);
    case OperatorKind::RLRight:
    case OperatorKind::DistributedRLRight:
        return detail::reflect(rl_left_weights(alpha, grid));
    case OperatorKind::RLIntegralRight:
    case OperatorKind::DistributedRLIntegralRight:
        return rl_integral_right_weights(1.0 - alpha, grid);
    }
    throw DomainError("unknown operator kind");
}

Eigen::VectorXd correction_column(const DistributionKernel& kernel, const Grid& grid)
{
    // int_0^1 psi(alpha) (t-a)^(-alpha) / Gamma(1-alpha) d alpha on the
    // kernel nodes; entry 0 is left unset (singular at t = a).
    const int N = grid.steps;
    const double h = grid.step();
    Eigen::VectorXd col = Eigen::VectorXd::Zero(N + 1);
    for (int i = 1; i <= N; ++i) {
        double s = 0.0;
        for (int j = 0; j < kernel.size(); ++j) {
            const double a = kernel.nodes[j];
            if (a == 1.0) continue; // 1/Gamma(0) = 0
            s += kernel.weights[j] * std::pow(i * h, -a) / std::tgamma(1.0 - a);
        }
        col[i] = s;
    }
    return col;
}

} // namespace

namespace detail {

Eigen::MatrixXd reflect(const Eigen::MatrixXd& m)
{
    return m.reverse(); // both axes
}

OperatorMatrix rl_left_matrix(double alpha, const Grid& grid)
{
    return {OperatorKind::CaputoLeft, grid, rl_left_weights(alpha, grid)};
}

} // namespace detail

OperatorMatrix caputo_left_matrix(double alpha, const Grid& grid)
{
    require_order_open(alpha);
    return {OperatorKind::CaputoLeft, grid, caputo_left_weights(alpha, grid)};
}

OperatorMatrix rl_right_matrix(double alpha, const Grid& grid)
{
    require_order_open(alpha);
    return {OperatorKind::RLRight, grid, detail::reflect(rl_left_weights(alpha, grid))};
}

OperatorMatrix rl_integral_right_matrix(double order, const Grid& grid)
{
    if (!(order > 0.0 && order <= 1.0))
        throw DomainError("integral order must lie in (0, 1]");
    return {OperatorKind::RLIntegralRight, grid, rl_integral_right_weights(order, grid)};
}

OperatorMatrix distributed_matrix(OperatorKind kind, const DistributionKernel& kernel,
                                  const Grid& grid)
{
    if (kind != OperatorKind::DistributedCaputoLeft && kind != OperatorKind::DistributedRLRight &&
        kind != OperatorKind::DistributedRLIntegralRight)
        throw DomainError("distributed_matrix requires a distributed operator kind");
    const int n = grid.num_nodes();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < kernel.size(); ++j) { // fixed node order keeps results deterministic
        const auto idx = static_cast<std::size_t>(j);
        sum += kernel.weights[idx] * single_order_weights(kind, kernel.nodes[idx], grid);
    }
    return {kind, grid, std::move(sum)};
}

OperatorMatrix distributed_rl_integral_left(const DistributionKernel& kernel, const Grid& grid)
{
    OperatorMatrix right = distributed_matrix(OperatorKind::DistributedRLIntegralRight, kernel, grid);
    right.weights = detail::reflect(right.weights);
    return right;
}

double caputo_rl_relation_residual(const DistributionKernel& kernel, const SampledFn& x)
{
    const Grid& grid = x.grid;
    const OperatorMatrix caputo = distributed_matrix(OperatorKind::DistributedCaputoLeft, kernel, grid);

    Eigen::MatrixXd rl_weights = Eigen::MatrixXd::Zero(grid.num_nodes(), grid.num_nodes());
    for (int j = 0; j < kernel.size(); ++j)
        rl_weights += kernel.weights[static_cast<std::size_t>(j)] *
                      rl_left_weights(kernel.nodes[static_cast<std::size_t>(j)], grid);

    const Eigen::VectorXd corr = correction_column(kernel, grid);
    double sup = 0.0;
    for (int c = 0; c < x.dim(); ++c) {
        const Eigen::VectorXd v = x.values.col(c);
        const Eigen::VectorXd lhs = caputo.weights * v;
        const Eigen::VectorXd rhs = rl_weights * v - v[0] * corr;
        for (int i = 1; i <= grid.steps; ++i) sup = std::max(sup, std::fabs(lhs[i] - rhs[i]));
    }
    return sup;
}

double integration_by_parts_residual(const DistributionKernel& kernel, const SampledFn& x,
                                     const SampledFn& y)
{
    if (!(x.grid == y.grid)) throw DomainError("integration_by_parts_residual grids differ");
    if (x.dim() != y.dim()) throw DomainError("integration_by_parts_residual dimensions differ");
    const Grid& grid = x.grid;
    const int N = grid.steps;
    const double h = grid.step();

    const OperatorMatrix A = distributed_matrix(OperatorKind::DistributedCaputoLeft, kernel, grid);
    const OperatorMatrix B = distributed_matrix(OperatorKind::DistributedRLRight, kernel, grid);
    const OperatorMatrix I = distributed_matrix(OperatorKind::DistributedRLIntegralRight, kernel, grid);
    const Eigen::VectorXd q = trapezoid_weights(grid);

    const int tail = std::max(1, N / 10); // cell-exact zone against the t = b singularity
    const int m = N - tail;

    double worst = 0.0;
    for (int c = 0; c < x.dim(); ++c) {
        const Eigen::VectorXd xv = x.values.col(c);
        const Eigen::VectorXd yv = y.values.col(c);
        const Eigen::VectorXd Ay = A.weights * yv;
        const Eigen::VectorXd Bx = B.weights * xv;
        const Eigen::VectorXd Ix = I.weights * xv;

        const double t1 = q.dot(xv.cwiseProduct(Ay));
        const double t2 = yv[N] * Ix[N] - yv[0] * Ix[0];

        double t3 = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double w = (i == 0 || i == m) ? h / 2.0 : h;
            t3 += w * yv[i] * Bx[i];
        }
        for (int j = m; j < N; ++j)
            t3 += 0.5 * (yv[j] + yv[j + 1]) * (Ix[j] - Ix[j + 1]);

        worst = std::max(worst, std::fabs(t1 - t2 - t3));
    }
    return worst;
}

} // namespace docsolve::fracops
