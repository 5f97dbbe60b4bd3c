#pragma once

#include <Eigen/Core>

#include "docsolve/distkernel.hpp"
#include "docsolve/grid.hpp"

namespace docsolve::fracops {

enum class OperatorKind {
    CaputoLeft,
    RLRight,
    RLIntegralRight,
    DistributedCaputoLeft,
    DistributedRLRight,
    DistributedRLIntegralRight,
};

/// Dense discretization of a fractional operator on a Grid. Left operators
/// are lower triangular (causal in the past), right operators upper
/// triangular (causal in the future). Immutable once built; applying it is
/// a pure matrix-vector product.
struct OperatorMatrix {
    OperatorKind kind;
    Grid grid;
    Eigen::MatrixXd weights; // (N+1) x (N+1)

    SampledFn apply(const SampledFn& v) const
    {
        if (!(v.grid == grid)) throw DomainError("operator and sample grids differ");
        return SampledFn(grid, Eigen::MatrixXd(weights * v.values));
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return weights * v; }
};

/// L1 product-integration scheme for the left Caputo derivative of order
/// alpha in (0, 1). Row 0 is zero (no history at t = a).
OperatorMatrix caputo_left_matrix(double alpha, const Grid& grid);

/// Right Riemann-Liouville derivative of order alpha in (0, 1), built by
/// reflection of the left RL discretization (L1 Caputo plus the lower
/// terminal correction term). At the singular node t = b the correction is
/// evaluated one step in, at distance h.
OperatorMatrix rl_right_matrix(double alpha, const Grid& grid);

/// Right Riemann-Liouville integral of order rho in (0, 1], discretized by
/// product integration against the piecewise-linear interpolant. The value
/// at t = b is exactly zero (empty range).
OperatorMatrix rl_integral_right_matrix(double order, const Grid& grid);

/// Distributed operator: the kernel-weighted sum of single-order matrices
/// (order 1 - alpha_j for the integral kind). A kernel node at alpha = 1
/// uses the classical limits: backward difference for the Caputo kind, its
/// reflection for the RL-right kind, and the identity for the integral kind.
OperatorMatrix distributed_matrix(OperatorKind kind, const DistributionKernel& kernel,
                                  const Grid& grid);

/// Left RL integral of distributed order (reflection of the right-integral
/// matrix); used for the a-side transversality value.
OperatorMatrix distributed_rl_integral_left(const DistributionKernel& kernel, const Grid& grid);

/// Sup-norm, over nodes t_1..t_N, of the defect in the Caputo/RL relation
///   C D^psi x  =  D^psi x - x(a) * int_0^1 psi(alpha) (t-a)^(-alpha) /
///                                   Gamma(1-alpha) d alpha,
/// with the correction integral evaluated on the kernel nodes. Node t_0 is
/// excluded (the correction formula is singular there). The discrete left RL
/// operator is the Caputo matrix plus that same correction column, so the
/// residual measures wiring consistency and sits at roundoff level.
double caputo_rl_relation_residual(const DistributionKernel& kernel, const SampledFn& x);

/// Defect of the integration-by-parts identity
///   int x * CD^psi y dt  =  [y * I^(1-psi) x]_a^b  +  int y * D^psi x dt
/// computed with the module's discrete operators and trapezoid time
/// quadrature. The right-hand integrand is borderline integrable at t = b,
/// so over the trailing tenth of the grid the integral of D^psi x is taken
/// cell-exactly, as differences of the discrete distributed integral, with
/// y at cell midpoints; bare node sampling there would stall convergence.
double integration_by_parts_residual(const DistributionKernel& kernel, const SampledFn& x,
                                     const SampledFn& y);

namespace detail {
/// Left RL derivative matrix (Caputo L1 plus the lower-terminal correction
/// column); building block for rl_right_matrix and the relation residual.
OperatorMatrix rl_left_matrix(double alpha, const Grid& grid);

/// Reverse both time axes of an operator matrix.
Eigen::MatrixXd reflect(const Eigen::MatrixXd& m);
} // namespace detail

} // namespace docsolve::fracops
