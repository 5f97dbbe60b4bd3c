#pragma once

#include "docsolve/distkernel.hpp"
#include "docsolve/fracops.hpp"
#include "docsolve/problem.hpp"

namespace docsolve::fde {

/// March the forward state equation CD^psi x = f(t, x, u), x(a) = x_a. Each
/// step isolates the diagonal L1 coefficient and solves
///   d * x_i - f(t_i, x_i, u_i) = -H_i(x_0..x_{i-1})
/// by damped Newton with the forward-mode Jacobian of f (tolerance 1e-12,
/// at most 50 iterations per step). Only InitialFixed problems march
/// forward. Throws ConvergenceError naming the failing step.
SampledFn solve_forward(const ProblemSpec& p, const DistributionKernel& kernel, const Grid& grid,
                        const SampledFn& control);

/// Same marching applied to the variational equation along `base`:
///   CD^psi eta = (df/dx) eta + (df/du) h,  eta(a) = 0,
/// a linear solve per step.
SampledFn solve_variational(const ProblemSpec& p, const DistributionKernel& kernel,
                            const Grid& grid, const TrajectoryBundle& base,
                            const SampledFn& direction);

/// Composite trapezoid value of L along the bundle.
double evaluate_objective(const ProblemSpec& p, const TrajectoryBundle& bundle);

namespace detail {
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Marching loops on a prebuilt distributed-Caputo matrix; the sweep solver
/// reuses one matrix across iterations through these.
SampledFn march_forward(const ProblemSpec& p, const RowMajorMatrix& op, const Grid& grid,
                        const SampledFn& control);
SampledFn march_variational(const ProblemSpec& p, const RowMajorMatrix& op, const Grid& grid,
                            const TrajectoryBundle& base, const SampledFn& direction);
} // namespace detail

} // namespace docsolve::fde
