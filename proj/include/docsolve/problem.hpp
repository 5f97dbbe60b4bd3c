#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "docsolve/expr.hpp"
#include "docsolve/grid.hpp"

namespace docsolve {

enum class BoundaryMode { InitialFixed, TerminalFixed, Free };

/// One instance of the basic distributed-order optimal control problem:
/// maximize J = int_a^b L(t, x, u) dt subject to the distributed Caputo
/// dynamics CD^psi x = f(t, x, u) and the selected boundary data.
///
/// Expressions may reference t, x1..xn, u1..um; x and u alias x1 and u1 when
/// the corresponding dimension is one. psi references alpha only.
struct ProblemSpec {
    Expr running_cost;          // L(t, x, u)
    std::vector<Expr> dynamics; // f_1..f_n
    Expr order_weight;          // psi(alpha)
    double t_start = 0.0;
    double t_end = 1.0;
    int state_dim = 1;
    int control_dim = 1;
    BoundaryMode boundary_mode = BoundaryMode::InitialFixed;
    Eigen::VectorXd boundary_value; // x_a (InitialFixed) or x_b (TerminalFixed); unused for Free

    /// Optional analytic reference triple for testing, as expressions of t.
    struct Reference {
        std::vector<Expr> state;
        std::vector<Expr> control;
        std::vector<Expr> adjoint;
    };
    std::optional<Reference> reference;

    void validate() const;

    std::vector<std::string> state_names() const;   // x1..xn
    std::vector<std::string> control_names() const; // u1..um

    /// Bind t plus the state/control vectors (including the x/u aliases when
    /// the dimensions are one) into `b`.
    void bind_point(Bindings& b, double t, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& u) const;

    Eigen::VectorXd eval_dynamics(double t, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& u) const;
    double eval_cost(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

    Eigen::VectorXd cost_grad_x(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
    Eigen::VectorXd cost_grad_u(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
    /// Jacobians of f: rows index the f components.
    Eigen::MatrixXd dynamics_jac_x(double t, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& u) const;
    Eigen::MatrixXd dynamics_jac_u(double t, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& u) const;
};

/// A candidate solution: sampled state, control, and (once a solver has
/// produced it) adjoint, plus the objective value when evaluated. Matrices
/// hold one row per grid node.
struct TrajectoryBundle {
    Grid grid;
    Eigen::MatrixXd state;   // (N+1) x n
    Eigen::MatrixXd control; // (N+1) x m
    std::optional<Eigen::MatrixXd> adjoint; // (N+1) x n
    std::optional<double> objective;

    void check_dims(const ProblemSpec& p) const;
};

} // namespace docsolve
