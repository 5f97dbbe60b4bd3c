#pragma once

#include <functional>

#include <Eigen/Core>

#include "docsolve/errors.hpp"

namespace docsolve {

/// Uniform time mesh on [a, b] with N+1 nodes t_i = a + i*h, h = (b-a)/N.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int steps = 2; // N

    Grid() = default;
    Grid(double a_, double b_, int steps_) : a(a_), b(b_), steps(steps_)
    {
        if (!(b > a)) throw DomainError("grid requires b > a");
        if (steps < 2) throw DomainError("grid requires at least 2 steps");
    }

    double step() const { return (b - a) / steps; }
    int num_nodes() const { return steps + 1; }
    double node(int i) const { return a + i * step(); }

    Eigen::VectorXd nodes() const
    {
        Eigen::VectorXd t(num_nodes());
        for (int i = 0; i <= steps; ++i) t[i] = node(i);
        return t;
    }

    bool operator==(const Grid& o) const { return a == o.a && b == o.b && steps == o.steps; }
};

/// Function sampled on a Grid. Values are stored one row per node, one
/// column per component (d columns).
struct SampledFn {
    Grid grid;
    Eigen::MatrixXd values; // (N+1) x d

    SampledFn() = default;

    SampledFn(Grid g, Eigen::MatrixXd v) : grid(g), values(std::move(v))
    {
        if (values.rows() != grid.num_nodes())
            throw DomainError("sampled function has wrong node count");
        if (!values.allFinite()) throw DomainError("sampled function contains non-finite values");
    }

    SampledFn(Grid g, const Eigen::VectorXd& v) : SampledFn(g, Eigen::MatrixXd(v)) {}

    /// Sample a scalar callable at the grid nodes.
    static SampledFn sample(const Grid& g, const std::function<double(double)>& f)
    {
        Eigen::VectorXd v(g.num_nodes());
        for (int i = 0; i < g.num_nodes(); ++i) v[i] = f(g.node(i));
        return SampledFn(g, v);
    }

    int dim() const { return static_cast<int>(values.cols()); }
    Eigen::VectorXd column() const
    {
        if (dim() != 1) throw DomainError("expected a scalar sampled function");
        return values.col(0);
    }
};

/// Composite trapezoid weights for the grid: h/2 at the ends, h inside.
inline Eigen::VectorXd trapezoid_weights(const Grid& g)
{
    const double h = g.step();
    Eigen::VectorXd q = Eigen::VectorXd::Constant(g.num_nodes(), h);
    q[0] = q[g.steps] = h / 2.0;
    return q;
}

} // namespace docsolve
