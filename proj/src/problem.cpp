#include "docsolve/problem.hpp"

#include <algorithm>

namespace docsolve {

namespace {

std::vector<std::string> indexed_names(const std::string& base, int count)
{
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) names.push_back(base + std::to_string(i));
    return names;
}

} // namespace

void ProblemSpec::validate() const
{
    if (state_dim < 1 || control_dim < 1)
        throw DomainError("state and control dimensions must be at least 1");
    if (control_dim > state_dim)
        throw DomainError("problems here take m <= n (control dimension at most state dimension)");
    if (!(t_end > t_start)) throw DomainError("time interval requires b > a");
    if (static_cast<int>(dynamics.size()) != state_dim)
        throw DomainError("dynamics must supply one expression per state component");
    if (boundary_mode != BoundaryMode::Free) {
        if (boundary_value.size() != state_dim)
            throw DomainError("boundary value dimension does not match the state dimension");
        if (!boundary_value.allFinite()) throw DomainError("boundary values must be finite");
    }

    // legal variable names: t plus the state/control components (and aliases)
    std::vector<std::string> legal{"t"};
    for (const auto& v : state_names()) legal.push_back(v);
    for (const auto& v : control_names()) legal.push_back(v);
    if (state_dim == 1) legal.emplace_back("x");
    if (control_dim == 1) legal.emplace_back("u");
    const auto check_vars = [&](const Expr& e, const std::string& what) {
        for (const auto& v : e.variables())
            if (std::find(legal.begin(), legal.end(), v) == legal.end())
                throw DomainError(what + " references unknown variable '" + v + "'");
    };
    check_vars(running_cost, "running cost");
    for (const auto& f : dynamics) check_vars(f, "dynamics");
    for (const auto& v : order_weight.variables())
        if (v != "alpha") throw DomainError("order distribution may reference alpha only");
}

std::vector<std::string> ProblemSpec::state_names() const
{
    return indexed_names("x", state_dim);
}

std::vector<std::string> ProblemSpec::control_names() const
{
    return indexed_names("u", control_dim);
}

void ProblemSpec::bind_point(Bindings& b, double t, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& u) const
{
    b.set("t", t);
    for (int i = 0; i < state_dim; ++i) b.set("x" + std::to_string(i + 1), x[i]);
    for (int i = 0; i < control_dim; ++i) b.set("u" + std::to_string(i + 1), u[i]);
    if (state_dim == 1) b.set("x", x[0]);
    if (control_dim == 1) b.set("u", u[0]);
}

Eigen::VectorXd ProblemSpec::eval_dynamics(double t, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    Eigen::VectorXd out(state_dim);
    for (int i = 0; i < state_dim; ++i) out[i] = dynamics[static_cast<std::size_t>(i)].eval(b);
    return out;
}

double ProblemSpec::eval_cost(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    return running_cost.eval(b);
}

namespace {

// component names including the scalar alias: differentiating w.r.t. x must
// also seed x when n == 1 and the expression says plain "x"
std::vector<std::string> seed_names(const std::string& base, int count)
{
    std::vector<std::string> names = indexed_names(base, count);
    return names;
}

} // namespace

Eigen::VectorXd ProblemSpec::cost_grad_x(double t, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    Eigen::VectorXd g = running_cost.partials(seed_names("x", state_dim), b);
    if (state_dim == 1) g[0] += running_cost.partials({"x"}, b)[0];
    return g;
}

Eigen::VectorXd ProblemSpec::cost_grad_u(double t, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    Eigen::VectorXd g = running_cost.partials(seed_names("u", control_dim), b);
    if (control_dim == 1) g[0] += running_cost.partials({"u"}, b)[0];
    return g;
}

Eigen::MatrixXd ProblemSpec::dynamics_jac_x(double t, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    const auto names = seed_names("x", state_dim);
    Eigen::MatrixXd jac(state_dim, state_dim);
    for (int i = 0; i < state_dim; ++i) {
        Eigen::VectorXd row = dynamics[static_cast<std::size_t>(i)].partials(names, b);
        if (state_dim == 1) row[0] += dynamics[static_cast<std::size_t>(i)].partials({"x"}, b)[0];
        jac.row(i) = row.transpose();
    }
    return jac;
}

Eigen::MatrixXd ProblemSpec::dynamics_jac_u(double t, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& u) const
{
    Bindings b;
    bind_point(b, t, x, u);
    const auto names = seed_names("u", control_dim);
    Eigen::MatrixXd jac(state_dim, control_dim);
    for (int i = 0; i < state_dim; ++i) {
        Eigen::VectorXd row = dynamics[static_cast<std::size_t>(i)].partials(names, b);
        if (control_dim == 1) row[0] += dynamics[static_cast<std::size_t>(i)].partials({"u"}, b)[0];
        jac.row(i) = row.transpose();
    }
    return jac;
}

void TrajectoryBundle::check_dims(const ProblemSpec& p) const
{
    if (state.rows() != grid.num_nodes() || state.cols() != p.state_dim)
        throw DomainError("trajectory state block has wrong shape");
    if (control.rows() != grid.num_nodes() || control.cols() != p.control_dim)
        throw DomainError("trajectory control block has wrong shape");
    if (adjoint && (adjoint->rows() != grid.num_nodes() || adjoint->cols() != p.state_dim))
        throw DomainError("trajectory adjoint block has wrong shape");
}

} // namespace docsolve
