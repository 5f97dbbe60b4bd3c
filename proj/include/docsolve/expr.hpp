#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "docsolve/errors.hpp"

namespace docsolve {

/// Variable bindings for expression evaluation: a small flat name -> value
/// map. Function names (sin, cos, exp, ln, sqrt, pow, abs, gamma) cannot be
/// bound as variables.
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<std::string, double>> init);

    void set(std::string_view name, double value);
    double get(std::string_view name) const; // throws DomainError if unbound
    bool has(std::string_view name) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
};

/// Immutable arithmetic expression over named real variables.
///
/// Grammar (documented in the README): numeric literals, variables, unary
/// minus, binary + - * / ^ with standard precedence (power binds tighter
/// than unary minus; power is right-associative, the rest left), calls to
/// sin, cos, exp, ln, sqrt, abs, gamma (unary) and pow (binary). No implicit
/// multiplication.
///
/// Expr values are immutable after parsing and safe to share across threads;
/// evaluation is pure and reentrant.
class Expr {
public:
    enum class NodeKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

    struct Node {
        NodeKind kind;
        double number = 0.0;     // Number
        std::string name;        // Variable, Call
        std::vector<Node> args;  // operands / call arguments
    };

    /// Parse `source`; throws ParseError with byte offset on malformed input.
    static Expr parse(std::string_view source);

    /// Evaluate with all variables bound; throws DomainError on unbound
    /// variables or mathematical domain violations.
    double eval(const Bindings& b) const;

    /// Exact forward-mode partial derivatives (dual numbers), one evaluation
    /// pass per requested variable.
    Eigen::VectorXd partials(const std::vector<std::string>& wrt, const Bindings& b) const;

    /// Second-derivative block over `vars` by central finite differences of
    /// the forward-mode gradient, symmetrized as (H + H^T)/2. The step for
    /// coordinate v is `step_scale * max(1, |v|)`.
    Eigen::MatrixXd hessian(const std::vector<std::string>& vars, const Bindings& b,
                            double step_scale = 1e-4) const;

    /// Variables appearing in the expression, sorted, without duplicates.
    std::vector<std::string> variables() const;

    /// True if any abs() call appears; such expressions are refused by the
    /// smooth-concavity checks instead of silently differentiating a kink.
    bool contains_abs() const;

    /// Render back to parseable text; parse(unparse()) reproduces the tree.
    std::string unparse() const;

    const Node& root() const { return root_; }

private:
    explicit Expr(Node root) : root_(std::move(root)) {}
    Node root_;
};

/// True if `name` is one of the built-in function names.
bool is_function_name(std::string_view name);

} // namespace docsolve
