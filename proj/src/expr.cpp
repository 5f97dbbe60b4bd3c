#include "docsolve/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "docsolve/dual.hpp"
#include "docsolve/specfun.hpp"

namespace docsolve {

namespace {

struct FunctionInfo {
    std::string_view name;
    int arity;
};

constexpr std::array<FunctionInfo, 8> kFunctions = {{
    {"sin", 1}, {"cos", 1}, {"exp", 1}, {"ln", 1},
    {"sqrt", 1}, {"abs", 1}, {"gamma", 1}, {"pow", 2},
}};

const FunctionInfo* find_function(std::string_view name)
{
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Scanner
// ---------------------------------------------------------------------------

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokKind kind;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take()
    {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        current_.offset = pos_;
        current_.text.clear();
        if (pos_ >= src_.size()) {
            current_.kind = TokKind::End;
            return;
        }
        const char c = src_[pos_];
        switch (c) {
        case '+': current_.kind = TokKind::Plus; ++pos_; return;
        case '-': current_.kind = TokKind::Minus; ++pos_; return;
        case '*': current_.kind = TokKind::Star; ++pos_; return;
        case '/': current_.kind = TokKind::Slash; ++pos_; return;
        case '^': current_.kind = TokKind::Caret; ++pos_; return;
        case '(': current_.kind = TokKind::LParen; ++pos_; return;
        case ')': current_.kind = TokKind::RParen; ++pos_; return;
        case ',': current_.kind = TokKind::Comma; ++pos_; return;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            scan_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            current_.kind = TokKind::Ident;
            current_.text.assign(src_.substr(start, pos_ - start));
            return;
        }
        throw ParseError(pos_, "a number, variable, function, or operator");
    }

    void scan_number()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // 'e' belongs to a following identifier, not this literal
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw ParseError(start, "digits in numeric literal");
        current_.kind = TokKind::Number;
        current_.number = std::strtod(text.c_str(), nullptr);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token current_;
};

// ---------------------------------------------------------------------------
// Recursive-descent parser
//   expr   := term  (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          (right-associative)
//   atom   := number | ident | ident '(' expr {',' expr} ')' | '(' expr ')'
// ---------------------------------------------------------------------------

using Node = Expr::Node;
using NodeKind = Expr::NodeKind;

Node make_binary(NodeKind kind, Node lhs, Node rhs)
{
    Node n;
    n.kind = kind;
    n.args.push_back(std::move(lhs));
    n.args.push_back(std::move(rhs));
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : scan_(src) {}

    Node parse()
    {
        Node n = parse_expr();
        if (scan_.peek().kind != TokKind::End)
            throw ParseError(scan_.peek().offset, "end of input or an operator");
        return n;
    }

private:
    Node parse_expr()
    {
        Node lhs = parse_term();
        for (;;) {
            const TokKind k = scan_.peek().kind;
            if (k != TokKind::Plus && k != TokKind::Minus) return lhs;
            scan_.take();
            Node rhs = parse_term();
            lhs = make_binary(k == TokKind::Plus ? NodeKind::Add : NodeKind::Sub,
                              std::move(lhs), std::move(rhs));
        }
    }

    Node parse_term()
    {
        Node lhs = parse_unary();
        for (;;) {
            const TokKind k = scan_.peek().kind;
            if (k != TokKind::Star && k != TokKind::Slash) return lhs;
            scan_.take();
            Node rhs = parse_unary();
            lhs = make_binary(k == TokKind::Star ? NodeKind::Mul : NodeKind::Div,
                              std::move(lhs), std::move(rhs));
        }
    }

    Node parse_unary()
    {
        if (scan_.peek().kind == TokKind::Minus) {
            scan_.take();
            Node n;
            n.kind = NodeKind::Negate;
            n.args.push_back(parse_unary());
            return n;
        }
        return parse_power();
    }

    Node parse_power()
    {
        Node base = parse_atom();
        if (scan_.peek().kind == TokKind::Caret) {
            scan_.take();
            Node exponent = parse_unary();
            return make_binary(NodeKind::Pow, std::move(base), std::move(exponent));
        }
        return base;
    }

    Node parse_atom()
    {
        const Token t = scan_.take();
        switch (t.kind) {
        case TokKind::Number: {
            Node n;
            n.kind = NodeKind::Number;
            n.number = t.number;
            return n;
        }
        case TokKind::LParen: {
            Node inner = parse_expr();
            expect(TokKind::RParen, "')'");
            return inner;
        }
        case TokKind::Ident: {
            const FunctionInfo* fn = find_function(t.text);
            if (fn) {
                if (scan_.peek().kind != TokKind::LParen)
                    throw ParseError(scan_.peek().offset,
                                     "'(' after function name '" + t.text + "'");
                scan_.take();
                Node n;
                n.kind = NodeKind::Call;
                n.name = t.text;
                n.args.push_back(parse_expr());
                while (scan_.peek().kind == TokKind::Comma) {
                    scan_.take();
                    n.args.push_back(parse_expr());
                }
                expect(TokKind::RParen, "')'");
                if (static_cast<int>(n.args.size()) != fn->arity)
                    throw ParseError(t.offset, "'" + t.text + "' with " +
                                     std::to_string(fn->arity) + " argument(s)");
                return n;
            }
            Node n;
            n.kind = NodeKind::Variable;
            n.name = t.text;
            return n;
        }
        default:
            throw ParseError(t.offset, "a number, variable, function call, or '('");
        }
    }

    void expect(TokKind kind, const std::string& what)
    {
        if (scan_.peek().kind != kind) throw ParseError(scan_.peek().offset, what);
        scan_.take();
    }

    Scanner scan_;
};

// ---------------------------------------------------------------------------
// Evaluation, shared between double and Dual scalars
// ---------------------------------------------------------------------------

inline double call_fn(const std::string& name, const std::vector<double>& a)
{
    if (name == "sin") return std::sin(a[0]);
    if (name == "cos") return std::cos(a[0]);
    if (name == "exp") return std::exp(a[0]);
    if (name == "ln") {
        if (a[0] <= 0.0) throw DomainError("ln of non-positive argument");
        return std::log(a[0]);
    }
    if (name == "sqrt") {
        if (a[0] < 0.0) throw DomainError("sqrt of negative argument");
        return std::sqrt(a[0]);
    }
    if (name == "abs") return std::fabs(a[0]);
    if (name == "gamma") return specfun::gamma(a[0]);
    // pow
    if (a[0] < 0.0 && !is_integer(a[1]))
        throw DomainError("negative base requires an integer exponent");
    if (a[0] == 0.0 && a[1] < 0.0) throw DomainError("zero raised to a negative power");
    return std::pow(a[0], a[1]);
}

inline Dual call_fn(const std::string& name, const std::vector<Dual>& a)
{
    if (name == "sin") return sin(a[0]);
    if (name == "cos") return cos(a[0]);
    if (name == "exp") return exp(a[0]);
    if (name == "ln") return ln(a[0]);
    if (name == "sqrt") return sqrt(a[0]);
    if (name == "abs") return abs(a[0]);
    if (name == "gamma") {
        const double g = specfun::gamma(a[0].val);
        return {g, g * specfun::digamma(a[0].val) * a[0].der};
    }
    return pow(a[0], a[1]);
}

template <typename Scalar, typename VarLookup>
Scalar eval_node(const Node& n, const VarLookup& lookup)
{
    switch (n.kind) {
    case NodeKind::Number: return Scalar(n.number);
    case NodeKind::Variable: return lookup(n.name);
    case NodeKind::Negate: return -eval_node<Scalar>(n.args[0], lookup);
    case NodeKind::Add:
        return eval_node<Scalar>(n.args[0], lookup) + eval_node<Scalar>(n.args[1], lookup);
    case NodeKind::Sub:
        return eval_node<Scalar>(n.args[0], lookup) - eval_node<Scalar>(n.args[1], lookup);
    case NodeKind::Mul:
        return eval_node<Scalar>(n.args[0], lookup) * eval_node<Scalar>(n.args[1], lookup);
    case NodeKind::Div:
        return eval_node<Scalar>(n.args[0], lookup) / eval_node<Scalar>(n.args[1], lookup);
    case NodeKind::Pow: {
        if constexpr (std::is_same_v<Scalar, double>) {
            std::vector<double> a{eval_node<double>(n.args[0], lookup),
                                  eval_node<double>(n.args[1], lookup)};
            return call_fn("pow", a);
        } else {
            return pow(eval_node<Scalar>(n.args[0], lookup),
                       eval_node<Scalar>(n.args[1], lookup));
        }
    }
    case NodeKind::Call: {
        std::vector<Scalar> args;
        args.reserve(n.args.size());
        for (const Node& arg : n.args) args.push_back(eval_node<Scalar>(arg, lookup));
        return call_fn(n.name, args);
    }
    }
    throw Error("corrupt expression node");
}

int precedence(NodeKind k)
{
    switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
    }
}

void unparse_node(const Node& n, std::string& out)
{
    const auto child = [&](const Node& c, bool needs_parens) {
        if (needs_parens) out += '(';
        unparse_node(c, out);
        if (needs_parens) out += ')';
    };
    switch (n.kind) {
    case NodeKind::Number: {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", n.number);
        out += buf;
        return;
    }
    case NodeKind::Variable: out += n.name; return;
    case NodeKind::Negate:
        out += '-';
        child(n.args[0], precedence(n.args[0].kind) < precedence(NodeKind::Negate));
        return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
        const char* op = n.kind == NodeKind::Add ? "+"
                       : n.kind == NodeKind::Sub ? "-"
                       : n.kind == NodeKind::Mul ? "*" : "/";
        const int p = precedence(n.kind);
        child(n.args[0], precedence(n.args[0].kind) < p);
        out += op;
        // left-associative: an equal-precedence right operand keeps its parens
        // so the reparse reproduces the tree shape
        child(n.args[1], precedence(n.args[1].kind) <= p);
        return;
    }
    case NodeKind::Pow:
        child(n.args[0], precedence(n.args[0].kind) <= precedence(NodeKind::Pow));
        out += '^';
        // exponent grammar slot is `unary`, so Negate and Pow stand bare
        child(n.args[1], precedence(n.args[1].kind) < precedence(NodeKind::Negate));
        return;
    case NodeKind::Call:
        out += n.name;
        out += '(';
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ',';
            unparse_node(n.args[i], out);
        }
        out += ')';
        return;
    }
}

void collect_variables(const Node& n, std::vector<std::string>& out)
{
    if (n.kind == NodeKind::Variable) out.push_back(n.name);
    for (const Node& c : n.args) collect_variables(c, out);
}

bool node_contains_abs(const Node& n)
{
    if (n.kind == NodeKind::Call && n.name == "abs") return true;
    return std::any_of(n.args.begin(), n.args.end(), node_contains_abs);
}

} // namespace

// ---------------------------------------------------------------------------
// Bindings
// ---------------------------------------------------------------------------

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init)
{
    for (const auto& [k, v] : init) set(k, v);
}

void Bindings::set(std::string_view name, double value)
{
    if (is_function_name(name))
        throw DomainError("cannot bind function name '" + std::string(name) + "' as a variable");
    for (auto& [k, v] : entries_) {
        if (k == name) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(std::string(name), value);
}

double Bindings::get(std::string_view name) const
{
    for (const auto& [k, v] : entries_)
        if (k == name) return v;
    throw DomainError("unbound variable '" + std::string(name) + "'");
}

bool Bindings::has(std::string_view name) const
{
    for (const auto& [k, v] : entries_)
        if (k == name) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Expr
// ---------------------------------------------------------------------------

bool is_function_name(std::string_view name) { return find_function(name) != nullptr; }

Expr Expr::parse(std::string_view source)
{
    if (source.empty()) throw ParseError(0, "a non-empty expression");
    Parser p(source);
    return Expr(p.parse());
}

double Expr::eval(const Bindings& b) const
{
    return eval_node<double>(root_, [&](const std::string& name) { return b.get(name); });
}

Eigen::VectorXd Expr::partials(const std::vector<std::string>& wrt, const Bindings& b) const
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(wrt.size()));
    for (std::size_t i = 0; i < wrt.size(); ++i) {
        const std::string& seed = wrt[i];
        const Dual d = eval_node<Dual>(root_, [&](const std::string& name) {
            return Dual(b.get(name), name == seed ? 1.0 : 0.0);
        });
        out[static_cast<Eigen::Index>(i)] = d.der;
    }
    return out;
}

Eigen::MatrixXd Expr::hessian(const std::vector<std::string>& vars, const Bindings& b,
                              double step_scale) const
{
    const auto d = static_cast<Eigen::Index>(vars.size());
    Eigen::MatrixXd H(d, d);
    Bindings work = b;
    for (Eigen::Index j = 0; j < d; ++j) {
        const std::string& vj = vars[static_cast<std::size_t>(j)];
        const double center = b.get(vj);
        const double h = step_scale * std::max(1.0, std::fabs(center));
        work.set(vj, center + h);
        const Eigen::VectorXd gp = partials(vars, work);
        work.set(vj, center - h);
        const Eigen::VectorXd gm = partials(vars, work);
        work.set(vj, center);
        H.col(j) = (gp - gm) / (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
}

std::vector<std::string> Expr::variables() const
{
    std::vector<std::string> v;
    collect_variables(root_, v);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool Expr::contains_abs() const { return node_contains_abs(root_); }

std::string Expr::unparse() const
{
    std::string out;
    unparse_node(root_, out);
    return out;
}

} // namespace docsolve
