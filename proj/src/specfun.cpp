#include "docsolve/specfun.hpp"

#include <cmath>
#include <limits>

#include "docsolve/errors.hpp"

namespace docsolve::specfun {

namespace {

bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && x == std::floor(x);
}

// sign of Gamma(x): negative exactly on (-1,0), (-3,-2), ... for non-integer x
double gamma_sign(double x)
{
    if (x > 0.0) return 1.0;
    const double k = std::floor(x);
    return (static_cast<long long>(k) % 2 == 0) ? 1.0 : -1.0;
}

} // namespace

double gamma(double x)
{
    if (is_nonpositive_integer(x))
        throw DomainError("gamma pole at non-positive integer " + std::to_string(x));
    return std::tgamma(x);
}

double log_gamma(double x)
{
    if (x <= 0.0) throw DomainError("log_gamma requires a positive argument");
    return std::lgamma(x);
}

double digamma(double x)
{
    if (is_nonpositive_integer(x))
        throw DomainError("digamma pole at non-positive integer " + std::to_string(x));
    if (x < 0.0) {
        // reflection: psi(x) = psi(1-x) - pi*cot(pi*x)
        const double pi = 3.14159265358979323846;
        return digamma(1.0 - x) - pi / std::tan(pi * x);
    }
    double result = 0.0;
    while (x < 6.0) { // recurrence psi(x) = psi(x+1) - 1/x
        result -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series, |error| < 1e-14 for x >= 6
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
            - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    return result;
}

double mittag_leffler(double alpha, double beta, double z)
{
    if (!(alpha > 0.0)) throw DomainError("mittag_leffler requires alpha > 0");
    if (alpha >= 0.3 && std::fabs(z) > 50.0)
        throw DomainError("mittag_leffler direct series limited to |z| <= 50 for alpha >= 0.3");

    constexpr int kMaxTerms = 10000;
    double sum = 0.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double arg = alpha * k + beta;
        double term;
        if (is_nonpositive_integer(arg)) {
            term = 0.0; // 1/Gamma vanishes at the poles
        } else if (k == 0 || z == 0.0) {
            term = (k == 0) ? gamma_sign(arg) * std::exp(-std::lgamma(arg)) : 0.0;
        } else {
            // z^k / Gamma(arg) via logs; lgamma returns log|Gamma|
            double t = std::exp(k * std::log(std::fabs(z)) - std::lgamma(arg)) * gamma_sign(arg);
            if (z < 0.0 && (k % 2 == 1)) t = -t;
            term = t;
        }
        sum += term;
        if (!std::isfinite(sum)) throw ConvergenceError("mittag_leffler series overflow");
        if (z == 0.0 && k > 0) return sum;
        if (k > 0 && std::fabs(term) < 1e-16 * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("mittag_leffler series did not converge within 10000 terms");
}

GronwallEnvelope gronwall_envelope(const SampledFn& a_fn, const SampledFn& b_fn,
                                   double alpha, const Grid& grid)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("gronwall_envelope requires alpha in (0, 1]");
    if (!(a_fn.grid == grid) || !(b_fn.grid == grid))
        throw DomainError("gronwall_envelope inputs must share the target grid");
    const Eigen::VectorXd a = a_fn.column();
    const Eigen::VectorXd b = b_fn.column();
    const int n = grid.num_nodes();
    for (int i = 0; i < n; ++i) {
        if (a[i] < 0.0 || b[i] < 0.0)
            throw DomainError("gronwall_envelope requires non-negative a and b");
        if (i > 0 && b[i] < b[i - 1] - 1e-14 * std::fabs(b[i - 1]))
            throw DomainError("gronwall_envelope requires monotone non-decreasing b");
    }

    const double h = grid.step();
    const double ga = std::tgamma(alpha);
    GronwallEnvelope env;
    env.grid = grid;
    env.values = a;
    env.truncation_index = 0;

    constexpr int kMaxSeries = 400;
    for (int i = 1; i < grid.num_nodes(); ++i) {
        if (b[i] == 0.0) continue;
        const double ti = i * h; // measured from the grid origin
        double total = a[i];
        for (int nn = 1; nn <= kMaxSeries; ++nn) {
            const double na = nn * alpha;
            // coefficient (b(t_i) Gamma(alpha))^n / Gamma(n alpha), via logs
            const double logc = nn * std::log(b[i] * ga) - std::lgamma(na);
            const double coef = std::exp(logc);
            // integral of (t_i - s)^(n alpha - 1) against a(s), kernel exact
            // per cell: cell k covers s in [k h, (k+1) h]
            double inner = 0.0;
            for (int k = 0; k < i; ++k) {
                const double d1 = ti - k * h;
                const double d0 = ti - (k + 1) * h;
                const double mass = (std::pow(d1, na) - std::pow(d0, na)) / na;
                const double aval = (k == i - 1) ? std::max(a[k], a[k + 1])
                                                 : 0.5 * (a[k] + a[k + 1]);
                inner += mass * aval;
            }
            const double contrib = coef * inner;
            total += contrib;
            if (nn > env.truncation_index) env.truncation_index = nn;
            if (std::fabs(contrib) <= 1e-12 * std::fabs(total)) break;
            if (nn == kMaxSeries)
                throw ConvergenceError("gronwall_envelope kernel series did not converge");
        }
        env.values[i] = total;
    }
    return env;
}

} // namespace docsolve::specfun
