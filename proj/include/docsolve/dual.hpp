#pragma once

#include <cmath>

#include "docsolve/errors.hpp"

namespace docsolve {

// First-order dual number: value plus a single derivative channel.
// f(a + eps a') = f(a) + eps a' f'(a).
struct Dual {
    double val = 0.0;
    double der = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double v, double d = 0.0) : val(v), der(d) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.der + b.der}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.der - b.der}; }
constexpr Dual operator-(Dual a) { return {-a.val, -a.der}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.val * b.val, a.val * b.der + a.der * b.val}; }

inline Dual operator/(Dual a, Dual b)
{
    if (b.val == 0.0) throw DomainError("division by zero");
    const double q = a.val / b.val;
    return {q, (a.der - q * b.der) / b.val};
}

inline Dual sin(Dual a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
inline Dual cos(Dual a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }
inline Dual exp(Dual a) { const double e = std::exp(a.val); return {e, e * a.der}; }

inline Dual ln(Dual a)
{
    if (a.val <= 0.0) throw DomainError("ln of non-positive argument");
    return {std::log(a.val), a.der / a.val};
}

inline Dual sqrt(Dual a)
{
    if (a.val < 0.0) throw DomainError("sqrt of negative argument");
    const double s = std::sqrt(a.val);
    if (a.der == 0.0) return {s, 0.0};
    if (a.val == 0.0) throw DomainError("sqrt derivative singular at zero");
    return {s, a.der / (2.0 * s)};
}

// abs is parsed but non-differentiable at the kink; the derivative channel
// therefore refuses exactly there.
inline Dual abs(Dual a)
{
    if (a.val == 0.0 && a.der != 0.0) throw DomainError("abs is not differentiable at zero");
    return {std::fabs(a.val), a.val < 0.0 ? -a.der : a.der};
}

inline bool is_integer(double x) { return x == std::floor(x) && std::isfinite(x); }

// General power a^b. For negative base the exponent must be an exact integer
// carried with a zero derivative channel.
inline Dual pow(Dual a, Dual b)
{
    if (a.val > 0.0) {
        const double v = std::pow(a.val, b.val);
        return {v, v * (b.der * std::log(a.val) + b.val * a.der / a.val)};
    }
    if (a.val == 0.0) {
        if (b.der != 0.0) throw DomainError("0^x is not differentiable in the exponent");
        if (b.val == 0.0) return {1.0, 0.0};
        if (b.val < 0.0) throw DomainError("zero raised to a negative power");
        // d/da a^b at a=0: b*a^(b-1); zero for b>1, a' for b==1, singular below.
        if (a.der == 0.0) return {0.0, 0.0};
        if (b.val > 1.0) return {0.0, 0.0};
        if (b.val == 1.0) return {0.0, a.der};
        throw DomainError("power derivative singular at zero base");
    }
    // negative base
    if (b.der != 0.0 || !is_integer(b.val))
        throw DomainError("negative base requires an integer constant exponent");
    const double v = std::pow(a.val, b.val);
    return {v, b.val * std::pow(a.val, b.val - 1.0) * a.der};
}

} // namespace docsolve
