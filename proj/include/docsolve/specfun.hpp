#pragma once

#include <Eigen/Core>

#include "docsolve/grid.hpp"

namespace docsolve::specfun {

/// Gamma function. Throws DomainError at the poles (non-positive integers).
double gamma(double x);

/// log |Gamma(x)| for x > 0.
double log_gamma(double x);

/// Digamma function psi(x) = Gamma'(x)/Gamma(x); poles as for gamma.
double digamma(double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z), summed as the
/// defining series until the next term drops below 1e-16 of the partial sum
/// (hard cap 10000 terms). Real arguments only; alpha must be positive and,
/// for alpha >= 0.3, |z| must not exceed 50 (the documented direct-series
/// domain). Throws ConvergenceError when the cap is hit or the sum overflows.
double mittag_leffler(double alpha, double beta, double z);

/// Pointwise bound produced by the fractional Gronwall inequality: for
/// u(t) <= a(t) + b(t) * int_0^t (t-s)^(alpha-1) u(s) ds the envelope
///   E(t) = a(t) + int_a^t sum_{n>=1} (b(t) Gamma(alpha))^n / Gamma(n alpha)
///                 * (t-s)^(n alpha - 1) a(s) ds
/// evaluated with the series re-indexed past the n = 0 pole of Gamma.
struct GronwallEnvelope {
    Grid grid;
    Eigen::VectorXd values;
    int truncation_index = 0; // largest series index summed at any node
};

/// Evaluate the envelope on the grid. The kernel power is integrated exactly
/// on every subinterval (product integration); the integrand sample uses the
/// trapezoid mean of a on interior cells and the larger endpoint value on
/// the final, singular cell. Requires a, b >= 0 with b monotone
/// non-decreasing, and 0 < alpha <= 1.
GronwallEnvelope gronwall_envelope(const SampledFn& a_fn, const SampledFn& b_fn,
                                   double alpha, const Grid& grid);

} // namespace docsolve::specfun
