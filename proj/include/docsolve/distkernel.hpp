#pragma once

#include <vector>

#include "docsolve/expr.hpp"

namespace docsolve {

/// Quadrature representation of the order distribution psi on [0, 1]:
/// nodes alpha_j with combined weights c_j = w_j * psi(alpha_j), where the
/// w_j are Gauss-Legendre weights mapped to the unit interval. Every
/// distributed operator is the c-weighted sum of single-order operators at
/// the alpha_j. Immutable after construction and shareable across threads.
struct DistributionKernel {
    std::vector<double> nodes;   // strictly increasing, inside (0, 1] (1 only for degenerate)
    std::vector<double> weights; // c_j >= 0
    double mass = 0.0;           // sum of c_j, approximating the integral of psi

    int size() const { return static_cast<int>(nodes.size()); }

    /// Gauss-Legendre rule of order `node_count` applied to psi. Throws
    /// DomainError when psi is negative at a node or the mass is not
    /// positive (below 1e-12).
    static DistributionKernel build(const Expr& psi, int node_count);

    /// Single-node kernel concentrating all weight at alpha0 in (0, 1]; the
    /// distributed operators it induces reduce to the classical single-order
    /// operators (alpha0 = 1 selects the classical first-derivative paths).
    static DistributionKernel degenerate(double alpha0);
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace docsolve
