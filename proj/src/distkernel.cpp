#include "docsolve/distkernel.hpp"

#include <cmath>

#include "docsolve/errors.hpp"

namespace docsolve {

// Nodes by Newton iteration on the Legendre polynomial, standard three-term
// recurrence; symmetric pairs share one solve.
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1) throw DomainError("quadrature order must be at least 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = 3.14159265358979323846;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5)); // Chebyshev initial guess
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;             // ascending order on [-1, 1]
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    for (int i = 0; i < n; ++i) { // map [-1, 1] -> [0, 1]
        nodes[i] = 0.5 * (nodes[i] + 1.0);
        weights[i] *= 0.5;
    }
}

DistributionKernel DistributionKernel::build(const Expr& psi, int node_count)
{
    if (node_count < 1) throw DomainError("kernel node count must be at least 1");
    DistributionKernel k;
    std::vector<double> w;
    gauss_legendre_unit(node_count, k.nodes, w);
    k.weights.resize(k.nodes.size());
    Bindings b;
    for (std::size_t j = 0; j < k.nodes.size(); ++j) {
        b.set("alpha", k.nodes[j]);
        const double value = psi.eval(b);
        if (value < 0.0)
            throw DomainError("order distribution is negative at alpha = " +
                              std::to_string(k.nodes[j]));
        k.weights[j] = w[j] * value;
        k.mass += k.weights[j];
    }
    if (k.mass <= 1e-12)
        throw DomainError("order distribution has non-positive mass");
    return k;
}

DistributionKernel DistributionKernel::degenerate(double alpha0)
{
    if (!(alpha0 > 0.0 && alpha0 <= 1.0))
        throw DomainError("degenerate kernel requires alpha0 in (0, 1]");
    DistributionKernel k;
    k.nodes = {alpha0};
    k.weights = {1.0};
    k.mass = 1.0;
    return k;
}

} // namespace docsolve
