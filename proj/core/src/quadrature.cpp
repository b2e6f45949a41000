#include "covsys/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "covsys/parallel.hpp"

namespace covsys
{

namespace
{

GaussHermiteRule compute_rule(int n)
{
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double pim4 = std::pow(kPi, -0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i)
    {
        // Initial guesses for the largest roots, then extrapolation from the
        // two previous roots.
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.nodes[1];
        else
            z = 2.0 * z - rule.nodes[i - 2];

        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it)
        {
            // Orthonormal Hermite recurrence.
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j)
            {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z)))
            {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("Gauss-Hermite root iteration did not converge for order " + std::to_string(n));
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

} // namespace

const GaussHermiteRule &gauss_hermite(int order)
{
    if (order < 1)
        throw InputError("Gauss-Hermite order must be positive");
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

namespace
{

Complex tensor_rule(const std::function<Complex(const Eigen::Vector3d &)> &g, const Eigen::Vector3d &mu,
                    double precision, int order)
{
    const auto &rule = gauss_hermite(order);
    const double scale = std::sqrt(2.0 / precision);
    const auto n = static_cast<Index>(order);
    // Fixed chunking over the outer index keeps the sum order deterministic.
    const Complex sum = parallel_reduce(
        n, Complex{},
        [&](Complex acc, Index a) {
            for (Index b = 0; b < n; ++b)
                for (Index c = 0; c < n; ++c)
                {
                    const Eigen::Vector3d x =
                        mu + scale * Eigen::Vector3d(rule.nodes[a], rule.nodes[b], rule.nodes[c]);
                    acc += rule.weights[a] * rule.weights[b] * rule.weights[c] * g(x);
                }
            return acc;
        },
        [](Complex acc, Complex part) { return acc + part; });
    return sum * scale * scale * scale;
}

} // namespace

QuadratureValue gaussian_weighted_integral(const std::function<Complex(const Eigen::Vector3d &)> &g,
                                           const Eigen::Vector3d &mu, double precision,
                                           const QuadratureOptions &opts)
{
    if (!(precision > 0.0))
        throw InputError("Gaussian weight needs a positive precision");
    if (opts.order < 2 || opts.max_order < opts.order)
        throw InputError("quadrature order range is empty");
    QuadratureValue out;
    for (int order = opts.order; order <= opts.max_order; order *= 2)
    {
        const Complex fine = tensor_rule(g, mu, precision, order);
        const Complex coarse = tensor_rule(g, mu, precision, order / 2);
        out = {fine, std::abs(fine - coarse), order};
        if (out.error_estimate <= opts.rel_tol * std::max(std::abs(fine), opts.abs_floor))
            return out;
    }
    throw NumericalError("quadrature did not converge: error estimate " + std::to_string(out.error_estimate) +
                         " at order " + std::to_string(out.order));
}

} // namespace covsys
