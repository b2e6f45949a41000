#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "covsys/types.hpp"

namespace covsys
{

/// Nodes and weights for int exp(-t^2) g(t) dt on the real line.
struct GaussHermiteRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computed by Newton iteration on the Hermite recurrence; rules are cached.
const GaussHermiteRule &gauss_hermite(int order);

struct QuadratureValue
{
    Complex value{};
    /// |value(order) - value(order / 2)|.
    double error_estimate = 0.0;
    int order = 0;
};

struct QuadratureOptions
{
    int order = 40;
    int max_order = 160;
    double rel_tol = 1e-6;
    /// Absolute floor below which the relative target is measured against.
    double abs_floor = 1e-14;
};

/// int_{R^3} exp(-p |x - mu|^2 / 2) g(x) dx by a tensor Gauss-Hermite rule,
/// doubling the order until the error indicator meets the target. Throws
/// NumericalError carrying the achieved estimate otherwise.
QuadratureValue gaussian_weighted_integral(const std::function<Complex(const Eigen::Vector3d &)> &g,
                                           const Eigen::Vector3d &mu, double precision,
                                           const QuadratureOptions &opts = {});

} // namespace covsys
