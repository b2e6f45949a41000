#pragma once

#include <random>
#include <vector>

#include "covsys/gns.hpp"

namespace covsys
{

/// A function X -> A, stored densely by group index.
struct CrossedElement
{
    std::vector<Matrix> values;
};

/// The twisted group algebra A x_xi X of a finite covariance system.
class CrossedProduct
{
public:
    /// `xi` must share the system's algebra, group and action.
    CrossedProduct(CovarianceSystem system, LeftMultiplier xi);
    /// Uses xi = sigma_xy zeta(x,y) from the state's right multiplier.
    static CrossedProduct from_state(const CovariantState &omega);

    const CovarianceSystem &system() const noexcept { return system_; }
    const LeftMultiplier &xi() const noexcept { return xi_; }

    CrossedElement zero() const;
    /// delta_e 1, the unit.
    CrossedElement unit() const;
    CrossedElement delta(Index x, const Matrix &a) const;
    CrossedElement random(std::mt19937_64 &rng) const;

    /// (f x g)(x) = sum_y f(y) xi(y, y^{-1}x) sigma_y g(y^{-1}x).
    CrossedElement convolve(const CrossedElement &f, const CrossedElement &g) const;
    /// f*(x) = Delta(x)^{-1} xi(x, x^{-1})* sigma_x(f(x^{-1})*).
    CrossedElement involution(const CrossedElement &f) const;

    CrossedElement add(const CrossedElement &f, const CrossedElement &g) const;
    CrossedElement scale(Complex c, const CrossedElement &f) const;

    /// sum_x ||f(x)||.
    double l1_norm(const CrossedElement &f) const;
    double distance(const CrossedElement &f, const CrossedElement &g) const;

    /// Throws InputError on a malformed element.
    void require(const CrossedElement &f) const;

private:
    CovarianceSystem system_;
    LeftMultiplier xi_;
};

/// The extension of a covariant state to the crossed product:
///   bar-omega(f) = sum_x Delta(x)^{-1} omega_{x,e}(xi(x^{-1},x) f(x^{-1})).
class ExtendedState
{
public:
    explicit ExtendedState(const CovariantState &omega);

    const CrossedProduct &algebra() const noexcept { return crossed_; }
    Complex operator()(const CrossedElement &f) const;

private:
    const CovariantState *omega_;
    CrossedProduct crossed_;
};

/// The extended state keeps a pointer to `omega`, which must outlive it.
ExtendedState extend_state(const CovariantState &omega);

/// bar-pi(f) = sum_x pi(f(x)) U(x).
Matrix integrated_rep(const Representation &rep, const Algebra &algebra, const CrossedElement &f);

/// Classical GNS of bar-omega on the crossed algebra compared with bar-pi on
/// the cyclic subspace of Omega.
struct CrossedGnsComparison
{
    Index crossed_gns_dim = 0;
    Index cyclic_dim = 0;
    /// max |bar-omega(e_j* x e_k) - (bar-pi(e_k) Omega, bar-pi(e_j) Omega)|
    /// over the basis e = delta_x b_i.
    double form_residual = 0.0;
    /// Defect of the isometry [e_k] -> bar-pi(e_k) Omega on the quotient.
    double isometry_residual = 0.0;
};

CrossedGnsComparison compare_crossed_gns(const CovariantState &omega, const GnsRep &gns, double rank_tol = 1e-9);

} // namespace covsys
