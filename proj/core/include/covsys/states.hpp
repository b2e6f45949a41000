#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covsys/multipliers.hpp"

namespace covsys
{

/// (A, X, sigma) with sigma a genuine representation by automorphisms.
class CovarianceSystem
{
public:
    /// Throws InputError unless sigma_e = id and sigma_x sigma_y = sigma_xy.
    /// An empty action means the trivial one.
    CovarianceSystem(Algebra algebra, FiniteGroup group, std::vector<Automorphism> action = {},
                     double tol = 1e-12);

    const Algebra &algebra() const noexcept { return algebra_; }
    const FiniteGroup &group() const noexcept { return group_; }
    const std::vector<Automorphism> &action() const noexcept { return action_; }
    const Automorphism &sigma(Index x) const { return action_.at(x); }

private:
    Algebra algebra_;
    FiniteGroup group_;
    std::vector<Automorphism> action_;
};

/// A state omega_{x,y} of a covariance system, stored as the numbers
/// omega_{x,y}(b_i) on the algebra basis, together with its right multiplier.
class CovariantState
{
public:
    /// `values[(x * |X| + y) * dim + i]` = omega_{x,y}(b_i).
    CovariantState(CovarianceSystem system, std::vector<Complex> values, RightMultiplier zeta);

    const CovarianceSystem &system() const noexcept { return system_; }
    const RightMultiplier &zeta() const noexcept { return zeta_; }
    const std::vector<Complex> &values() const noexcept { return values_; }

    Complex on_basis(Index x, Index y, Index i) const;
    Complex &on_basis(Index x, Index y, Index i);
    Complex operator()(Index x, Index y, const Matrix &a) const;

    /// The functional omega_{x,y} as a coordinate vector.
    Vector functional(Index x, Index y) const;

private:
    CovarianceSystem system_;
    std::vector<Complex> values_;
    RightMultiplier zeta_;
};

/// omega_{x,y} = delta_{x,y} phi, phi given by its values on the basis.
/// Covariant whenever zeta is central and unitary and phi is sigma-invariant
/// up to the diagonal shift (checked by validate_state, not here).
CovariantState diagonal_state(const CovarianceSystem &system, const Vector &phi, const RightMultiplier &zeta);

/// One term lambda_j, x_j, a_j of a positivity family.
struct FamilyTerm
{
    Complex lambda;
    Index x;
    Matrix a;
};
using Family = std::vector<FamilyTerm>;

/// G_jk = lambda_j conj(lambda_k) omega_{x_j,x_k}(a_k* a_j).
Matrix gram_matrix(const CovariantState &omega, const Family &family);

/// Sum of all entries of gram_matrix.
Complex gram_sum(const CovariantState &omega, const Family &family);

/// The sesquilinear form on functions X -> A in the product basis
/// delta_x (x) b_i (index x * dim + i):
///   G[(y,j),(x,i)] = omega_{x,y}(b_j* b_i), so (f, g) = g^dagger G f.
Matrix ambient_gram(const CovariantState &omega);

/// Seeded random families for validate_state.
std::vector<Family> random_families(const CovarianceSystem &system, std::size_t count, std::size_t max_terms,
                                    std::uint64_t seed);

struct StateValidationOptions
{
    double tol = 1e-10;
    std::uint64_t seed = 0;
    /// Random families for the Schwarz and norm-bound margins.
    std::size_t families = 100;
    std::size_t max_terms = 4;
};

/// Checks: zeta_* (precondition), normalization, hermiticity, positivity
/// (ambient Gram and each family Gram), covariance, schwarz, norm_bound.
/// For the margin checks max_residual is the largest violation (0 when the
/// inequality holds everywhere).
ValidationReport validate_state(const CovariantState &omega, std::span<const Family> families,
                                const StateValidationOptions &opts = {});
ValidationReport validate_state(const CovariantState &omega, const StateValidationOptions &opts = {});

/// Thrown by state_from_rep when pi(sigma_x a) = U(x) pi(a) U(x)* fails.
class CovarianceError : public PreconditionError
{
public:
    CovarianceError(Index x, Index basis, double residual);
    Index x() const noexcept { return x_; }
    Index basis() const noexcept { return basis_; }
    double residual() const noexcept { return residual_; }

private:
    Index x_, basis_;
    double residual_;
};

/// omega_{x,y}(a) = (pi(a) U(x)* psi, U(y)* psi).
///
/// `pi` holds pi(b_i) for the algebra basis, `u` holds U(x) for every group
/// element. The multiplier xi is read off from U(x) U(y) U(xy)* = pi(xi(x,y))
/// and stored as zeta = sigma_xy^{-1} xi.
CovariantState state_from_rep(const CovarianceSystem &system, std::span<const Matrix> pi,
                              std::span<const Matrix> u, const Vector &psi, double tol = 1e-10);

} // namespace covsys
