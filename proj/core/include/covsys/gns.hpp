#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covsys/states.hpp"

namespace covsys
{

/// A representation (H, pi, U) of a finite covariance system with a
/// distinguished vector. `pi[i]` represents basis element b_i.
struct Representation
{
    std::vector<Matrix> pi;
    std::vector<Matrix> u;
    Vector omega;

    Index dim() const noexcept { return static_cast<Index>(omega.size()); }
};

/// pi extended linearly to an arbitrary element of `algebra`.
Matrix represent(const Representation &rep, const Algebra &algebra, const Matrix &a);

struct GnsOptions
{
    /// Keep Gram eigenvalues above rank_tol * (largest eigenvalue).
    double rank_tol = 1e-9;
    /// Gram eigenvalues below -psd_tol (relative to the largest) are a
    /// precondition failure.
    double psd_tol = 1e-10;
};

/// Output of the generalized GNS construction.
struct GnsRep
{
    Index ambient_dim = 0;
    Index quotient_dim = 0;
    /// True when the Gram form vanishes identically (zero Hilbert space).
    bool trivial = false;
    /// Gram eigenvalues in ascending order.
    RealVector gram_spectrum;
    /// Columns: ambient coordinates of an orthonormal basis of H (ambient x d).
    Matrix isometry;
    /// Left inverse of `isometry`; maps ambient coordinates to H (d x ambient).
    Matrix quotient_map;
    Representation rep;
    /// xi(x,y) = sigma_xy zeta(x,y), realised by U(x) U(y) = pi(xi(x,y)) U(xy).
    LeftMultiplier xi;
};

/// Builds (H, pi, U, Omega) from a covariant state.
///
/// The ambient space is functions X -> A with the form
///   (f, g) = sum_{x,y} omega_{x,y}(g(y)* f(x)).
/// Its null space is removed by an eigendecomposition of the Gram matrix;
/// (pi(a) f)(x) = a f(x) and (U(x) f)(y) = sigma_x[f(yx) zeta(y,x)] are
/// formed on the ambient space and compressed. Omega is the class of
/// delta_e 1.
GnsRep gns_build(const CovariantState &omega, const GnsOptions &opts = {});

/// Ambient (un-compressed) operators, exposed for testing.
Matrix ambient_pi(const CovarianceSystem &system, const Matrix &a);
Matrix ambient_u(const CovariantState &omega, Index x);
Matrix ambient_u_adjoint(const CovariantState &omega, Index x);

struct ReconstructionResidual
{
    double value = 0.0;
    /// (x, y, basis index) of the worst entry.
    std::vector<Index> witness;
};

/// max |omega_{x,y}(b_i) - (pi(b_i) U(x)* Omega, U(y)* Omega)|.
ReconstructionResidual reconstruction_residual(const Representation &rep, const CovariantState &omega);
double verify_reconstruction(const Representation &rep, const CovariantState &omega);
double verify_reconstruction(const GnsRep &rep, const CovariantState &omega);

/// dim span{pi(b_i) U(x)* v}.
Index cyclic_rank(const Representation &rep, double tol = 1e-9);

/// Checks: unitarity, identity (U(e) = 1), homomorphism, star, projective,
/// covariance, cyclicity, reconstruction, gram_psd.
ValidationReport check_gns(const GnsRep &gns, const CovariantState &omega, double tol = 1e-10);

/// Unitary V : H -> H' with V pi(a) = pi'(a) V, V U(x) = U'(x) V, V Omega = Omega'.
struct IntertwinerResult
{
    bool ok = false;
    Matrix v;
    std::string failure;
    /// (x, y, basis) distinguishing the two states, when that is the failure.
    std::vector<Index> witness;
    double unitarity = 0.0;
    double pi_residual = 0.0;
    double u_residual = 0.0;
    double omega_residual = 0.0;
};

/// Uniqueness map V f = sum_x pi'(f(x)) U'(x)* Omega' applied to the
/// orthonormal basis of the first representation. Unitarity and the
/// intertwining relations are verified, not assumed.
IntertwinerResult find_intertwiner(const Representation &first, const Representation &second,
                                   const CovariantState &omega, double tol = 1e-9);

} // namespace covsys
