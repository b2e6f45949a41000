#pragma once

#include <random>
#include <string>
#include <vector>

#include "covsys/types.hpp"

namespace covsys
{

enum class GroupAxiom
{
    Shape,
    Closure,
    Identity,
    Inverse,
    Associativity,
};

const char *to_string(GroupAxiom axiom);

/// Raised when a multiplication table is not a group. `witness` holds the
/// offending indices (one for identity/inverse, three for associativity).
class GroupAxiomError : public InputError
{
public:
    GroupAxiomError(GroupAxiom axiom, std::vector<Index> witness);
    GroupAxiom axiom() const noexcept { return axiom_; }
    const std::vector<Index> &witness() const noexcept { return witness_; }

private:
    GroupAxiom axiom_;
    std::vector<Index> witness_;
};

/// Finite group given by a verified multiplication table.
class FiniteGroup
{
public:
    using Table = std::vector<std::vector<Index>>;

    /// Validates closure, identity, inverses and associativity (all triples).
    explicit FiniteGroup(Table table, std::vector<std::string> labels = {});

    static FiniteGroup trivial();
    static FiniteGroup cyclic(Index n);

    Index order() const noexcept { return order_; }
    Index identity() const noexcept { return identity_; }
    Index mul(Index x, Index y) const { return table_[x * order_ + y]; }
    Index inverse(Index x) const { return inverse_[x]; }
    /// Finite groups are unimodular.
    double modular_function(Index) const noexcept { return 1.0; }

    Table table() const;
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    const std::string &label(Index x) const { return labels_.at(x); }

private:
    Index order_ = 0;
    Index identity_ = 0;
    std::vector<Index> table_;
    std::vector<Index> inverse_;
    std::vector<std::string> labels_;
};

/// Same as the FiniteGroup constructor.
FiniteGroup finite_group(FiniteGroup::Table table);

/// G x H with (g, h) stored at index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup &g, const FiniteGroup &h);

/// Z_n x Z_n; (a, b) is index a * n + b.
FiniteGroup zn_squared(Index n);

// -- Galilei group -----------------------------------------------------------

/// (q, Lambda, t, v): shift, rotation, time translation, boost velocity.
struct GalileiElement
{
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    double time = 0.0;
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();

    static GalileiElement identity() { return {}; }
    static GalileiElement pure_shift(const Eigen::Vector3d &q);
    /// Throws DomainError if the rotation is not in SO(3) within `tol`.
    void validate(double tol = 1e-12) const;
};

/// (q',L',t',v')(q,L,t,v) = (q' + L'q + t v', L'L, t' + t, v' + L'v).
GalileiElement galilei_compose(const GalileiElement &x, const GalileiElement &y);
GalileiElement galilei_inverse(const GalileiElement &x);
GalileiElement random_galilei(std::mt19937_64 &rng, double scale = 1.0);
double galilei_distance(const GalileiElement &a, const GalileiElement &b);

// -- SU(2) -> SO(3) ------------------------------------------------------------

class So3
{
public:
    /// Throws DomainError unless `m` is orthogonal with det +1 within `tol`.
    explicit So3(const Eigen::Matrix3d &m, double tol = 1e-12);
    static So3 identity() { return So3(Eigen::Matrix3d::Identity()); }
    static So3 axis_angle(const Eigen::Vector3d &axis, double angle);
    /// Nearest rotation (polar decomposition); only on explicit request.
    static So3 orthonormalized(const Eigen::Matrix3d &m);

    const Eigen::Matrix3d &matrix() const noexcept { return m_; }
    So3 operator*(const So3 &o) const;
    So3 inverse() const;

private:
    Eigen::Matrix3d m_;
};

class Su2
{
public:
    /// Throws DomainError unless `m` is unitary with det 1 within `tol`.
    explicit Su2(const Eigen::Matrix2cd &m, double tol = 1e-12);
    static Su2 identity() { return Su2(Eigen::Matrix2cd::Identity()); }
    /// exp(-i angle n.sigma / 2) for unit axis n.
    static Su2 axis_angle(const Eigen::Vector3d &axis, double angle);
    /// w 1 - i (x s1 + y s2 + z s3) for a unit quaternion (w, x, y, z).
    static Su2 from_quaternion(const Eigen::Vector4d &wxyz);

    const Eigen::Matrix2cd &matrix() const noexcept { return m_; }
    Eigen::Vector4d quaternion() const;
    Su2 operator*(const Su2 &o) const;
    Su2 operator-() const;
    Su2 adjoint() const;

private:
    Eigen::Matrix2cd m_;
};

/// Pauli matrix sigma_j, j = 1, 2, 3.
Eigen::Matrix2cd pauli(int j);
/// M(q) = sum_j q_j sigma_j.
Eigen::Matrix2cd pauli_vector(const Eigen::Vector3d &q);

/// The covering homomorphism: M(Xi(u) q) = u M(q) u*.
So3 su2_to_so3(const Su2 &u);

/// Deterministic section v with su2_to_so3(v(L)) = L.
///
/// Picks the lift whose quaternion scalar part is nonnegative; for rotations
/// by pi (scalar part zero) the first nonzero vector component is made
/// positive. The pi rotation about z maps to -i sigma_z = diag(-i, i).
Su2 so3_section(const So3 &rotation);

So3 random_so3(std::mt19937_64 &rng);
Su2 random_su2(std::mt19937_64 &rng);

// -- Lorentz group -------------------------------------------------------------

/// Minkowski metric diag(1, -1, -1, -1).
Eigen::Matrix4d minkowski_metric();
/// Boost along spatial axis 1..3 with the given rapidity.
Eigen::Matrix4d lorentz_boost(int axis, double rapidity);
/// Spatial rotation embedded as diag(1, R).
Eigen::Matrix4d lorentz_rotation(const So3 &rotation);
/// L^T g L = g within tol, det L = +1 and L_00 >= 1.
bool is_proper_lorentz(const Eigen::Matrix4d &l, double tol = 1e-10);

} // namespace covsys
