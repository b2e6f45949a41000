#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "covsys/multipliers.hpp"
#include "covsys/quadrature.hpp"

namespace covsys
{

/// amplitude * exp(-|x - center|^2 / (2 width^2)) on R^3.
struct Gaussian
{
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double width = 1.0;
    Complex amplitude = 0.0;

    /// Unit L2 norm.
    static Gaussian normalized(const Eigen::Vector3d &center, double width);
    Complex operator()(const Eigen::Vector3d &x) const;
    double norm_squared() const;
};

/// A two-component wavefunction in L2(R^3) + L2(R^3).
class SpinorWavefunction
{
public:
    /// Throws DomainError unless |psi1|^2 + |psi2|^2 = 1 within `tol`.
    SpinorWavefunction(Gaussian up, Gaussian down, double tol = 1e-10);

    const Gaussian &component(int j) const { return j == 0 ? up_ : down_; }
    Eigen::Vector2cd operator()(const Eigen::Vector3d &x) const;

private:
    Gaussian up_;
    Gaussian down_;
};

using TestFunction = std::function<Complex(const Eigen::Vector3d &)>;

/// (q, Lambda) in the Euclidean group.
struct EuclideanElement
{
    Eigen::Vector3d shift = Eigen::Vector3d::Zero();
    So3 rotation = So3::identity();
};

/// omega_{q,L; q',L'}(f) = int f(x) psi(L'x + q') . v(L') v(L)* psi(Lx + q) dx,
/// with the dot product conjugate-linear in its left argument. The spin
/// matrix is v(L') v(L)*; pass `scalar = true` for the spin-0 control v = 1.
QuadratureValue spinor_offdiagonal(const SpinorWavefunction &psi, const EuclideanElement &first,
                                   const EuclideanElement &second, const TestFunction &f,
                                   const Section &section = so3_section, bool scalar = false,
                                   const QuadratureOptions &opts = {});

/// Closed form of the same integral for f = 1 (secondary oracle).
Complex spinor_offdiagonal_exact(const SpinorWavefunction &psi, const EuclideanElement &first,
                                 const EuclideanElement &second, const Section &section = so3_section,
                                 bool scalar = false);

struct SpinDemoResult
{
    QuadratureValue up;
    QuadratureValue down;
    /// Empty when |up| falls below the magnitude floor.
    std::optional<Complex> ratio;
    QuadratureValue scalar_up;
    QuadratureValue scalar_down;
    std::optional<Complex> scalar_ratio;
};

/// omega_{q,L;0,1}(f) with L the rotation by pi about z, for psi = (phi, 0)
/// and psi = (0, phi), phi a normalized Gaussian at the origin and f = 1.
SpinDemoResult spin_demo(double width, const Eigen::Vector3d &shift, const Section &section = so3_section,
                         const QuadratureOptions &opts = {}, double magnitude_floor = 1e-10);

/// Periodic lattice with `sites` points of spacing `spacing` per axis.
struct GridSpec
{
    int dims = 1;
    Index sites = 64;
    double spacing = 1.0;
};

struct GridCheckResult
{
    double covariance_residual = 0.0;
    /// Lattice displacement of the shift in sites per axis.
    std::vector<long> displacement;
};

/// max |pi(sigma_q f) - U(q) pi(f) U(q)*| for a seeded random f, with
/// (U(q) psi)(x) = psi(x - q). Throws InputError for incommensurate shifts.
GridCheckResult standard_covariance_check(const GridSpec &grid, const Eigen::VectorXd &shift, std::uint64_t seed = 0);

struct CcrResult
{
    std::vector<double> spacings;
    /// max |[Q_j, P_k] psi - i delta_jk psi| per spacing.
    std::vector<double> residuals;
    /// residuals[i] / residuals[i + 1].
    std::vector<double> ratios;
    /// Least-squares slope of log residual against log spacing.
    double order = 0.0;
    /// Largest off-diagonal commutator (j != k), zero in exact arithmetic.
    double cross_residual = 0.0;
};

/// Q = multiplication by x_j and P_k the central difference -i (psi(x+h) - psi(x-h)) / 2h
/// on a Gaussian test vector, with spacings h0, h0/2, ... (`levels` of them).
CcrResult ccr_check(int dims = 1, double h0 = 0.2, int levels = 3, double box = 20.0);

} // namespace covsys
