#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "covsys/report.hpp"
#include "covsys/types.hpp"

namespace covsys
{

using Real4 = Eigen::Matrix4d;
using Complex4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4d;
/// A point x = (k, q) of R^4 x R^4.
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Real8 = Eigen::Matrix<double, 8, 8>;
using Complex8 = Eigen::Matrix<Complex, 8, 8>;

/// (e, m) with |e|^2 = |m|^2 and e.m = +-1.
class SigmaPoint
{
public:
    /// Throws DomainError unless both invariants hold within `tol`.
    SigmaPoint(const Eigen::Vector3d &e, const Eigen::Vector3d &m, double tol = 1e-12);
    /// e = m = (1, 0, 0).
    static SigmaPoint base();
    /// Reads (e, m) back from an antisymmetric matrix of the epsilon form.
    static SigmaPoint from_epsilon(const Real4 &eps, double tol = 1e-12);

    const Eigen::Vector3d &e() const noexcept { return e_; }
    const Eigen::Vector3d &m() const noexcept { return m_; }
    /// e.m, rounded to +1 or -1.
    double sign() const noexcept { return sign_; }

private:
    Eigen::Vector3d e_;
    Eigen::Vector3d m_;
    double sign_;
};

Real4 epsilon_matrix(const SigmaPoint &p);
Real4 epsilon_matrix(const Eigen::Vector3d &e, const Eigen::Vector3d &m);
/// (e.m) eps^{-1} gamma.
Real4 eta_matrix(const SigmaPoint &p, const Real4 &gamma);

/// One point mass of the measure on Sigma, carried from the base point by
/// `lorentz`: eps = L^T eps_0 L, T = L^T C L.
struct Atom
{
    Real4 lorentz = Real4::Identity();
    double weight = 1.0;
};

struct QstParams
{
    Real4 gamma = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
    Real4 c = 0.5 * Real4::Identity();
    std::vector<Atom> atoms{Atom{}};
};

/// Per-atom data derived from QstParams.
struct AtomData
{
    SigmaPoint point = SigmaPoint::base();
    double weight = 1.0;
    Real4 eps;
    Real4 eta;
    Real4 t;
};

/// Transported point and T = L^T C L. Throws DomainError for non-Lorentz L.
struct Transported
{
    SigmaPoint point;
    Real4 t;
};
Transported transport_T(const Real4 &c, const Real4 &lorentz, double tol = 1e-10);

/// Precomputes the atoms; does not require T + (i/2) s eps >= 0 (see
/// validate_params), so that deliberately invalid parameters can be probed.
class QstModel
{
public:
    explicit QstModel(QstParams params);

    const QstParams &params() const noexcept { return params_; }
    const std::vector<AtomData> &atoms() const noexcept { return atoms_; }
    /// Smallest eigenvalue of T + (i/2)(e.m) eps over all atoms.
    double positivity_margin() const;

private:
    QstParams params_;
    std::vector<AtomData> atoms_;
};

/// weights, Lorentz transporters, Sigma invariants, T + (i/2)(e.m) eps >= 0.
ValidationReport validate_params(const QstModel &model, double tol = 1e-10);

/// Per-atom test function f(atom index).
using AtomFunction = std::function<double(Index)>;

/// omega_{x, x'}(f) summed over atoms.
Complex quasifree_kernel(const QstModel &model, const Vec8 &x, const Vec8 &xp, const AtomFunction &f = {});
/// Kernel contribution of a single atom with f = 1.
Complex atom_kernel(const AtomData &atom, const Vec8 &x, const Vec8 &xp);

/// exp((i/2)(e.m)(k + eta q).eps(k' + eta q')).
Complex qst_multiplier(const SigmaPoint &p, const Real4 &gamma, const Vec8 &x, const Vec8 &xp);

struct CommutatorForms
{
    Complex4 qq; // [Q_mu, Q_nu]
    Complex4 kk; // [K_mu, K_nu]
    Complex4 kq; // [K_mu, Q_nu]
};
CommutatorForms commutator_forms(const SigmaPoint &p, const Real4 &gamma);

/// Commutators of the generators Z = (Q, K) implied by the multiplier: with
/// U(x) = exp(i c(x).Z), c(x) = (-gamma^T k, gamma q), the phase
/// xi(x, x') / xi(x', x) = exp(-[c(x).Z, c(x').Z]) is solved for [Z_a, Z_b].
Complex8 weyl_commutators(const SigmaPoint &p, const Real4 &gamma);
/// The same 8x8 matrix assembled from commutator_forms.
Complex8 assemble_commutators(const CommutatorForms &forms);

/// (Q_nu Q_mu Omega, Omega) stored at (mu, nu).
Complex4 second_moments(const QstModel &model);

struct KernelMoments
{
    Complex4 raw;          // central difference at h
    Complex4 extrapolated; // one Richardson step from h and h/2
    Complex4 refined;      // Richardson from h/2 and h/4
    double h = 0.0;
    /// Observed order of the raw differences, log2 |D(h)-D(h/2)| / |D(h/2)-D(h/4)|.
    double slope = 0.0;
};

/// Moments from mixed central differences of the f = 1 kernel at the origin.
/// Throws NumericalError with the slope diagnostics if the two Richardson
/// values disagree by more than `tol`.
KernelMoments moments_via_kernel(const QstModel &model, double h = 1e-3, double tol = 1e-6);

/// (Q_mu Omega, Omega) by central differences.
Eigen::Vector4cd first_moments(const QstModel &model, double h = 1e-3);

/// Smallest eigenvalue of G_jl = omega_{x_j, x_l}(1).
double gram_positivity(const QstModel &model, const std::vector<Vec8> &points);
Eigen::MatrixXcd qst_gram(const QstModel &model, const std::vector<Vec8> &points);
std::vector<Vec8> random_weyl_points(std::size_t count, std::mt19937_64 &rng, double scale = 1.0);

struct StabilizerSample
{
    std::string label;
    Real4 lorentz;
    /// |L^T eps_0 L - eps_0|
    double epsilon_residual = 0.0;
    /// |L^T C L - C|
    double c_residual = 0.0;
};
/// Probes one-parameter families (rotations about each axis, boosts along
/// each axis) for elements fixing eps_0, and reports whether they also fix C.
std::vector<StabilizerSample> stabilizer_check(const Real4 &c, double parameter = 0.7, double tol = 1e-12);

} // namespace covsys
