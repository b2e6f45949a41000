#include "covsys/qst.hpp"

#include <cmath>
#include <string>

#include "covsys/groups.hpp"

namespace covsys
{

SigmaPoint::SigmaPoint(const Eigen::Vector3d &e, const Eigen::Vector3d &m, double tol) : e_(e), m_(m)
{
    const double len = e.squaredNorm() - m.squaredNorm();
    const double dot = e.dot(m);
    if (!std::isfinite(len) || !std::isfinite(dot))
        throw DomainError("Sigma point has non-finite coordinates");
    if (std::abs(len) > tol)
        throw DomainError("Sigma point violates |e|^2 = |m|^2 (defect " + std::to_string(len) + ")");
    if (std::abs(std::abs(dot) - 1.0) > tol)
        throw DomainError("Sigma point violates e.m = +-1 (e.m = " + std::to_string(dot) + ")");
    sign_ = dot > 0 ? 1.0 : -1.0;
}

SigmaPoint SigmaPoint::base() { return SigmaPoint(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitX()); }

SigmaPoint SigmaPoint::from_epsilon(const Real4 &eps, double tol)
{
    if ((eps + eps.transpose()).cwiseAbs().maxCoeff() > tol)
        throw DomainError("matrix is not antisymmetric");
    const Eigen::Vector3d e(eps(0, 1), eps(0, 2), eps(0, 3));
    const Eigen::Vector3d m(eps(2, 3), -eps(1, 3), eps(1, 2));
    return SigmaPoint(e, m, tol);
}

Real4 epsilon_matrix(const Eigen::Vector3d &e, const Eigen::Vector3d &m)
{
    Real4 eps;
    eps << 0, e(0), e(1), e(2),
        -e(0), 0, m(2), -m(1),
        -e(1), -m(2), 0, m(0),
        -e(2), m(1), -m(0), 0;
    return eps;
}

Real4 epsilon_matrix(const SigmaPoint &p) { return epsilon_matrix(p.e(), p.m()); }

Real4 eta_matrix(const SigmaPoint &p, const Real4 &gamma)
{
    const Real4 eps = epsilon_matrix(p);
    Eigen::FullPivLU<Real4> lu(eps);
    if (!lu.isInvertible())
        throw DomainError("epsilon matrix is singular");
    return p.sign() * lu.inverse() * gamma;
}

Transported transport_T(const Real4 &c, const Real4 &lorentz, double tol)
{
    if (!is_proper_lorentz(lorentz, tol))
        throw DomainError("transporter is not a proper Lorentz matrix");
    const Real4 eps0 = epsilon_matrix(SigmaPoint::base());
    const Real4 eps = lorentz.transpose() * eps0 * lorentz;
    // Sigma invariants are preserved only up to round-off scaled by |L|^2.
    const double scale = std::max(1.0, lorentz.cwiseAbs().maxCoeff());
    return {SigmaPoint::from_epsilon(eps, 1e-12 * scale * scale * 16), lorentz.transpose() * c * lorentz};
}

QstModel::QstModel(QstParams params) : params_(std::move(params))
{
    if (params_.atoms.empty())
        throw InputError("measure needs at least one atom");
    if (!params_.gamma.allFinite() || !params_.c.allFinite())
        throw InputError("gamma and C must be finite");
    Eigen::FullPivLU<Real4> lu(params_.gamma);
    if (!lu.isInvertible())
        throw InputError("gamma is not invertible");
    for (const auto &atom : params_.atoms)
    {
        if (!(atom.weight > 0.0))
            throw InputError("atom weights must be strictly positive");
        auto moved = transport_T(params_.c, atom.lorentz);
        AtomData d{moved.point, atom.weight, epsilon_matrix(moved.point), Real4{}, moved.t};
        d.eta = eta_matrix(d.point, params_.gamma);
        atoms_.push_back(std::move(d));
    }
}

double QstModel::positivity_margin() const
{
    double margin = std::numeric_limits<double>::infinity();
    for (const auto &a : atoms_)
    {
        const Complex4 m = a.t.cast<Complex>() + Complex(0, 0.5 * a.point.sign()) * a.eps.cast<Complex>();
        Eigen::SelfAdjointEigenSolver<Complex4> es(0.5 * (m + m.adjoint()));
        margin = std::min(margin, es.eigenvalues().minCoeff());
    }
    return margin;
}

ValidationReport validate_params(const QstModel &model, double tol)
{
    ValidationReport report;
    const auto &p = model.params();

    double total = 0.0;
    for (const auto &a : p.atoms)
        total += a.weight;
    report.add({"weights", std::abs(total - 1.0), {}, 1e-12, std::abs(total - 1.0) <= 1e-12, "sum of atom weights"});

    MaxTracker lorentz;
    MaxTracker sigma;
    MaxTracker sym;
    const Real4 g = minkowski_metric();
    for (Index i = 0; i < model.atoms().size(); ++i)
    {
        const auto &l = p.atoms[i].lorentz;
        lorentz.update((l.transpose() * g * l - g).cwiseAbs().maxCoeff(), {i});
        const auto &pt = model.atoms()[i].point;
        sigma.update(std::max(std::abs(pt.e().squaredNorm() - pt.m().squaredNorm()),
                              std::abs(std::abs(pt.e().dot(pt.m())) - 1.0)),
                     {i});
        sym.update((model.atoms()[i].t - model.atoms()[i].t.transpose()).cwiseAbs().maxCoeff(), {i});
    }
    report.add(lorentz.result("lorentz", tol));
    report.add(sigma.result("sigma_invariants", 1e-12));
    report.add(sym.result("t_symmetric", tol));

    const double margin = model.positivity_margin();
    report.add({"t_positivity", std::max(0.0, -margin), {}, tol, margin >= -tol,
                "min eigenvalue of T + (i/2)(e.m) eps: " + std::to_string(margin)});
    return report;
}

namespace
{

Vec4 weyl_u(const AtomData &a, const Vec8 &x) { return x.head<4>() + a.eta * x.tail<4>(); }

} // namespace

Complex atom_kernel(const AtomData &a, const Vec8 &x, const Vec8 &xp)
{
    const Vec4 u = weyl_u(a, x);
    const Vec4 up = weyl_u(a, xp);
    const Vec4 d = u - up;
    const double phase = 0.5 * a.point.sign() * u.dot(a.eps * up);
    return std::polar(std::exp(-0.5 * d.dot(a.t * d)), phase);
}

Complex quasifree_kernel(const QstModel &model, const Vec8 &x, const Vec8 &xp, const AtomFunction &f)
{
    Complex s = 0.0;
    for (Index i = 0; i < model.atoms().size(); ++i)
    {
        const auto &a = model.atoms()[i];
        s += a.weight * (f ? f(i) : 1.0) * atom_kernel(a, x, xp);
    }
    return s;
}

Complex qst_multiplier(const SigmaPoint &p, const Real4 &gamma, const Vec8 &x, const Vec8 &xp)
{
    const Real4 eta = eta_matrix(p, gamma);
    const Vec4 u = x.head<4>() + eta * x.tail<4>();
    const Vec4 up = xp.head<4>() + eta * xp.tail<4>();
    return std::polar(1.0, 0.5 * p.sign() * u.dot(epsilon_matrix(p) * up));
}

CommutatorForms commutator_forms(const SigmaPoint &p, const Real4 &gamma)
{
    const Real4 eps = epsilon_matrix(p);
    const Real4 ginv = gamma.inverse();
    const Complex i(0, 1);
    CommutatorForms out;
    out.qq = -i * p.sign() * (ginv * eps * ginv.transpose()).cast<Complex>();
    out.kk = i * p.sign() * eps.inverse().cast<Complex>();
    out.kq = -i * ginv.transpose().cast<Complex>();
    return out;
}

Complex8 assemble_commutators(const CommutatorForms &forms)
{
    Complex8 out;
    out.topLeftCorner<4, 4>() = forms.qq;
    out.topRightCorner<4, 4>() = -forms.kq.transpose(); // [Q_mu, K_nu] = -[K_nu, Q_mu]
    out.bottomLeftCorner<4, 4>() = forms.kq;
    out.bottomRightCorner<4, 4>() = forms.kk;
    return out;
}

Complex8 weyl_commutators(const SigmaPoint &p, const Real4 &gamma)
{
    // Antisymmetrized exponent A(x, x') = -i arg(xi(x, x') / xi(x', x)) on unit
    // vectors. The exponent is bilinear, so evaluating at t e_a, t e_b and
    // dividing by t^2 recovers it; a first pass fixes t so the phases stay
    // well inside (-pi, pi).
    const auto exponent = [&](double t) {
        Complex8 a;
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
            {
                const Vec8 x = t * Vec8::Unit(r);
                const Vec8 y = t * Vec8::Unit(c);
                const Complex ratio = qst_multiplier(p, gamma, x, y) * std::conj(qst_multiplier(p, gamma, y, x));
                a(r, c) = Complex(0, -std::arg(ratio)) / (t * t);
            }
        return a;
    };
    const Complex8 rough = exponent(1e-4);
    const double bound = std::max(1e-300, rough.cwiseAbs().maxCoeff());
    const Complex8 a = exponent(std::sqrt(1.0 / bound));

    // a = L^T M L with L = blockdiag(-gamma^T, gamma): solve for M.
    Real8 l = Real8::Zero();
    l.topLeftCorner<4, 4>() = -gamma.transpose();
    l.bottomRightCorner<4, 4>() = gamma;
    const Complex8 linv = l.inverse().cast<Complex>();
    // exp(-[G(x), G(x')]) = xi(x, x')/xi(x', x), so [G, G'] = -(i arg) = a.
    return linv.transpose() * a * linv;
}

// -- moments -------------------------------------------------------------------------

Complex4 second_moments(const QstModel &model)
{
    Complex4 out = Complex4::Zero();
    const Real4 ginv = model.params().gamma.inverse();
    for (const auto &a : model.atoms())
    {
        const Complex4 inner = a.t.cast<Complex>() + Complex(0, 0.5 * a.point.sign()) * a.eps.cast<Complex>();
        out += a.weight * ginv.cast<Complex>() * inner * ginv.transpose().cast<Complex>();
    }
    return out;
}

namespace
{

// Direction x_mu = (-gamma^{-T} e_mu, 0), for which U(t x_mu) = exp(i t Q_mu).
Vec8 q_direction(const Real4 &gamma, int mu)
{
    Vec8 x = Vec8::Zero();
    x.head<4>() = -gamma.transpose().inverse() * Vec4::Unit(mu);
    return x;
}

Complex4 mixed_difference(const QstModel &model, double h)
{
    Complex4 d;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
        {
            const Vec8 a = h * q_direction(model.params().gamma, mu);
            const Vec8 b = h * q_direction(model.params().gamma, nu);
            // d^2/dt ds omega_{t x_mu, s x_nu}(1) = (Q_nu Q_mu Omega, Omega).
            d(mu, nu) = (quasifree_kernel(model, a, b) - quasifree_kernel(model, a, -b) -
                         quasifree_kernel(model, -a, b) + quasifree_kernel(model, -a, -b)) /
                        (4.0 * h * h);
        }
    return d;
}

} // namespace

KernelMoments moments_via_kernel(const QstModel &model, double h, double tol)
{
    if (!(h >= 1e-4 && h <= 1e-2))
        throw InputError("finite-difference step must lie in [1e-4, 1e-2]");
    KernelMoments out;
    out.h = h;
    out.raw = mixed_difference(model, h);
    const Complex4 half = mixed_difference(model, h / 2);
    const Complex4 quarter = mixed_difference(model, h / 4);
    out.extrapolated = (4.0 * half - out.raw) / 3.0;
    out.refined = (4.0 * quarter - half) / 3.0;
    const double e1 = (out.raw - half).cwiseAbs().maxCoeff();
    const double e2 = (half - quarter).cwiseAbs().maxCoeff();
    out.slope = e2 > 0 ? std::log2(e1 / e2) : std::numeric_limits<double>::infinity();
    const double spread = (out.extrapolated - out.refined).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, out.extrapolated.cwiseAbs().maxCoeff());
    if (!(spread <= tol * scale))
        throw NumericalError("Richardson estimates disagree by " + std::to_string(spread) +
                             " (observed order " + std::to_string(out.slope) + ", expected 2)");
    return out;
}

Eigen::Vector4cd first_moments(const QstModel &model, double h)
{
    Eigen::Vector4cd out;
    const Vec8 zero = Vec8::Zero();
    for (int mu = 0; mu < 4; ++mu)
    {
        const Vec8 a = h * q_direction(model.params().gamma, mu);
        // omega_{t x, 0}(1) = (exp(-i t Q) Omega, Omega), so (Q Omega, Omega) = i d/dt.
        out(mu) = Complex(0, 1) * (quasifree_kernel(model, a, zero) - quasifree_kernel(model, -a, zero)) / (2.0 * h);
    }
    return out;
}

Eigen::MatrixXcd qst_gram(const QstModel &model, const std::vector<Vec8> &points)
{
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
            g(j, l) = quasifree_kernel(model, points[j], points[l]);
    return g;
}

double gram_positivity(const QstModel &model, const std::vector<Vec8> &points)
{
    if (points.size() < 2)
        throw InputError("Gram positivity needs at least two points");
    const Eigen::MatrixXcd g = qst_gram(model, points);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (g + g.adjoint()));
    return es.eigenvalues().minCoeff();
}

std::vector<Vec8> random_weyl_points(std::size_t count, std::mt19937_64 &rng, double scale)
{
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<Vec8> out(count);
    for (auto &x : out)
        for (int i = 0; i < 8; ++i)
            x(i) = normal(rng);
    return out;
}

std::vector<StabilizerSample> stabilizer_check(const Real4 &c, double parameter, double tol)
{
    const Real4 eps0 = epsilon_matrix(SigmaPoint::base());
    std::vector<StabilizerSample> out;
    const char *axes = "xyz";
    for (int axis = 0; axis < 3; ++axis)
    {
        const Real4 rot = lorentz_rotation(So3::axis_angle(Eigen::Vector3d::Unit(axis), parameter));
        const Real4 boost = lorentz_boost(axis + 1, parameter);
        for (const auto &[label, l] : {std::pair{std::string("rotation_") + axes[axis], rot},
                                       std::pair{std::string("boost_") + axes[axis], boost}})
        {
            StabilizerSample s{label, l, (l.transpose() * eps0 * l - eps0).cwiseAbs().maxCoeff(),
                               (l.transpose() * c * l - c).cwiseAbs().maxCoeff()};
            if (s.epsilon_residual <= tol)
                out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace covsys
