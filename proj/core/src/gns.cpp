#include "covsys/gns.hpp"

#include <cmath>

#include "covsys/parallel.hpp"

namespace covsys
{

Matrix represent(const Representation &rep, const Algebra &algebra, const Matrix &a)
{
    const Vector c = algebra.coordinates(a);
    const auto d = static_cast<Eigen::Index>(rep.dim());
    Matrix out = Matrix::Zero(d, d);
    for (Index i = 0; i < rep.pi.size(); ++i)
        out += c(i) * rep.pi[i];
    return out;
}

Matrix ambient_pi(const CovarianceSystem &system, const Matrix &a)
{
    const Index n = system.group().order();
    const auto dim = static_cast<Eigen::Index>(system.algebra().dimension());
    const Matrix block = system.algebra().left_multiplication(a);
    Matrix out = Matrix::Zero(n * dim, n * dim);
    for (Index x = 0; x < n; ++x)
        out.block(x * dim, x * dim, dim, dim) = block;
    return out;
}

Matrix ambient_u(const CovariantState &omega, Index x)
{
    // (U(x) f)(y) = sigma_x[f(yx) zeta(y,x)]; delta_z b_i lands on y = z x^{-1}.
    const auto &sys = omega.system();
    const auto &alg = sys.algebra();
    const auto &g = sys.group();
    const Index n = g.order();
    const Index dim = alg.dimension();
    Matrix out = Matrix::Zero(n * dim, n * dim);
    for (Index z = 0; z < n; ++z)
    {
        const Index y = g.mul(z, g.inverse(x));
        for (Index i = 0; i < dim; ++i)
        {
            const Matrix v = sys.sigma(x).apply(alg.basis(i) * omega.zeta()(y, x));
            out.block(y * dim, z * dim + i, dim, 1) = alg.coordinates(v);
        }
    }
    return out;
}

Matrix ambient_u_adjoint(const CovariantState &omega, Index x)
{
    // (U(x)* f)(y) = sigma_x^{-1}(f(y x^{-1})) zeta(y x^{-1}, x)*; delta_z b_i lands on y = z x.
    const auto &sys = omega.system();
    const auto &alg = sys.algebra();
    const auto &g = sys.group();
    const Index n = g.order();
    const Index dim = alg.dimension();
    Matrix out = Matrix::Zero(n * dim, n * dim);
    for (Index z = 0; z < n; ++z)
    {
        const Index y = g.mul(z, x);
        for (Index i = 0; i < dim; ++i)
        {
            const Matrix v = sys.sigma(x).apply_inverse(alg.basis(i)) * omega.zeta()(z, x).adjoint();
            out.block(y * dim, z * dim + i, dim, 1) = alg.coordinates(v);
        }
    }
    return out;
}

GnsRep gns_build(const CovariantState &omega, const GnsOptions &opts)
{
    const auto &sys = omega.system();
    const auto &alg = sys.algebra();
    const auto &g = sys.group();
    const Index n = g.order();
    const Index dim = alg.dimension();

    GnsRep out{.ambient_dim = n * dim, .quotient_dim = 0, .trivial = false, .gram_spectrum = {}, .isometry = {},
               .quotient_map = {}, .rep = {}, .xi = right_to_left(omega.zeta())};

    const Matrix gram = ambient_gram(omega);
    const Matrix herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    out.gram_spectrum = es.eigenvalues();
    const double top = out.gram_spectrum.maxCoeff();
    const double bottom = out.gram_spectrum.minCoeff();

    if (bottom < -opts.psd_tol * std::max(1.0, top))
        throw PreconditionError("Gram form has eigenvalue " + std::to_string(bottom) + " < 0");

    std::vector<Eigen::Index> keep;
    if (top > 0.0)
        for (Eigen::Index k = 0; k < out.gram_spectrum.size(); ++k)
            if (out.gram_spectrum(k) > opts.rank_tol * top)
                keep.push_back(k);

    const Index d = keep.size();
    out.quotient_dim = d;
    out.trivial = d == 0;
    out.isometry = Matrix(out.ambient_dim, d);
    out.quotient_map = Matrix(d, out.ambient_dim);
    for (Index a = 0; a < d; ++a)
    {
        const double lam = out.gram_spectrum(keep[a]);
        const Vector v = es.eigenvectors().col(keep[a]);
        out.isometry.col(a) = v / std::sqrt(lam);
        out.quotient_map.row(a) = std::sqrt(lam) * v.adjoint();
    }

    auto compress = [&](const Matrix &t) -> Matrix { return out.quotient_map * t * out.isometry; };

    out.rep.pi.reserve(dim);
    for (Index i = 0; i < dim; ++i)
        out.rep.pi.push_back(compress(ambient_pi(sys, alg.basis(i))));
    out.rep.u.reserve(n);
    for (Index x = 0; x < n; ++x)
        out.rep.u.push_back(compress(ambient_u(omega, x)));

    Vector unit = Vector::Zero(out.ambient_dim);
    unit.segment(g.identity() * dim, dim) = alg.coordinates(alg.identity());
    out.rep.omega = out.quotient_map * unit;
    return out;
}

ReconstructionResidual reconstruction_residual(const Representation &rep, const CovariantState &omega)
{
    const auto &sys = omega.system();
    const Index n = sys.group().order();
    const Index dim = sys.algebra().dimension();
    if (rep.u.size() != n || rep.pi.size() != dim)
        throw InputError("representation does not match the state's system");

    std::vector<Vector> pulled(n);
    for (Index x = 0; x < n; ++x)
        pulled[x] = rep.u[x].adjoint() * rep.omega;

    ReconstructionResidual r;
    MaxTracker t;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index i = 0; i < dim; ++i)
            {
                const Complex model = rep.dim() ? pulled[y].dot(rep.pi[i] * pulled[x]) : Complex(0.0);
                t.update(std::abs(omega.on_basis(x, y, i) - model), {x, y, i});
            }
    r.value = t.value;
    r.witness = t.witness;
    return r;
}

double verify_reconstruction(const Representation &rep, const CovariantState &omega)
{
    return reconstruction_residual(rep, omega).value;
}

double verify_reconstruction(const GnsRep &rep, const CovariantState &omega)
{
    return verify_reconstruction(rep.rep, omega);
}

namespace
{
// Columns pi(b_i) U(x)* Omega, ordered as the ambient basis (x * dim + i).
Matrix orbit_vectors(const Representation &rep)
{
    const Index n = rep.u.size();
    const Index dim = rep.pi.size();
    Matrix k(rep.dim(), n * dim);
    for (Index x = 0; x < n; ++x)
    {
        const Vector pulled = rep.u[x].adjoint() * rep.omega;
        for (Index i = 0; i < dim; ++i)
            k.col(x * dim + i) = rep.pi[i] * pulled;
    }
    return k;
}
} // namespace

Index cyclic_rank(const Representation &rep, double tol)
{
    if (rep.dim() == 0)
        return 0;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(orbit_vectors(rep));
    cod.setThreshold(tol);
    return cod.rank();
}

ValidationReport check_gns(const GnsRep &gns, const CovariantState &omega, double tol)
{
    const auto &sys = omega.system();
    const auto &alg = sys.algebra();
    const auto &g = sys.group();
    const Index n = g.order();
    const Index dim = alg.dimension();
    const auto &rep = gns.rep;
    const auto d = static_cast<Eigen::Index>(rep.dim());
    const Matrix id = Matrix::Identity(d, d);

    ValidationReport report;

    MaxTracker unitarity, adjoint;
    for (Index x = 0; x < n; ++x)
    {
        unitarity.update(max_abs_diff(rep.u[x].adjoint() * rep.u[x], id), {x});
        const Matrix star = gns.quotient_map * ambient_u_adjoint(omega, x) * gns.isometry;
        adjoint.update(max_abs_diff(star, rep.u[x].adjoint()), {x});
    }
    report.add(unitarity.result("unitarity", tol));
    report.add(adjoint.result("adjoint", tol));

    MaxTracker identity;
    identity.update(max_abs_diff(rep.u[g.identity()], id), {g.identity()});
    report.add(identity.result("identity", tol));

    MaxTracker hom, star;
    for (Index i = 0; i < dim; ++i)
    {
        const Matrix bi = alg.basis(i);
        star.update(max_abs_diff(represent(rep, alg, bi.adjoint()), rep.pi[i].adjoint()), {i});
        for (Index j = 0; j < dim; ++j)
            hom.update(max_abs_diff(represent(rep, alg, bi * alg.basis(j)), rep.pi[i] * rep.pi[j]), {i, j});
    }
    report.add(hom.result("homomorphism", tol));
    report.add(star.result("star", tol));

    auto projective = parallel_reduce(
        n * n, MaxTracker{},
        [&](MaxTracker acc, std::size_t k) {
            const Index x = k / n, y = k % n;
            const Matrix rhs = represent(rep, alg, gns.xi(x, y)) * rep.u[g.mul(x, y)];
            acc.update(max_abs_diff(rep.u[x] * rep.u[y], rhs), {x, y});
            return acc;
        },
        MaxTracker::combine);
    report.add(projective.result("projective", tol));

    MaxTracker covariance;
    for (Index x = 0; x < n; ++x)
        for (Index i = 0; i < dim; ++i)
        {
            const Matrix lhs = represent(rep, alg, sys.sigma(x).apply(alg.basis(i)));
            covariance.update(max_abs_diff(lhs, rep.u[x] * rep.pi[i] * rep.u[x].adjoint()), {x, i});
        }
    report.add(covariance.result("covariance", tol));

    MaxTracker cyclic;
    cyclic.update(static_cast<double>(rep.dim() - cyclic_rank(rep)), {});
    report.add(cyclic.result("cyclicity", 0.0));

    const auto rec = reconstruction_residual(rep, omega);
    MaxTracker recon;
    recon.update(rec.value, rec.witness);
    report.add(recon.result("reconstruction", tol));

    MaxTracker psd;
    if (gns.gram_spectrum.size())
        psd.update(std::max(0.0, -gns.gram_spectrum.minCoeff()) / std::max(1.0, gns.gram_spectrum.maxCoeff()), {});
    report.add(psd.result("gram_psd", tol));
    return report;
}

IntertwinerResult find_intertwiner(const Representation &first, const Representation &second,
                                   const CovariantState &omega, double tol)
{
    IntertwinerResult out;
    const auto r1 = reconstruction_residual(first, omega);
    if (r1.value > tol)
    {
        out.failure = "first representation does not reconstruct the state";
        out.witness = r1.witness;
        return out;
    }
    const auto r2 = reconstruction_residual(second, omega);
    if (r2.value > tol)
    {
        out.failure = "second representation reconstructs a different state";
        out.witness = r2.witness;
        return out;
    }
    if (cyclic_rank(first) != first.dim())
    {
        out.failure = "vector of the first representation is not cyclic";
        return out;
    }

    const Matrix k1 = orbit_vectors(first);
    const Matrix k2 = orbit_vectors(second);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(k1);
    out.v = k2 * cod.pseudoInverse();

    const auto &alg = omega.system().algebra();
    const auto d1 = static_cast<Eigen::Index>(first.dim());
    const auto d2 = static_cast<Eigen::Index>(second.dim());
    out.unitarity = std::max(max_abs_diff(out.v.adjoint() * out.v, Matrix::Identity(d1, d1)),
                             max_abs_diff(out.v * out.v.adjoint(), Matrix::Identity(d2, d2)));
    for (Index i = 0; i < alg.dimension(); ++i)
        out.pi_residual = std::max(out.pi_residual, max_abs_diff(out.v * first.pi[i], second.pi[i] * out.v));
    for (Index x = 0; x < first.u.size(); ++x)
        out.u_residual = std::max(out.u_residual, max_abs_diff(out.v * first.u[x], second.u[x] * out.v));
    if (d2 > 0)
        out.omega_residual = (out.v * first.omega - second.omega).cwiseAbs().maxCoeff();

    if (!std::isfinite(out.unitarity) || out.unitarity > tol)
        out.failure = "intertwiner is not unitary";
    else if (out.pi_residual > tol)
        out.failure = "intertwiner does not intertwine pi";
    else if (out.u_residual > tol)
        out.failure = "intertwiner does not intertwine U";
    else if (out.omega_residual > tol)
        out.failure = "intertwiner does not map the cyclic vector";
    out.ok = out.failure.empty();
    return out;
}

} // namespace covsys
