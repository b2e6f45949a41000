#include "covsys/crossed.hpp"

#include <cmath>

namespace covsys
{

CrossedProduct::CrossedProduct(CovarianceSystem system, LeftMultiplier xi)
    : system_(std::move(system)), xi_(std::move(xi))
{
    if (!(xi_.algebra() == system_.algebra()) || xi_.group().order() != system_.group().order())
        throw InputError("multiplier belongs to a different system");
    for (Index x = 0; x < system_.group().order(); ++x)
        if (xi_.sigma(x).distance(system_.sigma(x)) > 1e-12)
            throw InputError("multiplier action differs from the system action");
}

CrossedProduct CrossedProduct::from_state(const CovariantState &omega)
{
    return CrossedProduct(omega.system(), right_to_left(omega.zeta()));
}

CrossedElement CrossedProduct::zero() const
{
    return CrossedElement{std::vector<Matrix>(system_.group().order(), system_.algebra().zero())};
}

CrossedElement CrossedProduct::unit() const { return delta(system_.group().identity(), system_.algebra().identity()); }

CrossedElement CrossedProduct::delta(Index x, const Matrix &a) const
{
    system_.algebra().require_element(a);
    auto f = zero();
    f.values.at(x) = a;
    return f;
}

CrossedElement CrossedProduct::random(std::mt19937_64 &rng) const
{
    auto f = zero();
    for (auto &v : f.values)
        v = system_.algebra().random_element(rng);
    return f;
}

void CrossedProduct::require(const CrossedElement &f) const
{
    if (f.values.size() != system_.group().order())
        throw InputError("crossed element needs a value for every group element");
    for (const auto &v : f.values)
        system_.algebra().require_element(v, "crossed element value");
}

CrossedElement CrossedProduct::convolve(const CrossedElement &f, const CrossedElement &g) const
{
    require(f);
    require(g);
    const auto &grp = system_.group();
    auto out = zero();
    for (Index x = 0; x < grp.order(); ++x)
    {
        Matrix acc = system_.algebra().zero();
        for (Index y = 0; y < grp.order(); ++y)
        {
            const Index rest = grp.mul(grp.inverse(y), x);
            acc += f.values[y] * xi_(y, rest) * system_.sigma(y).apply(g.values[rest]);
        }
        out.values[x] = std::move(acc);
    }
    return out;
}

CrossedElement CrossedProduct::involution(const CrossedElement &f) const
{
    require(f);
    const auto &grp = system_.group();
    auto out = zero();
    for (Index x = 0; x < grp.order(); ++x)
    {
        const Index xinv = grp.inverse(x);
        out.values[x] = (1.0 / grp.modular_function(x)) * xi_(x, xinv).adjoint() *
                        system_.sigma(x).apply(f.values[xinv].adjoint());
    }
    return out;
}

CrossedElement CrossedProduct::add(const CrossedElement &f, const CrossedElement &g) const
{
    require(f);
    require(g);
    auto out = f;
    for (Index x = 0; x < out.values.size(); ++x)
        out.values[x] += g.values[x];
    return out;
}

CrossedElement CrossedProduct::scale(Complex c, const CrossedElement &f) const
{
    auto out = f;
    for (auto &v : out.values)
        v *= c;
    return out;
}

double CrossedProduct::l1_norm(const CrossedElement &f) const
{
    double s = 0.0;
    for (const auto &v : f.values)
        s += norm(v);
    return s;
}

double CrossedProduct::distance(const CrossedElement &f, const CrossedElement &g) const
{
    double d = 0.0;
    for (Index x = 0; x < f.values.size(); ++x)
        d = std::max(d, max_abs_diff(f.values[x], g.values.at(x)));
    return d;
}

// -- extended state ----------------------------------------------------------------

ExtendedState::ExtendedState(const CovariantState &omega)
    : omega_(&omega), crossed_(CrossedProduct::from_state(omega))
{
}

Complex ExtendedState::operator()(const CrossedElement &f) const
{
    crossed_.require(f);
    const auto &grp = crossed_.system().group();
    const Index e = grp.identity();
    Complex s = 0.0;
    for (Index x = 0; x < grp.order(); ++x)
    {
        const Index xinv = grp.inverse(x);
        s += (1.0 / grp.modular_function(x)) * (*omega_)(x, e, crossed_.xi()(xinv, x) * f.values[xinv]);
    }
    return s;
}

ExtendedState extend_state(const CovariantState &omega) { return ExtendedState(omega); }

Matrix integrated_rep(const Representation &rep, const Algebra &algebra, const CrossedElement &f)
{
    if (f.values.size() != rep.u.size())
        throw InputError("crossed element and representation have different groups");
    const auto d = static_cast<Eigen::Index>(rep.dim());
    Matrix out = Matrix::Zero(d, d);
    for (Index x = 0; x < f.values.size(); ++x)
        out += represent(rep, algebra, f.values[x]) * rep.u[x];
    return out;
}

CrossedGnsComparison compare_crossed_gns(const CovariantState &omega, const GnsRep &gns, double rank_tol)
{
    const ExtendedState bar(omega);
    const auto &cp = bar.algebra();
    const auto &alg = omega.system().algebra();
    const Index n = omega.system().group().order();
    const Index dim = alg.dimension();
    const Index total = n * dim;

    std::vector<CrossedElement> basis;
    basis.reserve(total);
    for (Index x = 0; x < n; ++x)
        for (Index i = 0; i < dim; ++i)
            basis.push_back(cp.delta(x, alg.basis(i)));

    // gram(j, k) = bar-omega(e_j* x e_k) = (e_k, e_j) in the GNS form of bar-omega.
    Matrix gram(total, total);
    Matrix images(gns.rep.dim(), total);
    for (Index k = 0; k < total; ++k)
    {
        images.col(k) = integrated_rep(gns.rep, alg, basis[k]) * gns.rep.omega;
        for (Index j = 0; j < total; ++j)
            gram(j, k) = bar(cp.convolve(cp.involution(basis[j]), basis[k]));
    }

    CrossedGnsComparison out;
    const Matrix inner = images.adjoint() * images; // inner(j,k) = (image_k, image_j)
    out.form_residual = max_abs_diff(gram, inner);

    const Matrix herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const double top = es.eigenvalues().maxCoeff();
    Matrix iso(total, 0);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    {
        const double lam = es.eigenvalues()(k);
        if (top > 0.0 && lam > rank_tol * top)
        {
            iso.conservativeResize(Eigen::NoChange, iso.cols() + 1);
            // c^* gram c = 1, so sum c_k e_k has unit norm in the crossed GNS space.
            iso.col(iso.cols() - 1) = es.eigenvectors().col(k) / std::sqrt(lam);
        }
    }
    out.crossed_gns_dim = static_cast<Index>(iso.cols());

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(images);
    cod.setThreshold(rank_tol);
    out.cyclic_dim = gns.rep.dim() ? static_cast<Index>(cod.rank()) : 0;

    // Images of an orthonormal basis of the crossed GNS space must be orthonormal.
    const Matrix mapped = images * iso;
    const auto d = mapped.cols();
    out.isometry_residual = max_abs_diff(mapped.adjoint() * mapped, Matrix::Identity(d, d));
    return out;
}

} // namespace covsys
