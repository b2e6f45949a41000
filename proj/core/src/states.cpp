#include "covsys/states.hpp"

#include <cmath>
#include <random>

#include "covsys/parallel.hpp"

namespace covsys
{

CovarianceSystem::CovarianceSystem(Algebra algebra, FiniteGroup group, std::vector<Automorphism> action,
                                   double tol)
    : algebra_(std::move(algebra)), group_(std::move(group)), action_(std::move(action))
{
    if (action_.empty())
        action_ = trivial_action(algebra_, group_);
    if (action_.size() != group_.order())
        throw InputError("action needs one automorphism per group element");
    for (const auto &s : action_)
        if (!(s.algebra() == algebra_))
            throw InputError("action acts on a different algebra");
    if (!action_[group_.identity()].is_identity(tol))
        throw InputError("action of the neutral element is not the identity");
    for (Index x = 0; x < group_.order(); ++x)
        for (Index y = 0; y < group_.order(); ++y)
            if (action_[x].compose(action_[y]).distance(action_[group_.mul(x, y)]) > tol)
                throw InputError("action is not a representation at (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
}

// -- CovariantState ------------------------------------------------------------

CovariantState::CovariantState(CovarianceSystem system, std::vector<Complex> values, RightMultiplier zeta)
    : system_(std::move(system)), values_(std::move(values)), zeta_(std::move(zeta))
{
    const Index n = system_.group().order();
    if (values_.size() != n * n * system_.algebra().dimension())
        throw InputError("state tensor has wrong size");
    if (!(zeta_.algebra() == system_.algebra()) || zeta_.group().order() != n)
        throw InputError("right multiplier belongs to a different system");
}

Complex CovariantState::on_basis(Index x, Index y, Index i) const
{
    const Index n = system_.group().order();
    return values_[(x * n + y) * system_.algebra().dimension() + i];
}

Complex &CovariantState::on_basis(Index x, Index y, Index i)
{
    const Index n = system_.group().order();
    return values_[(x * n + y) * system_.algebra().dimension() + i];
}

Vector CovariantState::functional(Index x, Index y) const
{
    const Index dim = system_.algebra().dimension();
    Vector f(dim);
    for (Index i = 0; i < dim; ++i)
        f(i) = on_basis(x, y, i);
    return f;
}

Complex CovariantState::operator()(Index x, Index y, const Matrix &a) const
{
    const Vector c = system_.algebra().coordinates(a);
    Complex s = 0.0;
    for (Index i = 0; i < static_cast<Index>(c.size()); ++i)
        s += c(i) * on_basis(x, y, i);
    return s;
}

CovariantState diagonal_state(const CovarianceSystem &system, const Vector &phi, const RightMultiplier &zeta)
{
    const Index n = system.group().order();
    const Index dim = system.algebra().dimension();
    if (static_cast<Index>(phi.size()) != dim)
        throw InputError("functional has wrong length");
    std::vector<Complex> values(n * n * dim, 0.0);
    for (Index x = 0; x < n; ++x)
        for (Index i = 0; i < dim; ++i)
            values[(x * n + x) * dim + i] = phi(i);
    return CovariantState(system, std::move(values), zeta);
}

// -- Gram matrices ---------------------------------------------------------------

Matrix gram_matrix(const CovariantState &omega, const Family &family)
{
    if (family.empty())
        throw InputError("positivity family is empty");
    const auto n = static_cast<Eigen::Index>(family.size());
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const auto &tj = family[j];
            const auto &tk = family[k];
            g(j, k) = tj.lambda * std::conj(tk.lambda) * omega(tj.x, tk.x, tk.a.adjoint() * tj.a);
        }
    return g;
}

Complex gram_sum(const CovariantState &omega, const Family &family) { return gram_matrix(omega, family).sum(); }

Matrix ambient_gram(const CovariantState &omega)
{
    const auto &alg = omega.system().algebra();
    const Index n = omega.system().group().order();
    const Index dim = alg.dimension();

    // coordinates of b_j* b_i
    std::vector<Vector> products(dim * dim);
    for (Index j = 0; j < dim; ++j)
        for (Index i = 0; i < dim; ++i)
            products[j * dim + i] = alg.coordinates(alg.basis(j).adjoint() * alg.basis(i));

    const auto big = static_cast<Eigen::Index>(n * dim);
    Matrix g(big, big);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
        {
            const Vector w = omega.functional(x, y);
            for (Index j = 0; j < dim; ++j)
                for (Index i = 0; i < dim; ++i)
                    g(y * dim + j, x * dim + i) = products[j * dim + i].transpose() * w;
        }
    return g;
}

std::vector<Family> random_families(const CovarianceSystem &system, std::size_t count, std::size_t max_terms,
                                    std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<Index> pick_x(0, system.group().order() - 1);
    std::uniform_int_distribution<std::size_t> pick_len(1, std::max<std::size_t>(1, max_terms));
    std::vector<Family> out(count);
    for (auto &fam : out)
    {
        const std::size_t len = pick_len(rng);
        for (std::size_t t = 0; t < len; ++t)
        {
            FamilyTerm term;
            term.lambda = Complex(gauss(rng), gauss(rng));
            term.x = pick_x(rng);
            term.a = system.algebra().random_element(rng);
            fam.push_back(std::move(term));
        }
    }
    return out;
}

// -- validation --------------------------------------------------------------------

ValidationReport validate_state(const CovariantState &omega, std::span<const Family> families,
                                const StateValidationOptions &opts)
{
    const auto &sys = omega.system();
    const auto &alg = sys.algebra();
    const auto &g = sys.group();
    const Index n = g.order();
    const Index dim = alg.dimension();
    const Index e = g.identity();
    const double tol = opts.tol;

    ValidationReport report;
    report.seed = opts.seed;

    ValidationOptions mopts;
    mopts.tol = tol;
    mopts.seed = opts.seed;
    report.merge(validate_right(omega.zeta(), mopts), "zeta_");

    // normalization: omega_ee(1) = 1 and omega_ee positive on A
    {
        MaxTracker t;
        t.update(std::abs(omega(e, e, alg.identity()) - 1.0), {e, e});
        Matrix local(dim, dim);
        for (Index j = 0; j < dim; ++j)
            for (Index i = 0; i < dim; ++i)
                local(j, i) = omega(e, e, alg.basis(j).adjoint() * alg.basis(i));
        t.update(std::max(0.0, -min_hermitian_eigenvalue(local)), {e, e});
        report.add(t.result("normalization", tol));
    }

    // hermiticity: omega_{x,y}(a*) = conj omega_{y,x}(a)
    {
        MaxTracker t;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (Index i = 0; i < dim; ++i)
                {
                    const Matrix b = alg.basis(i);
                    t.update(std::abs(omega(x, y, b.adjoint()) - std::conj(omega.on_basis(y, x, i))), {x, y, i});
                }
        report.add(t.result("hermiticity", tol));
    }

    // positivity over all families at once: the ambient Gram matrix
    {
        MaxTracker t;
        t.update(std::max(0.0, -min_hermitian_eigenvalue(ambient_gram(omega))), {});
        report.add(t.result("positivity", tol));
    }

    {
        MaxTracker t;
        for (std::size_t f = 0; f < families.size(); ++f)
            t.update(std::max(0.0, -min_hermitian_eigenvalue(gram_matrix(omega, families[f]))), {f});
        report.add(t.result("family_positivity", tol));
    }

    // covariance: omega_{x,y}(sigma_z a) = omega_{xz,yz}(zeta(y,z) a zeta(x,z)*)
    {
        const auto &zeta = omega.zeta();
        auto t = parallel_reduce(
            n * n * n * dim, MaxTracker{},
            [&](MaxTracker acc, std::size_t k) {
                const Index x = k / (n * n * dim);
                const Index y = (k / (n * dim)) % n;
                const Index z = (k / dim) % n;
                const Index i = k % dim;
                const Matrix a = alg.basis(i);
                const Complex lhs = omega(x, y, sys.sigma(z).apply(a));
                const Complex rhs = omega(g.mul(x, z), g.mul(y, z), zeta(y, z) * a * zeta(x, z).adjoint());
                acc.update(std::abs(lhs - rhs), {x, y, z, i});
                return acc;
            },
            MaxTracker::combine);
        report.add(t.result("covariance", tol));
    }

    // Schwarz-type inequality and the norm bound on the random families
    {
        std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
        MaxTracker schwarz, bound;
        for (std::size_t f = 0; f < families.size(); ++f)
        {
            const Family &fa = families[f];
            Family fb = fa;
            for (auto &term : fb)
                term.a = alg.random_element(rng);

            Complex mixed = 0.0;
            for (std::size_t j = 0; j < fa.size(); ++j)
                for (std::size_t k = 0; k < fa.size(); ++k)
                {
                    const Matrix m = fa[k].a.adjoint() * fb[j].a - fb[k].a.adjoint() * fa[j].a;
                    mixed += fa[j].lambda * std::conj(fa[k].lambda) * omega(fa[j].x, fa[k].x, m);
                }
            const double ga = gram_sum(omega, fa).real();
            const double gb = gram_sum(omega, fb).real();
            const double rhs = 4.0 * ga * gb;
            schwarz.update(std::max(0.0, std::norm(mixed) - rhs) / std::max(1.0, std::abs(rhs)), {f});

            double weight = 0.0;
            for (const auto &term : fa)
                weight += std::abs(term.lambda) * norm(term.a);
            const double cap = weight * weight;
            bound.update(std::max(0.0, ga - cap) / std::max(1.0, cap), {f});
        }
        report.add(schwarz.result("schwarz", tol));
        report.add(bound.result("norm_bound", tol));
    }
    return report;
}

ValidationReport validate_state(const CovariantState &omega, const StateValidationOptions &opts)
{
    const auto fams = random_families(omega.system(), opts.families, opts.max_terms, opts.seed);
    return validate_state(omega, fams, opts);
}

// -- construction from a representation -------------------------------------------

CovarianceError::CovarianceError(Index x, Index basis, double residual)
    : PreconditionError("covariance pi(sigma_x a) = U(x) pi(a) U(x)* fails at x=" + std::to_string(x) +
                        ", basis " + std::to_string(basis) + " (residual " + std::to_string(residual) + ")"),
      x_(x), basis_(basis), residual_(residual)
{
}

CovariantState state_from_rep(const CovarianceSystem &system, std::span<const Matrix> pi,
                              std::span<const Matrix> u, const Vector &psi, double tol)
{
    const auto &alg = system.algebra();
    const auto &g = system.group();
    const Index n = g.order();
    const Index dim = alg.dimension();
    if (pi.size() != dim)
        throw InputError("need pi(b_i) for every basis element");
    if (u.size() != n)
        throw InputError("need U(x) for every group element");
    const Eigen::Index h = psi.size();
    for (const auto &m : pi)
        if (m.rows() != h || m.cols() != h)
            throw InputError("pi matrix has wrong shape");
    for (const auto &m : u)
        if (m.rows() != h || m.cols() != h)
            throw InputError("U matrix has wrong shape");
    if (std::abs(psi.norm() - 1.0) > tol)
        throw InputError("vector is not normalized");

    const Matrix id = Matrix::Identity(h, h);
    if (max_abs_diff(u[g.identity()], id) > tol)
        throw PreconditionError("U(e) is not the identity");
    for (Index x = 0; x < n; ++x)
        if (max_abs_diff(u[x].adjoint() * u[x], id) > tol)
            throw PreconditionError("U(" + std::to_string(x) + ") is not unitary");

    auto pi_of = [&](const Matrix &a) {
        const Vector c = alg.coordinates(a);
        Matrix out = Matrix::Zero(h, h);
        for (Index i = 0; i < dim; ++i)
            out += c(i) * pi[i];
        return out;
    };

    for (Index i = 0; i < dim; ++i)
    {
        const Matrix bi = alg.basis(i);
        if (max_abs_diff(pi_of(bi.adjoint()), pi[i].adjoint()) > tol)
            throw PreconditionError("pi is not *-preserving on basis " + std::to_string(i));
        for (Index j = 0; j < dim; ++j)
            if (max_abs_diff(pi_of(bi * alg.basis(j)), pi[i] * pi[j]) > tol)
                throw PreconditionError("pi is not multiplicative on basis (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
    }

    for (Index x = 0; x < n; ++x)
        for (Index i = 0; i < dim; ++i)
        {
            const double r = max_abs_diff(pi_of(system.sigma(x).apply(alg.basis(i))), u[x] * pi[i] * u[x].adjoint());
            if (r > tol)
                throw CovarianceError(x, i, r);
        }

    // Solve pi(xi) = U(x) U(y) U(xy)* for xi in A.
    Matrix design(h * h, dim);
    for (Index i = 0; i < dim; ++i)
        design.col(i) = pi[i].reshaped();
    const auto qr = design.colPivHouseholderQr();

    std::vector<Matrix> zeta_values(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
        {
            const Matrix m = u[x] * u[y] * u[g.mul(x, y)].adjoint();
            const Vector target = m.reshaped();
            const Vector c = qr.solve(target);
            const double miss = (design * c - target).cwiseAbs().maxCoeff();
            if (miss > tol)
                throw PreconditionError("U(x)U(y)U(xy)* is not in pi(A) at (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");
            const Matrix xi = alg.from_coordinates(c);
            zeta_values[x * n + y] = system.sigma(g.mul(x, y)).apply_inverse(xi);
        }
    RightMultiplier zeta(alg, g, system.action(), std::move(zeta_values));

    std::vector<Vector> pulled(n);
    for (Index x = 0; x < n; ++x)
        pulled[x] = u[x].adjoint() * psi;

    std::vector<Complex> values(n * n * dim);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index i = 0; i < dim; ++i)
                values[(x * n + y) * dim + i] = pulled[y].dot(pi[i] * pulled[x]);
    return CovariantState(system, std::move(values), std::move(zeta));
}

} // namespace covsys
