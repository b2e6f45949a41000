#include "covsys/multipliers.hpp"

#include <cmath>
#include <random>

#include "covsys/parallel.hpp"

namespace covsys
{

MultiplierTable::MultiplierTable(Algebra algebra, FiniteGroup group, std::vector<Automorphism> action,
                                 std::vector<Matrix> values)
    : algebra_(std::move(algebra)), group_(std::move(group)), action_(std::move(action)),
      values_(std::move(values))
{
    const Index n = group_.order();
    if (action_.empty())
        action_ = trivial_action(algebra_, group_);
    if (action_.size() != n)
        throw InputError("action needs one automorphism per group element");
    for (const auto &s : action_)
        if (!(s.algebra() == algebra_))
            throw InputError("action acts on a different algebra");
    if (values_.size() != n * n)
        throw InputError("multiplier table needs |X|^2 entries");
    const auto sz = static_cast<Eigen::Index>(algebra_.size());
    for (const auto &v : values_)
        if (v.rows() != sz || v.cols() != sz)
            throw InputError("multiplier value has wrong shape");
}

bool MultiplierTable::is_scalar(double tol) const
{
    for (const auto &v : values_)
    {
        const Matrix scalar = v(0, 0) * algebra_.identity();
        if (max_abs_diff(v, scalar) > tol)
            return false;
    }
    return true;
}

std::vector<Automorphism> trivial_action(const Algebra &algebra, const FiniteGroup &group)
{
    return std::vector<Automorphism>(group.order(), Automorphism::identity(algebra));
}

LeftMultiplier LeftMultiplier::trivial(const Algebra &algebra, const FiniteGroup &group,
                                       std::vector<Automorphism> action)
{
    return LeftMultiplier(algebra, group, std::move(action),
                          std::vector<Matrix>(group.order() * group.order(), algebra.identity()));
}

RightMultiplier RightMultiplier::trivial(const Algebra &algebra, const FiniteGroup &group,
                                         std::vector<Automorphism> action)
{
    return RightMultiplier(algebra, group, std::move(action),
                           std::vector<Matrix>(group.order() * group.order(), algebra.identity()));
}

std::vector<Triple> validation_triples(const FiniteGroup &group, const ValidationOptions &opts)
{
    const Index n = group.order();
    std::vector<Triple> out;
    if (n * n * n <= opts.exhaustive_limit)
    {
        out.reserve(n * n * n);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                for (Index z = 0; z < n; ++z)
                    out.push_back({x, y, z});
        return out;
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    out.reserve(opts.samples);
    for (std::size_t i = 0; i < opts.samples; ++i)
        out.push_back({pick(rng), pick(rng), pick(rng)});
    return out;
}

namespace
{

// Checks shared by both handedness: values in A, unitary, normalized, sigma_e = id.
void common_checks(const MultiplierTable &m, double tol, ValidationReport &report)
{
    const Index n = m.group().order();
    const Index e = m.group().identity();
    const Matrix one = m.algebra().identity();

    MaxTracker membership, unitarity, normalization;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
        {
            const Matrix &v = m(x, y);
            double off = 0.0;
            if (m.algebra().kind() == AlgebraKind::Function)
            {
                Matrix d = v;
                d.diagonal().setZero();
                off = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
            }
            membership.update(off, {x, y});
            unitarity.update(max_abs_diff(v.adjoint() * v, one), {x, y});
        }
    for (Index x = 0; x < n; ++x)
    {
        normalization.update(max_abs_diff(m(x, e), one), {x, e});
        normalization.update(max_abs_diff(m(e, x), one), {e, x});
    }
    report.add(membership.result("membership", tol));
    report.add(unitarity.result("unitarity", tol));
    report.add(normalization.result("normalization", tol));

    MaxTracker action_identity;
    action_identity.update(m.sigma(e).distance(Automorphism::identity(m.algebra())), {e});
    report.add(action_identity.result("action_identity", tol));
}

template <class Residual>
MaxTracker sweep_triples(std::span<const Triple> sample, Residual residual)
{
    return parallel_reduce(
        sample.size(), MaxTracker{},
        [&](MaxTracker acc, std::size_t i) {
            const auto &t = sample[i];
            acc.update(residual(t[0], t[1], t[2]), {t[0], t[1], t[2]});
            return acc;
        },
        MaxTracker::combine);
}

MaxTracker sweep_action(const MultiplierTable &m,
                        const std::function<Matrix(Index, Index, const Matrix &)> &rhs)
{
    const Index n = m.group().order();
    const Index dim = m.algebra().dimension();
    return parallel_reduce(
        n * n * dim, MaxTracker{},
        [&](MaxTracker acc, std::size_t k) {
            const Index x = k / (n * dim);
            const Index y = (k / dim) % n;
            const Index i = k % dim;
            const Matrix a = m.algebra().basis(i);
            const Matrix lhs = m.sigma(x).apply(m.sigma(y).apply(a));
            acc.update(max_abs_diff(lhs, rhs(x, y, a)), {x, y, i});
            return acc;
        },
        MaxTracker::combine);
}

} // namespace

ValidationReport validate_left(const LeftMultiplier &xi, std::span<const Triple> sample, double tol)
{
    if (sample.empty())
        throw InputError("validation sample is empty");
    ValidationReport report;
    common_checks(xi, tol, report);
    const auto &g = xi.group();

    auto cocycle = sweep_triples(sample, [&](Index x, Index y, Index z) {
        const Matrix lhs = xi.sigma(x).apply(xi(y, z));
        const Matrix rhs = xi(x, y) * xi(g.mul(x, y), z) * xi(x, g.mul(y, z)).adjoint();
        return max_abs_diff(lhs, rhs);
    });
    report.add(cocycle.result("cocycle", tol));

    auto twisted = sweep_action(xi, [&](Index x, Index y, const Matrix &a) -> Matrix {
        const Matrix &v = xi(x, y);
        return v * xi.sigma(g.mul(x, y)).apply(a) * v.adjoint();
    });
    report.add(twisted.result("twisted_action", tol));
    return report;
}

ValidationReport validate_left(const LeftMultiplier &xi, const ValidationOptions &opts)
{
    const auto triples = validation_triples(xi.group(), opts);
    auto report = validate_left(xi, triples, opts.tol);
    report.seed = opts.seed;
    return report;
}

ValidationReport validate_right(const RightMultiplier &zeta, std::span<const Triple> sample, double tol)
{
    if (sample.empty())
        throw InputError("validation sample is empty");
    ValidationReport report;
    common_checks(zeta, tol, report);
    const auto &g = zeta.group();

    auto cocycle = sweep_triples(sample, [&](Index x, Index y, Index z) {
        const Matrix lhs = zeta.sigma(y).apply_inverse(zeta(z, x));
        const Matrix rhs = zeta(g.mul(z, x), y).adjoint() * zeta(z, g.mul(x, y)) * zeta(x, y);
        return max_abs_diff(lhs, rhs);
    });
    report.add(cocycle.result("cocycle", tol));

    auto twisted = sweep_action(zeta, [&](Index x, Index y, const Matrix &a) -> Matrix {
        const Matrix &v = zeta(x, y);
        return zeta.sigma(g.mul(x, y)).apply(v * a * v.adjoint());
    });
    report.add(twisted.result("twisted_action", tol));
    return report;
}

ValidationReport validate_right(const RightMultiplier &zeta, const ValidationOptions &opts)
{
    const auto triples = validation_triples(zeta.group(), opts);
    auto report = validate_right(zeta, triples, opts.tol);
    report.seed = opts.seed;
    return report;
}

RightMultiplier left_to_right(const LeftMultiplier &xi)
{
    const auto &g = xi.group();
    std::vector<Matrix> values;
    values.reserve(g.order() * g.order());
    for (Index x = 0; x < g.order(); ++x)
        for (Index y = 0; y < g.order(); ++y)
            values.push_back(xi.sigma(g.mul(x, y)).apply_inverse(xi(x, y)));
    return RightMultiplier(xi.algebra(), g, xi.action(), std::move(values));
}

LeftMultiplier right_to_left(const RightMultiplier &zeta)
{
    const auto &g = zeta.group();
    std::vector<Matrix> values;
    values.reserve(g.order() * g.order());
    for (Index x = 0; x < g.order(); ++x)
        for (Index y = 0; y < g.order(); ++y)
            values.push_back(zeta.sigma(g.mul(x, y)).apply(zeta(x, y)));
    return LeftMultiplier(zeta.algebra(), g, zeta.action(), std::move(values));
}

CheckResult classical_cocycle_check(const LeftMultiplier &xi, std::span<const Triple> sample, double tol)
{
    if (!xi.is_scalar(tol))
        throw DomainError("classical cocycle check needs scalar values");
    const auto &g = xi.group();
    auto tracker = sweep_triples(sample, [&](Index x, Index y, Index z) {
        const Complex lhs = xi(x, y)(0, 0) * xi(g.mul(x, y), z)(0, 0);
        const Complex rhs = xi(y, z)(0, 0) * xi(x, g.mul(y, z))(0, 0);
        return std::abs(lhs - rhs);
    });
    return tracker.result("classical_cocycle", tol);
}

// -- PhaseCocycle ----------------------------------------------------------------

namespace
{
long mod(long a, long n)
{
    const long r = a % n;
    return r < 0 ? r + n : r;
}

double phase_residual(long defect, long n)
{
    const long d = mod(defect, n);
    if (d == 0)
        return 0.0;
    return std::abs(1.0 - std::polar(1.0, 2.0 * kPi * static_cast<double>(d) / static_cast<double>(n)));
}
} // namespace

PhaseCocycle::PhaseCocycle(FiniteGroup group, long modulus, std::vector<long> exponents)
    : group_(std::move(group)), modulus_(modulus), exponents_(std::move(exponents))
{
    if (modulus_ <= 0)
        throw InputError("phase modulus must be positive");
    if (exponents_.size() != group_.order() * group_.order())
        throw InputError("phase table needs |X|^2 exponents");
    for (auto &k : exponents_)
        k = mod(k, modulus_);
}

PhaseCocycle::PhaseCocycle(FiniteGroup group, long modulus, const std::function<long(Index, Index)> &exponent)
    : group_(std::move(group)), modulus_(modulus)
{
    if (modulus_ <= 0)
        throw InputError("phase modulus must be positive");
    const Index n = group_.order();
    exponents_.resize(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            exponents_[x * n + y] = mod(exponent(x, y), modulus_);
}

Complex PhaseCocycle::value(Index x, Index y) const
{
    const long k = exponent(x, y);
    if (k == 0)
        return 1.0;
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(modulus_));
}

LeftMultiplier PhaseCocycle::to_left() const
{
    const Algebra c = Algebra::scalars();
    const Index n = group_.order();
    std::vector<Matrix> values(n * n);
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            values[x * n + y] = Matrix::Constant(1, 1, value(x, y));
    return LeftMultiplier(c, group_, {}, std::move(values));
}

ValidationReport validate_phase_cocycle(const PhaseCocycle &xi)
{
    const auto &g = xi.group();
    const Index n = g.order();
    const long m = xi.modulus();
    ValidationReport report;

    MaxTracker normalization;
    for (Index x = 0; x < n; ++x)
    {
        normalization.update(phase_residual(xi.exponent(x, g.identity()), m), {x, g.identity()});
        normalization.update(phase_residual(xi.exponent(g.identity(), x), m), {g.identity(), x});
    }
    report.add(normalization.result("normalization", 0.0));

    MaxTracker cocycle;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index z = 0; z < n; ++z)
            {
                // sigma trivial on C: xi(y,z) = xi(x,y) xi(xy,z) xi(x,yz)^*
                const long defect = xi.exponent(x, y) + xi.exponent(g.mul(x, y), z) -
                                    xi.exponent(x, g.mul(y, z)) - xi.exponent(y, z);
                cocycle.update(phase_residual(defect, m), {x, y, z});
            }
    report.add(cocycle.result("cocycle", 0.0));
    return report;
}

PhaseCocycle heisenberg_cocycle(long n)
{
    if (n <= 0)
        throw InputError("Heisenberg cocycle needs n >= 1");
    const auto un = static_cast<Index>(n);
    return PhaseCocycle(zn_squared(un), n, [un](Index x, Index y) {
        const auto a = static_cast<long>(x / un);
        const auto bp = static_cast<long>(y % un);
        return a * bp;
    });
}

// -- Continuous cocycles -----------------------------------------------------------

Complex galilei_cocycle(double kappa, const GalileiElement &x, const GalileiElement &y)
{
    const double tp = x.time;
    const Eigen::Vector3d &vp = x.velocity;
    const Eigen::Matrix3d &lp = x.rotation;
    const double phase = 0.5 * tp * y.velocity.squaredNorm() + tp * vp.dot(lp * y.velocity) -
                         vp.dot(lp * (y.shift - y.time * y.velocity));
    return std::exp(Complex(0.0, -kappa * phase));
}

CheckResult galilei_cocycle_check(double kappa, std::size_t trials, std::uint64_t seed, double tol)
{
    std::mt19937_64 rng(seed);
    std::vector<std::array<GalileiElement, 3>> triples(trials);
    for (auto &t : triples)
        for (auto &g : t)
            g = random_galilei(rng);

    auto tracker = parallel_reduce(
        trials, MaxTracker{},
        [&](MaxTracker acc, std::size_t i) {
            const auto &[x, y, z] = triples[i];
            const Complex lhs = galilei_cocycle(kappa, x, y) * galilei_cocycle(kappa, galilei_compose(x, y), z);
            const Complex rhs = galilei_cocycle(kappa, y, z) * galilei_cocycle(kappa, x, galilei_compose(y, z));
            acc.update(std::abs(lhs - rhs), {i});
            return acc;
        },
        MaxTracker::combine);
    return tracker.result("galilei_cocycle", tol);
}

namespace
{
// Returns (closest sign, distance from sign * 1).
std::pair<int, double> sign_of(const So3 &l, const So3 &lp, const Section &section)
{
    const Eigen::Matrix2cd prod =
        section(l).matrix() * section(lp).matrix() * section(l * lp).matrix().adjoint();
    const int s = prod.trace().real() >= 0.0 ? 1 : -1;
    const double defect = (prod - static_cast<double>(s) * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    return {s, defect};
}
} // namespace

int spin_cocycle(const So3 &l, const So3 &lp, const Section &section)
{
    const auto [s, defect] = sign_of(l, lp, section);
    if (defect > 1e-10)
        throw NumericalError("section product is not +-1 (defect " + std::to_string(defect) + ")");
    return s;
}

double spin_sign_defect(const So3 &l, const So3 &lp, const Section &section)
{
    return sign_of(l, lp, section).second;
}

} // namespace covsys
