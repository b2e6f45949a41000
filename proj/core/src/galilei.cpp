#include "covsys/galilei.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Sparse>

namespace covsys
{

Gaussian Gaussian::normalized(const Eigen::Vector3d &center, double width)
{
    if (!(width > 0.0))
        throw InputError("Gaussian width must be positive");
    return {center, width, std::pow(kPi * width * width, -0.75)};
}

Complex Gaussian::operator()(const Eigen::Vector3d &x) const
{
    return amplitude * std::exp(-(x - center).squaredNorm() / (2.0 * width * width));
}

double Gaussian::norm_squared() const { return std::norm(amplitude) * std::pow(kPi * width * width, 1.5); }

SpinorWavefunction::SpinorWavefunction(Gaussian up, Gaussian down, double tol)
    : up_(std::move(up)), down_(std::move(down))
{
    if (!(up_.width > 0.0) || !(down_.width > 0.0))
        throw InputError("Gaussian width must be positive");
    const double n = up_.norm_squared() + down_.norm_squared();
    if (std::abs(n - 1.0) > tol)
        throw DomainError("spinor is not normalized: |psi1|^2 + |psi2|^2 = " + std::to_string(n));
}

Eigen::Vector2cd SpinorWavefunction::operator()(const Eigen::Vector3d &x) const { return {up_(x), down_(x)}; }

namespace
{

Eigen::Matrix2cd spin_matrix(const EuclideanElement &first, const EuclideanElement &second, const Section &section,
                             bool scalar)
{
    if (scalar)
        return Eigen::Matrix2cd::Identity();
    return section(second.rotation).matrix() * section(first.rotation).matrix().adjoint();
}

// Centre of the Gaussian x -> g(L x + q) for g centred at c.
Eigen::Vector3d pulled_center(const Gaussian &g, const EuclideanElement &t)
{
    return t.rotation.matrix().transpose() * (g.center - t.shift);
}

} // namespace

QuadratureValue spinor_offdiagonal(const SpinorWavefunction &psi, const EuclideanElement &first,
                                   const EuclideanElement &second, const TestFunction &f, const Section &section,
                                   bool scalar, const QuadratureOptions &opts)
{
    const Eigen::Matrix2cd m = spin_matrix(first, second, section, scalar);
    QuadratureValue total;
    total.order = opts.order;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
        {
            const Gaussian &gj = psi.component(j);
            const Gaussian &gk = psi.component(k);
            if (m(j, k) == Complex{} || gj.amplitude == Complex{} || gk.amplitude == Complex{})
                continue;
            // Recentre on the product of the two Gaussian factors and integrate
            // the remaining smooth part against that weight.
            const Eigen::Vector3d a = pulled_center(gj, second);
            const Eigen::Vector3d b = pulled_center(gk, first);
            const double pj = 1.0 / (gj.width * gj.width);
            const double pk = 1.0 / (gk.width * gk.width);
            const double p = pj + pk;
            const Eigen::Vector3d mu = (pj * a + pk * b) / p;
            const auto integrand = [&](const Eigen::Vector3d &x) {
                const Eigen::Vector3d y2 = second.rotation.matrix() * x + second.shift;
                const Eigen::Vector3d y1 = first.rotation.matrix() * x + first.shift;
                // Gaussian exponents combined before exponentiating, so the
                // weight never underflows at far nodes.
                const double exponent = -(y2 - gj.center).squaredNorm() * pj / 2.0 -
                                        (y1 - gk.center).squaredNorm() * pk / 2.0 +
                                        0.5 * p * (x - mu).squaredNorm();
                return f(x) * std::conj(gj.amplitude) * gk.amplitude * std::exp(exponent);
            };
            const auto part = gaussian_weighted_integral(integrand, mu, p, opts);
            total.value += m(j, k) * part.value;
            total.error_estimate += std::abs(m(j, k)) * part.error_estimate;
            total.order = std::max(total.order, part.order);
        }
    return total;
}

Complex spinor_offdiagonal_exact(const SpinorWavefunction &psi, const EuclideanElement &first,
                                 const EuclideanElement &second, const Section &section, bool scalar)
{
    const Eigen::Matrix2cd m = spin_matrix(first, second, section, scalar);
    Complex total = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
        {
            const Gaussian &gj = psi.component(j);
            const Gaussian &gk = psi.component(k);
            const double s2 = gj.width * gj.width;
            const double t2 = gk.width * gk.width;
            const double d2 = (pulled_center(gj, second) - pulled_center(gk, first)).squaredNorm();
            const double overlap = std::pow(2.0 * kPi * s2 * t2 / (s2 + t2), 1.5) * std::exp(-d2 / (2.0 * (s2 + t2)));
            total += m(j, k) * std::conj(gj.amplitude) * gk.amplitude * overlap;
        }
    return total;
}

SpinDemoResult spin_demo(double width, const Eigen::Vector3d &shift, const Section &section,
                         const QuadratureOptions &opts, double magnitude_floor)
{
    const Gaussian phi = Gaussian::normalized(Eigen::Vector3d::Zero(), width);
    const Gaussian none{Eigen::Vector3d::Zero(), width, 0.0};
    const SpinorWavefunction up(phi, none);
    const SpinorWavefunction down(none, phi);
    const EuclideanElement rotated{shift, So3::axis_angle(Eigen::Vector3d::UnitZ(), kPi)};
    const EuclideanElement origin{};
    const TestFunction one = [](const Eigen::Vector3d &) { return Complex{1.0}; };

    SpinDemoResult out;
    out.up = spinor_offdiagonal(up, rotated, origin, one, section, false, opts);
    out.down = spinor_offdiagonal(down, rotated, origin, one, section, false, opts);
    out.scalar_up = spinor_offdiagonal(up, rotated, origin, one, section, true, opts);
    out.scalar_down = spinor_offdiagonal(down, rotated, origin, one, section, true, opts);
    if (std::abs(out.up.value) > magnitude_floor)
        out.ratio = out.down.value / out.up.value;
    if (std::abs(out.scalar_up.value) > magnitude_floor)
        out.scalar_ratio = out.scalar_down.value / out.scalar_up.value;
    return out;
}

// -- standard representation on a periodic grid -----------------------------------

namespace
{

Index grid_size(const GridSpec &grid)
{
    if (grid.dims < 1 || grid.dims > 3)
        throw InputError("grid dimension must be 1, 2 or 3");
    if (grid.sites < 1 || !(grid.spacing > 0.0))
        throw InputError("grid needs at least one site and a positive spacing");
    Index total = 1;
    for (int d = 0; d < grid.dims; ++d)
        total *= grid.sites;
    if (total > (Index{1} << 22))
        throw InputError("grid too large");
    return total;
}

} // namespace

GridCheckResult standard_covariance_check(const GridSpec &grid, const Eigen::VectorXd &shift, std::uint64_t seed)
{
    const Index total = grid_size(grid);
    if (shift.size() != grid.dims)
        throw InputError("shift has " + std::to_string(shift.size()) + " components, grid has " +
                         std::to_string(grid.dims) + " axes");
    GridCheckResult out;
    for (int d = 0; d < grid.dims; ++d)
    {
        const double steps = shift(d) / grid.spacing;
        const double rounded = std::round(steps);
        if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
            throw InputError("shift component " + std::to_string(shift(d)) + " is not a multiple of the spacing");
        out.displacement.push_back(static_cast<long>(rounded));
    }

    const auto n = static_cast<long>(grid.sites);
    // Site index of x - q for the site with index `s`.
    const auto moved = [&](Index s) {
        Index result = 0;
        Index stride = 1;
        for (int d = 0; d < grid.dims; ++d)
        {
            const long c = static_cast<long>((s / stride) % grid.sites);
            const long m = ((c - out.displacement[d]) % n + n) % n;
            result += static_cast<Index>(m) * stride;
            stride *= grid.sites;
        }
        return result;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector f(static_cast<Eigen::Index>(total));
    for (Index s = 0; s < total; ++s)
        f(static_cast<Eigen::Index>(s)) = Complex(normal(rng), normal(rng));

    using Sparse = Eigen::SparseMatrix<Complex>;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(total);
    // (U psi)(x) = psi(x - q): row x picks column x - q.
    for (Index s = 0; s < total; ++s)
        trip.emplace_back(static_cast<int>(s), static_cast<int>(moved(s)), 1.0);
    Sparse u(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    u.setFromTriplets(trip.begin(), trip.end());

    trip.clear();
    for (Index s = 0; s < total; ++s)
        trip.emplace_back(static_cast<int>(s), static_cast<int>(s), f(static_cast<Eigen::Index>(s)));
    Sparse pi_f(u.rows(), u.cols());
    pi_f.setFromTriplets(trip.begin(), trip.end());

    trip.clear();
    for (Index s = 0; s < total; ++s)
        trip.emplace_back(static_cast<int>(s), static_cast<int>(s), f(static_cast<Eigen::Index>(moved(s))));
    Sparse pi_shifted(u.rows(), u.cols());
    pi_shifted.setFromTriplets(trip.begin(), trip.end());

    const Sparse conj = u * pi_f * Sparse(u.adjoint());
    const Sparse diff = conj - pi_shifted;
    double res = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (Sparse::InnerIterator it(diff, k); it; ++it)
            res = std::max(res, std::abs(it.value()));
    out.covariance_residual = res;
    return out;
}

CcrResult ccr_check(int dims, double h0, int levels, double box)
{
    if (dims < 1 || dims > 3)
        throw InputError("CCR check supports 1 to 3 dimensions");
    if (!(h0 > 0.0) || levels < 2 || !(box > 0.0))
        throw InputError("CCR check needs h0 > 0, at least two levels and a positive box");

    CcrResult out;
    double h = h0;
    for (int level = 0; level < levels; ++level, h /= 2.0)
    {
        const long n = std::lround(box / h);
        Index total = 1;
        for (int d = 0; d < dims; ++d)
            total *= static_cast<Index>(n);
        if (total > (Index{1} << 24))
            throw InputError("CCR grid too large");

        std::vector<Eigen::VectorXd> coords(total, Eigen::VectorXd(dims));
        Vector psi(static_cast<Eigen::Index>(total));
        for (Index s = 0; s < total; ++s)
        {
            Index rest = s;
            for (int d = 0; d < dims; ++d)
            {
                coords[s](d) = -0.5 * box + h * static_cast<double>(rest % static_cast<Index>(n));
                rest /= static_cast<Index>(n);
            }
            // Smooth test vector, negligible at the boundary.
            psi(static_cast<Eigen::Index>(s)) = std::exp(-0.5 * coords[s].squaredNorm() + Complex(0, 0.3) * coords[s].sum());
        }

        Index stride = 1;
        std::vector<Index> strides;
        for (int d = 0; d < dims; ++d, stride *= static_cast<Index>(n))
            strides.push_back(stride);

        // Central difference along axis k; zero outside the box.
        const auto p_apply = [&](const Vector &v, int k) {
            Vector out_v = Vector::Zero(v.size());
            for (Index s = 0; s < total; ++s)
            {
                const long c = static_cast<long>((s / strides[k]) % static_cast<Index>(n));
                const Complex plus = c + 1 < n ? v(static_cast<Eigen::Index>(s + strides[k])) : Complex{};
                const Complex minus = c > 0 ? v(static_cast<Eigen::Index>(s - strides[k])) : Complex{};
                out_v(static_cast<Eigen::Index>(s)) = Complex(0, -1) * (plus - minus) / (2.0 * h);
            }
            return out_v;
        };

        double diag = 0.0;
        for (int j = 0; j < dims; ++j)
        {
            Vector xpsi(psi.size());
            for (Index s = 0; s < total; ++s)
                xpsi(static_cast<Eigen::Index>(s)) = coords[s](j) * psi(static_cast<Eigen::Index>(s));
            for (int k = 0; k < dims; ++k)
            {
                const Vector ppsi = p_apply(psi, k);
                const Vector pxpsi = p_apply(xpsi, k);
                for (Index s = 0; s < total; ++s)
                {
                    const auto i = static_cast<Eigen::Index>(s);
                    const Complex comm = coords[s](j) * ppsi(i) - pxpsi(i);
                    const Complex expected = j == k ? Complex(0, 1) * psi(i) : Complex{};
                    const double r = std::abs(comm - expected);
                    if (j == k)
                        diag = std::max(diag, r);
                    else
                        out.cross_residual = std::max(out.cross_residual, r);
                }
            }
        }
        out.spacings.push_back(h);
        out.residuals.push_back(diag);
    }
    for (std::size_t i = 0; i + 1 < out.residuals.size(); ++i)
        out.ratios.push_back(out.residuals[i] / out.residuals[i + 1]);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(out.residuals.size());
    for (std::size_t i = 0; i < out.residuals.size(); ++i)
    {
        const double lx = std::log(out.spacings[i]);
        const double ly = std::log(out.residuals[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    out.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

} // namespace covsys
