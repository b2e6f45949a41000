#include <random>

#include <gtest/gtest.h>

#include <covsys/galilei.hpp>

using namespace covsys;

namespace
{

const TestFunction one = [](const Eigen::Vector3d &) { return Complex{1.0}; };

// Midpoint rule on a cube, for cross-checking the quadrature.
Complex riemann(const SpinorWavefunction &psi, const EuclideanElement &first, const EuclideanElement &second,
                const TestFunction &f, double half_width, int n)
{
    const Eigen::Matrix2cd m = so3_section(second.rotation).matrix() * so3_section(first.rotation).matrix().adjoint();
    const double h = 2.0 * half_width / n;
    Complex s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                const Eigen::Vector3d x(-half_width + (i + 0.5) * h, -half_width + (j + 0.5) * h,
                                        -half_width + (k + 0.5) * h);
                const Eigen::Vector2cd a = psi(second.rotation.matrix() * x + second.shift);
                const Eigen::Vector2cd b = psi(first.rotation.matrix() * x + first.shift);
                s += f(x) * a.dot(m * b);
            }
    return s * h * h * h;
}

} // namespace

TEST(Quadrature, GaussHermiteMoments)
{
    for (int order : {1, 2, 5, 40, 80})
    {
        const auto &r = gauss_hermite(order);
        double w = 0.0, m2 = 0.0, m4 = 0.0;
        for (int i = 0; i < order; ++i)
        {
            w += r.weights[i];
            m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
            m4 += r.weights[i] * std::pow(r.nodes[i], 4);
        }
        EXPECT_NEAR(w, std::sqrt(kPi), 1e-13) << order;
        if (order >= 2)
            EXPECT_NEAR(m2, std::sqrt(kPi) / 2, 1e-13) << order;
        if (order >= 3)
            EXPECT_NEAR(m4, 3 * std::sqrt(kPi) / 4, 1e-12) << order;
    }
    EXPECT_THROW(gauss_hermite(0), InputError);
}

TEST(Quadrature, NonConvergenceReportsEstimate)
{
    QuadratureOptions opts;
    opts.order = 8;
    opts.max_order = 16;
    const auto wild = [](const Eigen::Vector3d &x) { return Complex(std::cos(40.0 * x(0))); };
    try
    {
        gaussian_weighted_integral(wild, Eigen::Vector3d::Zero(), 1.0, opts);
        FAIL() << "expected NumericalError";
    }
    catch (const NumericalError &e)
    {
        EXPECT_NE(std::string(e.what()).find("error estimate"), std::string::npos);
    }
}

TEST(Spinor, NormalizationRequired)
{
    const auto g = Gaussian::normalized(Eigen::Vector3d::Zero(), 1.0);
    EXPECT_THROW(SpinorWavefunction(g, g), DomainError);
    Gaussian half = g;
    half.amplitude *= std::sqrt(0.5);
    EXPECT_NO_THROW(SpinorWavefunction(half, half));
}

TEST(Spinor, DiagonalNormalization)
{
    Gaussian a = Gaussian::normalized({0.3, -0.2, 0.1}, 0.8);
    Gaussian b = Gaussian::normalized({-0.5, 0.0, 0.4}, 1.3);
    a.amplitude *= std::sqrt(0.3);
    b.amplitude *= Complex(0, std::sqrt(0.7));
    const SpinorWavefunction psi(a, b);
    const auto v = spinor_offdiagonal(psi, {}, {}, one);
    EXPECT_NEAR(v.value.real(), 1.0, 1e-10);
    EXPECT_NEAR(v.value.imag(), 0.0, 1e-12);
}

TEST(Spinor, DiagonalEntriesIgnoreSpin)
{
    std::mt19937_64 rng(1);
    Gaussian a = Gaussian::normalized({0.3, -0.2, 0.1}, 0.8);
    Gaussian b = Gaussian::normalized({-0.5, 0.0, 0.4}, 1.3);
    a.amplitude *= std::sqrt(0.6);
    b.amplitude *= std::sqrt(0.4);
    const SpinorWavefunction psi(a, b);
    const TestFunction bump = [](const Eigen::Vector3d &x) { return Complex(1.0 / (1.0 + x.squaredNorm())); };
    for (int k = 0; k < 5; ++k)
    {
        const EuclideanElement t{Eigen::Vector3d::Random(), random_so3(rng)};
        const auto spin = spinor_offdiagonal(psi, t, t, bump);
        const auto scalar = spinor_offdiagonal(psi, t, t, bump, so3_section, true);
        EXPECT_NEAR(std::abs(spin.value - scalar.value), 0.0, 1e-12);
        EXPECT_GT(spin.value.real(), 0.0);
        EXPECT_NEAR(spin.value.imag(), 0.0, 1e-12);
    }
}

TEST(Spinor, QuadratureMatchesClosedForm)
{
    std::mt19937_64 rng(2);
    Gaussian a = Gaussian::normalized({0.3, -0.2, 0.1}, 0.8);
    Gaussian b = Gaussian::normalized({-0.5, 0.0, 0.4}, 1.3);
    a.amplitude *= std::sqrt(0.5);
    b.amplitude *= std::polar(std::sqrt(0.5), 0.7);
    const SpinorWavefunction psi(a, b);
    for (int k = 0; k < 10; ++k)
    {
        const EuclideanElement s{0.5 * Eigen::Vector3d::Random(), random_so3(rng)};
        const EuclideanElement t{0.5 * Eigen::Vector3d::Random(), random_so3(rng)};
        const auto q = spinor_offdiagonal(psi, s, t, one);
        const Complex exact = spinor_offdiagonal_exact(psi, s, t);
        EXPECT_LT(std::abs(q.value - exact), 1e-6 * std::max(1e-3, std::abs(exact)));
        EXPECT_LE(q.error_estimate, 1e-6 * std::max(1e-14, std::abs(q.value)) * 4);
    }
}

TEST(Spinor, QuadratureMatchesRiemannSum)
{
    Gaussian a = Gaussian::normalized({0.2, 0.0, -0.1}, 0.9);
    Gaussian b = Gaussian::normalized({0.0, 0.3, 0.0}, 1.1);
    a.amplitude *= std::sqrt(0.5);
    b.amplitude *= Complex(0, std::sqrt(0.5));
    const SpinorWavefunction psi(a, b);
    const EuclideanElement s{{0.1, 0.2, 0.0}, So3::axis_angle(Eigen::Vector3d(1, 1, 0).normalized(), 0.9)};
    const EuclideanElement t{{-0.3, 0.0, 0.1}, So3::axis_angle(Eigen::Vector3d::UnitZ(), 2.0)};
    const TestFunction f = [](const Eigen::Vector3d &x) { return Complex(1.0 / (1.0 + x.squaredNorm()), 0.2 * x(0)); };
    const Complex q = spinor_offdiagonal(psi, s, t, f).value;
    const Complex r = riemann(psi, s, t, f, 7.0, 70);
    EXPECT_LT(std::abs(q - r), 1e-6);
}

TEST(SpinDemo, MinusSignFromSpin)
{
    const auto r = spin_demo(1.0, Eigen::Vector3d::Zero());
    ASSERT_TRUE(r.ratio.has_value());
    EXPECT_NEAR(r.ratio->real(), -1.0, 1e-6);
    EXPECT_NEAR(r.ratio->imag(), 0.0, 1e-6);
    ASSERT_TRUE(r.scalar_ratio.has_value());
    EXPECT_NEAR(r.scalar_ratio->real(), 1.0, 1e-6);
    // |value| is the overlap of phi with its rotated copy, 1 for a centred Gaussian.
    EXPECT_NEAR(std::abs(r.up.value), 1.0, 1e-10);
}

TEST(SpinDemo, ShiftedAndSectionIndependent)
{
    const Section flipped = [](const So3 &l) { return -so3_section(l); };
    for (const Eigen::Vector3d q : {Eigen::Vector3d(0.4, -0.3, 0.2), Eigen::Vector3d(1.0, 0.0, 0.5)})
        for (const Section &sec : {Section(so3_section), flipped})
        {
            const auto r = spin_demo(0.9, q, sec);
            ASSERT_TRUE(r.ratio.has_value());
            EXPECT_NEAR(std::abs(*r.ratio + 1.0), 0.0, 1e-6);
            EXPECT_NEAR(std::abs(*r.scalar_ratio - 1.0), 0.0, 1e-6);
        }
}

TEST(SpinDemo, FarShiftSkipsRatio)
{
    const auto r = spin_demo(0.5, Eigen::Vector3d(30.0, 0.0, 0.0));
    EXPECT_LT(std::abs(r.up.value), 1e-10);
    EXPECT_FALSE(r.ratio.has_value());
}

TEST(Grid, ZeroAndOneSiteShift)
{
    const GridSpec grid{1, 64, 0.25};
    EXPECT_EQ(standard_covariance_check(grid, Eigen::VectorXd::Zero(1)).covariance_residual, 0.0);
    const auto r = standard_covariance_check(grid, Eigen::VectorXd::Constant(1, 0.25), 7);
    EXPECT_LT(r.covariance_residual, 1e-14);
    EXPECT_EQ(r.displacement, std::vector<long>{1});
}

TEST(Grid, HigherDimensionsAndWrap)
{
    Eigen::VectorXd q(2);
    q << -0.5, 3.0;
    EXPECT_LT(standard_covariance_check({2, 16, 0.5}, q).covariance_residual, 1e-14);
    Eigen::VectorXd q3(3);
    q3 << 1.0, 0.0, -2.0;
    EXPECT_LT(standard_covariance_check({3, 8, 1.0}, q3).covariance_residual, 1e-14);
}

TEST(Grid, IncommensurateShiftRejected)
{
    EXPECT_THROW(standard_covariance_check({1, 64, 0.25}, Eigen::VectorXd::Constant(1, 0.3)), InputError);
    EXPECT_THROW(standard_covariance_check({2, 8, 1.0}, Eigen::VectorXd::Constant(1, 1.0)), InputError);
}

TEST(Ccr, SecondOrderConvergence)
{
    const auto r = ccr_check(1, 0.2, 4);
    ASSERT_EQ(r.ratios.size(), 3u);
    for (double ratio : r.ratios)
        EXPECT_NEAR(ratio, 4.0, 0.1);
    EXPECT_NEAR(r.order, 2.0, 0.05);
    EXPECT_EQ(r.cross_residual, 0.0);
}

TEST(Ccr, MixedCommutatorsVanish)
{
    const auto r = ccr_check(2, 0.2, 2, 12.0);
    EXPECT_LT(r.cross_residual, 1e-12);
    EXPECT_NEAR(r.ratios[0], 4.0, 0.2);
}
