#include <random>

#include <gtest/gtest.h>

#include <covsys/groups.hpp>
#include <covsys/qst.hpp>

using namespace covsys;

namespace
{

Real4 minkowski() { return Eigen::Vector4d(1, -1, -1, -1).asDiagonal(); }

Vec8 random_point(std::mt19937_64 &rng, double scale = 1.0)
{
    std::normal_distribution<double> n(0.0, scale);
    Vec8 x;
    for (int i = 0; i < 8; ++i)
        x(i) = n(rng);
    return x;
}

QstParams three_atoms()
{
    QstParams p;
    p.atoms = {Atom{Real4::Identity(), 0.5}, Atom{lorentz_boost(2, 0.4), 0.3},
               Atom{lorentz_rotation(So3::axis_angle(Eigen::Vector3d(1, 2, 0).normalized(), 0.8)) *
                        lorentz_boost(3, -0.25),
                    0.2}};
    return p;
}

// Independent closed form: the kernel is Gaussian in the Weyl coordinate, so
// its Hessian at the origin is sum_a w_a G^{-1}(T + (i/2)s eps)G^{-T}.
Complex4 moments_oracle(const QstParams &p)
{
    Complex4 m = Complex4::Zero();
    const Real4 ginv = p.gamma.inverse();
    for (const auto &atom : p.atoms)
    {
        const Real4 l = atom.lorentz;
        const Real4 t = l.transpose() * p.c * l;
        const Real4 eps = l.transpose() * epsilon_matrix(SigmaPoint::base()) * l;
        // A Lorentz transformation preserves the sign e.m of the base point.
        m += atom.weight * (ginv.cast<Complex>() * (t.cast<Complex>() + Complex(0, 0.5) * eps.cast<Complex>()) *
                            ginv.transpose().cast<Complex>());
    }
    return m;
}

} // namespace

TEST(Sigma, EpsilonMatrixLayout)
{
    const Real4 eps = epsilon_matrix(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(4, 5, 6));
    Real4 expect;
    expect << 0, 1, 2, 3, -1, 0, 6, -5, -2, -6, 0, 4, -3, 5, -4, 0;
    EXPECT_EQ(eps, expect);
    EXPECT_EQ(eps.transpose(), -eps);

    const Real4 e0 = epsilon_matrix(SigmaPoint::base());
    EXPECT_LT((e0 * e0 + Real4::Identity()).norm(), 1e-15);
}

TEST(Sigma, InvariantsEnforced)
{
    EXPECT_THROW(SigmaPoint(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)), DomainError);
    EXPECT_THROW(SigmaPoint(Eigen::Vector3d(2, 0, 0), Eigen::Vector3d(0.5, 0, 0)), DomainError);
    const SigmaPoint minus(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(-1, 0, 0));
    EXPECT_EQ(minus.sign(), -1.0);
    EXPECT_EQ(SigmaPoint::base().sign(), 1.0);
}

TEST(Sigma, FromEpsilonRoundTrip)
{
    const SigmaPoint p(Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(1, 0, 1));
    const SigmaPoint q = SigmaPoint::from_epsilon(epsilon_matrix(p));
    EXPECT_LT((q.e() - p.e()).norm(), 1e-15);
    EXPECT_LT((q.m() - p.m()).norm(), 1e-15);
}

TEST(Sigma, EtaExamples)
{
    const Real4 eps = epsilon_matrix(SigmaPoint::base());
    EXPECT_LT((eta_matrix(SigmaPoint::base(), eps) - Real4::Identity()).norm(), 1e-15);
    const SigmaPoint minus(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(-1, 0, 0));
    const Real4 em = epsilon_matrix(minus);
    EXPECT_LT((eta_matrix(minus, em) + Real4::Identity()).norm(), 1e-15);
    // eta = s eps^{-1} gamma with eps^{-1} = -eps for the base point.
    EXPECT_LT((eta_matrix(SigmaPoint::base(), minkowski()) + eps * minkowski()).norm(), 1e-15);
}

TEST(Transport, BoostReadBack)
{
    const Real4 c = 0.5 * Real4::Identity();
    const Real4 l = lorentz_boost(2, 0.3);
    const Transported tr = transport_T(c, l);
    const Real4 eps = l.transpose() * epsilon_matrix(SigmaPoint::base()) * l;
    EXPECT_LT((epsilon_matrix(tr.point) - eps).norm(), 1e-12);
    EXPECT_NEAR(tr.point.e().norm(), tr.point.m().norm(), 1e-12);
    EXPECT_NEAR(tr.point.e().dot(tr.point.m()), 1.0, 1e-12);
    EXPECT_LT((tr.t - l.transpose() * c * l).norm(), 1e-14);

    Real4 bad = Real4::Identity();
    bad(0, 1) = 0.1;
    EXPECT_THROW(transport_T(c, bad), DomainError);
}

TEST(Model, RejectsBadParameters)
{
    QstParams p;
    p.atoms.clear();
    EXPECT_THROW(QstModel{p}, InputError);
    p.atoms = {Atom{Real4::Identity(), 0.0}};
    EXPECT_THROW(QstModel{p}, InputError);
    p = QstParams{};
    p.gamma(3, 3) = 0.0;
    EXPECT_THROW(QstModel{p}, InputError);
}

TEST(Model, DefaultParametersValid)
{
    const QstModel model{QstParams{}};
    EXPECT_TRUE(validate_params(model).pass());
    EXPECT_NEAR(model.positivity_margin(), 0.0, 1e-14);
    EXPECT_TRUE(validate_params(QstModel{three_atoms()}).pass());
}

TEST(Kernel, NormalizationAndDiagonal)
{
    const QstModel model{three_atoms()};
    std::mt19937_64 rng(3);
    EXPECT_NEAR(std::abs(quasifree_kernel(model, Vec8::Zero(), Vec8::Zero()) - 1.0), 0.0, 1e-15);
    for (int k = 0; k < 10; ++k)
    {
        const Vec8 x = random_point(rng);
        EXPECT_NEAR(std::abs(quasifree_kernel(model, x, x) - 1.0), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(atom_kernel(model.atoms()[1], x, x) - 1.0), 0.0, 1e-13);
    }
    const AtomFunction f = [](Index i) { return i == 0 ? 2.0 : 0.0; };
    EXPECT_NEAR(quasifree_kernel(model, Vec8::Zero(), Vec8::Zero(), f).real(), 1.0, 1e-15);
}

TEST(Kernel, HermitianAndTranslationCovariantModulus)
{
    const QstModel model{three_atoms()};
    std::mt19937_64 rng(4);
    for (int k = 0; k < 10; ++k)
    {
        const Vec8 x = random_point(rng), y = random_point(rng), z = random_point(rng);
        EXPECT_NEAR(std::abs(quasifree_kernel(model, x, y) - std::conj(quasifree_kernel(model, y, x))), 0.0, 1e-14);
        const QstModel single{QstParams{}};
        EXPECT_NEAR(std::abs(quasifree_kernel(single, x + z, y + z)), std::abs(quasifree_kernel(single, x, y)),
                    1e-13);
    }
}

TEST(Multiplier, NormalizedBilinearCocycle)
{
    std::mt19937_64 rng(5);
    const SigmaPoint p = SigmaPoint::base();
    const Real4 g = minkowski();
    for (int k = 0; k < 10; ++k)
    {
        const Vec8 x = random_point(rng), y = random_point(rng), z = random_point(rng);
        EXPECT_NEAR(std::abs(qst_multiplier(p, g, Vec8::Zero(), x) - 1.0), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(qst_multiplier(p, g, x, x) - 1.0), 0.0, 1e-13);
        const Complex lhs = qst_multiplier(p, g, x, y) * qst_multiplier(p, g, x + y, z);
        const Complex rhs = qst_multiplier(p, g, x, y + z) * qst_multiplier(p, g, y, z);
        EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
    }
}

TEST(Commutators, ExplicitEntries)
{
    const auto f = commutator_forms(SigmaPoint::base(), minkowski());
    const Complex i(0, 1);
    EXPECT_NEAR(std::abs(f.qq(0, 1) - i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.qq(2, 3) + i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.kk(0, 1) + i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.kq(0, 0) + i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.kq(1, 1) - i), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.kq(0, 1)), 0.0, 1e-15);
}

TEST(Commutators, MatchWeylRelations)
{
    std::mt19937_64 rng(6);
    for (int k = 0; k < 5; ++k)
    {
        const Real4 l = lorentz_rotation(random_so3(rng)) * lorentz_boost(1 + k % 3, 0.2 * k);
        const SigmaPoint p = transport_T(Real4::Identity(), l).point;
        Real4 gamma = Real4::Random() + 3.0 * Real4::Identity();
        const Complex8 assembled = assemble_commutators(commutator_forms(p, gamma));
        const Complex8 weyl = weyl_commutators(p, gamma);
        EXPECT_LT((assembled - weyl).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, assembled.cwiseAbs().maxCoeff()));
        EXPECT_LT((assembled + assembled.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Moments, BaseAgreesWithKernelDerivatives)
{
    const QstModel model{QstParams{}};
    const Complex4 oracle = moments_oracle(model.params());
    EXPECT_LT((second_moments(model) - oracle).cwiseAbs().maxCoeff(), 1e-14);
    const auto k = moments_via_kernel(model);
    EXPECT_LT((k.refined - oracle).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(k.slope, 2.0, 0.1);
}

TEST(Moments, AntisymmetricPartIsCommutator)
{
    const QstModel model{QstParams{}};
    const Complex4 m = second_moments(model);
    const auto f = commutator_forms(SigmaPoint::base(), model.params().gamma);
    // (Q_nu Q_mu - Q_mu Q_nu) Omega, Omega) = [Q_nu, Q_mu].
    EXPECT_LT((m - m.transpose() - f.qq.transpose()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Moments, ThreeAtomMeasure)
{
    const QstModel model{three_atoms()};
    const Complex4 oracle = moments_oracle(model.params());
    EXPECT_LT((second_moments(model) - oracle).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((moments_via_kernel(model).refined - oracle).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT(first_moments(model).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Moments, StepRange)
{
    const QstModel model{QstParams{}};
    EXPECT_THROW(moments_via_kernel(model, 1e-6), InputError);
    EXPECT_THROW(moments_via_kernel(model, 0.5), InputError);
}

TEST(Gram, RepeatedPointIsSingular)
{
    const QstModel model{QstParams{}};
    std::mt19937_64 rng(7);
    const Vec8 x = random_point(rng);
    const Eigen::MatrixXcd g = qst_gram(model, {x, x});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(1), 2.0, 1e-14);
    EXPECT_THROW(gram_positivity(model, {x}), InputError);
}

TEST(Gram, PositiveForValidParameters)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        std::mt19937_64 rng(seed);
        const auto pts = random_weyl_points(12, rng);
        EXPECT_GT(gram_positivity(QstModel{QstParams{}}, pts), -1e-10) << seed;
        EXPECT_GT(gram_positivity(QstModel{three_atoms()}, pts), -1e-10) << seed;
    }
}

TEST(Gram, SmallCovarianceViolatesPositivity)
{
    QstParams p;
    p.c = 0.01 * Real4::Identity();
    const QstModel model{p};
    EXPECT_LT(model.positivity_margin(), 0.0);
    EXPECT_FALSE(validate_params(model).pass());
    std::mt19937_64 rng(1);
    EXPECT_LT(gram_positivity(model, random_weyl_points(12, rng)), -1e-3);
}

TEST(Stabilizer, BoostFixesEpsilonButNotC)
{
    const auto samples = stabilizer_check(0.5 * Real4::Identity());
    bool saw_boost = false, saw_rotation = false;
    for (const auto &s : samples)
    {
        EXPECT_LT(s.epsilon_residual, 1e-12) << s.label;
        if (s.label == "boost_x")
        {
            saw_boost = true;
            EXPECT_GT(s.c_residual, 0.1);
        }
        if (s.label == "rotation_x")
        {
            saw_rotation = true;
            EXPECT_LT(s.c_residual, 1e-12);
        }
    }
    EXPECT_TRUE(saw_boost);
    EXPECT_TRUE(saw_rotation);
}
