#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace covsys;
using namespace testing_support;

namespace
{

Representation single_clock_shift(Index n)
{
    Representation rep;
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            rep.u.push_back(matrix_power(shift_matrix(n), b) * matrix_power(clock_matrix(n), a));
    rep.pi.push_back(Matrix::Identity(n, n));
    rep.omega = Vector::Zero(n);
    rep.omega(0) = 1.0;
    return rep;
}

} // namespace

TEST(States, HeisenbergDeltaStatePasses)
{
    const auto omega = heisenberg_delta_state(3);
    const auto report = validate_state(omega);
    EXPECT_TRUE(report.pass());
    EXPECT_LT(report.at("covariance").max_residual, 1e-15);
    EXPECT_GE(report.at("positivity").max_residual, 0.0);
}

TEST(States, DeltaTimesPureStateOfFunctionAlgebra)
{
    // omega_{x,y} = delta_{x,y} ev_0 on C({0,1}) with trivial action and a
    // central unitary zeta taken from the Z_2 sign cocycle.
    const auto alg = Algebra::function_algebra(2);
    const auto g = FiniteGroup::cyclic(2);
    const CovarianceSystem sys(alg, g);
    std::vector<Matrix> z(4, alg.identity());
    z[3] = -alg.identity();
    const RightMultiplier zeta(alg, g, {}, z);
    Vector ev0 = Vector::Zero(2);
    ev0(0) = 1.0;
    EXPECT_TRUE(validate_state(diagonal_state(sys, ev0, zeta)).pass());
}

TEST(States, Z2SwapFromRepresentation)
{
    const auto sys = z2_swap_system();
    const auto rep = z2_swap_rep();
    const auto omega = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    // Hand computation: U(1)* e_0 = e_1.
    EXPECT_EQ(omega.on_basis(0, 0, 0), Complex(1.0));
    EXPECT_EQ(omega.on_basis(0, 0, 1), Complex(0.0));
    EXPECT_EQ(omega.on_basis(1, 1, 0), Complex(0.0));
    EXPECT_EQ(omega.on_basis(1, 1, 1), Complex(1.0));
    for (Index i = 0; i < 2; ++i)
    {
        EXPECT_EQ(omega.on_basis(0, 1, i), Complex(0.0));
        EXPECT_EQ(omega.on_basis(1, 0, i), Complex(0.0));
    }
    EXPECT_TRUE(validate_state(omega).pass());
}

TEST(States, TrivialGroupVectorState)
{
    const auto alg = Algebra::matrix_algebra(2);
    const CovarianceSystem sys(alg, FiniteGroup::trivial());
    std::mt19937_64 rng(1);
    Representation rep;
    for (Index i = 0; i < alg.dimension(); ++i)
        rep.pi.push_back(alg.basis(i));
    rep.u.push_back(Matrix::Identity(2, 2));
    rep.omega = random_matrix(2, 1, rng).col(0).normalized();
    const auto omega = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    for (Index i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(omega.on_basis(0, 0, i) - rep.omega.dot(alg.basis(i) * rep.omega)), 0.0, 1e-15);
    EXPECT_TRUE(validate_state(omega).pass());
}

TEST(States, WeylPairRecoversHeisenbergMultiplier)
{
    const auto sys = heisenberg_system(3);
    const auto rep = single_clock_shift(3);
    const auto omega = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    const auto oracle = heisenberg_zeta(3);
    for (Index x = 0; x < 9; ++x)
        for (Index y = 0; y < 9; ++y)
            EXPECT_LT(std::abs(omega.zeta()(x, y)(0, 0) - oracle(x, y)(0, 0)), 1e-12);
    const auto report = validate_state(omega);
    EXPECT_TRUE(report.pass());
}

TEST(States, PerturbedEntryFailsWithWitness)
{
    auto omega = heisenberg_delta_state(3);
    omega.on_basis(2, 5, 0) += 0.1;
    const auto report = validate_state(omega);
    EXPECT_FALSE(report.pass());
    const auto &cov = report.at("covariance");
    EXPECT_FALSE(cov.pass);
    EXPECT_FALSE(cov.witness.empty());
    EXPECT_FALSE(report.at("hermiticity").pass);
}

TEST(States, NonCovariantRepresentationRejected)
{
    const auto sys = z2_swap_system();
    auto rep = z2_swap_rep();
    rep.u[1] = Matrix::Identity(2, 2); // cannot implement the swap
    try
    {
        state_from_rep(sys, rep.pi, rep.u, rep.omega);
        FAIL() << "expected CovarianceError";
    }
    catch (const CovarianceError &e)
    {
        EXPECT_EQ(e.x(), 1u);
        EXPECT_GT(e.residual(), 0.5);
    }
}

TEST(States, InvalidZetaIsPreconditionFailure)
{
    auto zeta = heisenberg_zeta(2);
    zeta.at(1, 2) *= Complex(0, 1);
    const auto sys = heisenberg_system(2);
    std::vector<Complex> values(16, 0.0);
    for (Index x = 0; x < 4; ++x)
        values[x * 4 + x] = 1.0;
    const CovariantState omega(sys, values, zeta);
    const auto report = validate_state(omega);
    EXPECT_FALSE(report.pass());
    const auto *c = report.find("zeta_cocycle");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->pass);
}

TEST(States, GramMatrixExamples)
{
    const auto omega = heisenberg_delta_state(3);
    const Matrix one = Matrix::Identity(1, 1);
    const Matrix g1 = gram_matrix(omega, {{1.0, 0, one}});
    EXPECT_EQ(g1(0, 0), Complex(1.0));

    const Family dup{{Complex(0.3, 0.2), 4, one}, {Complex(0.3, 0.2), 4, one}, {1.0, 2, one}};
    const Matrix g = gram_matrix(omega, dup);
    EXPECT_LT(max_diff(g, g.adjoint()), 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    EXPECT_NEAR(es.eigenvalues().minCoeff(), 0.0, 1e-12);
    EXPECT_THROW(gram_matrix(omega, {}), InputError);
}

TEST(States, RandomFamiliesOnRepresentationState)
{
    std::mt19937_64 rng(2);
    const auto alg = Algebra::matrix_algebra(2);
    const auto g = FiniteGroup::cyclic(2);
    // Z_2 acting on M_2 by Ad(sigma_z), implemented by U(1) = sigma_z (x) 1 on C^2 (x) C^2.
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const CovarianceSystem sys(alg, g, {Automorphism::identity(alg), Automorphism::conjugation(alg, sz)});
    Representation rep;
    for (Index i = 0; i < 4; ++i)
        rep.pi.push_back(kron(alg.basis(i), Matrix::Identity(2, 2)));
    rep.u = {Matrix::Identity(4, 4), kron(sz, Matrix::Identity(2, 2))};
    rep.omega = random_matrix(4, 1, rng).col(0).normalized();
    const auto omega = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    const auto families = random_families(sys, 120, 4, 77);
    for (const auto &f : families)
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram_matrix(omega, f));
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    }
    StateValidationOptions opts;
    opts.families = 120;
    const auto report = validate_state(omega, families, opts);
    EXPECT_TRUE(report.pass());
    EXPECT_EQ(report.at("schwarz").max_residual, 0.0);
    EXPECT_EQ(report.at("norm_bound").max_residual, 0.0);
    EXPECT_LT(report.at("covariance").max_residual, 1e-12);
}
