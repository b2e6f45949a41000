#include <random>

#include <gtest/gtest.h>

#include <covsys/crossed.hpp>

#include "support.hpp"

using namespace covsys;
using namespace testing_support;

namespace
{

// Hand-written finite sum for the product on Heisenberg Z_3 x Z_3, A = C.
Complex heisenberg_product_at(const CrossedElement &f, const CrossedElement &g, Index x)
{
    const Index n = 3;
    Complex s = 0.0;
    for (Index y = 0; y < 9; ++y)
    {
        const Index ya = y / n, yb = y % n, xa = x / n, xb = x % n;
        const Index r = ((xa + n - ya) % n) * n + (xb + n - yb) % n;
        s += f.values[y](0, 0) * root_of_unity(static_cast<long>(ya * (r % n)), 3) * g.values[r](0, 0);
    }
    return s;
}

} // namespace

TEST(Crossed, UnitIsNeutral)
{
    const auto omega = heisenberg_delta_state(3);
    const auto cp = CrossedProduct::from_state(omega);
    std::mt19937_64 rng(1);
    const auto g = cp.random(rng);
    EXPECT_LT(cp.distance(cp.convolve(cp.unit(), g), g), 1e-15);
    EXPECT_LT(cp.distance(cp.convolve(g, cp.unit()), g), 1e-15);
    EXPECT_LT(cp.distance(cp.involution(cp.unit()), cp.unit()), 1e-15);
}

TEST(Crossed, GroupAlgebraConvolutionOnZ3)
{
    const auto alg = Algebra::scalars();
    const auto g = FiniteGroup::cyclic(3);
    const CrossedProduct cp(CovarianceSystem(alg, g), LeftMultiplier::trivial(alg, g));
    std::mt19937_64 rng(2);
    const auto f = cp.random(rng), h = cp.random(rng);
    const auto p = cp.convolve(f, h);
    for (Index x = 0; x < 3; ++x)
    {
        Complex expected = 0.0;
        for (Index y = 0; y < 3; ++y)
            expected += f.values[y](0, 0) * h.values[(x + 3 - y) % 3](0, 0);
        EXPECT_LT(std::abs(p.values[x](0, 0) - expected), 1e-14);
    }
}

TEST(Crossed, HeisenbergProductMatchesHandSum)
{
    const auto cp = CrossedProduct::from_state(heisenberg_delta_state(3));
    std::mt19937_64 rng(3);
    const auto f = cp.random(rng), g = cp.random(rng);
    const auto p = cp.convolve(f, g);
    for (Index x = 0; x < 9; ++x)
        EXPECT_LT(std::abs(p.values[x](0, 0) - heisenberg_product_at(f, g, x)), 1e-13);
}

TEST(Crossed, HeisenbergDeltaCommutationPhase)
{
    const auto cp = CrossedProduct::from_state(heisenberg_delta_state(3));
    const Matrix one = Matrix::Identity(1, 1);
    const auto a = cp.delta(1 * 3 + 0, one);
    const auto b = cp.delta(0 * 3 + 1, one);
    const auto ab = cp.convolve(a, b);
    const auto ba = cp.convolve(b, a);
    const Index target = 1 * 3 + 1;
    for (Index x = 0; x < 9; ++x)
        if (x != target)
        {
            EXPECT_EQ(ab.values[x](0, 0), Complex(0.0));
            EXPECT_EQ(ba.values[x](0, 0), Complex(0.0));
        }
    EXPECT_LT(std::abs(ab.values[target](0, 0) / ba.values[target](0, 0) - root_of_unity(1, 3)), 1e-14);
}

TEST(Crossed, InvolutionOfDelta)
{
    const auto cp = CrossedProduct::from_state(heisenberg_delta_state(3));
    const auto s = cp.involution(cp.delta(3, Matrix::Identity(1, 1)));
    // (1,0) maps to (2,0) with phase xi((2,0),(1,0))*.
    for (Index x = 0; x < 9; ++x)
        EXPECT_EQ(s.values[x](0, 0), x == 6 ? std::conj(cp.xi()(6, 3)(0, 0)) : Complex(0.0));
    const auto t = cp.involution(cp.delta(4, Matrix::Identity(1, 1)));
    // (1,1)^{-1} = (2,2); xi((2,2),(1,1)) = w^{2*1}.
    EXPECT_LT(std::abs(t.values[8](0, 0) - std::conj(root_of_unity(2, 3))), 1e-15);
}

TEST(Crossed, AlgebraicIdentitiesOnRandomElements)
{
    const auto cp = CrossedProduct::from_state(heisenberg_delta_state(3));
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k)
    {
        const auto f = cp.random(rng), g = cp.random(rng), h = cp.random(rng);
        EXPECT_LT(cp.distance(cp.convolve(cp.convolve(f, g), h), cp.convolve(f, cp.convolve(g, h))), 1e-12);
        EXPECT_LT(cp.distance(cp.involution(cp.convolve(f, g)), cp.convolve(cp.involution(g), cp.involution(f))),
                  1e-12);
        EXPECT_LT(cp.distance(cp.involution(cp.involution(f)), f), 1e-14);
        EXPECT_NEAR(cp.l1_norm(cp.involution(f)), cp.l1_norm(f), 1e-12);
    }
}

TEST(Crossed, NonCommutativeSystemIdentities)
{
    // M_2 with Z_2 x Z_2 acting through the Pauli group: a genuinely
    // operator-valued multiplier xi(x,y) = sigma_x(u(y)) type via a state.
    std::mt19937_64 rng(5);
    const auto alg = Algebra::matrix_algebra(2);
    const auto g = direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    Matrix sx = Matrix::Zero(2, 2), sz = Matrix::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const std::vector<Matrix> implementers{Matrix::Identity(2, 2), sz, sx, sx * sz};
    std::vector<Automorphism> action;
    for (const auto &w : implementers)
        action.push_back(Automorphism::conjugation(alg, w));
    const CovarianceSystem sys(alg, g, action);
    Representation rep;
    for (Index i = 0; i < 4; ++i)
        rep.pi.push_back(kron(alg.basis(i), Matrix::Identity(2, 2)));
    for (const auto &w : implementers)
        rep.u.push_back(kron(w, Matrix::Identity(2, 2)));
    rep.omega = random_matrix(4, 1, rng).col(0).normalized();
    const auto omega = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    const auto cp = CrossedProduct::from_state(omega);
    for (int k = 0; k < 20; ++k)
    {
        const auto f = cp.random(rng), h = cp.random(rng), l = cp.random(rng);
        EXPECT_LT(cp.distance(cp.convolve(cp.convolve(f, h), l), cp.convolve(f, cp.convolve(h, l))), 1e-12);
        EXPECT_LT(cp.distance(cp.involution(cp.convolve(f, h)), cp.convolve(cp.involution(h), cp.involution(f))),
                  1e-12);
        const Matrix lhs = integrated_rep(rep, alg, cp.convolve(f, h));
        EXPECT_LT(max_diff(lhs, integrated_rep(rep, alg, f) * integrated_rep(rep, alg, h)), 1e-10);
    }
}

TEST(Crossed, ExtendedStateOnDeltaState)
{
    const auto omega = heisenberg_delta_state(3);
    const ExtendedState bar(omega);
    const auto &cp = bar.algebra();
    EXPECT_EQ(bar(cp.unit()), Complex(1.0));
    std::mt19937_64 rng(6);
    for (int k = 0; k < 20; ++k)
    {
        const auto f = cp.random(rng);
        // Only x = e survives for the delta state.
        EXPECT_LT(std::abs(bar(f) - f.values[0](0, 0)), 1e-14);
    }
}

TEST(Crossed, ExtendedStatePositivity)
{
    const auto omega = heisenberg_delta_state(3);
    const ExtendedState bar(omega);
    const auto &cp = bar.algebra();
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k)
    {
        const auto f = cp.random(rng);
        const Complex v = bar(cp.convolve(cp.involution(f), f));
        worst = std::min(worst, v.real());
        EXPECT_LT(std::abs(v.imag()), 1e-12);
    }
    EXPECT_GE(worst, -1e-10);
}

TEST(Crossed, IntegratedRepresentation)
{
    const auto omega = heisenberg_delta_state(3);
    const auto gns = gns_build(omega);
    const ExtendedState bar(omega);
    const auto &cp = bar.algebra();
    const auto &alg = omega.system().algebra();
    EXPECT_LT(max_diff(integrated_rep(gns.rep, alg, cp.unit()), Matrix::Identity(9, 9)), 1e-12);

    const Matrix one = Matrix::Identity(1, 1);
    const Matrix u = integrated_rep(gns.rep, alg, cp.delta(3, one));
    const Matrix v = integrated_rep(gns.rep, alg, cp.delta(1, one));
    EXPECT_LT(max_diff(u, gns.rep.u[3]), 1e-15);
    EXPECT_LT(max_diff(u * v, root_of_unity(1, 3) * v * u), 1e-10);

    std::mt19937_64 rng(8);
    for (int k = 0; k < 30; ++k)
    {
        const auto f = cp.random(rng), g = cp.random(rng);
        const Matrix pf = integrated_rep(gns.rep, alg, f);
        EXPECT_LT(max_diff(integrated_rep(gns.rep, alg, cp.convolve(f, g)), pf * integrated_rep(gns.rep, alg, g)),
                  1e-10);
        EXPECT_LT(max_diff(integrated_rep(gns.rep, alg, cp.involution(f)), pf.adjoint()), 1e-10);
        const Complex lhs = bar(f);
        const Complex rhs = gns.rep.omega.dot(pf * gns.rep.omega);
        EXPECT_LT(std::abs(lhs - rhs), 1e-10);
    }
}

TEST(Crossed, GnsOfExtendedStateMatchesCyclicSubspace)
{
    const auto omega = heisenberg_delta_state(3);
    const auto cmp = compare_crossed_gns(omega, gns_build(omega));
    EXPECT_EQ(cmp.crossed_gns_dim, 9u);
    EXPECT_EQ(cmp.cyclic_dim, 9u);
    EXPECT_LT(cmp.form_residual, 1e-10);
    EXPECT_LT(cmp.isometry_residual, 1e-10);

    const auto sys = z2_swap_system();
    const auto rep = z2_swap_rep();
    const auto swap_state = state_from_rep(sys, rep.pi, rep.u, rep.omega);
    const auto c2 = compare_crossed_gns(swap_state, gns_build(swap_state));
    EXPECT_EQ(c2.crossed_gns_dim, c2.cyclic_dim);
    EXPECT_LT(c2.form_residual, 1e-12);
}

TEST(Crossed, MalformedElementsRejected)
{
    const auto cp = CrossedProduct::from_state(heisenberg_delta_state(2));
    CrossedElement bad{std::vector<Matrix>(3, Matrix::Identity(1, 1))};
    EXPECT_THROW(cp.convolve(bad, cp.unit()), InputError);
    const auto other = CovarianceSystem(Algebra::scalars(), FiniteGroup::cyclic(3));
    EXPECT_THROW(CrossedProduct(other, heisenberg_cocycle(2).to_left()), InputError);
}
