#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <covsys/gns.hpp>
#include <covsys/groups.hpp>
#include <covsys/multipliers.hpp>
#include <covsys/states.hpp>

namespace testing_support
{

using namespace covsys;

inline Complex root_of_unity(long k, long n)
{
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
}

// Heisenberg phase exp(2 pi i a b' / n), written out without the library's
// PhaseCocycle so that tests compare against an independent table.
inline RightMultiplier heisenberg_zeta(Index n)
{
    const auto g = zn_squared(n);
    std::vector<Matrix> values;
    for (Index x = 0; x < g.order(); ++x)
        for (Index y = 0; y < g.order(); ++y)
            values.push_back(Matrix::Constant(1, 1, root_of_unity(static_cast<long>((x / n) * (y % n)), static_cast<long>(n))));
    return RightMultiplier(Algebra::scalars(), g, {}, values);
}

inline CovarianceSystem heisenberg_system(Index n) { return CovarianceSystem(Algebra::scalars(), zn_squared(n)); }

// omega_{x,y}(1) = delta_{x,y}.
inline CovariantState heisenberg_delta_state(Index n)
{
    const auto sys = heisenberg_system(n);
    const Index order = n * n;
    std::vector<Complex> values(order * order, 0.0);
    for (Index x = 0; x < order; ++x)
        values[x * order + x] = 1.0;
    return CovariantState(sys, values, heisenberg_zeta(n));
}

// Shift X e_j = e_{j+1} and clock Z e_j = w^j e_j, so Z X = w X Z.
inline Matrix shift_matrix(Index n)
{
    Matrix x = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        x((j + 1) % n, j) = 1.0;
    return x;
}

inline Matrix clock_matrix(Index n)
{
    Matrix z = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        z(j, j) = root_of_unity(static_cast<long>(j), static_cast<long>(n));
    return z;
}

inline Matrix matrix_power(const Matrix &m, Index k)
{
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (Index i = 0; i < k; ++i)
        out = out * m;
    return out;
}

// n copies of the clock-shift irrep, U(a,b) = X^b Z^a (x) 1, with the
// maximally entangled cyclic vector (1/sqrt n) sum_j e_j (x) e_j.
inline Representation clock_shift_copies(Index n)
{
    Representation rep;
    const Matrix x = shift_matrix(n);
    const Matrix z = clock_matrix(n);
    const Matrix id = Matrix::Identity(n, n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
        {
            const Matrix irrep = matrix_power(x, b) * matrix_power(z, a);
            Matrix big = Matrix::Zero(n * n, n * n);
            for (Index r = 0; r < n; ++r)
                for (Index c = 0; c < n; ++c)
                    big.block(r * n, c * n, n, n) = irrep(r, c) * id;
            rep.u.push_back(big);
        }
    rep.pi.push_back(Matrix::Identity(n * n, n * n));
    rep.omega = Vector::Zero(n * n);
    for (Index j = 0; j < n; ++j)
        rep.omega(j * n + j) = 1.0 / std::sqrt(static_cast<double>(n));
    return rep;
}

// Z_2 acting on C({0,1}) by swapping the points, H = C^2.
inline CovarianceSystem z2_swap_system()
{
    const auto alg = Algebra::function_algebra(2);
    const auto g = FiniteGroup::cyclic(2);
    return CovarianceSystem(alg, g, {Automorphism::identity(alg), Automorphism::permutation(alg, {1, 0})});
}

inline Representation z2_swap_rep()
{
    Representation rep;
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    rep.pi = {p0, p1};
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    rep.u = {Matrix::Identity(2, 2), swap};
    rep.omega = Vector::Zero(2);
    rep.omega(0) = 1.0;
    return rep;
}

inline Matrix kron(const Matrix &a, const Matrix &b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

inline double max_diff(const Matrix &a, const Matrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace testing_support
