#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "covsys/algebra.hpp"
#include "covsys/groups.hpp"
#include "covsys/report.hpp"

namespace covsys
{

using Triple = std::array<Index, 3>;

/// Dense table of algebra-valued values over X x X together with the action
/// sigma. Shared storage for the left and right variants below.
class MultiplierTable
{
public:
    MultiplierTable(Algebra algebra, FiniteGroup group, std::vector<Automorphism> action,
                    std::vector<Matrix> values);

    const Algebra &algebra() const noexcept { return algebra_; }
    const FiniteGroup &group() const noexcept { return group_; }
    const std::vector<Automorphism> &action() const noexcept { return action_; }
    const Automorphism &sigma(Index x) const { return action_.at(x); }

    const Matrix &operator()(Index x, Index y) const { return values_[x * group_.order() + y]; }
    Matrix &at(Index x, Index y) { return values_[x * group_.order() + y]; }
    const std::vector<Matrix> &values() const noexcept { return values_; }

    /// True when every value is a multiple of the identity.
    bool is_scalar(double tol = 0.0) const;

protected:
    Algebra algebra_;
    FiniteGroup group_;
    std::vector<Automorphism> action_;
    std::vector<Matrix> values_;
};

/// Left C*-multiplier xi with its twisted action:
///   sigma_x xi(y,z) = xi(x,y) xi(xy,z) xi(x,yz)*
///   sigma_x sigma_y a = xi(x,y) (sigma_xy a) xi(x,y)*
class LeftMultiplier : public MultiplierTable
{
public:
    using MultiplierTable::MultiplierTable;
    static LeftMultiplier trivial(const Algebra &algebra, const FiniteGroup &group,
                                  std::vector<Automorphism> action = {});
};

/// Right C*-multiplier zeta:
///   sigma_y^{-1} zeta(z,x) = zeta(zx,y)* zeta(z,xy) zeta(x,y)
///   sigma_x sigma_y a = sigma_xy(zeta(x,y) a zeta(x,y)*)
class RightMultiplier : public MultiplierTable
{
public:
    using MultiplierTable::MultiplierTable;
    static RightMultiplier trivial(const Algebra &algebra, const FiniteGroup &group,
                                   std::vector<Automorphism> action = {});
};

/// Identity automorphisms for every group element.
std::vector<Automorphism> trivial_action(const Algebra &algebra, const FiniteGroup &group);

struct ValidationOptions
{
    double tol = 1e-10;
    std::uint64_t seed = 0;
    /// Triples drawn when the group is too large for exhaustive checking.
    std::size_t samples = 20000;
    /// Exhaustive when |X|^3 is at most this.
    std::size_t exhaustive_limit = 1000000;
};

/// All triples when |X|^3 <= exhaustive_limit, else `samples` seeded draws.
std::vector<Triple> validation_triples(const FiniteGroup &group, const ValidationOptions &opts);

/// Checks: membership, unitarity, normalization, action_identity, cocycle,
/// twisted_action. Non-unitary values are reported, never thrown.
ValidationReport validate_left(const LeftMultiplier &xi, const ValidationOptions &opts = {});
ValidationReport validate_left(const LeftMultiplier &xi, std::span<const Triple> sample, double tol = 1e-10);

ValidationReport validate_right(const RightMultiplier &zeta, const ValidationOptions &opts = {});
ValidationReport validate_right(const RightMultiplier &zeta, std::span<const Triple> sample, double tol = 1e-10);

/// zeta(x,y) = sigma_xy^{-1} xi(x,y), and back.
RightMultiplier left_to_right(const LeftMultiplier &xi);
LeftMultiplier right_to_left(const RightMultiplier &zeta);

/// Scalar 2-cocycle identity xi(x,y) xi(xy,z) = xi(y,z) xi(x,yz) on a
/// scalar-valued table, ignoring sigma.
CheckResult classical_cocycle_check(const LeftMultiplier &xi, std::span<const Triple> sample, double tol = 1e-10);

/// Root-of-unity valued cocycle xi(x,y) = exp(2 pi i k(x,y) / n) stored
/// through integer exponents, so that its identities can be checked exactly.
class PhaseCocycle
{
public:
    PhaseCocycle(FiniteGroup group, long modulus, std::vector<long> exponents);
    PhaseCocycle(FiniteGroup group, long modulus, const std::function<long(Index, Index)> &exponent);

    const FiniteGroup &group() const noexcept { return group_; }
    long modulus() const noexcept { return modulus_; }
    long exponent(Index x, Index y) const { return exponents_[x * group_.order() + y]; }
    Complex value(Index x, Index y) const;

    /// The same cocycle as a multiplier with values in A = C and trivial action.
    LeftMultiplier to_left() const;

private:
    FiniteGroup group_;
    long modulus_;
    std::vector<long> exponents_;
};

/// Exact check of normalization and the cocycle identity in Z_n arithmetic.
/// A residual is |1 - exp(2 pi i d / n)| for the integer defect d, which is
/// exactly zero when the identity holds.
ValidationReport validate_phase_cocycle(const PhaseCocycle &xi);

/// Heisenberg cocycle on Z_n x Z_n: xi((a,b),(a',b')) = exp(2 pi i a b' / n).
/// Its projective representations satisfy U(1,0) U(0,1) = e^{2 pi i/n} U(0,1) U(1,0).
PhaseCocycle heisenberg_cocycle(long n);

/// Galilei cocycle exp(-i kappa [t'|v|^2/2 + t' v'.L'v - v'.L'(q - t v)])
/// for x = (q',L',t',v') and y = (q,L,t,v).
Complex galilei_cocycle(double kappa, const GalileiElement &x, const GalileiElement &y);

/// Cocycle identity of galilei_cocycle on `trials` seeded random triples.
CheckResult galilei_cocycle_check(double kappa, std::size_t trials, std::uint64_t seed, double tol = 1e-12);

using Section = std::function<Su2(const So3 &)>;

/// Sign s with v(L) v(L') = s v(LL') for the section v (default so3_section).
/// Throws NumericalError when v(L) v(L') v(LL')^{-1} is not +-1 within 1e-10.
int spin_cocycle(const So3 &l, const So3 &lp, const Section &section = so3_section);

/// Distance of v(L) v(L') v(LL')^{-1} from the nearest of +-1.
double spin_sign_defect(const So3 &l, const So3 &lp, const Section &section = so3_section);

} // namespace covsys
