#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "covsys/types.hpp"

namespace covsys
{

enum class AlgebraKind
{
    Function, // C(S) for a finite point set S, embedded as diagonal matrices
    Matrix,   // full matrix algebra M_n(C)
};

/// A unital finite-dimensional C*-algebra realised inside M_n(C).
///
/// Elements are plain complex matrices. For a function algebra over s points
/// they are diagonal s x s matrices and the basis is the indicator functions;
/// for M_n the basis is the matrix units E_jk in row-major order. Because the
/// algebra is unital its multiplier algebra is the algebra itself, so
/// multiplier values live here too.
class Algebra
{
public:
    static Algebra function_algebra(std::vector<std::string> points);
    static Algebra function_algebra(std::size_t points);
    static Algebra matrix_algebra(std::size_t n);
    /// The one-dimensional algebra of complex numbers.
    static Algebra scalars() { return function_algebra(1); }

    AlgebraKind kind() const noexcept { return kind_; }
    bool is_commutative() const noexcept { return kind_ == AlgebraKind::Function || size_ == 1; }

    /// Side length of the matrices representing elements.
    std::size_t size() const noexcept { return size_; }
    /// Dimension as a complex vector space (number of basis elements).
    std::size_t dimension() const noexcept { return kind_ == AlgebraKind::Function ? size_ : size_ * size_; }

    /// Point labels of a function algebra; empty for matrix algebras.
    const std::vector<std::string> &points() const noexcept { return points_; }
    std::string basis_label(std::size_t i) const;

    Matrix basis(std::size_t i) const;
    Matrix identity() const { return Matrix::Identity(size_, size_); }
    Matrix zero() const { return Matrix::Zero(size_, size_); }

    /// Coordinates of `a` against the basis. `a` must be an element.
    Vector coordinates(const Matrix &a) const;
    Matrix from_coordinates(const Vector &c) const;

    /// True when `a` has the right shape and, for function algebras, all
    /// off-diagonal entries are within `tol` of zero.
    bool contains(const Matrix &a, double tol = 0.0) const;
    /// Throws InputError when `a` is not an element.
    void require_element(const Matrix &a, const char *what = "element") const;

    /// Left multiplication by `a` as a dimension x dimension matrix acting on
    /// basis coordinates.
    Matrix left_multiplication(const Matrix &a) const;

    Matrix random_element(std::mt19937_64 &rng) const;

    friend bool operator==(const Algebra &a, const Algebra &b)
    {
        return a.kind_ == b.kind_ && a.size_ == b.size_;
    }

private:
    Algebra(AlgebraKind kind, std::size_t size, std::vector<std::string> points)
        : kind_(kind), size_(size), points_(std::move(points))
    {
    }

    AlgebraKind kind_;
    std::size_t size_;
    std::vector<std::string> points_;
};

/// Operator norm (largest singular value).
double norm(const Matrix &a);

/// Positivity test with a Hermitian eigensolver.
///
/// Throws DomainError if `a` is not self-adjoint within `tol`; otherwise
/// returns whether every eigenvalue is at least -tol.
bool is_positive(const Matrix &a, double tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_hermitian_eigenvalue(const Matrix &a);

/// Action of a group element as a *-automorphism of an Algebra.
///
/// Function algebras admit permutations of the point set
/// ((sigma f)(p(j)) = f(j)); matrix algebras admit inner automorphisms
/// a -> W a W*. Both are stored through the implementing unitary W.
class Automorphism
{
public:
    static Automorphism identity(const Algebra &algebra);
    /// `image[j]` is the point that point j is sent to.
    static Automorphism permutation(const Algebra &algebra, std::vector<std::size_t> image);
    static Automorphism conjugation(const Algebra &algebra, const Matrix &unitary, double tol = 1e-12);

    const Algebra &algebra() const noexcept { return algebra_; }
    const std::optional<std::vector<std::size_t>> &point_map() const noexcept { return image_; }
    const Matrix &implementer() const noexcept { return unitary_; }
    bool is_identity(double tol = 0.0) const;

    Matrix apply(const Matrix &a) const;
    Matrix apply_inverse(const Matrix &a) const;

    Automorphism inverse() const;
    /// (this o other)(a) = this(other(a)).
    Automorphism compose(const Automorphism &other) const;

    /// Max entrywise distance between the actions on the algebra basis.
    double distance(const Automorphism &other) const;

private:
    Automorphism(Algebra algebra, Matrix unitary, std::optional<std::vector<std::size_t>> image)
        : algebra_(std::move(algebra)), unitary_(std::move(unitary)), image_(std::move(image))
    {
    }

    Algebra algebra_;
    Matrix unitary_;
    std::optional<std::vector<std::size_t>> image_;
};

/// Checked application; throws InputError when `a` is not in the automorphism's algebra.
Matrix apply_automorphism(const Automorphism &sigma, const Matrix &a);

Algebra make_function_algebra(std::vector<std::string> points);

Matrix random_unitary(std::size_t n, std::mt19937_64 &rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng);

/// Max absolute entry of a - b (infinity on shape mismatch).
double max_abs_diff(const Matrix &a, const Matrix &b);

} // namespace covsys
