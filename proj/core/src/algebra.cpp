#include "covsys/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covsys
{

Algebra Algebra::function_algebra(std::vector<std::string> points)
{
    if (points.empty())
        throw InputError("function algebra needs at least one point");
    const std::size_t n = points.size();
    return Algebra(AlgebraKind::Function, n, std::move(points));
}

Algebra Algebra::function_algebra(std::size_t points)
{
    std::vector<std::string> labels(points);
    for (std::size_t i = 0; i < points; ++i)
        labels[i] = std::to_string(i);
    return function_algebra(std::move(labels));
}

Algebra Algebra::matrix_algebra(std::size_t n)
{
    if (n == 0)
        throw InputError("matrix algebra needs n >= 1");
    return Algebra(AlgebraKind::Matrix, n, {});
}

Algebra make_function_algebra(std::vector<std::string> points)
{
    return Algebra::function_algebra(std::move(points));
}

std::string Algebra::basis_label(std::size_t i) const
{
    if (kind_ == AlgebraKind::Function)
        return "1{" + points_.at(i) + "}";
    return "E" + std::to_string(i / size_) + "," + std::to_string(i % size_);
}

Matrix Algebra::basis(std::size_t i) const
{
    if (i >= dimension())
        throw InputError("basis index out of range");
    Matrix b = zero();
    if (kind_ == AlgebraKind::Function)
        b(i, i) = 1.0;
    else
        b(i / size_, i % size_) = 1.0;
    return b;
}

Vector Algebra::coordinates(const Matrix &a) const
{
    require_element(a);
    Vector c(dimension());
    if (kind_ == AlgebraKind::Function)
    {
        c = a.diagonal();
    }
    else
    {
        for (std::size_t j = 0; j < size_; ++j)
            for (std::size_t k = 0; k < size_; ++k)
                c(j * size_ + k) = a(j, k);
    }
    return c;
}

Matrix Algebra::from_coordinates(const Vector &c) const
{
    if (static_cast<std::size_t>(c.size()) != dimension())
        throw InputError("coordinate vector has wrong length");
    Matrix a = zero();
    if (kind_ == AlgebraKind::Function)
    {
        a.diagonal() = c;
    }
    else
    {
        for (std::size_t j = 0; j < size_; ++j)
            for (std::size_t k = 0; k < size_; ++k)
                a(j, k) = c(j * size_ + k);
    }
    return a;
}

bool Algebra::contains(const Matrix &a, double tol) const
{
    if (static_cast<std::size_t>(a.rows()) != size_ || static_cast<std::size_t>(a.cols()) != size_)
        return false;
    if (kind_ == AlgebraKind::Function)
    {
        for (std::size_t j = 0; j < size_; ++j)
            for (std::size_t k = 0; k < size_; ++k)
                if (j != k && std::abs(a(j, k)) > tol)
                    return false;
    }
    return true;
}

void Algebra::require_element(const Matrix &a, const char *what) const
{
    if (!contains(a))
        throw InputError(std::string(what) + " is not an element of the algebra (shape " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
}

Matrix Algebra::left_multiplication(const Matrix &a) const
{
    const std::size_t d = dimension();
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        out.col(i) = coordinates(a * basis(i));
    return out;
}

Matrix Algebra::random_element(std::mt19937_64 &rng) const
{
    std::normal_distribution<double> gauss;
    Vector c(dimension());
    for (auto &v : c)
        v = Complex(gauss(rng), gauss(rng));
    return from_coordinates(c);
}

double norm(const Matrix &a)
{
    if (a.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double min_hermitian_eigenvalue(const Matrix &a)
{
    if (a.size() == 0)
        return 0.0;
    const Matrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool is_positive(const Matrix &a, double tol)
{
    if (a.rows() != a.cols())
        throw InputError("positivity test needs a square matrix");
    if (max_abs_diff(a, a.adjoint()) > tol)
        throw DomainError("positivity test needs a self-adjoint element");
    return min_hermitian_eigenvalue(a) >= -tol;
}

// -- Automorphism -----------------------------------------------------------

Automorphism Automorphism::identity(const Algebra &algebra)
{
    std::optional<std::vector<std::size_t>> image;
    if (algebra.kind() == AlgebraKind::Function)
    {
        image.emplace(algebra.size());
        std::iota(image->begin(), image->end(), std::size_t{0});
    }
    return Automorphism(algebra, algebra.identity(), std::move(image));
}

Automorphism Automorphism::permutation(const Algebra &algebra, std::vector<std::size_t> image)
{
    if (algebra.kind() != AlgebraKind::Function)
        throw InputError("permutation automorphisms act on function algebras");
    const std::size_t n = algebra.size();
    if (image.size() != n)
        throw InputError("permutation has wrong length");
    std::vector<bool> hit(n, false);
    for (auto p : image)
    {
        if (p >= n || hit[p])
            throw InputError("point map is not a permutation");
        hit[p] = true;
    }
    Matrix w = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j)
        w(image[j], j) = 1.0;
    return Automorphism(algebra, std::move(w), std::move(image));
}

Automorphism Automorphism::conjugation(const Algebra &algebra, const Matrix &unitary, double tol)
{
    if (algebra.kind() != AlgebraKind::Matrix)
        throw InputError("inner automorphisms are supported on matrix algebras");
    const auto n = static_cast<Eigen::Index>(algebra.size());
    if (unitary.rows() != n || unitary.cols() != n)
        throw InputError("conjugating unitary has wrong shape");
    if (max_abs_diff(unitary.adjoint() * unitary, Matrix::Identity(n, n)) > tol)
        throw InputError("conjugating matrix is not unitary");
    return Automorphism(algebra, unitary, std::nullopt);
}

bool Automorphism::is_identity(double tol) const
{
    if (image_)
    {
        for (std::size_t j = 0; j < image_->size(); ++j)
            if ((*image_)[j] != j)
                return false;
        return true;
    }
    return distance(identity(algebra_)) <= tol;
}

Matrix Automorphism::apply(const Matrix &a) const
{
    if (image_)
    {
        // Exact: only moves entries.
        Matrix out = Matrix::Zero(a.rows(), a.cols());
        for (std::size_t j = 0; j < image_->size(); ++j)
            out((*image_)[j], (*image_)[j]) = a(j, j);
        return out;
    }
    return unitary_ * a * unitary_.adjoint();
}

Matrix Automorphism::apply_inverse(const Matrix &a) const
{
    if (image_)
    {
        Matrix out = Matrix::Zero(a.rows(), a.cols());
        for (std::size_t j = 0; j < image_->size(); ++j)
            out(j, j) = a((*image_)[j], (*image_)[j]);
        return out;
    }
    return unitary_.adjoint() * a * unitary_;
}

Automorphism Automorphism::inverse() const
{
    if (image_)
    {
        std::vector<std::size_t> inv(image_->size());
        for (std::size_t j = 0; j < image_->size(); ++j)
            inv[(*image_)[j]] = j;
        return permutation(algebra_, std::move(inv));
    }
    return Automorphism(algebra_, unitary_.adjoint(), std::nullopt);
}

Automorphism Automorphism::compose(const Automorphism &other) const
{
    if (!(algebra_ == other.algebra_))
        throw InputError("composing automorphisms of different algebras");
    if (image_ && other.image_)
    {
        std::vector<std::size_t> img(image_->size());
        for (std::size_t j = 0; j < img.size(); ++j)
            img[j] = (*image_)[(*other.image_)[j]];
        return permutation(algebra_, std::move(img));
    }
    return Automorphism(algebra_, unitary_ * other.unitary_, std::nullopt);
}

double Automorphism::distance(const Automorphism &other) const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < algebra_.dimension(); ++i)
    {
        const Matrix b = algebra_.basis(i);
        worst = std::max(worst, max_abs_diff(apply(b), other.apply(b)));
    }
    return worst;
}

Matrix apply_automorphism(const Automorphism &sigma, const Matrix &a)
{
    sigma.algebra().require_element(a, "automorphism argument");
    return sigma.apply(a);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> gauss;
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            m(j, k) = Complex(gauss(rng), gauss(rng));
    return m;
}

Matrix random_unitary(std::size_t n, std::mt19937_64 &rng)
{
    // QR of a Ginibre matrix with the phase correction of Mezzadri.
    const Matrix z = random_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < n; ++j)
    {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0)
            q.col(j) *= d / mag;
    }
    return q;
}

double max_abs_diff(const Matrix &a, const Matrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return std::numeric_limits<double>::infinity();
    if (a.size() == 0)
        return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace covsys
