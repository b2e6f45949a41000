#include "covsys/groups.hpp"

#include <Eigen/Geometry>
#include <cmath>

namespace covsys
{

const char *to_string(GroupAxiom axiom)
{
    switch (axiom)
    {
    case GroupAxiom::Shape:
        return "shape";
    case GroupAxiom::Closure:
        return "closure";
    case GroupAxiom::Identity:
        return "identity";
    case GroupAxiom::Inverse:
        return "inverse";
    case GroupAxiom::Associativity:
        return "associativity";
    }
    return "unknown";
}

namespace
{
std::string axiom_message(GroupAxiom axiom, const std::vector<Index> &witness)
{
    std::string msg = std::string("group table violates ") + to_string(axiom);
    if (!witness.empty())
    {
        msg += " at (";
        for (std::size_t i = 0; i < witness.size(); ++i)
            msg += (i ? "," : "") + std::to_string(witness[i]);
        msg += ")";
    }
    return msg;
}
} // namespace

GroupAxiomError::GroupAxiomError(GroupAxiom axiom, std::vector<Index> witness)
    : InputError(axiom_message(axiom, witness)), axiom_(axiom), witness_(std::move(witness))
{
}

FiniteGroup::FiniteGroup(Table table, std::vector<std::string> labels)
{
    order_ = table.size();
    if (order_ == 0)
        throw GroupAxiomError(GroupAxiom::Shape, {});
    table_.resize(order_ * order_);
    for (Index x = 0; x < order_; ++x)
    {
        if (table[x].size() != order_)
            throw GroupAxiomError(GroupAxiom::Shape, {x});
        for (Index y = 0; y < order_; ++y)
        {
            if (table[x][y] >= order_)
                throw GroupAxiomError(GroupAxiom::Closure, {x, y});
            table_[x * order_ + y] = table[x][y];
        }
    }

    bool found = false;
    for (Index e = 0; e < order_ && !found; ++e)
    {
        bool ok = true;
        for (Index x = 0; x < order_ && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok)
        {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw GroupAxiomError(GroupAxiom::Identity, {});

    inverse_.assign(order_, order_);
    for (Index x = 0; x < order_; ++x)
    {
        for (Index y = 0; y < order_; ++y)
            if (mul(x, y) == identity_ && mul(y, x) == identity_)
            {
                inverse_[x] = y;
                break;
            }
        if (inverse_[x] == order_)
            throw GroupAxiomError(GroupAxiom::Inverse, {x});
    }

    for (Index x = 0; x < order_; ++x)
        for (Index y = 0; y < order_; ++y)
        {
            const Index xy = mul(x, y);
            for (Index z = 0; z < order_; ++z)
                if (mul(xy, z) != mul(x, mul(y, z)))
                    throw GroupAxiomError(GroupAxiom::Associativity, {x, y, z});
        }

    if (labels.empty())
    {
        labels.resize(order_);
        for (Index x = 0; x < order_; ++x)
            labels[x] = std::to_string(x);
    }
    else if (labels.size() != order_)
    {
        throw InputError("group labels have wrong length");
    }
    labels_ = std::move(labels);
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup(Table{{0}}); }

FiniteGroup FiniteGroup::cyclic(Index n)
{
    if (n == 0)
        throw InputError("cyclic group needs n >= 1");
    Table t(n, std::vector<Index>(n));
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            t[x][y] = (x + y) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup::Table FiniteGroup::table() const
{
    Table t(order_, std::vector<Index>(order_));
    for (Index x = 0; x < order_; ++x)
        for (Index y = 0; y < order_; ++y)
            t[x][y] = mul(x, y);
    return t;
}

FiniteGroup finite_group(FiniteGroup::Table table) { return FiniteGroup(std::move(table)); }

FiniteGroup direct_product(const FiniteGroup &g, const FiniteGroup &h)
{
    const Index n = g.order() * h.order();
    FiniteGroup::Table t(n, std::vector<Index>(n));
    std::vector<std::string> labels(n);
    for (Index a = 0; a < g.order(); ++a)
        for (Index b = 0; b < h.order(); ++b)
        {
            const Index x = a * h.order() + b;
            labels[x] = "(" + g.label(a) + "," + h.label(b) + ")";
            for (Index c = 0; c < g.order(); ++c)
                for (Index d = 0; d < h.order(); ++d)
                    t[x][c * h.order() + d] = g.mul(a, c) * h.order() + h.mul(b, d);
        }
    return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup zn_squared(Index n)
{
    const auto z = FiniteGroup::cyclic(n);
    return direct_product(z, z);
}

// -- Galilei -----------------------------------------------------------------

GalileiElement GalileiElement::pure_shift(const Eigen::Vector3d &q)
{
    GalileiElement g;
    g.shift = q;
    return g;
}

void GalileiElement::validate(double tol) const
{
    (void)So3(rotation, tol);
}

GalileiElement galilei_compose(const GalileiElement &x, const GalileiElement &y)
{
    GalileiElement r;
    r.shift = x.shift + x.rotation * y.shift + y.time * x.velocity;
    r.rotation = x.rotation * y.rotation;
    r.time = x.time + y.time;
    r.velocity = x.velocity + x.rotation * y.velocity;
    return r;
}

GalileiElement galilei_inverse(const GalileiElement &x)
{
    GalileiElement r;
    r.rotation = x.rotation.transpose();
    r.time = -x.time;
    r.velocity = -(r.rotation * x.velocity);
    r.shift = -(r.rotation * (x.shift - x.time * x.velocity));
    return r;
}

GalileiElement random_galilei(std::mt19937_64 &rng, double scale)
{
    std::normal_distribution<double> gauss(0.0, scale);
    GalileiElement g;
    g.shift = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    g.rotation = random_so3(rng).matrix();
    g.time = gauss(rng);
    g.velocity = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    return g;
}

double galilei_distance(const GalileiElement &a, const GalileiElement &b)
{
    double d = (a.shift - b.shift).cwiseAbs().maxCoeff();
    d = std::max(d, (a.rotation - b.rotation).cwiseAbs().maxCoeff());
    d = std::max(d, std::abs(a.time - b.time));
    return std::max(d, (a.velocity - b.velocity).cwiseAbs().maxCoeff());
}

// -- SO(3) / SU(2) -------------------------------------------------------------

So3::So3(const Eigen::Matrix3d &m, double tol) : m_(m)
{
    const double orth = (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (orth > tol || std::abs(m.determinant() - 1.0) > tol)
        throw DomainError("matrix is not a rotation (orthogonality defect " + std::to_string(orth) + ")");
}

So3 So3::axis_angle(const Eigen::Vector3d &axis, double angle)
{
    return So3(Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix());
}

So3 So3::orthonormalized(const Eigen::Matrix3d &m)
{
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0)
        u.col(2) *= -1.0;
    return So3(u * v.transpose(), 1e-10);
}

So3 So3::operator*(const So3 &o) const { return So3(m_ * o.m_, 1e-10); }
So3 So3::inverse() const { return So3(m_.transpose(), 1e-10); }

Su2::Su2(const Eigen::Matrix2cd &m, double tol) : m_(m)
{
    const double unit = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (unit > tol || std::abs(m.determinant() - Complex(1.0)) > tol)
        throw DomainError("matrix is not in SU(2) (unitarity defect " + std::to_string(unit) + ")");
}

Su2 Su2::from_quaternion(const Eigen::Vector4d &wxyz)
{
    const Eigen::Vector4d q = wxyz.normalized();
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd m = q(0) * Eigen::Matrix2cd::Identity() -
                         i * (q(1) * pauli(1) + q(2) * pauli(2) + q(3) * pauli(3));
    return Su2(m, 1e-10);
}

Su2 Su2::axis_angle(const Eigen::Vector3d &axis, double angle)
{
    const Eigen::Vector3d n = axis.normalized();
    const double s = std::sin(0.5 * angle);
    return from_quaternion(Eigen::Vector4d(std::cos(0.5 * angle), s * n(0), s * n(1), s * n(2)));
}

Eigen::Vector4d Su2::quaternion() const
{
    // u = [[w - iz, -y - ix], [y - ix, w + iz]]
    return {0.5 * (m_(0, 0) + m_(1, 1)).real(), -m_(1, 0).imag(), m_(1, 0).real(),
            0.5 * (m_(1, 1) - m_(0, 0)).imag()};
}

Su2 Su2::operator*(const Su2 &o) const { return Su2(m_ * o.m_, 1e-10); }
Su2 Su2::operator-() const { return Su2(-m_); }
Su2 Su2::adjoint() const { return Su2(m_.adjoint()); }

Eigen::Matrix2cd pauli(int j)
{
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd s;
    switch (j)
    {
    case 1:
        s << 0.0, 1.0, 1.0, 0.0;
        break;
    case 2:
        s << 0.0, -i, i, 0.0;
        break;
    case 3:
        s << 1.0, 0.0, 0.0, -1.0;
        break;
    default:
        throw InputError("Pauli index must be 1, 2 or 3");
    }
    return s;
}

Eigen::Matrix2cd pauli_vector(const Eigen::Vector3d &q)
{
    return q(0) * pauli(1) + q(1) * pauli(2) + q(2) * pauli(3);
}

So3 su2_to_so3(const Su2 &u)
{
    const Eigen::Matrix2cd &m = u.matrix();
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = 0.5 * (pauli(i + 1) * m * pauli(j + 1) * m.adjoint()).trace().real();
    return So3(r, 1e-10);
}

Su2 so3_section(const So3 &rotation)
{
    const Eigen::Quaterniond q(rotation.matrix());
    Eigen::Vector4d wxyz(q.w(), q.x(), q.y(), q.z());
    wxyz.normalize();
    constexpr double tie = 1e-12;
    if (wxyz(0) < -tie)
    {
        wxyz = -wxyz;
    }
    else if (std::abs(wxyz(0)) <= tie)
    {
        wxyz(0) = 0.0;
        for (int k = 1; k < 4; ++k)
        {
            if (std::abs(wxyz(k)) > tie)
            {
                if (wxyz(k) < 0)
                    wxyz = -wxyz;
                break;
            }
        }
    }
    return Su2::from_quaternion(wxyz);
}

So3 random_so3(std::mt19937_64 &rng) { return su2_to_so3(random_su2(rng)); }

Su2 random_su2(std::mt19937_64 &rng)
{
    std::normal_distribution<double> gauss;
    Eigen::Vector4d q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    return Su2::from_quaternion(q);
}

// -- Lorentz -------------------------------------------------------------------

Eigen::Matrix4d minkowski_metric() { return Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal(); }

Eigen::Matrix4d lorentz_boost(int axis, double rapidity)
{
    if (axis < 1 || axis > 3)
        throw InputError("boost axis must be 1, 2 or 3");
    Eigen::Matrix4d l = Eigen::Matrix4d::Identity();
    l(0, 0) = l(axis, axis) = std::cosh(rapidity);
    l(0, axis) = l(axis, 0) = std::sinh(rapidity);
    return l;
}

Eigen::Matrix4d lorentz_rotation(const So3 &rotation)
{
    Eigen::Matrix4d l = Eigen::Matrix4d::Identity();
    l.block<3, 3>(1, 1) = rotation.matrix();
    return l;
}

bool is_proper_lorentz(const Eigen::Matrix4d &l, double tol)
{
    const Eigen::Matrix4d g = minkowski_metric();
    const double defect = (l.transpose() * g * l - g).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
    return defect <= tol * scale * scale && std::abs(l.determinant() - 1.0) <= tol * scale && l(0, 0) >= 1.0 - tol;
}

} // namespace covsys
