#include "presets.hpp"

#include <cmath>

namespace covctl::presets
{

using covsys::Complex;
using covsys::Index;
using covsys::Matrix;
using covsys::io::json;

namespace
{

Matrix power(const Matrix &m, long k)
{
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (long i = 0; i < k; ++i)
        out = out * m;
    return out;
}

} // namespace

json heisenberg(long n)
{
    if (n < 2 || n > 12)
        throw covsys::InputError("--n: Heisenberg preset needs 2 <= n <= 12");
    const Index dim = static_cast<Index>(n);
    Matrix shift = Matrix::Zero(dim, dim);
    Matrix clock = Matrix::Zero(dim, dim);
    for (Index j = 0; j < dim; ++j)
    {
        shift((j + 1) % dim, j) = 1.0;
        clock(j, j) = std::polar(1.0, 2.0 * covsys::kPi * static_cast<double>(j) / static_cast<double>(n));
    }
    json u = json::array();
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
        {
            const Matrix irrep = power(shift, b) * power(clock, a);
            Matrix big = Matrix::Zero(dim * dim, dim * dim);
            for (Index r = 0; r < dim; ++r)
                for (Index c = 0; c < dim; ++c)
                    big.block(r * dim, c * dim, dim, dim) = irrep(r, c) * Matrix::Identity(dim, dim);
            u.push_back(covsys::io::to_json(big));
        }
    covsys::Vector psi = covsys::Vector::Zero(dim * dim);
    for (Index j = 0; j < dim; ++j)
        psi(j * dim + j) = 1.0 / std::sqrt(static_cast<double>(n));

    return {{"description", "Heisenberg Z_" + std::to_string(n) + " x Z_" + std::to_string(n) + " delta state"},
            {"algebra", {{"kind", "function"}, {"n", 1}}},
            {"group", {{"preset", "zn_squared"}, {"n", n}}},
            {"multiplier", {{"side", "right"}, {"phase", {{"preset", "heisenberg"}, {"n", n}}}}},
            {"state", {{"diagonal", json::array({1.0})}}},
            {"representation",
             {{"pi", json::array({covsys::io::to_json(Matrix(Matrix::Identity(dim * dim, dim * dim)))})},
              {"u", u},
              {"psi", covsys::io::to_json(psi)}}}};
}

json z2_swap()
{
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2), swap = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    swap(0, 1) = swap(1, 0) = 1.0;
    covsys::Vector psi = covsys::Vector::Zero(2);
    psi(0) = 1.0;
    return {{"description", "Z_2 swap on C({0,1})"},
            {"algebra", {{"kind", "function"}, {"n", 2}}},
            {"group", {{"preset", "cyclic"}, {"n", 2}}},
            {"action", json::array({"identity", {{"permutation", {1, 0}}}})},
            {"representation",
             {{"pi", json::array({covsys::io::to_json(p0), covsys::io::to_json(p1)})},
              {"u", json::array({covsys::io::to_json(Matrix(Matrix::Identity(2, 2))), covsys::io::to_json(swap)})},
              {"psi", covsys::io::to_json(psi)}}},
            {"state", {{"from_representation", true}}}};
}

json system(const std::string &name, long n)
{
    if (name == "heisenberg")
        return heisenberg(n);
    if (name == "z2-swap")
        return z2_swap();
    throw covsys::InputError("--preset: expected \"heisenberg\" or \"z2-swap\", got \"" + name + "\"");
}

} // namespace covctl::presets
