#include "covsys/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace covsys::io
{

namespace
{

std::string line_column(const std::string &text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i)
    {
        if (text[i] == '\n')
        {
            ++line;
            col = 1;
        }
        else
            ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json &member(const json &obj, const char *key, const std::string &where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw InputError(where + ": missing key \"" + key + "\"");
    return obj.at(key);
}

double number(const json &j, const std::string &where)
{
    if (!j.is_number())
        throw InputError(where + ": expected a number");
    return j.get<double>();
}

long integer(const json &j, const std::string &where)
{
    if (!j.is_number_integer())
        throw InputError(where + ": expected an integer");
    return j.get<long>();
}

Index index_value(const json &j, const std::string &where)
{
    const long v = integer(j, where);
    if (v < 0)
        throw InputError(where + ": expected a nonnegative integer");
    return static_cast<Index>(v);
}

const json &array(const json &j, const std::string &where, std::optional<std::size_t> size = {})
{
    if (!j.is_array())
        throw InputError(where + ": expected an array");
    if (size && j.size() != *size)
        throw InputError(where + ": expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
    return j;
}

std::string at_index(const std::string &where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

} // namespace

json parse(const std::string &text, const std::string &source)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        std::string what = e.what();
        // Drop the library's "[json.exception.parse_error.101] parse error at
        // line x, column y: " prefix; we report our own position.
        const auto colon = what.find(": ", what.find("parse error"));
        const std::string detail = colon == std::string::npos ? what : what.substr(colon + 2);
        throw InputError(source + ": malformed JSON at " + line_column(text, e.byte) + ": " + detail);
    }
}

json load_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

void require_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &where)
{
    if (!obj.is_object())
        throw InputError(where + ": expected an object");
    for (const auto &item : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *k) { return item.key() == k; }))
            throw InputError(where + ": unknown key \"" + item.key() + "\"");
}

// -- numbers and matrices ------------------------------------------------------------

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json &j, const std::string &where)
{
    if (j.is_number())
        return j.get<double>();
    array(j, where, 2);
    return {number(j[0], where + ".re"), number(j[1], where + ".im")};
}

json to_json(const Matrix &m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json &j, const std::string &where)
{
    array(j, where);
    if (j.empty())
        throw InputError(where + ": empty matrix");
    const std::size_t cols = array(j[0], at_index(where, 0)).size();
    Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r)
    {
        array(j[r], at_index(where, r), cols);
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], at_index(at_index(where, r), c));
    }
    return m;
}

json to_json(const Vector &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(to_json(v(i)));
    return out;
}

Vector vector_from_json(const json &j, const std::string &where)
{
    array(j, where);
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], at_index(where, i));
    return v;
}

json real_to_json(const Eigen::MatrixXd &m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd real_matrix_from_json(const json &j, const std::string &where)
{
    array(j, where);
    if (j.empty())
        throw InputError(where + ": empty matrix");
    const std::size_t cols = array(j[0], at_index(where, 0)).size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r)
    {
        array(j[r], at_index(where, r), cols);
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                number(j[r][c], at_index(at_index(where, r), c));
    }
    return m;
}

// -- systems ----------------------------------------------------------------------------

json to_json(const Algebra &a)
{
    if (a.kind() == AlgebraKind::Matrix)
        return {{"kind", "matrix"}, {"n", a.size()}};
    return {{"kind", "function"}, {"points", a.points()}};
}

Algebra algebra_from_json(const json &j)
{
    const std::string where = "algebra";
    require_keys(j, {"kind", "points", "n"}, where);
    const json &kind = member(j, "kind", where);
    if (kind == "matrix")
    {
        const Index n = index_value(member(j, "n", where), where + ".n");
        if (n == 0)
            throw InputError(where + ".n: must be positive");
        return Algebra::matrix_algebra(n);
    }
    if (kind == "function")
    {
        if (j.contains("n"))
            return Algebra::function_algebra(index_value(j.at("n"), where + ".n"));
        const json &pts = array(member(j, "points", where), where + ".points");
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < pts.size(); ++i)
        {
            if (!pts[i].is_string())
                throw InputError(at_index(where + ".points", i) + ": expected a string");
            labels.push_back(pts[i].get<std::string>());
        }
        return Algebra::function_algebra(std::move(labels));
    }
    throw InputError(where + ".kind: expected \"function\" or \"matrix\"");
}

json to_json(const FiniteGroup &g)
{
    json table = json::array();
    for (Index x = 0; x < g.order(); ++x)
    {
        json row = json::array();
        for (Index y = 0; y < g.order(); ++y)
            row.push_back(g.mul(x, y));
        table.push_back(std::move(row));
    }
    return {{"order", g.order()}, {"table", table}, {"labels", g.labels()}};
}

FiniteGroup group_from_json(const json &j)
{
    const std::string where = "group";
    require_keys(j, {"order", "table", "labels", "preset", "n"}, where);
    if (j.contains("preset"))
    {
        const Index n = index_value(member(j, "n", where), where + ".n");
        if (n == 0)
            throw InputError(where + ".n: must be positive");
        if (j.at("preset") == "zn_squared")
            return zn_squared(n);
        if (j.at("preset") == "cyclic")
            return FiniteGroup::cyclic(n);
        throw InputError(where + ".preset: expected \"zn_squared\" or \"cyclic\"");
    }
    const Index order = index_value(member(j, "order", where), where + ".order");
    const json &rows = array(member(j, "table", where), where + ".table", order);
    FiniteGroup::Table table;
    for (std::size_t r = 0; r < order; ++r)
    {
        const json &row = array(rows[r], at_index(where + ".table", r), order);
        std::vector<Index> out;
        for (std::size_t c = 0; c < order; ++c)
            out.push_back(index_value(row[c], at_index(at_index(where + ".table", r), c)));
        table.push_back(std::move(out));
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
    {
        const json &l = array(j.at("labels"), where + ".labels", order);
        for (std::size_t i = 0; i < l.size(); ++i)
        {
            if (!l[i].is_string())
                throw InputError(at_index(where + ".labels", i) + ": expected a string");
            labels.push_back(l[i].get<std::string>());
        }
    }
    return FiniteGroup(std::move(table), std::move(labels));
}

json action_to_json(const std::vector<Automorphism> &action)
{
    json out = json::array();
    for (const auto &s : action)
    {
        if (s.point_map())
            out.push_back({{"permutation", *s.point_map()}});
        else
            out.push_back({{"unitary", to_json(s.implementer())}});
    }
    return out;
}

std::vector<Automorphism> action_from_json(const json &j, const Algebra &a, const FiniteGroup &g)
{
    const std::string where = "action";
    array(j, where, g.order());
    std::vector<Automorphism> out;
    for (std::size_t x = 0; x < j.size(); ++x)
    {
        const std::string w = at_index(where, x);
        const json &item = j[x];
        if (item == "identity")
        {
            out.push_back(Automorphism::identity(a));
            continue;
        }
        require_keys(item, {"permutation", "unitary"}, w);
        if (item.contains("permutation"))
        {
            const json &p = array(item.at("permutation"), w + ".permutation");
            std::vector<Index> image;
            for (std::size_t i = 0; i < p.size(); ++i)
                image.push_back(index_value(p[i], at_index(w + ".permutation", i)));
            out.push_back(Automorphism::permutation(a, std::move(image)));
        }
        else
            out.push_back(Automorphism::conjugation(a, matrix_from_json(member(item, "unitary", w), w + ".unitary"),
                                                    1e-10));
    }
    return out;
}

json to_json(const MultiplierTable &m)
{
    const Index n = m.group().order();
    json rows = json::array();
    for (Index x = 0; x < n; ++x)
    {
        json row = json::array();
        for (Index y = 0; y < n; ++y)
            row.push_back(to_json(m(x, y)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const PhaseCocycle &p)
{
    const Index n = p.group().order();
    json rows = json::array();
    for (Index x = 0; x < n; ++x)
    {
        json row = json::array();
        for (Index y = 0; y < n; ++y)
            row.push_back(p.exponent(x, y));
        rows.push_back(std::move(row));
    }
    return {{"modulus", p.modulus()}, {"exponents", rows}};
}

namespace
{

std::vector<Matrix> table_values(const json &j, const Index n, const std::string &where)
{
    array(j, where, n);
    std::vector<Matrix> values;
    for (Index x = 0; x < n; ++x)
    {
        array(j[x], at_index(where, x), n);
        for (Index y = 0; y < n; ++y)
            values.push_back(matrix_from_json(j[x][y], at_index(at_index(where, x), y)));
    }
    return values;
}

PhaseCocycle phase_from_json(const json &j, const FiniteGroup &g, const std::string &where)
{
    require_keys(j, {"modulus", "exponents", "preset", "n"}, where);
    if (j.contains("preset"))
    {
        if (j.at("preset") != "heisenberg")
            throw InputError(where + ".preset: expected \"heisenberg\"");
        const long n = integer(member(j, "n", where), where + ".n");
        if (n < 1)
            throw InputError(where + ".n: must be positive");
        auto h = heisenberg_cocycle(n);
        if (h.group().order() != g.order())
            throw InputError(where + ": Heisenberg cocycle needs the group Z_n x Z_n");
        return PhaseCocycle(g, n, [&](Index x, Index y) { return h.exponent(x, y); });
    }
    const long modulus = integer(member(j, "modulus", where), where + ".modulus");
    const json &rows = array(member(j, "exponents", where), where + ".exponents", g.order());
    std::vector<long> exps;
    for (Index x = 0; x < g.order(); ++x)
    {
        array(rows[x], at_index(where + ".exponents", x), g.order());
        for (Index y = 0; y < g.order(); ++y)
            exps.push_back(integer(rows[x][y], at_index(at_index(where + ".exponents", x), y)));
    }
    return PhaseCocycle(g, modulus, std::move(exps));
}

std::vector<Matrix> scalar_values(const PhaseCocycle &p, const Algebra &a)
{
    const Index n = p.group().order();
    std::vector<Matrix> values;
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            values.push_back(p.value(x, y) * a.identity());
    return values;
}

} // namespace

SystemSpec system_from_json(const json &j)
{
    require_keys(j, {"algebra", "group", "action", "multiplier", "state", "representation", "description"}, "system");
    Algebra alg = algebra_from_json(member(j, "algebra", "system"));
    FiniteGroup grp = group_from_json(member(j, "group", "system"));
    std::vector<Automorphism> action;
    if (j.contains("action"))
        action = action_from_json(j.at("action"), alg, grp);
    SystemSpec spec{CovarianceSystem(alg, grp, action), {}, {}, {}, {}, {}};
    const auto &sys = spec.system;

    if (j.contains("multiplier"))
    {
        const std::string where = "multiplier";
        const json &m = j.at("multiplier");
        require_keys(m, {"side", "phase", "values"}, where);
        const std::string side = m.value("side", "left");
        if (side != "left" && side != "right")
            throw InputError(where + ".side: expected \"left\" or \"right\"");
        std::vector<Matrix> values;
        if (m.contains("phase"))
        {
            spec.phase = phase_from_json(m.at("phase"), grp, where + ".phase");
            values = scalar_values(*spec.phase, alg);
        }
        else
            values = table_values(member(m, "values", where), grp.order(), where + ".values");
        if (side == "left")
        {
            spec.left.emplace(alg, grp, sys.action(), std::move(values));
            spec.right = left_to_right(*spec.left);
        }
        else
        {
            spec.right.emplace(alg, grp, sys.action(), std::move(values));
            spec.left = right_to_left(*spec.right);
        }
    }

    if (j.contains("representation"))
    {
        const std::string where = "representation";
        const json &r = j.at("representation");
        require_keys(r, {"pi", "u", "psi"}, where);
        Representation rep;
        const json &pi = array(member(r, "pi", where), where + ".pi", alg.dimension());
        for (std::size_t i = 0; i < pi.size(); ++i)
            rep.pi.push_back(matrix_from_json(pi[i], at_index(where + ".pi", i)));
        const json &u = array(member(r, "u", where), where + ".u", grp.order());
        for (std::size_t x = 0; x < u.size(); ++x)
            rep.u.push_back(matrix_from_json(u[x], at_index(where + ".u", x)));
        rep.omega = vector_from_json(member(r, "psi", where), where + ".psi");
        spec.representation = std::move(rep);
    }

    if (j.contains("state"))
    {
        const std::string where = "state";
        const json &s = j.at("state");
        require_keys(s, {"tensor", "diagonal", "from_representation"}, where);
        const RightMultiplier zeta = spec.right ? *spec.right : RightMultiplier::trivial(alg, grp, sys.action());
        if (s.contains("from_representation"))
        {
            if (!spec.representation)
                throw InputError(where + ".from_representation: the file has no representation section");
            const auto &rep = *spec.representation;
            spec.state = state_from_rep(sys, rep.pi, rep.u, rep.omega);
        }
        else if (s.contains("diagonal"))
            spec.state = diagonal_state(sys, vector_from_json(s.at("diagonal"), where + ".diagonal"), zeta);
        else
        {
            const json &t = array(member(s, "tensor", where), where + ".tensor", grp.order());
            const Index n = grp.order();
            const Index dim = alg.dimension();
            std::vector<Complex> values;
            for (Index x = 0; x < n; ++x)
            {
                const std::string wx = at_index(where + ".tensor", x);
                array(t[x], wx, n);
                for (Index y = 0; y < n; ++y)
                {
                    const std::string wy = at_index(wx, y);
                    array(t[x][y], wy, dim);
                    for (Index i = 0; i < dim; ++i)
                        values.push_back(complex_from_json(t[x][y][i], at_index(wy, i)));
                }
            }
            spec.state.emplace(sys, std::move(values), zeta);
        }
    }
    return spec;
}

json state_to_json(const CovariantState &omega)
{
    const Index n = omega.system().group().order();
    const Index dim = omega.system().algebra().dimension();
    json t = json::array();
    for (Index x = 0; x < n; ++x)
    {
        json row = json::array();
        for (Index y = 0; y < n; ++y)
        {
            json f = json::array();
            for (Index i = 0; i < dim; ++i)
                f.push_back(to_json(omega.on_basis(x, y, i)));
            row.push_back(std::move(f));
        }
        t.push_back(std::move(row));
    }
    return {{"tensor", t}};
}

json to_json(const CheckResult &r)
{
    json out = {{"check", r.check},
                {"max_residual", r.max_residual},
                {"witness_triple", r.witness},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
    if (!r.note.empty())
        out["note"] = r.note;
    return out;
}

json to_json(const ValidationReport &r)
{
    json checks = json::array();
    for (const auto &c : r.checks)
        checks.push_back(to_json(c));
    json out = {{"pass", r.pass()}, {"checks", checks}};
    if (r.seed)
        out["seed"] = *r.seed;
    return out;
}

json to_json(const Representation &rep)
{
    json pi = json::array();
    for (const auto &m : rep.pi)
        pi.push_back(to_json(m));
    json u = json::array();
    for (const auto &m : rep.u)
        u.push_back(to_json(m));
    return {{"pi", pi}, {"u", u}, {"omega", to_json(rep.omega)}};
}

json to_json(const GnsRep &g)
{
    json spectrum = json::array();
    for (Eigen::Index i = 0; i < g.gram_spectrum.size(); ++i)
        spectrum.push_back(g.gram_spectrum(i));
    return {{"ambient_dim", g.ambient_dim},
            {"quotient_dim", g.quotient_dim},
            {"trivial", g.trivial},
            {"gram_spectrum", spectrum},
            {"representation", to_json(g.rep)}};
}

// -- quantum spacetime -------------------------------------------------------------------

namespace
{

Real4 real4(const json &j, const std::string &where)
{
    const Eigen::MatrixXd m = real_matrix_from_json(j, where);
    if (m.rows() != 4 || m.cols() != 4)
        throw InputError(where + ": expected a 4x4 matrix");
    return m;
}

} // namespace

QstParams qst_params_from_json(const json &j)
{
    const std::string where = "params";
    require_keys(j, {"gamma", "C", "atoms", "description"}, where);
    QstParams p;
    if (j.contains("gamma"))
        p.gamma = real4(j.at("gamma"), where + ".gamma");
    if (j.contains("C"))
        p.c = real4(j.at("C"), where + ".C");
    if (j.contains("atoms"))
    {
        const json &atoms = array(j.at("atoms"), where + ".atoms");
        p.atoms.clear();
        for (std::size_t i = 0; i < atoms.size(); ++i)
        {
            const std::string w = at_index(where + ".atoms", i);
            require_keys(atoms[i], {"lorentz", "weight"}, w);
            Atom a;
            if (atoms[i].contains("lorentz"))
                a.lorentz = real4(atoms[i].at("lorentz"), w + ".lorentz");
            a.weight = number(member(atoms[i], "weight", w), w + ".weight");
            p.atoms.push_back(a);
        }
    }
    return p;
}

json to_json(const QstParams &p)
{
    json atoms = json::array();
    for (const auto &a : p.atoms)
        atoms.push_back({{"lorentz", real_to_json(a.lorentz)}, {"weight", a.weight}});
    return {{"gamma", real_to_json(p.gamma)}, {"C", real_to_json(p.c)}, {"atoms", atoms}};
}

std::vector<Vec8> points_from_json(const json &j)
{
    const std::string where = "points";
    const json *list = &j;
    if (j.is_object())
    {
        require_keys(j, {"points", "description"}, where);
        list = &member(j, "points", where);
    }
    array(*list, where);
    std::vector<Vec8> out;
    for (std::size_t i = 0; i < list->size(); ++i)
    {
        const std::string w = at_index(where, i);
        const json &p = array((*list)[i], w, 8);
        Vec8 x;
        for (int c = 0; c < 8; ++c)
            x(c) = number(p[c], at_index(w, c));
        out.push_back(x);
    }
    return out;
}

std::string fnv1a_hex(const std::string &text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace covsys::io
