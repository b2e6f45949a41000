#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <covsys/crossed.hpp>
#include <covsys/galilei.hpp>
#include <covsys/gns.hpp>
#include <covsys/groups.hpp>
#include <covsys/multipliers.hpp>
#include <covsys/qst.hpp>
#include <covsys/states.hpp>

#include "presets.hpp"

namespace covctl
{

namespace io = covsys::io;
using covsys::CheckResult;
using covsys::Complex;
using covsys::Index;
using covsys::InputError;
using covsys::Matrix;
using covsys::ValidationReport;

json Options::to_json() const
{
    json j = {{"seed", seed}, {"rank_tol", rank_tol}, {"preset", preset}, {"n", n}};
    if (tol)
        j["tol"] = *tol;
    if (trials)
        j["trials"] = *trials;
    if (command.rfind("galilei", 0) == 0)
        j.update({{"kappa", kappa},
                  {"width", width},
                  {"shift", shift},
                  {"spin_trials", spin_trials},
                  {"dims", dims},
                  {"sites", sites},
                  {"spacing", spacing},
                  {"levels", levels}});
    if (command.rfind("qst", 0) == 0)
        j.update({{"points", std::filesystem::path(points).filename().string()},
                  {"count", count},
                  {"scale", scale},
                  {"h", h},
                  {"rapidity", rapidity},
                  {"axis", axis}});
    if (command == "gns")
        j["pair"] = pair;
    return j;
}

namespace
{

struct Context
{
    explicit Context(const Options &o) : opt(o) {}

    const Options &opt;
    json input;
    json result = json::object();
    json tolerances = json::object();
    ValidationReport checks;
    std::optional<std::string> csv;

    double tol(double fallback)
    {
        const double t = opt.tol.value_or(fallback);
        tolerances["residual_tol"] = t;
        return t;
    }
};

CheckResult check(std::string name, double residual, double tol, std::vector<Index> witness = {},
                  std::string note = {})
{
    if (std::isnan(residual))
        residual = std::numeric_limits<double>::infinity();
    CheckResult r;
    r.check = std::move(name);
    r.max_residual = residual;
    r.witness = std::move(witness);
    r.tolerance = tol;
    r.pass = residual <= tol;
    r.note = std::move(note);
    return r;
}

json complex_json(Complex c) { return io::to_json(c); }

std::size_t trials_or(const Options &o, std::size_t fallback) { return o.trials.value_or(fallback); }

// -- system commands --------------------------------------------------------

json load_system_input(const Options &o)
{
    if (!o.config.empty() && !o.preset.empty())
        throw InputError("give either --config/--system or --preset, not both");
    if (!o.config.empty())
        return io::load_file(o.config);
    if (!o.preset.empty())
        return presets::system(o.preset, o.n);
    throw InputError("an input is required: --config PATH or --preset NAME");
}

const covsys::CovariantState &require_state(const io::SystemSpec &spec)
{
    if (!spec.state)
        throw InputError("the system has no state section");
    return *spec.state;
}

void validate_multiplier(Context &c)
{
    const auto spec = io::system_from_json(c.input);
    if (!spec.left)
        throw InputError("the system has no multiplier section");
    covsys::ValidationOptions vo;
    vo.tol = c.tol(1e-10);
    vo.seed = c.opt.seed;
    if (c.opt.trials)
        vo.samples = *c.opt.trials;
    const auto triples = covsys::validation_triples(spec.system.group(), vo);
    c.checks.merge(covsys::validate_left(*spec.left, triples, vo.tol), "left.");
    if (spec.phase)
        c.checks.merge(covsys::validate_phase_cocycle(*spec.phase), "phase.");
    const Index order = spec.system.group().order();
    c.result = {{"group_order", order},
                {"algebra_dim", spec.system.algebra().dimension()},
                {"triples_checked", triples.size()},
                {"exhaustive", triples.size() == order * order * order},
                {"scalar", spec.left->is_scalar()}};
}

void validate_state(Context &c)
{
    const auto spec = io::system_from_json(c.input);
    const auto &omega = require_state(spec);
    covsys::StateValidationOptions so;
    so.tol = c.tol(1e-10);
    so.seed = c.opt.seed;
    so.families = trials_or(c.opt, 100);
    c.checks.merge(covsys::validate_state(omega, so));
    c.result = {{"group_order", spec.system.group().order()},
                {"algebra_dim", spec.system.algebra().dimension()},
                {"families", so.families}};
}

Index group_element(const covsys::FiniteGroup &g, const std::string &name)
{
    for (Index x = 0; x < g.order(); ++x)
        if (g.label(x) == name)
            return x;
    try
    {
        std::size_t used = 0;
        const long v = std::stol(name, &used);
        if (used == name.size() && v >= 0 && static_cast<Index>(v) < g.order())
            return static_cast<Index>(v);
    }
    catch (const std::exception &)
    {
    }
    throw InputError("--pair: \"" + name + "\" is neither a group label nor an element index");
}

void gns(Context &c)
{
    const auto spec = io::system_from_json(c.input);
    const auto &omega = require_state(spec);
    const double tol = c.tol(1e-10);
    c.tolerances["rank_tol"] = c.opt.rank_tol;
    covsys::GnsOptions go;
    go.rank_tol = c.opt.rank_tol;
    const auto g = covsys::gns_build(omega, go);
    c.checks.merge(covsys::check_gns(g, omega, tol));
    c.result = {{"ambient_dim", g.ambient_dim},
                {"quotient_dim", g.quotient_dim},
                {"trivial", g.trivial},
                {"reconstruction_residual", covsys::verify_reconstruction(g, omega)},
                {"representation", io::to_json(g)}};

    if (spec.representation)
    {
        const auto r = covsys::find_intertwiner(g.rep, *spec.representation, omega);
        const double worst = std::max({r.unitarity, r.pi_residual, r.u_residual, r.omega_residual});
        c.checks.add(check("intertwiner", r.ok ? worst : std::numeric_limits<double>::infinity(), 1e-9, r.witness,
                           r.failure));
        c.result["intertwiner"] = {{"ok", r.ok},
                                   {"unitarity", r.unitarity},
                                   {"pi_residual", r.pi_residual},
                                   {"u_residual", r.u_residual},
                                   {"omega_residual", r.omega_residual}};
    }

    // U(x) U(y) (U(y) U(x))^{-1}, a phase times the identity for scalar multipliers.
    const auto &grp = spec.system.group();
    std::vector<std::string> pair = c.opt.pair;
    if (pair.empty())
    {
        const auto &labels = grp.labels();
        if (std::find(labels.begin(), labels.end(), "(1,0)") != labels.end() &&
            std::find(labels.begin(), labels.end(), "(0,1)") != labels.end())
            pair = {"(1,0)", "(0,1)"};
    }
    if (pair.size() == 2 && !g.trivial)
    {
        const Index x = group_element(grp, pair[0]);
        const Index y = group_element(grp, pair[1]);
        const Matrix &ux = g.rep.u[x];
        const Matrix &uy = g.rep.u[y];
        const Matrix comm = ux * uy * (uy * ux).adjoint();
        const Complex phase = comm(0, 0);
        const double scalar_residual =
            (comm - phase * Matrix::Identity(comm.rows(), comm.cols())).cwiseAbs().maxCoeff();
        c.result["commutation"] = {{"x", grp.label(x)},
                                   {"y", grp.label(y)},
                                   {"phase", complex_json(phase)},
                                   {"phase_angle_over_2pi", std::arg(phase) / (2.0 * covsys::kPi)},
                                   {"scalar_residual", scalar_residual}};
    }
}

void crossed(Context &c)
{
    const auto spec = io::system_from_json(c.input);
    const auto &omega = require_state(spec);
    const double tol = c.tol(1e-10);
    c.tolerances["rank_tol"] = c.opt.rank_tol;
    const std::size_t trials = trials_or(c.opt, 100);
    const covsys::ExtendedState bar(omega);
    const auto &cp = bar.algebra();
    covsys::GnsOptions go;
    go.rank_tol = c.opt.rank_tol;
    const auto g = covsys::gns_build(omega, go);

    std::mt19937_64 rng(c.opt.seed);
    covsys::MaxTracker assoc, anti, invol, negativity, imag, rep;
    double min_positive = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t)
    {
        const auto f = cp.random(rng);
        const auto h = cp.random(rng);
        const auto k = cp.random(rng);
        const std::vector<Index> w{static_cast<Index>(t)};
        assoc.update(cp.distance(cp.convolve(cp.convolve(f, h), k), cp.convolve(f, cp.convolve(h, k))), w);
        anti.update(cp.distance(cp.involution(cp.convolve(f, h)), cp.convolve(cp.involution(h), cp.involution(f))),
                    w);
        invol.update(cp.distance(cp.involution(cp.involution(f)), f), w);
        const Complex p = bar(cp.convolve(cp.involution(f), f));
        min_positive = std::min(min_positive, p.real());
        negativity.update(std::max(0.0, -p.real()), w);
        imag.update(std::abs(p.imag()), w);
        if (!g.trivial)
        {
            const Matrix pf = covsys::integrated_rep(g.rep, spec.system.algebra(), f);
            rep.update(std::abs(bar(f) - g.rep.omega.dot(pf * g.rep.omega)), w);
        }
    }
    c.checks.add(assoc.result("associativity", tol));
    c.checks.add(anti.result("involution_antimultiplicative", tol));
    c.checks.add(invol.result("involution_involutive", tol));
    c.checks.add(negativity.result("positivity", tol));
    c.checks.add(imag.result("positivity_real", tol));
    if (!g.trivial)
        c.checks.add(rep.result("integrated_representation", tol));

    const auto cmp = covsys::compare_crossed_gns(omega, g, c.opt.rank_tol);
    c.checks.add(check("crossed_gns_dimension", cmp.crossed_gns_dim == cmp.cyclic_dim ? 0.0 : 1.0, 0.0,
                       {cmp.crossed_gns_dim, cmp.cyclic_dim}));
    c.checks.add(check("crossed_gns_form", cmp.form_residual, tol));
    c.checks.add(check("crossed_gns_isometry", cmp.isometry_residual, 1e-8));
    c.result = {{"trials", trials},
                {"min_positivity_value", min_positive},
                {"unit_value", complex_json(bar(cp.unit()))},
                {"crossed_gns_dim", cmp.crossed_gns_dim},
                {"cyclic_dim", cmp.cyclic_dim}};
}

// -- galilei ------------------------------------------------------------------

void galilei_cocycle(Context &c)
{
    const double tol = c.tol(1e-12);
    const double section_tol = 1e-10;
    c.tolerances["section_tol"] = section_tol;
    const std::size_t trials = trials_or(c.opt, 1000);
    c.checks.add(covsys::galilei_cocycle_check(c.opt.kappa, trials, c.opt.seed, tol));

    std::mt19937_64 rng(c.opt.seed);
    std::normal_distribution<double> normal;
    covsys::MaxTracker shifts;
    for (std::size_t t = 0; t < trials; ++t)
    {
        const Eigen::Vector3d a(normal(rng), normal(rng), normal(rng));
        const Eigen::Vector3d b(normal(rng), normal(rng), normal(rng));
        const Complex v = covsys::galilei_cocycle(c.opt.kappa, covsys::GalileiElement::pure_shift(a),
                                                  covsys::GalileiElement::pure_shift(b));
        shifts.update(std::abs(v - 1.0), {static_cast<Index>(t)});
    }
    c.checks.add(shifts.result("pure_shifts_trivial", 0.0));

    covsys::MaxTracker defect, round_trip;
    long plus = 0, minus = 0;
    for (std::size_t t = 0; t < c.opt.spin_trials; ++t)
    {
        const covsys::So3 l = covsys::random_so3(rng);
        const covsys::So3 lp = covsys::random_so3(rng);
        const std::vector<Index> w{static_cast<Index>(t)};
        defect.update(covsys::spin_sign_defect(l, lp), w);
        (covsys::spin_cocycle(l, lp) > 0 ? plus : minus) += 1;
        const covsys::So3 back = covsys::su2_to_so3(covsys::so3_section(l));
        round_trip.update((back.matrix() - l.matrix()).cwiseAbs().maxCoeff(), w);
    }
    c.checks.add(defect.result("spin_cocycle_sign", section_tol));
    c.checks.add(round_trip.result("section_round_trip", section_tol));
    c.result = {{"kappa", c.opt.kappa},
                {"trials", trials},
                {"spin_trials", c.opt.spin_trials},
                {"spin_cocycle_counts", {{"plus", plus}, {"minus", minus}}}};
}

Eigen::Vector3d shift3(const Options &o)
{
    if (o.shift.empty())
        return Eigen::Vector3d::Zero();
    if (o.shift.size() != 3)
        throw InputError("--shift: spin-demo needs three components");
    return {o.shift[0], o.shift[1], o.shift[2]};
}

json quadrature_json(const covsys::QuadratureValue &v)
{
    return {{"value", complex_json(v.value)}, {"error_estimate", v.error_estimate}, {"order", v.order}};
}

void galilei_spin_demo(Context &c)
{
    const double tol = c.tol(1e-6);
    if (!(c.opt.width > 0.0))
        throw InputError("--width must be positive");
    const auto r = covsys::spin_demo(c.opt.width, shift3(c.opt));
    const double inf = std::numeric_limits<double>::infinity();
    c.checks.add(check("spin_ratio", r.ratio ? std::abs(*r.ratio + 1.0) : inf, tol, {},
                       r.ratio ? "" : "overlap below the magnitude floor; ratio undefined"));
    c.checks.add(check("scalar_ratio", r.scalar_ratio ? std::abs(*r.scalar_ratio - 1.0) : inf, tol));
    c.result = {{"up", quadrature_json(r.up)},
                {"down", quadrature_json(r.down)},
                {"scalar_up", quadrature_json(r.scalar_up)},
                {"scalar_down", quadrature_json(r.scalar_down)}};
    c.result["ratio"] = r.ratio ? complex_json(*r.ratio) : json(nullptr);
    c.result["scalar_ratio"] = r.scalar_ratio ? complex_json(*r.scalar_ratio) : json(nullptr);
}

void galilei_grid_check(Context &c)
{
    const double tol = c.tol(1e-12);
    const double order_tol = 0.1;
    c.tolerances["ccr_order_tol"] = order_tol;
    if (c.opt.dims < 1 || c.opt.dims > 3)
        throw InputError("--dims must be 1, 2 or 3");
    const covsys::GridSpec grid{c.opt.dims, static_cast<Index>(c.opt.sites), c.opt.spacing};
    Eigen::VectorXd q = Eigen::VectorXd::Constant(c.opt.dims, c.opt.spacing);
    if (!c.opt.shift.empty())
    {
        if (static_cast<int>(c.opt.shift.size()) != c.opt.dims)
            throw InputError("--shift needs one component per dimension");
        q = Eigen::Map<const Eigen::VectorXd>(c.opt.shift.data(), c.opt.dims);
    }
    const auto g = covsys::standard_covariance_check(grid, q, c.opt.seed);
    c.checks.add(check("standard_covariance", g.covariance_residual, tol));
    const auto ccr = covsys::ccr_check(c.opt.dims, 0.2, c.opt.levels);
    c.checks.add(check("ccr_order", std::abs(ccr.order - 2.0), order_tol));
    c.checks.add(check("ccr_cross_terms", ccr.cross_residual, tol));
    c.result = {{"displacement", g.displacement},
                {"ccr",
                 {{"spacings", ccr.spacings},
                  {"residuals", ccr.residuals},
                  {"ratios", ccr.ratios},
                  {"order", ccr.order}}}};
}

// -- qst --------------------------------------------------------------------------

json load_config(const Options &o)
{
    if (o.config.empty())
        throw InputError("--config PATH is required");
    return io::load_file(o.config);
}

std::vector<covsys::Vec8> weyl_points(const Context &c)
{
    if (!c.opt.points.empty())
        return io::points_from_json(io::load_file(c.opt.points));
    std::mt19937_64 rng(c.opt.seed);
    return covsys::random_weyl_points(c.opt.count, rng, c.opt.scale);
}

json points_json(const std::vector<covsys::Vec8> &pts)
{
    json out = json::array();
    for (const auto &p : pts)
        out.push_back(std::vector<double>(p.data(), p.data() + 8));
    return out;
}

void qst_moments(Context &c)
{
    const covsys::QstModel model(io::qst_params_from_json(c.input));
    const double tol = c.tol(1e-6);
    const double first_tol = 1e-8;
    c.tolerances["first_moment_tol"] = first_tol;
    c.tolerances["h"] = c.opt.h;
    c.checks.merge(covsys::validate_params(model), "params.");

    const covsys::Complex4 analytic = covsys::second_moments(model);
    const auto kernel = covsys::moments_via_kernel(model, c.opt.h, tol);
    const double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
    covsys::MaxTracker agree;
    for (Index mu = 0; mu < 4; ++mu)
        for (Index nu = 0; nu < 4; ++nu)
            agree.update(std::abs(analytic(mu, nu) - kernel.refined(mu, nu)) / scale, {mu, nu});
    c.checks.add(agree.result("moments_agreement", tol));
    const Eigen::Vector4cd first = covsys::first_moments(model, c.opt.h);
    covsys::MaxTracker fm;
    for (Index mu = 0; mu < 4; ++mu)
        fm.update(std::abs(first(mu)), {mu});
    c.checks.add(fm.result("first_moments", first_tol));

    c.result = {{"second_moments", io::to_json(Matrix(analytic))},
                {"kernel_moments", io::to_json(Matrix(kernel.refined))},
                {"richardson_slope", kernel.slope},
                {"first_moments", io::to_json(covsys::Vector(first))},
                {"atoms", model.atoms().size()}};

    if (c.opt.format == "csv")
    {
        std::ostringstream s;
        s.precision(17);
        s << "mu,nu,analytic_re,analytic_im,kernel_re,kernel_im,abs_diff\n";
        for (Index mu = 0; mu < 4; ++mu)
            for (Index nu = 0; nu < 4; ++nu)
                s << mu << ',' << nu << ',' << analytic(mu, nu).real() << ',' << analytic(mu, nu).imag() << ','
                  << kernel.refined(mu, nu).real() << ',' << kernel.refined(mu, nu).imag() << ','
                  << std::abs(analytic(mu, nu) - kernel.refined(mu, nu)) << '\n';
        c.csv = s.str();
    }
}

void qst_gram(Context &c)
{
    const covsys::QstModel model(io::qst_params_from_json(c.input));
    const double tol = c.tol(1e-10);
    const auto pts = weyl_points(c);
    const Eigen::MatrixXcd g = covsys::qst_gram(model, pts);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues()(0);
    c.checks.add(check("gram_positivity", std::max(0.0, -min_eig), tol));
    c.checks.merge(covsys::validate_params(model), "params.");
    c.result = {{"min_eigenvalue", min_eig},
                {"eigenvalues", std::vector<double>(es.eigenvalues().data(),
                                                    es.eigenvalues().data() + es.eigenvalues().size())},
                {"positivity_margin", model.positivity_margin()},
                {"points", points_json(pts)}};
}

void qst_transport(Context &c)
{
    const covsys::QstParams params = io::qst_params_from_json(c.input);
    const double tol = c.tol(1e-12);
    if (c.opt.axis < 1 || c.opt.axis > 3)
        throw InputError("--axis must be 1, 2 or 3");
    const covsys::Real4 l = covsys::lorentz_boost(c.opt.axis, c.opt.rapidity);
    const auto tr = covsys::transport_T(params.c, l);
    const auto &e = tr.point.e();
    const auto &m = tr.point.m();
    c.checks.add(check("sigma_invariants",
                       std::max(std::abs(e.squaredNorm() - m.squaredNorm()), std::abs(std::abs(e.dot(m)) - 1.0)),
                       1e-10));
    c.checks.add(check("epsilon_transport",
                       (covsys::epsilon_matrix(tr.point) -
                        l.transpose() * covsys::epsilon_matrix(covsys::SigmaPoint::base()) * l)
                           .cwiseAbs()
                           .maxCoeff(),
                       1e-10));

    // Commutator forms against the Weyl relations at the base point and at
    // seeded boosted points.
    const std::size_t trials = trials_or(c.opt, 10);
    std::mt19937_64 rng(c.opt.seed);
    std::uniform_real_distribution<double> rap(-1.0, 1.0);
    covsys::MaxTracker comm;
    json samples = json::array();
    for (std::size_t t = 0; t <= trials; ++t)
    {
        covsys::Real4 lt = covsys::Real4::Identity();
        if (t > 0)
            lt = covsys::lorentz_rotation(covsys::random_so3(rng)) *
                 covsys::lorentz_boost(1 + static_cast<int>((t - 1) % 3), rap(rng));
        const covsys::SigmaPoint p = covsys::transport_T(params.c, lt).point;
        const covsys::Complex8 a = covsys::assemble_commutators(covsys::commutator_forms(p, params.gamma));
        const covsys::Complex8 w = covsys::weyl_commutators(p, params.gamma);
        const double r = (a - w).cwiseAbs().maxCoeff();
        comm.update(r, {static_cast<Index>(t)});
        samples.push_back({{"e", std::vector<double>(p.e().data(), p.e().data() + 3)},
                           {"m", std::vector<double>(p.m().data(), p.m().data() + 3)},
                           {"residual", r}});
    }
    c.checks.add(comm.result("commutator_consistency", tol));

    const auto stab = covsys::stabilizer_check(params.c);
    json stab_json = json::array();
    for (const auto &s : stab)
        stab_json.push_back(
            {{"label", s.label}, {"epsilon_residual", s.epsilon_residual}, {"c_residual", s.c_residual}});

    c.result = {{"lorentz", io::real_to_json(l)},
                {"e", std::vector<double>(e.data(), e.data() + 3)},
                {"m", std::vector<double>(m.data(), m.data() + 3)},
                {"sign", tr.point.sign()},
                {"epsilon", io::real_to_json(covsys::epsilon_matrix(tr.point))},
                {"eta", io::real_to_json(covsys::eta_matrix(tr.point, params.gamma))},
                {"T", io::real_to_json(tr.t)},
                {"commutator_samples", samples},
                {"stabilizer", stab_json}};
}

void qst_kernel(Context &c)
{
    const covsys::QstModel model(io::qst_params_from_json(c.input));
    const double tol = c.tol(1e-12);
    const auto pts = weyl_points(c);
    const auto n = static_cast<Index>(pts.size());
    json values = json::array();
    covsys::MaxTracker diag, herm;
    for (Index j = 0; j < n; ++j)
    {
        json row = json::array();
        for (Index l = 0; l < n; ++l)
        {
            const Complex k = covsys::quasifree_kernel(model, pts[j], pts[l]);
            row.push_back(complex_json(k));
            if (l > j)
                herm.update(std::abs(k - std::conj(covsys::quasifree_kernel(model, pts[l], pts[j]))), {j, l});
        }
        diag.update(std::abs(covsys::quasifree_kernel(model, pts[j], pts[j]) - 1.0), {j});
        values.push_back(row);
    }
    const Complex origin = covsys::quasifree_kernel(model, covsys::Vec8::Zero(), covsys::Vec8::Zero());
    c.checks.add(check("normalization", std::abs(origin - 1.0), tol));
    c.checks.add(diag.result("diagonal", tol));
    c.checks.add(herm.result("hermitian", tol));
    c.result = {{"points", points_json(pts)}, {"kernel", values}};
}

using Handler = std::function<void(Context &)>;

struct CommandInfo
{
    Handler handler;
    bool system_input;
    bool qst_input;
};

const std::map<std::string, CommandInfo> &commands()
{
    static const std::map<std::string, CommandInfo> table = {
        {"validate-multiplier", {validate_multiplier, true, false}},
        {"validate-state", {validate_state, true, false}},
        {"gns", {gns, true, false}},
        {"crossed", {crossed, true, false}},
        {"galilei cocycle", {galilei_cocycle, false, false}},
        {"galilei spin-demo", {galilei_spin_demo, false, false}},
        {"galilei grid-check", {galilei_grid_check, false, false}},
        {"qst moments", {qst_moments, false, true}},
        {"qst gram", {qst_gram, false, true}},
        {"qst transport", {qst_transport, false, true}},
        {"qst kernel", {qst_kernel, false, true}},
    };
    return table;
}

} // namespace

Outcome run(const Options &o)
{
    const auto it = commands().find(o.command);
    if (it == commands().end())
        throw InputError("unknown command \"" + o.command + "\"");
    if (o.format != "json" && o.format != "csv")
        throw InputError("--format: expected json or csv");
    if (o.format == "csv" && o.command != "qst moments")
        throw InputError("--format csv is only available for qst moments");

    Context c(o);
    if (it->second.system_input)
        c.input = load_system_input(o);
    else if (it->second.qst_input)
        c.input = load_config(o);

    json config = {{"command", o.command}, {"options", o.to_json()}, {"input", c.input}};
    if (!o.points.empty())
        config["points"] = io::load_file(o.points);
    json report = {{"tool", "covctl"},
                   {"version", COVCTL_VERSION},
                   {"command", o.command},
                   {"config_hash", io::fnv1a_hex(config.dump())},
                   {"seed", o.seed},
                   {"options", o.to_json()}};

    Outcome out;
    try
    {
        it->second.handler(c);
        out.pass = c.checks.pass();
    }
    catch (const covsys::PreconditionError &e)
    {
        report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
        out.pass = false;
    }
    catch (const covsys::NumericalError &e)
    {
        report["error"] = {{"kind", "numerical"}, {"message", e.what()}};
        out.pass = false;
    }
    report["tolerances"] = c.tolerances;
    report["checks"] = io::to_json(c.checks).at("checks");
    report["result"] = c.result;
    report["pass"] = out.pass;
    out.report = std::move(report);
    out.csv = std::move(c.csv);
    return out;
}

} // namespace covctl
