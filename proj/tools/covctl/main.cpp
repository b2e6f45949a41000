#include <cstdlib>
#include <fstream>
#include <iostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <covsys/parallel.hpp>

#include "commands.hpp"

namespace
{

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

void add_common(CLI::App *cmd, covctl::Options &o)
{
    cmd->add_option("--seed", o.seed, "Seed for every random draw")->capture_default_str();
    cmd->add_option("--tol", o.tol, "Residual tolerance (command-specific default)");
    cmd->add_option("--out", o.out, "Write the report here instead of stdout");
    cmd->add_option("--format", o.format, "json, or csv for qst moments")->capture_default_str();
}

void add_system_input(CLI::App *cmd, covctl::Options &o)
{
    cmd->add_option("--config,--system", o.config, "System JSON file");
    cmd->add_option("--preset", o.preset, "Built-in system: heisenberg or z2-swap");
    cmd->add_option("--n", o.n, "Order n of the Heisenberg preset")->capture_default_str();
}

void add_trials(CLI::App *cmd, covctl::Options &o, const std::string &what)
{
    cmd->add_option("--trials", o.trials, what);
}

CLI::App *leaf(CLI::App &parent, const std::string &name, const std::string &full, const std::string &help,
               covctl::Options &o)
{
    CLI::App *cmd = parent.add_subcommand(name, help);
    cmd->callback([&o, full] { o.command = full; });
    add_common(cmd, o);
    return cmd;
}

void apply_thread_limit()
{
    const char *env = std::getenv("COVCTL_THREADS");
    if (!env || !*env)
        return;
    char *end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (*end != '\0' || n == 0)
        throw covsys::InputError(std::string("COVCTL_THREADS must be a positive integer, got \"") + env + "\"");
    covsys::set_max_threads(n);
}

} // namespace

int main(int argc, char **argv)
{
    covctl::Options o;
    CLI::App app{"covctl: covariance systems, multipliers, GNS and quantum spacetime checks"};
    app.set_version_flag("--version", std::string(COVCTL_VERSION));
    app.require_subcommand(1);

    auto *vm = leaf(app, "validate-multiplier", "validate-multiplier", "Validate a C*-multiplier", o);
    add_system_input(vm, o);
    add_trials(vm, o, "Sampled triples when the group is too large for exhaustive checking");

    auto *vs = leaf(app, "validate-state", "validate-state", "Validate a covariant state", o);
    add_system_input(vs, o);
    add_trials(vs, o, "Random positivity families");

    auto *gn = leaf(app, "gns", "gns", "Build and verify the GNS representation", o);
    add_system_input(gn, o);
    gn->add_option("--rank-tol", o.rank_tol, "Relative Gram eigenvalue cutoff")->capture_default_str();
    gn->add_option("--pair", o.pair, "Two group elements (labels or indices) for the commutation phase")
        ->expected(2);

    auto *cr = leaf(app, "crossed", "crossed", "Crossed product identities and the extended state", o);
    add_system_input(cr, o);
    cr->add_option("--rank-tol", o.rank_tol, "Relative Gram eigenvalue cutoff")->capture_default_str();
    add_trials(cr, o, "Random crossed-product elements");

    CLI::App *gal = app.add_subcommand("galilei", "Galilei group, spin and lattice checks");
    gal->require_subcommand(1);
    auto *gc = leaf(*gal, "cocycle", "galilei cocycle", "Bargmann and spin cocycles", o);
    gc->add_option("--kappa", o.kappa, "Mass parameter")->capture_default_str();
    add_trials(gc, o, "Random Galilei triples");
    gc->add_option("--spin-trials", o.spin_trials, "Random rotation pairs")->capture_default_str();
    auto *sd = leaf(*gal, "spin-demo", "galilei spin-demo", "Off-diagonal spinor state under a pi rotation", o);
    sd->add_option("--width", o.width, "Gaussian width")->capture_default_str();
    sd->add_option("--shift", o.shift, "Shift q (three components)")->expected(3);
    auto *gr = leaf(*gal, "grid-check", "galilei grid-check", "Lattice covariance and CCR convergence", o);
    gr->add_option("--dims", o.dims, "Lattice dimension")->capture_default_str();
    gr->add_option("--sites", o.sites, "Sites per axis")->capture_default_str();
    gr->add_option("--spacing", o.spacing, "Lattice spacing")->capture_default_str();
    gr->add_option("--shift", o.shift, "Shift, one component per dimension")->expected(1, 3);
    gr->add_option("--levels", o.levels, "CCR refinement levels")->capture_default_str();

    CLI::App *qst = app.add_subcommand("qst", "Quantum spacetime quasifree states");
    qst->require_subcommand(1);
    auto *qm = leaf(*qst, "moments", "qst moments", "Second moments, analytic and from the kernel", o);
    qm->add_option("--config", o.config, "QST parameter file")->required();
    qm->add_option("--step", o.h, "Finite-difference step")->capture_default_str();
    auto *qg = leaf(*qst, "gram", "qst gram", "Gram matrix positivity on Weyl points", o);
    qg->add_option("--config", o.config, "QST parameter file")->required();
    qg->add_option("--points", o.points, "Points file; random points when omitted");
    qg->add_option("--count", o.count, "Number of random points")->capture_default_str();
    qg->add_option("--scale", o.scale, "Standard deviation of random points")->capture_default_str();
    auto *qt = leaf(*qst, "transport", "qst transport", "Transport C by a boost; commutator consistency", o);
    qt->add_option("--config", o.config, "QST parameter file")->required();
    qt->add_option("--rapidity", o.rapidity, "Boost rapidity")->capture_default_str();
    qt->add_option("--axis", o.axis, "Boost axis 1..3")->capture_default_str();
    add_trials(qt, o, "Random boosted points for the commutator check");
    auto *qk = leaf(*qst, "kernel", "qst kernel", "Evaluate the two-point kernel", o);
    qk->add_option("--config", o.config, "QST parameter file")->required();
    qk->add_option("--points", o.points, "Points file; random points when omitted");
    qk->add_option("--count", o.count, "Number of random points")->capture_default_str();
    qk->add_option("--scale", o.scale, "Standard deviation of random points")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try
    {
        apply_thread_limit();
        const covctl::Outcome outcome = covctl::run(o);
        const std::string text = outcome.csv ? *outcome.csv : outcome.report.dump(2) + "\n";
        if (o.out.empty())
            std::cout << text;
        else
        {
            std::ofstream f(o.out, std::ios::binary);
            if (!f)
                throw covsys::InputError("cannot write " + o.out);
            f << text;
        }
        if (!outcome.pass)
        {
            std::cerr << "covctl: " << o.command << ": FAIL";
            for (const auto &c : outcome.report.at("checks"))
                if (!c.at("pass").get<bool>())
                    std::cerr << " [" << c.at("check").get<std::string>() << " witness "
                              << c.at("witness_triple").dump() << "]";
            if (outcome.report.contains("error"))
                std::cerr << " " << outcome.report.at("error").at("message").get<std::string>();
            std::cerr << "\n";
            return kExitFailure;
        }
        return 0;
    }
    catch (const covsys::InputError &e)
    {
        std::cerr << "covctl: input error: " << e.what() << "\n";
    }
    catch (const covsys::DomainError &e)
    {
        std::cerr << "covctl: input error: " << e.what() << "\n";
    }
    catch (const covsys::io::json::exception &e)
    {
        std::cerr << "covctl: input error: " << e.what() << "\n";
    }
    return kExitInput;
}
