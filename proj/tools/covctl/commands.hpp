#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <covsys/io.hpp>

namespace covctl
{

using covsys::io::json;

/// Every flag any subcommand accepts; each subcommand registers its subset.
struct Options
{
    std::string command;
    std::string config;
    std::string preset;
    long n = 3;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    double rank_tol = 1e-9;
    std::string out;
    std::string format = "json";
    std::optional<std::size_t> trials;

    // galilei
    double kappa = 1.0;
    double width = 1.0;
    std::vector<double> shift;
    std::size_t spin_trials = 500;
    int dims = 1;
    long sites = 64;
    double spacing = 0.25;
    int levels = 3;

    // qst
    std::string points;
    std::size_t count = 8;
    double scale = 1.0;
    double h = 1e-3;
    double rapidity = 0.5;
    int axis = 1;

    // gns
    std::vector<std::string> pair;

    /// The options that influence the result, for the config hash.
    json to_json() const;
};

/// What a command produced. `csv` is set only for tabular output.
struct Outcome
{
    json report;
    bool pass = false;
    std::optional<std::string> csv;
};

/// Loads the input, runs `options.command` and wraps the result in the
/// common report envelope. Input errors propagate as covsys::InputError or
/// DomainError; mathematical failures are reported with pass = false.
Outcome run(const Options &options);

} // namespace covctl
