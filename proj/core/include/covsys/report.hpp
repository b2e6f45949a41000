#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "covsys/types.hpp"

namespace covsys
{

/// One named check: the largest residual found and where it was found.
struct CheckResult
{
    std::string check;
    double max_residual = 0.0;
    std::vector<Index> witness;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

struct ValidationReport
{
    std::vector<CheckResult> checks;
    std::optional<std::uint64_t> seed;

    bool pass() const;
    const CheckResult *find(const std::string &check) const;
    /// Throws std::out_of_range when the check is missing.
    const CheckResult &at(const std::string &check) const;
    void add(CheckResult r) { checks.push_back(std::move(r)); }
    void merge(const ValidationReport &other, const std::string &prefix = "");
};

/// Running maximum with the first (lowest-index) witness kept on ties, so
/// that reductions in fixed order are deterministic.
struct MaxTracker
{
    double value = 0.0;
    std::vector<Index> witness;

    void update(double v, std::vector<Index> w)
    {
        if (std::isnan(v))
            v = std::numeric_limits<double>::infinity();
        if (v > value || (witness.empty() && v >= value))
        {
            value = v;
            witness = std::move(w);
        }
    }
    static MaxTracker combine(MaxTracker a, MaxTracker b)
    {
        if (b.value > a.value || (a.witness.empty() && !b.witness.empty() && b.value >= a.value))
            return b;
        return a;
    }
    CheckResult result(std::string name, double tol) const
    {
        CheckResult r;
        r.check = std::move(name);
        r.max_residual = value;
        r.witness = witness;
        r.tolerance = tol;
        r.pass = value <= tol;
        return r;
    }
};

} // namespace covsys
