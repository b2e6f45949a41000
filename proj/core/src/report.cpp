#include "covsys/report.hpp"

#include <stdexcept>

namespace covsys
{

bool ValidationReport::pass() const
{
    for (const auto &c : checks)
        if (!c.pass)
            return false;
    return true;
}

const CheckResult *ValidationReport::find(const std::string &check) const
{
    for (const auto &c : checks)
        if (c.check == check)
            return &c;
    return nullptr;
}

const CheckResult &ValidationReport::at(const std::string &check) const
{
    if (const auto *c = find(check))
        return *c;
    throw std::out_of_range("no check named " + check);
}

void ValidationReport::merge(const ValidationReport &other, const std::string &prefix)
{
    for (auto c : other.checks)
    {
        c.check = prefix + c.check;
        checks.push_back(std::move(c));
    }
    if (!seed)
        seed = other.seed;
}

} // namespace covsys
