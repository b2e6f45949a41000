#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covsys/crossed.hpp"
#include "covsys/gns.hpp"
#include "covsys/multipliers.hpp"
#include "covsys/qst.hpp"
#include "covsys/states.hpp"

namespace covsys::io
{

using nlohmann::json;

/// Throws InputError naming `source`, line and column on malformed text.
json parse(const std::string &text, const std::string &source = "<input>");
json load_file(const std::string &path);

/// Throws InputError naming `where` if `obj` has a key outside `allowed`.
void require_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &where);

json to_json(Complex c);
Complex complex_from_json(const json &j, const std::string &where);
json to_json(const Matrix &m);
Matrix matrix_from_json(const json &j, const std::string &where);
json to_json(const Vector &v);
Vector vector_from_json(const json &j, const std::string &where);
json real_to_json(const Eigen::MatrixXd &m);
Eigen::MatrixXd real_matrix_from_json(const json &j, const std::string &where);

json to_json(const Algebra &a);
Algebra algebra_from_json(const json &j);
json to_json(const FiniteGroup &g);
/// {"order", "table", "labels"?} or {"preset": "zn_squared" | "cyclic", "n"}.
FiniteGroup group_from_json(const json &j);
json action_to_json(const std::vector<Automorphism> &action);
std::vector<Automorphism> action_from_json(const json &j, const Algebra &a, const FiniteGroup &g);

json to_json(const MultiplierTable &m);
json to_json(const PhaseCocycle &p);

/// The parts of a system file that were present.
struct SystemSpec
{
    CovarianceSystem system;
    std::optional<PhaseCocycle> phase;
    std::optional<LeftMultiplier> left;
    std::optional<RightMultiplier> right;
    std::optional<CovariantState> state;
    std::optional<Representation> representation;
};

/// Reads algebra, group, action, multiplier and state sections; see README.
SystemSpec system_from_json(const json &j);

json state_to_json(const CovariantState &omega);
json to_json(const CheckResult &r);
json to_json(const ValidationReport &r);
json to_json(const Representation &rep);
json to_json(const GnsRep &g);

QstParams qst_params_from_json(const json &j);
json to_json(const QstParams &p);
std::vector<Vec8> points_from_json(const json &j);

/// FNV-1a over the bytes of `text`, as 16 hex digits.
std::string fnv1a_hex(const std::string &text);

} // namespace covsys::io
