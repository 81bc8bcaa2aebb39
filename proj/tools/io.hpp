#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivelvp/domain.hpp"
#include "ivelvp/ekeland.hpp"
#include "ivelvp/games.hpp"
#include "ivelvp/gh_calculus.hpp"
#include "ivelvp/interval.hpp"
#include "ivelvp/ivfunc.hpp"
#include "ivelvp/ivode.hpp"
#include "ivelvp/mountain_pass.hpp"

namespace ivelvp::app {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ivelvp/1";

json load_json(const std::string& path);
json parse_json_text(const std::string& text, const std::string& what);

/// Accessors that turn missing keys and wrong types into InvalidArgument.
const json& require(const json& j, const char* key);
double number(const json& j, const char* what);
std::size_t count(const json& j, const char* what);

Interval to_interval(const json& j);
/// Coordinates as numbers or constant expression strings ("ln(0.2)").
Point to_point(const json& j);

json to_json(const Interval& a);
json to_json(const Point& p);
json to_json(const std::vector<Point>& ps);
json to_json(const Witness& w);
json to_json(const GHDerivative& d);
json to_json(const EkelandCertificate& c);
json to_json(const TriangleCheck& t);

/// {"type":"box","lower":[..],"upper":[..],"grid":n} or
/// {"type":"points","labels":[..],"points":[[..]..],"dist":[[..]..]}.
Domain to_domain(const json& j, std::optional<std::size_t> grid_override = {});

/// Coordinate variable names: {"x","x1"} in one dimension, else x1..xn.
std::vector<std::string> coordinate_names(std::size_t dim);

/// "lower"/"upper" expressions, or "values" on a finite domain.
IntervalFn to_function(const json& problem, const Domain& domain);

/// A point of the domain given as coordinates, a number, or a label.
Point resolve_point(const json& j, const Domain& domain);
std::size_t resolve_index(const json& j, const Domain& domain);

/// Bifunction given as "bifunction": {"lower","upper"} in x/y variables.
IndexBifunction to_bifunction(const json& problem, const PointSet& set);

IntervalGame to_game(const json& j);
Profile to_profile(const json& j, const IntervalGame& g);
json profile_json(const IntervalGame& g, std::size_t k);

/// State-function variables: t, xl, xu, u1..um (and u when m = 1).
StateFn to_state_fn(const std::string& src, std::size_t controls);
IntervalIVP to_ivp(const json& problem);
std::size_t control_count(const json& problem);
PiecewiseConstantControl to_control(const json& j, std::size_t controls, double horizon);
json to_json(const PiecewiseConstantControl& u);
json to_json(const IntervalTrajectory& x);

}  // namespace ivelvp::app
