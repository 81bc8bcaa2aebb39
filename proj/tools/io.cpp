#include "io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace ivelvp::app {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, what));
    return out;
}

Matrix to_matrix(const json& j) {
    if (!j.is_array()) bad("distance matrix must be an array of rows");
    Matrix m;
    for (const auto& row : j) m.push_back(numbers(row, "distance matrix row"));
    return m;
}

std::vector<std::string> strings(const json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) bad(std::string(what) + " must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::string expr_text(const json& problem, const char* key) {
    const json& v = require(problem, key);
    if (!v.is_string()) bad(std::string("\"") + key + "\" must be an expression string");
    return v.get<std::string>();
}

}  // namespace

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, what + ": invalid JSON (" + e.what() + ")");
    }
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const Expr e = Expr::parse(j.get<std::string>(), {});
        return e.eval(std::span<const double>{});
    }
    bad(std::string(what) + " must be a number");
}

std::size_t count(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

Interval to_interval(const json& j) {
    if (!j.is_array() || j.size() != 2) bad("intervals are written as [lo, hi]");
    const double lo = number(j[0], "interval endpoint");
    const double hi = number(j[1], "interval endpoint");
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        std::ostringstream os;
        os.precision(17);
        os << "invalid interval [" << lo << ", " << hi << "]";
        bad(os.str());
    }
    return Interval(lo, hi);
}

Point to_point(const json& j) {
    if (j.is_number() || j.is_string()) return {number(j, "coordinate")};
    return numbers(j, "point");
}

json to_json(const Interval& a) { return json::array({a.lo(), a.hi()}); }

json to_json(const Point& p) {
    json out = json::array();
    for (double v : p) out.push_back(v);
    return out;
}

json to_json(const std::vector<Point>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(to_json(p));
    return out;
}

json to_json(const Witness& w) {
    json out = json::object();
    out["points"] = to_json(w.points);
    json vals = json::array();
    for (const auto& v : w.values) vals.push_back(to_json(v));
    out["values"] = vals;
    return out;
}

json to_json(const GHDerivative& d) {
    json out = json::object();
    out["value"] = to_json(d.value);
    out["converged"] = d.converged;
    out["residual"] = std::isfinite(d.residual) ? json(d.residual) : json(nullptr);
    out["steps"] = d.t_sequence.size();
    out["last_step"] = d.t_sequence.empty() ? json(nullptr) : json(d.t_sequence.back());
    return out;
}

json to_json(const EkelandCertificate& c) {
    json out = json::object();
    out["x_bar"] = to_json(c.x_bar);
    out["x0"] = to_json(c.x0);
    out["epsilon"] = c.epsilon;
    out["f_x_bar"] = to_json(c.value_x_bar);
    out["f_x0"] = to_json(c.value_x0);
    out["infimum"] = to_json(c.infimum);
    out["distance"] = c.distance;
    out["premise_holds"] = c.premise_holds;
    out["cond_a"] = c.cond_a;
    out["cond_b"] = c.cond_b ? json(*c.cond_b) : json(nullptr);
    out["cond_c_witness"] = c.cond_c_witness ? to_json(*c.cond_c_witness) : json(nullptr);
    out["strict_c"] = c.strict_c;
    out["verified"] = c.verified();
    out["verified_over"] = c.verified_over;
    out["evaluated"] = c.evaluated;
    out["trace"] = to_json(c.trace);
    return out;
}

json to_json(const TriangleCheck& t) {
    json out = json::object();
    out["holds"] = t.holds;
    out["exhaustive"] = t.exhaustive;
    out["triples_checked"] = t.triples_checked;
    if (t.witness) {
        out["witness"] = json::array({(*t.witness)[0], (*t.witness)[1], (*t.witness)[2]});
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

Domain to_domain(const json& j, std::optional<std::size_t> grid_override) {
    const json& type = require(j, "type");
    if (type == "box") {
        const auto lower = numbers(require(j, "lower"), "box lower");
        const auto upper = numbers(require(j, "upper"), "box upper");
        std::size_t grid = grid_override ? *grid_override : count(require(j, "grid"), "grid");
        return Domain::box(lower, upper, grid);
    }
    if (type == "points") {
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = strings(j.at("labels"), "labels");
        std::vector<Point> coords;
        if (j.contains("points")) {
            for (const auto& p : j.at("points")) coords.push_back(to_point(p));
        } else {
            for (std::size_t i = 0; i < labels.size(); ++i) coords.push_back({static_cast<double>(i)});
        }
        if (j.contains("dist")) return Domain::finite(labels, coords, to_matrix(j.at("dist")));
        return Domain::finite_euclidean(coords, labels);
    }
    bad("domain type must be \"box\" or \"points\"");
}

std::vector<std::string> coordinate_names(std::size_t dim) {
    if (dim == 1) return {"x", "x1"};
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= dim; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

namespace {

ScalarFn bind_coordinates(const std::string& src, std::size_t dim) {
    const Expr e = Expr::parse(src, coordinate_names(dim));
    if (dim == 1) {
        return [e](std::span<const double> x) {
            const std::array<double, 2> v{x[0], x[0]};
            return e.eval(v);
        };
    }
    return [e](std::span<const double> x) { return e.eval(x); };
}

}  // namespace

IntervalFn to_function(const json& problem, const Domain& domain) {
    if (problem.contains("values")) {
        std::vector<Interval> values;
        for (const auto& v : problem.at("values")) values.push_back(to_interval(v));
        return IntervalFn::tabulated(domain, std::move(values));
    }
    const std::size_t dim = domain.dim();
    return IntervalFn(bind_coordinates(expr_text(problem, "lower"), dim),
                      bind_coordinates(expr_text(problem, "upper"), dim), domain);
}

Point resolve_point(const json& j, const Domain& domain) {
    if (domain.is_finite()) {
        const auto& fp = domain.finite_points();
        return fp.coords[resolve_index(j, domain)];
    }
    Point p = to_point(j);
    if (p.size() != domain.dim()) bad("point has the wrong dimension");
    return p;
}

std::size_t resolve_index(const json& j, const Domain& domain) {
    if (!domain.is_finite()) bad("labels and indices need a finite domain");
    const auto& fp = domain.finite_points();
    if (j.is_string()) {
        for (std::size_t i = 0; i < fp.labels.size(); ++i) {
            if (fp.labels[i] == j.get<std::string>()) return i;
        }
        bad("unknown point label \"" + j.get<std::string>() + "\"");
    }
    if (j.is_number_integer()) {
        const auto i = count(j, "point index");
        if (i >= fp.coords.size()) bad("point index out of range");
        return i;
    }
    const Point p = to_point(j);
    for (std::size_t i = 0; i < fp.coords.size(); ++i) {
        if (fp.coords[i] == p) return i;
    }
    throw Error(ErrorKind::Domain, "point is not in the finite space", Witness{{p}, {}});
}

IndexBifunction to_bifunction(const json& problem, const PointSet& set) {
    const json& spec = require(problem, "bifunction");
    const std::size_t dim = set.empty() ? 0 : set[0].size();
    std::vector<std::string> vars;
    if (dim == 1) {
        vars = {"x", "y", "x1", "y1"};
    } else {
        for (std::size_t i = 1; i <= dim; ++i) vars.push_back("x" + std::to_string(i));
        for (std::size_t i = 1; i <= dim; ++i) vars.push_back("y" + std::to_string(i));
    }
    const Expr lo = Expr::parse(expr_text(spec, "lower"), vars);
    const Expr hi = Expr::parse(expr_text(spec, "upper"), vars);
    // Values are cached: the triangle check and the descent revisit pairs.
    auto cache = std::make_shared<std::map<std::pair<std::size_t, std::size_t>, Interval>>();
    return [lo, hi, dim, cache, &set](std::size_t a, std::size_t b) {
        const auto key = std::make_pair(a, b);
        if (auto it = cache->find(key); it != cache->end()) return it->second;
        std::vector<double> v;
        if (dim == 1) {
            v = {set[a][0], set[b][0], set[a][0], set[b][0]};
        } else {
            v.insert(v.end(), set[a].begin(), set[a].end());
            v.insert(v.end(), set[b].begin(), set[b].end());
        }
        const double l = lo.eval(v), h = hi.eval(v);
        if (!std::isfinite(l) || !std::isfinite(h)) {
            throw Error(ErrorKind::Eval, "bifunction is not finite", Witness{{set[a], set[b]}, {}});
        }
        if (l > h + kEndpointInversionTol) {
            throw Error(ErrorKind::Domain, "bifunction endpoint inversion", Witness{{set[a], set[b]}, {}});
        }
        const Interval r(std::min(l, h), h);
        cache->emplace(key, r);
        return r;
    };
}

IntervalGame to_game(const json& j) {
    std::vector<Player> players;
    for (const auto& p : require(j, "players")) {
        Player pl;
        pl.strategies = strings(require(p, "strategies"), "strategies");
        if (p.contains("dist")) pl.dist = to_matrix(p.at("dist"));
        players.push_back(std::move(pl));
    }
    std::vector<std::vector<Interval>> losses;
    for (const auto& table : require(j, "losses")) {
        std::vector<Interval> row;
        for (const auto& v : table) row.push_back(to_interval(v));
        losses.push_back(std::move(row));
    }
    return IntervalGame(std::move(players), std::move(losses));
}

Profile to_profile(const json& j, const IntervalGame& g) {
    if (!j.is_array() || j.size() != g.players()) bad("a profile lists one strategy per player");
    Profile x(g.players());
    for (std::size_t i = 0; i < g.players(); ++i) {
        const json& s = j[i];
        if (s.is_string()) {
            const auto& names = g.player(i).strategies;
            const auto it = std::find(names.begin(), names.end(), s.get<std::string>());
            if (it == names.end()) bad("unknown strategy \"" + s.get<std::string>() + "\"");
            x[i] = static_cast<std::size_t>(it - names.begin());
        } else {
            x[i] = count(s, "strategy index");
        }
    }
    g.index(x);  // range check
    return x;
}

json profile_json(const IntervalGame& g, std::size_t k) {
    const Profile x = g.profile(k);
    json out = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(g.player(i).strategies[x[i]]);
    return out;
}

StateFn to_state_fn(const std::string& src, std::size_t controls) {
    std::vector<std::string> vars{"t", "xl", "xu"};
    for (std::size_t i = 1; i <= controls; ++i) vars.push_back("u" + std::to_string(i));
    if (controls == 1) vars.push_back("u");
    const Expr e = Expr::parse(src, vars);
    return [e, controls](double t, double xl, double xu, std::span<const double> u) {
        std::array<double, 16> buf{};
        std::vector<double> big;
        double* v = buf.data();
        if (controls + 4 > buf.size()) {
            big.resize(controls + 4);
            v = big.data();
        }
        v[0] = t;
        v[1] = xl;
        v[2] = xu;
        for (std::size_t i = 0; i < controls; ++i) v[3 + i] = i < u.size() ? u[i] : 0.0;
        if (controls == 1) v[4] = v[3];
        return e.eval(std::span<const double>(v, controls + 3 + (controls == 1 ? 1 : 0)));
    };
}

std::size_t control_count(const json& problem) {
    return problem.contains("controls") ? count(problem.at("controls"), "controls") : 0;
}

IntervalIVP to_ivp(const json& problem) {
    const std::size_t m = control_count(problem);
    IntervalIVP p;
    p.lower = to_state_fn(expr_text(problem, "dynamics_lower"), m);
    p.upper = to_state_fn(expr_text(problem, "dynamics_upper"), m);
    p.x0 = to_interval(require(problem, "x0"));
    p.horizon = number(require(problem, "T"), "T");
    if (!(p.horizon > 0.0)) bad("T must be positive");
    const std::string mode = problem.contains("mode") ? problem.at("mode").get<std::string>() : "i";
    if (mode == "i") {
        p.mode = DiffMode::I;
    } else if (mode == "ii") {
        p.mode = DiffMode::II;
    } else {
        bad("mode must be \"i\" or \"ii\"");
    }
    if (problem.contains("step")) {
        p.step = number(problem.at("step"), "step");
        if (!(p.step > 0.0)) bad("step must be positive");
    }
    return p;
}

PiecewiseConstantControl to_control(const json& j, std::size_t controls, double horizon) {
    // Accepts a constant vector, a scalar, or a list of per-piece vectors.
    if (j.is_null()) return PiecewiseConstantControl::constant(Point(controls, 0.0), horizon);
    if (j.is_number()) return PiecewiseConstantControl::constant({j.get<double>()}, horizon);
    if (!j.is_array()) bad("control must be a number or an array");
    std::vector<Point> pieces;
    if (!j.empty() && j[0].is_array()) {
        for (const auto& p : j) pieces.push_back(to_point(p));
    } else if (controls <= 1) {
        for (const auto& v : j) pieces.push_back({number(v, "control value")});
    } else {
        pieces.push_back(to_point(j));
    }
    for (const auto& p : pieces) {
        if (p.size() != controls) bad("control pieces must have one value per control");
    }
    return PiecewiseConstantControl(std::move(pieces), horizon);
}

json to_json(const PiecewiseConstantControl& u) { return to_json(u.values()); }

json to_json(const IntervalTrajectory& x) {
    json out = json::object();
    out["mode"] = to_string(x.mode);
    out["complete"] = x.complete;
    out["valid_until"] = x.valid_until;
    out["steps"] = x.times.size() - 1;
    out["step"] = x.times.size() > 1 ? x.times[1] - x.times[0] : 0.0;
    out["final_time"] = x.times.back();
    out["final_state"] = to_json(x.states.back());
    return out;
}

}  // namespace ivelvp::app
