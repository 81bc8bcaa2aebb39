#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace ivelvp::app {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); }

json header(const std::string& command) {
    json j = json::object();
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

json problem_of(const RunConfig& cfg) {
    if (cfg.problem.empty()) bad("a problem file is required");
    return load_json(cfg.problem);
}

/// Flag text as JSON, falling back to a bare string (labels).
json arg_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return json(text);
    }
}

double epsilon_of(const RunConfig& cfg, const json& p) {
    double eps;
    if (cfg.epsilon) {
        eps = *cfg.epsilon;
    } else if (p.contains("epsilon")) {
        eps = number(p.at("epsilon"), "epsilon");
    } else {
        bad("epsilon is required (--epsilon or \"epsilon\" in the problem)");
    }
    if (!(eps >= 0.0) || !std::isfinite(eps)) bad("epsilon must be a nonnegative number");
    return eps;
}

std::optional<json> x0_of(const RunConfig& cfg, const json& p) {
    if (cfg.x0) return arg_json(*cfg.x0);
    if (p.contains("x0")) return p.at("x0");
    return std::nullopt;
}

Domain domain_of(const RunConfig& cfg, const json& p) { return to_domain(require(p, "domain"), cfg.grid); }

std::string point_label(const Domain& d, const Point& p) {
    if (d.is_finite()) {
        const auto& fp = d.finite_points();
        for (std::size_t i = 0; i < fp.coords.size(); ++i) {
            if (fp.coords[i] == p) return fp.labels[i];
        }
    }
    return {};
}

json labeled(const Domain& d, const Point& p) {
    if (d.is_finite()) return point_label(d, p);
    return to_json(p);
}

StepSchedule schedule_of(const RunConfig& cfg) {
    StepSchedule s;
    if (cfg.tol) s.tol = *cfg.tol;
    return s;
}

std::vector<Point> directions_of(const json& p, const RunConfig& cfg, std::size_t dim) {
    if (cfg.direction) return {to_point(arg_json(*cfg.direction))};
    if (p.contains("directions")) {
        std::vector<Point> out;
        for (const auto& h : p.at("directions")) out.push_back(to_point(h));
        return out;
    }
    return axis_directions(dim);
}

json derivative_rows(const std::vector<DirectionReport>& ds) {
    json out = json::array();
    for (const auto& d : ds) {
        json r = to_json(d.derivative);
        r["direction"] = to_json(d.direction);
        r["contains_zero"] = d.contains_zero;
        out.push_back(r);
    }
    return out;
}

void flatten(const json& j, const std::string& path, Table& t) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), t);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", t);
    } else if (j.is_string()) {
        t.rows.push_back({path, j.get<std::string>()});
    } else if (j.is_number_float()) {
        t.rows.push_back({path, format_number(j.get<double>())});
    } else {
        t.rows.push_back({path, j.dump()});
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

json error_json(const Error& e) {
    json j = json::object();
    j["schema"] = kSchema;
    json err = json::object();
    err["kind"] = to_string(e.kind());
    err["message"] = e.what();
    err["witness"] = e.witness().empty() ? json(nullptr) : to_json(e.witness());
    j["error"] = err;
    return j;
}

std::string render(const Output& out, const std::string& format) {
    if (format == "json") return out.doc.dump(2) + "\n";
    if (format == "text" && out.text) return *out.text;
    if (format != "csv") bad("unknown output format \"" + format + "\"");
    Table t;
    if (out.table) {
        t = *out.table;
    } else {
        t.header = {"key", "value"};
        flatten(out.doc, "", t);
    }
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + csv_cell(t.header[i]);
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
        s += "\n";
    }
    return s;
}

Output cmd_interval(const RunConfig& cfg) {
    const std::string& op = cfg.action;
    auto operand = [&](std::size_t i) -> json {
        if (i >= cfg.operands.size()) bad("operation \"" + op + "\" needs more operands");
        return arg_json(cfg.operands[i]);
    };
    Output out{header("interval")};
    out.doc["op"] = op;
    json& r = out.doc["result"];
    if (op == "add") {
        r = to_json(add(to_interval(operand(0)), to_interval(operand(1))));
    } else if (op == "scalar-mul") {
        r = to_json(scalar_mul(number(operand(0), "scalar"), to_interval(operand(1))));
    } else if (op == "gh-diff") {
        r = to_json(gh_diff(to_interval(operand(0)), to_interval(operand(1))));
    } else if (op == "h-diff") {
        const auto d = hukuhara_diff(to_interval(operand(0)), to_interval(operand(1)));
        r = d ? to_json(*d) : json(nullptr);
        out.doc["exists"] = d.has_value();
    } else if (op == "hausdorff") {
        r = hausdorff(to_interval(operand(0)), to_interval(operand(1)));
    } else if (op == "compare") {
        const OrderVerdict v = compare(to_interval(operand(0)), to_interval(operand(1)));
        r = json::object();
        r["le"] = v.le;
        r["lt"] = v.lt;
    } else if (op == "contains-zero") {
        r = contains_zero(to_interval(operand(0)), cfg.tol.value_or(0.0));
    } else {
        bad("unknown interval operation \"" + op +
            "\" (add, scalar-mul, gh-diff, h-diff, hausdorff, compare, contains-zero)");
    }
    return out;
}

Output cmd_derive(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    Output out{header("derive")};
    if (p.contains("curve")) {
        const json& c = p.at("curve");
        const Expr lo = Expr::parse(require(c, "lower").get<std::string>(), {"t"});
        const Expr hi = Expr::parse(require(c, "upper").get<std::string>(), {"t"});
        IntervalCurve curve{[lo](double t) { return lo.eval(std::span<const double>(&t, 1)); },
                            [hi](double t) { return hi.eval(std::span<const double>(&t, 1)); },
                            number(require(c, "a"), "a"), number(require(c, "b"), "b")};
        double t0;
        if (cfg.t0) {
            t0 = *cfg.t0;
        } else {
            t0 = number(require(p, "t0"), "t0");
        }
        std::string m = cfg.mode ? *cfg.mode : (p.contains("mode") ? p.at("mode").get<std::string>() : "i");
        if (m != "i" && m != "ii") bad("mode must be \"i\" or \"ii\"");
        const auto d = generalized_derivative(curve, t0, m == "i" ? DiffMode::I : DiffMode::II, schedule_of(cfg));
        out.doc["kind"] = "generalized";
        out.doc["t0"] = t0;
        out.doc["mode"] = m;
        out.doc["exists"] = d.value.has_value();
        out.doc["value"] = d.value ? to_json(*d.value) : json(nullptr);
        out.doc["failure"] = d.failure.empty() ? json(nullptr) : json(d.failure);
        return out;
    }
    const Domain dom = domain_of(cfg, p);
    const IntervalFn f = to_function(p, dom);
    const auto x0 = x0_of(cfg, p);
    if (!x0) bad("a point is required (--x0 or \"x0\")");
    const Point x = resolve_point(*x0, dom);
    const auto dirs = directions_of(p, cfg, dom.dim());
    out.doc["kind"] = "gateaux";
    out.doc["x"] = to_json(x);
    out.doc["f_x"] = to_json(f(x));
    json rows = json::array();
    for (const auto& h : dirs) {
        if (h.size() != x.size()) bad("direction has the wrong dimension");
        json r = to_json(gateaux(f, x, h, schedule_of(cfg)));
        r["direction"] = to_json(h);
        rows.push_back(r);
    }
    out.doc["derivatives"] = rows;
    return out;
}

Output cmd_minimize(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    const IntervalFn f = to_function(p, dom);
    const auto x0j = x0_of(cfg, p);
    if (!x0j) bad("x0 is required (--x0 or \"x0\")");
    const Point x0 = resolve_point(*x0j, dom);
    Output out{header("minimize")};

    std::optional<json> stationary;
    if (cfg.stationary) {
        stationary = arg_json(*cfg.stationary);
    } else if (p.contains("stationary")) {
        stationary = p.at("stationary");
    }
    if (stationary) {
        std::vector<double> eps;
        for (const auto& e : *stationary) eps.push_back(number(e, "epsilon schedule"));
        const auto rep = stationary_sequence(f, eps, x0, schedule_of(cfg));
        out.doc["mode"] = "stationary-sequence";
        out.doc["infimum"] = to_json(rep.infimum);
        json its = json::array();
        Table t{{"n", "epsilon", "x", "lower", "upper", "near_infimum", "max_derivative_gap"}, {}};
        for (std::size_t n = 0; n < rep.iterates.size(); ++n) {
            const auto& it = rep.iterates[n];
            json r = json::object();
            r["epsilon"] = it.epsilon;
            r["x"] = to_json(it.x);
            r["value"] = to_json(it.value);
            r["near_infimum"] = it.near_infimum;
            r["verified"] = it.certificate.verified();
            json ds = json::array();
            double gap = 0.0;
            for (const auto& d : it.directions) {
                json dj = to_json(d.derivative);
                dj["direction"] = to_json(d.direction);
                dj["contains_zero"] = d.contains_zero;
                dj["within_band"] = d.within_band;
                dj["not_below_band"] = d.not_below_band;
                ds.push_back(dj);
                gap = std::max(gap, hausdorff(d.derivative.value, Interval(0.0, 0.0)));
            }
            r["directions"] = ds;
            its.push_back(r);
            std::string xs;
            for (std::size_t i = 0; i < it.x.size(); ++i) xs += (i ? " " : "") + format_number(it.x[i]);
            t.rows.push_back({std::to_string(n), format_number(it.epsilon), xs, format_number(it.value.lo()),
                              format_number(it.value.hi()), it.near_infimum ? "true" : "false", format_number(gap)});
        }
        out.doc["iterates"] = its;
        out.doc["final_value_gap"] = rep.final_value_gap;
        out.doc["final_derivative_gap"] = rep.final_derivative_gap;
        out.table = t;
        return out;
    }
    const double eps = epsilon_of(cfg, p);
    const auto cert = ekeland_minimize(f, eps, x0);
    out.doc["certificate"] = to_json(cert);
    if (dom.is_finite()) {
        out.doc["x_bar_label"] = point_label(dom, cert.x_bar);
    }
    Table t{{"step", "x", "lower", "upper"}, {}};
    for (std::size_t k = 0; k < cert.trace.size(); ++k) {
        const Interval v = f(cert.trace[k]);
        std::string xs;
        for (std::size_t i = 0; i < cert.trace[k].size(); ++i) xs += (i ? " " : "") + format_number(cert.trace[k][i]);
        t.rows.push_back({std::to_string(k), xs, format_number(v.lo()), format_number(v.hi())});
    }
    out.table = t;
    return out;
}

Output cmd_bifunction(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    const auto x0j = x0_of(cfg, p);
    if (!x0j) bad("x0 is required (--x0 or \"x0\")");
    const Point x0 = resolve_point(*x0j, dom);
    const PointSet set = dom.is_box() ? dom.enumerate(std::span<const Point>(&x0, 1)) : dom.enumerate();
    const IndexBifunction F = to_bifunction(p, set);
    const IndexMetric d = [&set](std::size_t i, std::size_t j) { return set.dist(i, j); };
    BifunctionOptions opts;
    opts.seed = cfg.seed;
    const double eps = epsilon_of(cfg, p);
    const auto c = [&] {
        try {
            return ekeland_bifunction(set.size(), F, d, eps, set.index_of(x0), opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Hypothesis) throw;
            // Replace index witnesses by the points they name.
            Witness w;
            for (const auto& idx : e.witness().points) w.points.push_back(set[static_cast<std::size_t>(idx[0])]);
            w.values = e.witness().values;
            throw Error(e.kind(), e.what(), w);
        }
    }();
    Output out{header("bifunction")};
    out.doc["x_bar"] = labeled(dom, set[c.x_bar]);
    out.doc["x0"] = labeled(dom, set[c.x0]);
    out.doc["epsilon"] = eps;
    out.doc["triangle"] = to_json(c.triangle);
    out.doc["cond_a"] = c.cond_a;
    out.doc["cond_b_witness"] = c.cond_b_witness ? labeled(dom, set[*c.cond_b_witness]) : json(nullptr);
    out.doc["strict_b"] = c.strict_b;
    out.doc["verified"] = c.verified();
    out.doc["verified_over"] = set.description();
    json trace = json::array();
    for (std::size_t i : c.trace) trace.push_back(labeled(dom, set[i]));
    out.doc["trace"] = trace;
    return out;
}

Output cmd_caristi(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    if (!dom.is_finite()) bad("caristi needs a finite domain");
    const IntervalFn f = to_function(p, dom);
    std::vector<std::vector<std::size_t>> T;
    for (const auto& images : require(p, "T")) {
        std::vector<std::size_t> row;
        for (const auto& y : images) row.push_back(resolve_index(y, dom));
        T.push_back(std::move(row));
    }
    const auto x0j = x0_of(cfg, p);
    const std::size_t start = x0j ? resolve_index(*x0j, dom) : 0;
    const auto r = caristi_fixed_point(T, f, start);
    Output out{header("caristi")};
    out.doc["fixed_point"] = dom.finite_points().labels[r.index];
    out.doc["certificate"] = to_json(r.certificate);
    return out;
}

Output cmd_takahashi(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    if (!dom.is_finite()) bad("takahashi needs a finite domain");
    const IntervalFn f = to_function(p, dom);
    const auto x0j = x0_of(cfg, p);
    const std::size_t start = x0j ? resolve_index(*x0j, dom) : 0;
    const auto r = takahashi_minimize(f, start);
    Output out{header("takahashi")};
    out.doc["minimal_point"] = dom.finite_points().labels[r.index];
    json mins = json::array();
    for (const auto& m : minimal_solutions(f)) mins.push_back(point_label(dom, m));
    out.doc["minimal_solutions"] = mins;
    out.doc["certificate"] = to_json(r.certificate);
    return out;
}

Output cmd_critical(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    const IntervalFn f = to_function(p, dom);
    std::vector<Point> points;
    if (cfg.x0) {
        points.push_back(resolve_point(arg_json(*cfg.x0), dom));
    } else if (p.contains("points")) {
        for (const auto& q : p.at("points")) points.push_back(resolve_point(q, dom));
    } else if (p.contains("x0")) {
        points.push_back(resolve_point(p.at("x0"), dom));
    } else {
        bad("points to check are required (--x0, \"points\" or \"x0\")");
    }
    const double tol = p.contains("tol") && !cfg.tol ? number(p.at("tol"), "tol") : cfg.tol.value_or(1e-9);
    const auto dirs = directions_of(p, cfg, dom.dim());
    Output out{header("critical")};
    out.doc["tol"] = tol;
    json rows = json::array();
    for (const auto& x : points) {
        const auto r = critical_point_check(f, x, dirs, tol);
        json row = json::object();
        row["x"] = to_json(x);
        row["verdict"] = to_string(r.verdict);
        row["directions"] = derivative_rows(r.directions);
        rows.push_back(row);
    }
    out.doc["points"] = rows;
    return out;
}

namespace {

std::vector<Point> sequence_of(const json& p) {
    const json& s = require(p, "sequence");
    std::vector<Point> out;
    if (s.is_array()) {
        for (const auto& q : s) out.push_back(to_point(q));
        return out;
    }
    // {"expr": "1/n", "from": 1, "to": 100}, or "exprs" for several coordinates
    std::vector<Expr> coords;
    if (s.contains("expr")) {
        coords.push_back(Expr::parse(s.at("expr").get<std::string>(), {"n"}));
    } else {
        for (const auto& e : require(s, "exprs")) coords.push_back(Expr::parse(e.get<std::string>(), {"n"}));
    }
    const std::size_t from = count(require(s, "from"), "from");
    const std::size_t to = count(require(s, "to"), "to");
    for (std::size_t n = from; n <= to; ++n) {
        const double v = static_cast<double>(n);
        Point q;
        for (const auto& e : coords) q.push_back(e.eval(std::span<const double>(&v, 1)));
        out.push_back(q);
    }
    return out;
}

}  // namespace

Output cmd_ps_probe(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    const IntervalFn f = to_function(p, dom);
    const auto seq = sequence_of(p);
    PalaisSmaleOptions opts;
    if (p.contains("level")) opts.level = to_interval(p.at("level"));
    if (p.contains("tol")) opts.cluster_tol = number(p.at("tol"), "tol");
    if (cfg.tol) opts.cluster_tol = *cfg.tol;
    if (p.contains("directions")) {
        for (const auto& h : p.at("directions")) opts.directions.push_back(to_point(h));
    }
    const auto r = palais_smale_probe(f, seq, opts);
    Output out{header("ps-probe")};
    out.doc["length"] = seq.size();
    out.doc["cutoff"] = r.cutoff;
    out.doc["bounded"] = to_string(r.bounded);
    out.doc["derivative_small"] = to_string(r.derivative);
    out.doc["cluster"] = to_string(r.cluster);
    out.doc["cluster_pair"] =
        r.cluster_pair ? json::array({(*r.cluster_pair)[0], (*r.cluster_pair)[1]}) : json(nullptr);
    out.doc["verdict"] = r.passed ? "HEURISTIC-PASS" : "FAIL";
    return out;
}

Output cmd_mountain_pass(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const Domain dom = domain_of(cfg, p);
    const IntervalFn f = to_function(p, dom);
    const Point p0 = to_point(require(p, "p0"));
    const Point p1 = to_point(require(p, "p1"));
    const json& om = require(p, "omega");
    Box omega{to_point(require(om, "lower")), to_point(require(om, "upper")), 2};
    MountainPassOptions opts;
    opts.seed = cfg.seed;
    if (p.contains("nodes")) opts.nodes = count(p.at("nodes"), "nodes");
    if (p.contains("budget")) opts.budget = count(p.at("budget"), "budget");
    if (p.contains("restarts")) opts.restarts = count(p.at("restarts"), "restarts");
    if (cfg.grid) opts.boundary_grid = *cfg.grid;
    const auto r = mountain_pass(f, p0, p1, omega, opts);
    Output out{header("mountain-pass")};
    out.doc["alpha"] = to_json(r.alpha);
    out.doc["value"] = to_json(r.value);
    out.doc["argmax_lower"] = to_json(r.argmax_lower);
    out.doc["argmax_upper"] = to_json(r.argmax_upper);
    out.doc["path_lower"] = to_json(r.path_lower.vertices());
    out.doc["path_upper"] = to_json(r.path_upper.vertices());
    out.doc["stabilized"] = r.stabilized;
    out.doc["paths_evaluated"] = r.paths_evaluated;
    out.doc["alpha_violations"] = r.alpha_violations;
    out.doc["seed"] = cfg.seed;
    out.doc["note"] = "numerical minimax estimate over piecewise-linear paths, not a certified critical value";
    return out;
}

Output cmd_game(const RunConfig& cfg) {
    const json p = problem_of(cfg);
    const IntervalGame g = to_game(p);
    const double eps = epsilon_of(cfg, p);
    Output out{header("game")};
    out.doc["action"] = cfg.action;
    out.doc["epsilon"] = eps;
    out.doc["profiles"] = g.profiles();
    if (cfg.action == "verify") {
        json pj;
        if (cfg.profile) {
            pj = arg_json(*cfg.profile);
        } else if (p.contains("profile")) {
            pj = p.at("profile");
        } else {
            bad("game verify needs a profile (--profile or \"profile\")");
        }
        const std::size_t k = g.index(to_profile(pj, g));
        const auto v = verify_epsilon_nash(g, k, eps);
        out.doc["profile"] = profile_json(g, k);
        out.doc["is_epsilon_nash"] = v.is_nash;
        if (v.is_nash) {
            out.doc["witness"] = nullptr;
        } else {
            json w = json::object();
            w["player"] = *v.player;
            w["deviation"] = g.player(*v.player).strategies[*v.deviation];
            const std::size_t dev = g.deviate(k, *v.player, *v.deviation);
            w["deviation_loss"] = to_json(g.loss(*v.player, dev));
            w["current_loss"] = to_json(g.loss(*v.player, k));
            out.doc["witness"] = w;
        }
        return out;
    }
    if (cfg.action != "solve") bad("game action must be \"solve\" or \"verify\"");
    const auto x0j = x0_of(cfg, p);
    const std::size_t x0 = x0j ? g.index(to_profile(*x0j, g)) : 0;
    const auto r = find_epsilon_nash(g, eps, x0, cfg.seed);
    out.doc["x0"] = profile_json(g, x0);
    out.doc["found"] = r.found;
    out.doc["profile"] = r.found ? profile_json(g, r.profile) : json(nullptr);
    out.doc["method"] = r.method;
    out.doc["guarantee"] = r.guarantee;
    out.doc["triangle"] = to_json(r.triangle);
    if (r.certificate) {
        json c = json::object();
        c["x_bar"] = profile_json(g, r.certificate->x_bar);
        c["cond_a"] = r.certificate->cond_a;
        c["cond_b_witness"] =
            r.certificate->cond_b_witness ? profile_json(g, *r.certificate->cond_b_witness) : json(nullptr);
        c["strict_b"] = r.certificate->strict_b;
        json trace = json::array();
        for (std::size_t k : r.certificate->trace) trace.push_back(profile_json(g, k));
        c["trace"] = trace;
        out.doc["bifunction_certificate"] = c;
    } else {
        out.doc["bifunction_certificate"] = nullptr;
    }
    out.doc["verified"] = r.found && verify_epsilon_nash(g, r.profile, eps).is_nash;
    return out;
}

Output cmd_ode(const RunConfig& cfg) {
    if (cfg.action != "solve") bad("ode action must be \"solve\"");
    const json p = problem_of(cfg);
    const IntervalIVP ivp = to_ivp(p);
    const std::size_t m = control_count(p);
    json uj = nullptr;
    if (cfg.control) {
        uj = arg_json(*cfg.control);
    } else if (p.contains("u")) {
        uj = p.at("u");
    } else if (p.contains("u0")) {
        uj = p.at("u0");
    }
    const auto u = to_control(uj, m, ivp.horizon);
    const auto x = solve_ivp(ivp, u);
    Output out{header("ode")};
    out.doc["trajectory"] = to_json(x);
    json states = json::array();
    Table t{{"t", "lower", "upper"}, {}};
    for (std::size_t k = 0; k < x.times.size(); ++k) {
        states.push_back(json::array({x.times[k], x.states[k].lo(), x.states[k].hi()}));
        t.rows.push_back({format_number(x.times[k]), format_number(x.states[k].lo()), format_number(x.states[k].hi())});
    }
    out.doc["states"] = states;
    if (p.contains("cost_lower") && x.complete) {
        const CostFn L{to_state_fn(p.at("cost_lower").get<std::string>(), m),
                       to_state_fn(require(p, "cost_upper").get<std::string>(), m)};
        out.doc["cost"] = to_json(integrate_cost(x, u, L, 0, x.states.size() - 1));
    }
    out.table = t;
    return out;
}

Output cmd_control(const RunConfig& cfg) {
    if (cfg.action != "search") bad("control action must be \"search\"");
    const json p = problem_of(cfg);
    const IntervalIVP ivp = to_ivp(p);
    const std::size_t m = control_count(p);
    const CostFn L{to_state_fn(require(p, "cost_lower").get<std::string>(), m),
                   to_state_fn(require(p, "cost_upper").get<std::string>(), m)};
    const json& fj = require(p, "family");
    ControlFamily fam;
    fam.pieces = count(require(fj, "pieces"), "pieces");
    fam.lower = to_point(require(fj, "lower"));
    fam.upper = to_point(require(fj, "upper"));
    fam.levels = count(require(fj, "levels"), "levels");
    fam.horizon = ivp.horizon;
    if (fam.lower.size() != m) bad("family bounds need one entry per control");
    const double eps = epsilon_of(cfg, p);
    PiecewiseConstantControl u0 = fam.member(0);
    json uj = nullptr;
    if (cfg.control) {
        uj = arg_json(*cfg.control);
    } else if (p.contains("u0")) {
        uj = p.at("u0");
    }
    if (!uj.is_null()) {
        u0 = to_control(uj, m, ivp.horizon);
        if (u0.pieces() == 1 && fam.pieces > 1) u0 = PiecewiseConstantControl(std::vector<Point>(fam.pieces, u0.piece(0)), ivp.horizon);
    }
    const auto r = epsilon_minimal_control(ivp, L, eps, fam, u0);
    Output out{header("control")};
    out.doc["epsilon"] = eps;
    out.doc["family_size"] = r.family_size;
    out.doc["control"] = to_json(r.control);
    out.doc["control_index"] = r.index;
    out.doc["cost"] = to_json(r.cost);
    out.doc["certificate"] = to_json(r.certificate);
    json ex = json::array();
    for (const auto& e : r.excluded) {
        json row = json::object();
        row["control"] = to_json(fam.member(e.index));
        row["reason"] = e.reason;
        ex.push_back(row);
    }
    out.doc["excluded"] = ex;
    return out;
}

Output run(const RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (c == "interval") return cmd_interval(cfg);
    if (c == "derive") return cmd_derive(cfg);
    if (c == "minimize") return cmd_minimize(cfg);
    if (c == "bifunction") return cmd_bifunction(cfg);
    if (c == "caristi") return cmd_caristi(cfg);
    if (c == "takahashi") return cmd_takahashi(cfg);
    if (c == "critical") return cmd_critical(cfg);
    if (c == "ps-probe") return cmd_ps_probe(cfg);
    if (c == "mountain-pass") return cmd_mountain_pass(cfg);
    if (c == "game") return cmd_game(cfg);
    if (c == "ode") return cmd_ode(cfg);
    if (c == "control") return cmd_control(cfg);
    if (c == "repro") return cmd_repro(cfg);
    bad("unknown command \"" + c + "\"");
}

}  // namespace ivelvp::app
