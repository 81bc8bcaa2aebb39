#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "commands.hpp"

namespace ivelvp::app {

namespace {

struct Row {
    std::string module;
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct Check {
    std::string observed;
    bool pass = false;
};

std::string show(const Interval& a) { return "[" + format_number(a.lo()) + ", " + format_number(a.hi()) + "]"; }

std::string show(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_number(p[i]);
    return s + ")";
}

std::string yes(bool b) { return b ? "true" : "false"; }

bool near(const Interval& a, const Interval& b, double tol) { return hausdorff(a, b) <= tol; }

class Runner {
public:
    Runner(std::string dir, std::vector<std::string> only) : dir_(std::move(dir)), only_(std::move(only)) {}

    bool wanted(const std::string& module) const {
        return only_.empty() || std::find(only_.begin(), only_.end(), module) != only_.end();
    }

    void row(const std::string& module, const std::string& name, const std::string& expected,
             const std::function<Check()>& body) {
        if (!wanted(module)) return;
        Row r{module, name, expected, "", false};
        try {
            const Check c = body();
            r.observed = c.observed;
            r.pass = c.pass;
        } catch (const Error& e) {
            r.observed = std::string("error (") + to_string(e.kind()) + "): " + e.what();
        } catch (const std::exception& e) {
            r.observed = std::string("error: ") + e.what();
        }
        rows_.push_back(std::move(r));
    }

    json problem(const std::string& file) const { return load_json(dir_ + "/" + file); }

    const std::vector<Row>& rows() const { return rows_; }

private:
    std::string dir_;
    std::vector<std::string> only_;
    std::vector<Row> rows_;
};

struct Loaded {
    Domain domain;
    IntervalFn f;
    json doc;
};

Loaded load_fn(const Runner& run, const std::string& file) {
    json p = run.problem(file);
    Domain d = to_domain(require(p, "domain"));
    IntervalFn f = to_function(p, d);
    return {d, f, std::move(p)};
}

void interval_rows(Runner& run) {
    const std::string m = "interval-core";
    run.row(m, "add [1,3] + [-3,0]", "[-2, 3]", [] {
        const Interval r = add({1, 3}, {-3, 0});
        return Check{show(r), r == Interval(-2, 3)};
    });
    run.row(m, "gh_diff [1,3] - [1,2]", "[0, 1]", [] {
        const Interval r = gh_diff({1, 3}, {1, 2});
        return Check{show(r), r == Interval(0, 1)};
    });
    run.row(m, "gh_diff A - A", "[0, 0]", [] {
        const Interval r = gh_diff({1, 3}, {1, 3});
        return Check{show(r), r == Interval(0, 0)};
    });
    run.row(m, "compare [1,3] vs [2,3]", "le=true lt=false", [] {
        const auto v = compare({1, 3}, {2, 3});
        return Check{"le=" + yes(v.le) + " lt=" + yes(v.lt), v.le && !v.lt};
    });
    run.row(m, "compare [0,2] vs [0,3]", "le=true", [] {
        const auto v = compare({0, 2}, {0, 3});
        return Check{"le=" + yes(v.le), v.le};
    });
    run.row(m, "compare [-2,3] vs [1,2]", "le=false", [] {
        const auto v = compare({-2, 3}, {1, 2});
        return Check{"le=" + yes(v.le), !v.le};
    });
}

void ivfunc_rows(Runner& run) {
    const std::string m = "ivfunc";
    run.row(m, "[-x,x] at x=0.5", "[-0.5, 0.5]", [&] {
        const auto L = load_fn(run, "abs_interval.json");
        const Point x{0.5};
        const Interval v = L.f(x);
        return Check{show(v), near(v, {-0.5, 0.5}, 1e-12)};
    });
    run.row(m, "piecewise exponential infimum", "~[0, 1] (tol 1e-3)", [&] {
        const auto L = load_fn(run, "ekeland_exp.json");
        const Interval v = infimum(L.f).value;
        return Check{show(v), near(v, {0, 1}, 1e-3)};
    });
    run.row(m, "decaying bump infimum", "~[0, 1] (tol 1e-3)", [&] {
        const auto L = load_fn(run, "decaying_bump.json");
        const Interval v = infimum(L.f).value;
        return Check{show(v), near(v, {0, 1}, 1e-3)};
    });
}

Check derivative_at(const Runner& run, const std::string& file, double x, double h, const Interval& want) {
    const auto L = load_fn(run, file);
    const Point xs{x};
    const Point hs{h};
    const auto d = gateaux(L.f, xs, hs);
    return {show(d.value), near(d.value, want, 1e-5)};
}

void gh_rows(Runner& run) {
    const std::string m = "gh-calculus";
    run.row(m, "decaying bump f'(1)(1)", "[-0.5, -0.5]",
            [&] { return derivative_at(run, "decaying_bump.json", 1.0, 1.0, {-0.5, -0.5}); });
    run.row(m, "[-x,x] f'(0.5)(1)", "[-1, 1]",
            [&] { return derivative_at(run, "abs_interval.json", 0.5, 1.0, {-1, 1}); });
    run.row(m, "[-x^2,x^2] f'(1)(1)", "[-2, 2]",
            [&] { return derivative_at(run, "square_spread.json", 1.0, 1.0, {-2, 2}); });
}

void ekeland_rows(Runner& run) {
    const std::string m = "ekeland";
    run.row(m, "piecewise exponential, eps=0.25", "certificate verified", [&] {
        const auto L = load_fn(run, "ekeland_exp.json");
        const double eps = number(require(L.doc, "epsilon"), "epsilon");
        const Point x0 = to_point(require(L.doc, "x0"));
        const auto c = ekeland_minimize(L.f, eps, x0);
        return Check{"x_bar=" + show(c.x_bar) + " verified=" + yes(c.verified()), c.verified()};
    });
    run.row(m, "piecewise exponential, x_bar = x0 - 1", "(a),(b),(c) hold, d <= 1 + spacing", [&] {
        const auto L = load_fn(run, "ekeland_exp.json");
        const double eps = number(require(L.doc, "epsilon"), "epsilon");
        const Point x0 = to_point(require(L.doc, "x0"));
        const Point xb{x0[0] - 1.0};
        const std::vector<Point> extra{x0, xb};
        const PointSet set = L.domain.enumerate(extra);
        const auto values = sample(L.f, set);
        const IndexMetric d = [&set](std::size_t i, std::size_t j) { return set.dist(i, j); };
        const auto c = certify_ekeland(values, d, eps, set.index_of(x0), set.index_of(xb));
        const bool b = c.premise_holds && c.distance <= 1.0 + L.domain.spacing()[0];
        const bool ok = c.cond_a && b && !c.cond_c_witness && c.strict_c;
        return Check{"a=" + yes(c.cond_a) + " b=" + yes(b) + " c=" + yes(!c.cond_c_witness && c.strict_c) +
                         " over " + std::to_string(set.size()) + " points",
                     ok};
    });
    run.row(m, "bifunction [|x-y|, |x-y|+1]", "(a),(b) hold", [&] {
        const json p = run.problem("abs_bifunction.json");
        const Domain dom = to_domain(require(p, "domain"));
        const PointSet set = dom.enumerate();
        const IndexBifunction F = to_bifunction(p, set);
        const IndexMetric d = [&set](std::size_t i, std::size_t j) { return set.dist(i, j); };
        const double eps = number(require(p, "epsilon"), "epsilon");
        const Point x0 = resolve_point(require(p, "x0"), dom);
        const auto c = ekeland_bifunction(set.size(), F, d, eps, set.index_of(x0));
        return Check{"triangle=" + yes(c.triangle.holds) + " a=" + yes(c.cond_a) + " b=" + yes(!c.cond_b_witness),
                     c.triangle.holds && c.verified()};
    });
    run.row(m, "[-x,x] critical on (0,1)", "all sampled points critical", [&] {
        const auto L = load_fn(run, "abs_interval.json");
        const auto dirs = axis_directions(1);
        std::size_t critical = 0;
        const std::size_t n = 19;
        for (std::size_t k = 1; k <= n; ++k) {
            const Point x{static_cast<double>(k) / (n + 1)};
            if (critical_point_check(L.f, x, dirs, 1e-9).verdict == CriticalVerdict::Critical) ++critical;
        }
        return Check{std::to_string(critical) + "/" + std::to_string(n) + " critical", critical == n};
    });
    run.row(m, "[-x^2,x^2] zero in f'(x)(h)", "all sampled (x,h)", [&] {
        const auto L = load_fn(run, "square_spread.json");
        std::size_t hits = 0;
        std::size_t total = 0;
        for (int i = -8; i <= 8; ++i) {
            for (const double h : {-2.0, -1.0, -0.25, 0.5, 1.0, 3.0}) {
                const Point x{0.25 * i};
                const Point hs{h};
                ++total;
                if (contains_zero(gateaux(L.f, x, hs).value, 1e-9)) ++hits;
            }
        }
        return Check{std::to_string(hits) + "/" + std::to_string(total), hits == total};
    });
    run.row(m, "decaying bump stationary sequence", "f(x_n) -> [0,1], f'(x_n)(h) -> [0,0] (tol 1e-2)", [&] {
        const auto L = load_fn(run, "decaying_bump.json");
        std::vector<double> eps;
        for (const auto& e : require(L.doc, "stationary")) eps.push_back(number(e, "epsilon"));
        const Point start = to_point(require(L.doc, "x0"));
        const auto r = stationary_sequence(L.f, eps, start);
        const double first = std::abs(r.iterates.front().x[0]);
        const double last = std::abs(r.iterates.back().x[0]);
        const bool ok = r.final_value_gap <= 1e-2 && r.final_derivative_gap <= 1e-2 && last > first;
        return Check{"|x_1|=" + format_number(first) + " |x_N|=" + format_number(last) +
                         " value_gap=" + format_number(r.final_value_gap) +
                         " derivative_gap=" + format_number(r.final_derivative_gap),
                     ok};
    });
    run.row(m, "[-x^2,x^2] Palais-Smale probe", "HEURISTIC-PASS", [&] {
        const auto L = load_fn(run, "square_spread.json");
        std::vector<Point> seq;
        for (int n = 1; n <= 200; ++n) seq.push_back({(n % 2 ? -1.0 : 1.0) / n});
        const auto r = palais_smale_probe(L.f, seq);
        return Check{r.passed ? "HEURISTIC-PASS" : "FAIL", r.passed};
    });
}

void game_rows(Runner& run) {
    const std::string m = "games";
    run.row(m, "unilateral deviation bifunction identity", "exact for every profile and deviation", [&] {
        const IntervalGame g = to_game(run.problem("dominated.json"));
        std::size_t checked = 0;
        std::size_t bad = 0;
        for (std::size_t k = 0; k < g.profiles(); ++k) {
            for (std::size_t i = 0; i < g.players(); ++i) {
                for (std::size_t s = 0; s < g.strategies(i); ++s) {
                    const std::size_t y = g.deviate(k, i, s);
                    ++checked;
                    if (aggregate_bifunction(g, k, y) != gh_diff(g.loss(i, y), g.loss(i, k))) ++bad;
                }
            }
        }
        return Check{std::to_string(checked - bad) + "/" + std::to_string(checked), bad == 0};
    });
    run.row(m, "dominated profile, eps=0", "not eps-Nash, witness found", [&] {
        const json p = run.problem("dominated.json");
        const IntervalGame g = to_game(p);
        const std::size_t k = g.index(to_profile(require(p, "profile"), g));
        const auto v = verify_epsilon_nash(g, k, 0.0);
        std::string obs = "is_nash=" + yes(v.is_nash);
        if (v.player) obs += " player=" + std::to_string(*v.player) + " deviation=" + g.player(*v.player).strategies[*v.deviation];
        return Check{obs, !v.is_nash && v.player.has_value()};
    });
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

}  // namespace

Output cmd_repro(const RunConfig& cfg) {
    static const std::vector<std::string> modules{"interval-core", "ivfunc", "gh-calculus", "ekeland", "games"};
    for (const auto& o : cfg.only) {
        if (std::find(modules.begin(), modules.end(), o) == modules.end()) {
            throw Error(ErrorKind::InvalidArgument,
                        "unknown module \"" + o + "\" (interval-core, ivfunc, gh-calculus, ekeland, games)");
        }
    }
    Runner run(cfg.problems_dir, cfg.only);
    interval_rows(run);
    ivfunc_rows(run);
    gh_rows(run);
    ekeland_rows(run);
    game_rows(run);

    Output out{json::object()};
    out.doc["schema"] = kSchema;
    out.doc["command"] = "repro";
    json rows = json::array();
    std::size_t passed = 0;
    Table t{{"module", "example", "expected", "observed", "status"}, {}};
    std::size_t wm = 6, wn = 7, we = 8;
    for (const auto& r : run.rows()) {
        json j = json::object();
        j["module"] = r.module;
        j["example"] = r.name;
        j["expected"] = r.expected;
        j["observed"] = r.observed;
        j["status"] = r.pass ? "PASS" : "FAIL";
        rows.push_back(j);
        if (r.pass) ++passed;
        t.rows.push_back({r.module, r.name, r.expected, r.observed, r.pass ? "PASS" : "FAIL"});
        wm = std::max(wm, r.module.size());
        wn = std::max(wn, r.name.size());
        we = std::max(we, r.expected.size());
    }
    out.doc["rows"] = rows;
    out.doc["passed"] = passed;
    out.doc["total"] = run.rows().size();

    std::ostringstream text;
    text << pad("STATUS", 7) << pad("MODULE", wm + 2) << pad("EXAMPLE", wn + 2) << pad("EXPECTED", we + 2)
         << "OBSERVED\n";
    for (const auto& r : run.rows()) {
        text << pad(r.pass ? "PASS" : "FAIL", 7) << pad(r.module, wm + 2) << pad(r.name, wn + 2)
             << pad(r.expected, we + 2) << r.observed << "\n";
    }
    text << passed << "/" << run.rows().size() << " examples passed\n";
    out.text = text.str();
    out.table = t;
    out.exit_code = passed == run.rows().size() ? 0 : 1;
    return out;
}

}  // namespace ivelvp::app
