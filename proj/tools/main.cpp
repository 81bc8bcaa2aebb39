#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

#ifndef IVELVP_PROBLEMS_DIR
#define IVELVP_PROBLEMS_DIR "problems"
#endif

using namespace ivelvp;
using namespace ivelvp::app;

namespace {

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }
    f << text;
    return 0;
}

void common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--epsilon", cfg.epsilon, "Ekeland/Nash epsilon")->check(CLI::NonNegativeNumber);
    sub->add_option("--x0", cfg.x0, "Starting point: JSON coordinates, index or label");
    sub->add_option("--seed", cfg.seed, "Seed for randomized components");
    sub->add_option("--grid", cfg.grid, "Grid points per box axis")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
    sub->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval-valued variational solvers"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format;
    app.add_option("--out", cfg.out, "Write output to this file");
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.fallthrough();

    auto* interval = app.add_subcommand("interval", "Interval arithmetic");
    interval->add_option("op", cfg.action, "add, scalar-mul, gh-diff, h-diff, hausdorff, compare, contains-zero")
        ->required();
    // Separate string operands: a vector option would split "[1,3]" into its elements.
    std::string first, second;
    interval->add_option("a", first, "Interval [lo,hi], or the scalar for scalar-mul");
    interval->add_option("b", second, "Second interval");
    interval->add_option("--tol", cfg.tol, "contains-zero tolerance")->check(CLI::NonNegativeNumber);

    auto* derive = app.add_subcommand("derive", "gH-Gateaux or generalized derivative");
    derive->add_option("problem", cfg.problem)->required();
    derive->add_option("--x0", cfg.x0, "Point");
    derive->add_option("--direction", cfg.direction, "Direction as a JSON array");
    derive->add_option("--t0", cfg.t0, "Curve time");
    derive->add_option("--mode", cfg.mode, "Curve mode i or ii")->check(CLI::IsMember({"i", "ii"}));
    derive->add_option("--tol", cfg.tol, "Extrapolation tolerance")->check(CLI::PositiveNumber);

    auto* minimize = app.add_subcommand("minimize", "Ekeland epsilon-minimizer with certificate");
    minimize->add_option("problem", cfg.problem)->required();
    minimize->add_option("--stationary", cfg.stationary, "Epsilon schedule for a stationary sequence");
    common(minimize, cfg);

    std::vector<CLI::App*> plain;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"bifunction", "Ekeland principle for a bifunction"},
             {"caristi", "Caristi fixed point"},
             {"takahashi", "Takahashi minimal point"},
             {"critical", "Critical point check"},
             {"ps-probe", "Palais-Smale sequence probe"},
             {"mountain-pass", "Mountain pass minimax estimate"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("problem", cfg.problem)->required();
        sub->add_option("--direction", cfg.direction, "Direction as a JSON array");
        common(sub, cfg);
        plain.push_back(sub);
    }

    auto* game = app.add_subcommand("game", "Interval games");
    game->add_option("action", cfg.action, "solve or verify")->required()->check(CLI::IsMember({"solve", "verify"}));
    game->add_option("problem", cfg.problem)->required();
    game->add_option("--profile", cfg.profile, "Profile to verify, JSON array of strategies");
    common(game, cfg);

    auto* ode = app.add_subcommand("ode", "Interval initial value problem");
    ode->add_option("action", cfg.action, "solve")->required()->check(CLI::IsMember({"solve"}));
    ode->add_option("problem", cfg.problem)->required();
    ode->add_option("--control", cfg.control, "Control as JSON");

    auto* control = app.add_subcommand("control", "Epsilon-minimal control over a finite family");
    control->add_option("action", cfg.action, "search")->required()->check(CLI::IsMember({"search"}));
    control->add_option("problem", cfg.problem)->required();
    control->add_option("--control", cfg.control, "Starting control u0 as JSON");
    common(control, cfg);

    cfg.problems_dir = IVELVP_PROBLEMS_DIR;
    auto* repro = app.add_subcommand("repro", "Rerun the bundled worked examples");
    repro->add_option("--only", cfg.only, "Restrict to these modules");
    repro->add_option("--problems", cfg.problems_dir, "Directory with the bundled problem files");
    repro->add_option("--seed", cfg.seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const Error err(ErrorKind::InvalidArgument, e.what());
        emit(error_json(err).dump(2) + "\n", cfg.out);
        return 1;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    for (const std::string* s : {&first, &second}) {
        if (!s->empty()) cfg.operands.push_back(*s);
    }
    cfg.format = format.empty() ? (cfg.command == "repro" ? "text" : "json") : format;

    try {
        const Output out = run(cfg);
        if (emit(render(out, cfg.format), cfg.out) != 0) return 1;
        return out.exit_code;
    } catch (const Error& e) {
        emit(error_json(e).dump(2) + "\n", cfg.out);
        return e.kind() == ErrorKind::Internal ? 2 : 1;
    } catch (const std::exception& e) {
        emit(error_json(Error(ErrorKind::Internal, e.what())).dump(2) + "\n", cfg.out);
        return 2;
    }
}
