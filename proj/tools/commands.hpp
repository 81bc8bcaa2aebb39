#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"

namespace ivelvp::app {

struct RunConfig {
    std::string command;
    std::string action;  // game solve|verify, ode solve, control search, interval op
    std::string problem;
    std::optional<double> epsilon;
    std::optional<std::string> x0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> grid;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";

    // Command-specific inputs (JSON text).
    std::optional<std::string> direction;
    std::optional<std::string> profile;
    std::optional<std::string> control;
    std::optional<std::string> stationary;
    std::optional<double> t0;
    std::optional<std::string> mode;
    std::vector<std::string> operands;

    std::vector<std::string> only;
    std::string problems_dir;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json doc;
    std::optional<Table> table;
    /// Preformatted text (repro's default table).
    std::optional<std::string> text;
    int exit_code = 0;
};

Output run(const RunConfig& cfg);

Output cmd_interval(const RunConfig& cfg);
Output cmd_derive(const RunConfig& cfg);
Output cmd_minimize(const RunConfig& cfg);
Output cmd_bifunction(const RunConfig& cfg);
Output cmd_caristi(const RunConfig& cfg);
Output cmd_takahashi(const RunConfig& cfg);
Output cmd_critical(const RunConfig& cfg);
Output cmd_ps_probe(const RunConfig& cfg);
Output cmd_mountain_pass(const RunConfig& cfg);
Output cmd_game(const RunConfig& cfg);
Output cmd_ode(const RunConfig& cfg);
Output cmd_control(const RunConfig& cfg);
Output cmd_repro(const RunConfig& cfg);

/// Structured error document for a rejection or internal failure.
json error_json(const Error& e);

/// Renders the output in the configured format.
std::string render(const Output& out, const std::string& format);

/// Shortest round-trip text for a double.
std::string format_number(double v);

}  // namespace ivelvp::app
