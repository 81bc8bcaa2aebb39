#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <tuple>

#include "commands.hpp"

using namespace ivelvp;
using namespace ivelvp::app;

namespace {

RunConfig config(const std::string& command, const std::string& file = {}) {
    RunConfig c;
    c.command = command;
    if (!file.empty()) c.problem = std::string(IVELVP_PROBLEMS_DIR) + "/" + file;
    c.problems_dir = IVELVP_PROBLEMS_DIR;
    return c;
}

ErrorKind kind_of(const RunConfig& c) {
    try {
        run(c);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("minimize emits a verified certificate") {
    auto c = config("minimize", "ekeland_exp.json");
    c.epsilon = 0.25;
    const auto out = run(c);
    CHECK(out.doc["schema"] == "ivelvp/1");
    CHECK(out.doc["certificate"]["verified"] == true);
    CHECK(out.exit_code == 0);
}

TEST_CASE("stationary mode and csv table") {
    auto c = config("minimize", "decaying_bump.json");
    c.stationary = "[0.5, 0.1, 0.01]";
    const auto out = run(c);
    REQUIRE(out.table);
    CHECK(out.table->rows.size() == 3);
    const std::string csv = render(out, "csv");
    CHECK(csv.rfind("n,epsilon,x,lower,upper", 0) == 0);
}

TEST_CASE("game verify reports the violating deviation") {
    auto c = config("game", "dominated.json");
    c.action = "verify";
    c.epsilon = 0.0;
    const auto out = run(c);
    CHECK(out.doc["is_epsilon_nash"] == false);
    CHECK(out.doc["witness"]["player"] == 0);
    CHECK(out.doc["witness"]["deviation"] == "B");
}

TEST_CASE("game solve returns a verified profile") {
    auto c = config("game", "coordination.json");
    c.action = "solve";
    const auto out = run(c);
    CHECK(out.doc["found"] == true);
    CHECK(out.doc["verified"] == true);
}

TEST_CASE("interval operations") {
    auto c = config("interval");
    c.action = "gh-diff";
    c.operands = {"[1,3]", "[1,2]"};
    CHECK(run(c).doc["result"] == json::array({0.0, 1.0}));
    c.action = "h-diff";
    c.operands = {"[0,1]", "[0,3]"};
    CHECK(run(c).doc["exists"] == false);
    c.action = "scalar-mul";
    c.operands = {"-1", "[1,2]"};
    CHECK(run(c).doc["result"] == json::array({-2.0, -1.0}));
    c.action = "bogus";
    CHECK(kind_of(c) == ErrorKind::InvalidArgument);
    c.action = "add";
    c.operands = {"[3,1]", "[0,0]"};
    CHECK(kind_of(c) == ErrorKind::InvalidArgument);
}

TEST_CASE("rejections map to error kinds") {
    CHECK(kind_of(config("minimize", "does_not_exist.json")) == ErrorKind::Io);
    auto c = config("minimize", "ekeland_exp.json");
    c.epsilon = 0.25;
    c.x0 = "[40]";
    CHECK(kind_of(c) == ErrorKind::Domain);
    const Error e(ErrorKind::Hypothesis, "bad", Witness{{{1.0}}, {Interval(0, 1)}});
    const json j = error_json(e);
    CHECK(j["error"]["kind"] == "hypothesis");
    CHECK(j["error"]["witness"]["points"][0][0] == 1.0);
}

TEST_CASE("every bundled command runs") {
    for (const auto& [cmd, file, action] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"derive", "decaying_bump.json", ""},
             {"bifunction", "abs_bifunction.json", ""},
             {"caristi", "caristi_chain.json", ""},
             {"takahashi", "takahashi.json", ""},
             {"critical", "abs_interval.json", ""},
             {"ps-probe", "square_spread.json", ""},
             {"mountain-pass", "double_well.json", ""},
             {"ode", "ode_constant_i.json", "solve"},
             {"control", "control_zero.json", "search"}}) {
        auto c = config(cmd, file);
        c.action = action;
        INFO(cmd);
        const auto out = run(c);
        CHECK(out.doc["command"] == cmd);
        CHECK(out.exit_code == 0);
    }
}

TEST_CASE("repro filter and determinism") {
    auto c = config("repro");
    c.only = {"gh-calculus"};
    const auto out = run(c);
    CHECK(out.doc["total"] == 3);
    CHECK(out.exit_code == 0);
    CHECK(render(out, "text") == render(run(c), "text"));
    c.only = {"nope"};
    CHECK(kind_of(c) == ErrorKind::InvalidArgument);
}

TEST_CASE("corrupted problem file gives a failure row") {
    const std::string dir = "repro_corrupt_dir";
    std::filesystem::create_directories(dir);
    for (const auto& entry : std::filesystem::directory_iterator(IVELVP_PROBLEMS_DIR)) {
        std::filesystem::copy_file(entry.path(), dir + "/" + entry.path().filename().string(),
                                   std::filesystem::copy_options::overwrite_existing);
    }
    std::ofstream(dir + "/square_spread.json") << "{ not json";
    auto c = config("repro");
    c.problems_dir = dir;
    const auto out = run(c);
    CHECK(out.exit_code != 0);
    std::size_t failed = 0;
    for (const auto& r : out.doc["rows"]) failed += r["status"] == "FAIL";
    CHECK(failed > 0);
    CHECK(failed < out.doc["total"].get<std::size_t>());
    std::filesystem::remove_all(dir);
}
