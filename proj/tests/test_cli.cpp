#include "gaudin/suites.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gaudin;

namespace {

namespace fs = std::filesystem;

const std::string cli = GAUDIN_CLI_PATH;
const std::string scenarios = GAUDIN_SCENARIO_DIR;

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / "gaudin_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

int run(const std::string& args)
{
    std::string cmd = cli + " " + args + " > " + scratch("stdout.txt").string() + " 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json base_config()
{
    return json::parse(R"({"d": 2, "m": 1, "n": 1, "xi": [1, 1], "gamma": [1, 1], "w": ["1", "3"], "z": ["-2", "1/3"]})");
}

} // namespace

TEST_CASE("config parsing", "[cli]")
{
    auto cfg = parse_config(base_config());
    CHECK(cfg.has_scenario);
    CHECK(cfg.scenario.z[1] == fraction(1, 3));
    CHECK(cfg.scenario.zmax == 4);
    CHECK(cfg.seed == 1);

    auto j = base_config();
    j["window"] = {{"zmin", -5}, {"dmax", 6}};
    cfg = parse_config(j);
    CHECK(cfg.scenario.zmin == -5);
    CHECK(cfg.scenario.dmax == 6);
    apply_window(cfg.scenario, "-3,2,-4,1");
    CHECK(cfg.scenario.dmin == -4);
    CHECK_THROWS_AS(apply_window(cfg.scenario, "-3,2,-4"), ConfigError);
    CHECK_THROWS_AS(apply_window(cfg.scenario, "-3,2,x,1"), ConfigError);

    j = base_config();
    j["colour"] = 1;
    CHECK_THROWS_WITH(parse_config(j), Catch::Matchers::ContainsSubstring("unknown config field"));
    j = base_config();
    j["w"] = {"1/0", "2"};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base_config();
    j["w"] = {0.5, "2"};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base_config();
    j["xi"] = {2, 1};
    CHECK_THROWS_WITH(parse_config(j), Catch::Matchers::ContainsSubstring("sum(xi) = d"));
    j = base_config();
    j["z"] = {"1", "1"};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base_config();
    j["suites"] = {"duality", "nope"};
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    auto bare = parse_config(json::parse(R"({"seed": 7, "trials": 3})"));
    CHECK(!bare.has_scenario);
    CHECK(bare.trials == 3);
    RunOptions opt{"verify-homs", {"homs"}, 1, false};
    CHECK_THROWS_AS(run_suites(bare, opt), ConfigError);
}

TEST_CASE("shipped scenarios load", "[cli]")
{
    for (const char* name : {"d1m1", "d1n1", "d2m2", "d2m1n1", "d2pqmn"}) {
        std::ifstream in(scenarios + "/" + name + ".json");
        REQUIRE(in);
        auto cfg = parse_config(json::parse(in));
        CHECK(cfg.scenario.name == name);
    }
}

TEST_CASE("suites merge in a fixed order", "[cli]")
{
    auto cfg = parse_config(base_config());
    RunOptions one{"all", {"homs", "classical"}, 1, false};
    RunOptions two{"all", {"classical", "homs"}, 2, false};
    auto a = run_suites(cfg, one);
    auto b = run_suites(cfg, two);
    CHECK(a.pass);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(!a.report.contains("timing_seconds"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : a.report["checks"].items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"classical", "homs"});
    RunOptions timed{"all", {"homs"}, 1, true};
    CHECK(run_suites(cfg, timed).report.contains("timing_seconds"));
}

TEST_CASE("commutativity suite", "[cli]")
{
    auto sc = parse_config(base_config()).scenario;
    auto j = commutativity_suite(sc);
    CHECK(j["pass"].get<bool>());
    CHECK(j["enveloping"]["pairs"].get<int>() > 0);
    CHECK(j["weyl"]["generators"].get<int>() > j["enveloping"]["generators"].get<int>());
}

TEST_CASE("command line exit codes", "[cli]")
{
    auto report = scratch("d1m1.json");
    CHECK(run("verify-duality --config " + scenarios + "/d1m1.json --out " + report.string()) == 0);
    auto rep = json::parse(slurp(report));
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["scenario"]["window"]["zmin"] == -8);
    CHECK(rep["checks"]["duality"]["image_equality"]["level"] == "evidence");
    CHECK(slurp(scratch("stdout.txt")).find("overall pass") != std::string::npos);

    auto ber = scratch("ber.json");
    CHECK(run("verify-berezinian --seed 7 --trials 50 --out " + ber.string()) == 0);
    auto b = json::parse(slurp(ber))["checks"]["berezinian"];
    CHECK(b["manin_inputs"]["total"] == 50);
    CHECK(b["manin_inputs"]["pass"] == 50);
    CHECK(b["pass"].get<bool>());

    auto bad = base_config();
    bad["xi"] = {2, 1};
    std::ofstream(scratch("bad.json")) << bad.dump();
    CHECK(run("verify-duality --config " + scratch("bad.json").string()) == 2);
    CHECK(slurp(scratch("stdout.txt")).find("sum(xi) = d") != std::string::npos);
    CHECK(run("verify-duality --config " + scratch("missing.json").string()) == 2);
    CHECK(run("verify-duality --bogus") == 2);
    CHECK(run("verify-homs") == 2);
    CHECK(run("verify-duality --config " + scenarios + "/d2m2.json --window=1,4,1,4") == 3);
}

TEST_CASE("reports are byte-for-byte deterministic", "[cli]")
{
    auto a = scratch("det_a.json"), b = scratch("det_b.json"), c = scratch("det_c.json");
    const std::string args = "all --config " + scenarios + "/d2m1n1.json --seed 11 --trials 6 --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    REQUIRE(run(args + c.string() + " --jobs 3") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
    CHECK(!slurp(a).empty());
}
