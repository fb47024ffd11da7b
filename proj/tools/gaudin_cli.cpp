#include "gaudin/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gaudin;

namespace {

enum Exit { ok = 0, failed = 1, config_error = 2, exhausted = 3 };

struct Flags {
    std::string config, window, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int jobs = 1;
    bool timing = false;
};

GaudinConfig load(const Flags& f)
{
    GaudinConfig cfg;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in)
            throw ConfigError("cannot read config " + f.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = parse_config(j);
    }
    if (f.seed)
        cfg.seed = *f.seed;
    if (f.trials) {
        if (*f.trials < 1)
            throw ConfigError("trials must be positive");
        cfg.trials = *f.trials;
    }
    if (!f.window.empty()) {
        if (!cfg.has_scenario)
            throw ConfigError("--window needs a scenario config");
        apply_window(cfg.scenario, f.window);
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of Gaudin algebra dualities"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"verify-duality", {"duality"}},
        {"verify-classical", {"classical"}},
        {"verify-berezinian", {"berezinian"}},
        {"verify-homs", {"homs"}},
        {"verify-commutativity", {"commute"}},
        {"spectrum", {"spectrum"}},
        {"all", {}},
    };
    for (const auto& [name, suites] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config, "scenario config (JSON)");
        sub->add_option("--seed", flags.seed, "random seed");
        sub->add_option("--trials", flags.trials, "randomized trials");
        sub->add_option("--window", flags.window, "zmin,zmax,dmin,dmax");
        sub->add_option("--out", flags.out, "report path");
        sub->add_option("--jobs", flags.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--timing", flags.timing, "include wall-clock timings in the report");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    RunResult result;
    try {
        GaudinConfig cfg = load(flags);
        RunOptions opt;
        opt.command = command;
        opt.jobs = flags.jobs;
        opt.timing = flags.timing;
        for (const auto& [name, suites] : commands)
            if (name == command)
                opt.suites = suites;
        if (command == "all") {
            if (!cfg.suites.empty())
                opt.suites = cfg.suites;
            else
                for (const auto& s : known_suites())
                    if (cfg.has_scenario || !needs_scenario(s))
                        opt.suites.push_back(s);
        }
        result = run_suites(cfg, opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    }
    const std::string text = result.report.dump(2) + "\n";
    if (!flags.out.empty()) {
        std::ofstream out(flags.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << flags.out << "\n";
            return config_error;
        }
        out << text;
    }
    std::cout << summary(result);
    if (result.exhausted)
        return exhausted;
    return result.pass ? ok : failed;
}
