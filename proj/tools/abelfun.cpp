#include "abelfun/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr const char* kSuiteNames[] = {"characters", "exterior", "complex", "theta", "abelian"};

std::vector<std::string> resolve_selection(const std::string& arg) {
    std::vector<std::string> out;
    if (arg == "all") {
        out.assign(std::begin(kSuiteNames), std::end(kSuiteNames));
        return out;
    }
    std::string cur;
    for (char c : arg + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"abelfun: verification workbench for theta-function abelian function bases "
                 "and the graded D-module resolution"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite_arg;
    std::string config_path;
    std::string g_range;
    std::string json_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    verify->add_option("suite", suite_arg,
                       "suite name (characters, exterior, complex, theta, abelian), "
                       "a comma list, or 'all'")
        ->required();
    verify->add_option("--config", config_path, "JSON config file (env ABELFUN_CONFIG)");
    verify->add_option("--g", g_range, "genus filter, N or N..M");
    verify->add_option("--seed", seed, "override the sampling seed")
        ->each([&](const std::string&) { seed_set = true; });
    verify->add_option("--json", json_path, "write the JSON report to this path");

    auto* dump = app.add_subcommand("config", "print the effective config as JSON");
    std::string dump_config_path;
    dump->add_option("--config", dump_config_path, "JSON config file (env ABELFUN_CONFIG)");

    CLI11_PARSE(app, argc, argv);

    using namespace abelfun::cli;
    try {
        auto load = [](const std::string& path) {
            if (!path.empty()) return WorkbenchConfig::load_file(path);
            if (const char* env = std::getenv("ABELFUN_CONFIG"))
                return WorkbenchConfig::load_file(env);
            return WorkbenchConfig::defaults();
        };

        if (dump->parsed()) {
            std::cout << load(dump_config_path).to_json().dump(2) << "\n";
            return 0;
        }

        WorkbenchConfig cfg = load(config_path);
        if (seed_set) cfg.seed = seed;

        auto selection = resolve_selection(suite_arg);
        for (const auto& s : selection) {
            bool known = false;
            for (const char* name : kSuiteNames) known |= s == name;
            if (!known) throw ConfigError("unknown suite '" + s + "'");
        }
        GenusRange range = GenusRange::parse(g_range);

        auto records = run_suites(cfg, selection, range);
        std::cout << emit_report(records, "table");
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) throw ConfigError("cannot write JSON report to " + json_path);
            out << emit_report(records, "json");
        }
        return any_failure(records) ? 1 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
