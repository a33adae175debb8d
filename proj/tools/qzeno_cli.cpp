// qzeno: effective decay rates of a repeatedly measured two-level system.
//
//   qzeno [--config FILE] [--set key=value]... <command> [options]
//
// Commands: eval, curve, transition, compare, figure, selftest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qzeno/commands.hpp"
#include "qzeno/errors.hpp"
#include "qzeno/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// The file is parsed first, then re-rendered with the overridden keys
// replaced, so --set follows exactly the same rules as the file itself.
qzeno::RunConfig load(const std::string& path, const std::vector<std::string>& sets, const std::string& output) {
    qzeno::RunConfig base = path.empty() ? qzeno::parse_config("") : qzeno::parse_config(read_file(path));
    std::map<std::string, std::string> overrides;
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw qzeno::ParseError(0, "--set expects key=value, got '" + kv + "'");
        auto key = kv.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        overrides[key] = kv.substr(eq + 1);
    }
    if (!output.empty()) overrides["output"] = output;
    if (overrides.empty()) return base;

    std::istringstream rendered(qzeno::render_config(base));
    std::string text, line;
    while (std::getline(rendered, line)) {
        const auto key = line.substr(0, line.find(" = "));
        if (!overrides.count(key)) text += line + "\n";
    }
    for (const auto& [k, v] : overrides) text += k + " = " + v + "\n";
    try {
        return qzeno::parse_config(text);
    } catch (const qzeno::UnknownKey& e) {
        throw std::runtime_error("--set: unknown key '" + e.key() + "'");
    } catch (const qzeno::ParseError& e) {
        // Line numbers refer to the merged text, which the user never sees.
        const std::string what = e.what();
        throw std::runtime_error("--set: " + what.substr(what.find(": ") + 2));
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeno / anti-Zeno decay rates of a two-level system with a strong dephasing and a weak "
                 "dissipative reservoir"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> sets;
    app.add_option("-c,--config", config_path, "Config file (flat key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--set", sets, "Override one config key, e.g. --set G=1.5")->expected(1)->take_all();

    double tau = 1.0;
    auto* eval = app.add_subcommand("eval", "Print the rate point at one measurement interval");
    eval->add_option("--tau", tau, "Measurement interval")->required();

    std::string output;
    auto* curve = app.add_subcommand("curve", "Write Gamma(tau) on the configured grid to a CSV file");
    auto* transition = app.add_subcommand("transition", "Locate Zeno / anti-Zeno transition points");
    auto* compare = app.add_subcommand("compare", "Write Gamma with and without the strong reservoir");
    for (auto* sub : {curve, transition, compare}) sub->add_option("-o,--output", output, "Output CSV path");

    std::string figure_name, out_dir = ".";
    bool plot = false;
    auto* figure = app.add_subcommand("figure", "Reproduce the curves of a figure (1a, 1b, 2a, 2b)");
    figure->add_option("name", figure_name, "Figure id")->required()->check(CLI::IsMember({"1a", "1b", "2a", "2b"}));
    figure->add_option("-d,--out-dir", out_dir, "Directory for the CSV files");
    figure->add_flag("--plot-script", plot, "Also write a gnuplot script");

    std::string fixture;
    auto* selftest = app.add_subcommand("selftest", "Compare production results against brute-force oracles");
    selftest->add_option("--write-fixture", fixture, "Write the oracle survival values to this CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? qzeno::kExitOk : qzeno::kExitInvalidInput;
    }

    if (*figure) return qzeno::cmd_figure(figure_name, out_dir, plot, std::cerr);
    if (*selftest)
        return qzeno::cmd_selftest(std::cout, std::cerr,
                                   fixture.empty() ? std::nullopt : std::optional<std::filesystem::path>(fixture));

    qzeno::RunConfig rc;
    try {
        rc = load(config_path, sets, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qzeno::kExitInvalidInput;
    }

    if (*eval) return qzeno::cmd_eval(rc, tau, std::cout, std::cerr);
    if (*curve) return qzeno::cmd_curve(rc, std::cerr);
    if (*transition) return qzeno::cmd_transition(rc, std::cerr);
    return qzeno::cmd_compare(rc, std::cerr);
}
