// Experiment front end: multiplier tables, kernel moments and the
// direct/converse/saturation/equivalence probes, emitted as CSV/JSON.

#include <CLI11.hpp>

#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "capjack/cli.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jackson-type approximation experiments on spherical caps"};

    std::string config_path, command_name, out_dir, format, k_list_text, p_text;
    double gamma = -1.0, tol = -1.0;
    int n = -1, s = -1, m = -1, jmax = -1;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--command", command_name,
                   "one of: multipliers, moments, approx, probe-direct, probe-converse, "
                   "probe-saturation, probe-equivalence")
        ->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "table format: csv or json");
    app.add_option("--k-list", k_list_text, "comma-separated degree list, e.g. 16,32,64");
    app.add_option("--gamma", gamma, "cap angle in radians");
    app.add_option("--n", n, "ambient dimension (>= 3)");
    app.add_option("--s", s, "kernel smoothness power");
    app.add_option("--m", m, "translation power");
    app.add_option("--jmax", jmax, "expansion truncation degree");
    app.add_option("--p", p_text, "norm exponent: 1, 2 or inf");
    app.add_option("--tol", tol, "quadrature tolerance");

    CLI11_PARSE(app, argc, argv);

    capjack::ExperimentConfig config;
    try {
        if (!config_path.empty()) config = capjack::ExperimentConfig::from_file(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.format = format;
        if (!k_list_text.empty()) config.k_list = parse_int_list(k_list_text);
        if (gamma >= 0) config.gamma = gamma;
        if (n >= 0) config.n = n;
        if (s >= 0) config.s = s;
        if (m >= 0) config.m = m;
        if (jmax >= 0) config.j_max = jmax;
        if (!p_text.empty())
            config.p = p_text == "inf" ? std::numeric_limits<double>::infinity() : std::stod(p_text);
        if (tol > 0) config.tol = tol;
    } catch (const std::exception& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    }

    auto command = capjack::parse_command(command_name);
    if (!command) {
        std::cerr << "configuration error: unknown command '" << command_name << "'\n";
        return 2;
    }
    return capjack::execute(config, *command);
}
