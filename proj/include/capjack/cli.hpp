#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capjack/geometry.hpp"

namespace capjack {

/// Named corpus functions the experiment commands run on.
struct CorpusSpec {
    std::vector<double> bump_rhos;                    // interior-supported smooth bumps
    std::vector<std::vector<double>> bandlimited;     // whole-sphere zonal polynomials
    std::vector<int> pure_degrees;                    // single zonal harmonics
    std::vector<std::string> zonal_csv;               // profiles loaded from CSV

    bool empty() const {
        return bump_rhos.empty() && bandlimited.empty() && pure_degrees.empty() && zonal_csv.empty();
    }
};

/// Flat experiment configuration. k_list empty and j_max = 0 mean
/// "per-command default"; m = 0 likewise (1 for most commands, 9 for the
/// converse probe). Angles in radians; k_list is always explicit in the
/// emitted manifest.
struct ExperimentConfig {
    int n = 3;
    double gamma = std::numbers::pi / 2;
    int s = 3;
    int m = 0;
    std::vector<int> k_list;
    int j_max = 0;
    double p = 2.0;  // 1, 2, or +inf
    std::vector<double> betas = {1.0, 2.0, 3.0};
    CorpusSpec corpus;
    double tol = 1e-10;
    std::string out_dir = "out";
    std::string format = "csv";

    /// Lossless round-trip through the JSON file form.
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;

    static ExperimentConfig from_file(const std::string& path);

    void validate() const;
};

enum class Command {
    multipliers,
    moments,
    approx,
    probe_direct,
    probe_converse,
    probe_saturation,
    probe_equivalence,
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

/// Runs the named pipeline, writing CSV/JSON artifacts plus a manifest
/// into config.out_dir (temp-file writes, atomic renames). Returns the
/// process exit status: 0 all gates pass, 1 a gated probe failed,
/// 2 configuration error, 3 numerical non-convergence.
int execute(const ExperimentConfig& config, Command command);

}  // namespace capjack
