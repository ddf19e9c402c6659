#include "capjack/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "capjack/analysis.hpp"
#include "capjack/kernel.hpp"
#include "capjack/metrics.hpp"
#include "capjack/operators.hpp"

namespace capjack {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write artifact: " + path.string());
        out << content;
    }
    fs::rename(tmp, path);
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["n"] = c.n;
    j["gamma"] = c.gamma;
    j["s"] = c.s;
    j["m"] = c.m;
    j["k_list"] = c.k_list;
    j["jmax"] = c.j_max;
    if (std::isinf(c.p))
        j["p"] = "inf";
    else
        j["p"] = c.p;
    j["betas"] = c.betas;
    j["tol"] = c.tol;
    j["out"] = c.out_dir;
    j["format"] = c.format;
    j["corpus"]["bumps"] = c.corpus.bump_rhos;
    j["corpus"]["bandlimited"] = c.corpus.bandlimited;
    j["corpus"]["pure_degrees"] = c.corpus.pure_degrees;
    j["corpus"]["zonal_csv"] = c.corpus.zonal_csv;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    c.n = j.value("n", c.n);
    c.gamma = j.value("gamma", c.gamma);
    c.s = j.value("s", c.s);
    c.m = j.value("m", c.m);
    c.k_list = j.value("k_list", c.k_list);
    c.j_max = j.value("jmax", c.j_max);
    if (j.contains("p")) {
        if (j["p"].is_string())
            c.p = j["p"].get<std::string>() == "inf"
                      ? std::numeric_limits<double>::infinity()
                      : throw std::invalid_argument("p must be 1, 2 or \"inf\"");
        else
            c.p = j["p"].get<double>();
    }
    c.betas = j.value("betas", c.betas);
    c.tol = j.value("tol", c.tol);
    c.out_dir = j.value("out", c.out_dir);
    c.format = j.value("format", c.format);
    if (j.contains("corpus")) {
        const json& corpus = j["corpus"];
        c.corpus.bump_rhos = corpus.value("bumps", std::vector<double>{});
        c.corpus.bandlimited = corpus.value("bandlimited", std::vector<std::vector<double>>{});
        c.corpus.pure_degrees = corpus.value("pure_degrees", std::vector<int>{});
        c.corpus.zonal_csv = corpus.value("zonal_csv", std::vector<std::string>{});
    }
    return c;
}

struct CommandDefaults {
    std::vector<int> ks;
    int j_max;
    int m;
};

CommandDefaults defaults_for(Command cmd) {
    switch (cmd) {
        case Command::multipliers:
            return {{16, 32, 64, 128, 256}, 128, 1};
        case Command::moments:
            return {{16, 32, 64, 128, 256}, 128, 1};
        case Command::approx:
        case Command::probe_direct:
            return {{16, 32, 64, 128, 256}, 256, 1};
        case Command::probe_converse:
            // The converse bound needs the Bernstein regime (m >= 9 at n = 3)
            // and only reaches its asymptotic ratio at higher degrees.
            return {{128, 256, 512, 1024, 2048}, 256, 9};
        case Command::probe_saturation:
        case Command::probe_equivalence:
            return {{128, 256, 512, 1024, 2048}, 256, 1};
    }
    throw std::logic_error("unknown command");
}

struct ResolvedConfig {
    ExperimentConfig cfg;
    std::vector<int> ks;
    int j_max;
    int m;
    NormP p;
};

ResolvedConfig resolve(const ExperimentConfig& config, Command cmd) {
    ResolvedConfig r{config, {}, 0, 0, NormP::two};
    CommandDefaults d = defaults_for(cmd);
    r.ks = config.k_list.empty() ? d.ks : config.k_list;
    r.j_max = config.j_max > 0 ? config.j_max : d.j_max;
    r.m = config.m > 0 ? config.m : d.m;
    r.p = norm_from_value(config.p);
    if (r.cfg.corpus.empty()) {
        r.cfg.corpus.bump_rhos = {config.gamma / 2, 3 * config.gamma / 4};
        r.cfg.corpus.bandlimited = {{0.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125}};
        r.cfg.corpus.pure_degrees = {3};
    }
    return r;
}

std::vector<std::pair<std::string, CapFunction>> build_corpus(const ExperimentConfig& cfg) {
    CapGeometry geom = CapGeometry::polar(cfg.n, cfg.gamma);
    std::vector<std::pair<std::string, CapFunction>> corpus;
    int idx = 1;
    for (double rho : cfg.corpus.bump_rhos)
        corpus.emplace_back("bump" + std::to_string(idx++), CapFunction::bump(geom, rho));
    idx = 1;
    for (const auto& coeffs : cfg.corpus.bandlimited)
        corpus.emplace_back("band" + std::to_string(idx++), CapFunction::bandlimited(geom, coeffs));
    for (int degree : cfg.corpus.pure_degrees)
        corpus.emplace_back("pure" + std::to_string(degree), CapFunction::pure_degree(geom, degree));
    idx = 1;
    for (const auto& path : cfg.corpus.zonal_csv)
        corpus.emplace_back("csv" + std::to_string(idx++), CapFunction::zonal_from_csv(geom, path));
    return corpus;
}

/// Small column-oriented table that renders as CSV or a JSON artifact.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string render(const std::string& format) const {
        if (format == "json") {
            json j;
            j["columns"] = columns;
            j["rows"] = rows;
            return j.dump(2) + "\n";
        }
        std::ostringstream out;
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 == columns.size() ? "\n" : ",");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                out << row[i] << (i + 1 == row.size() ? "\n" : ",");
        return out.str();
    }
};

std::string table_extension(const std::string& format) { return format == "json" ? ".json" : ".csv"; }

class ArtifactWriter {
public:
    ArtifactWriter(const ExperimentConfig& cfg, Command cmd) : cfg_(cfg), cmd_(cmd) {
        fs::create_directories(cfg.out_dir);
    }

    void add_table(const std::string& stem, const Table& table, json params) {
        std::string file = stem + table_extension(cfg_.format);
        atomic_write(fs::path(cfg_.out_dir) / file, table.render(cfg_.format));
        record(file, std::move(params));
    }

    void add_json(const std::string& file, const json& j, json params) {
        atomic_write(fs::path(cfg_.out_dir) / file, j.dump(2) + "\n");
        record(file, std::move(params));
    }

    void finish() {
        json manifest;
        manifest["command"] = command_name(cmd_);
        manifest["config"] = config_to_json(cfg_);
        manifest["artifacts"] = artifacts_;
        atomic_write(fs::path(cfg_.out_dir) / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    void record(const std::string& file, json params) {
        json entry;
        entry["file"] = file;
        entry["parameters"] = std::move(params);
        artifacts_.push_back(std::move(entry));
    }

    const ExperimentConfig& cfg_;
    Command cmd_;
    json artifacts_ = json::array();
};

json probe_to_json(const ProbeResult& r, const std::string& member) {
    json j;
    j["name"] = r.name;
    j["member"] = member;
    j["slope"] = r.slope;
    j["r_squared"] = r.r_squared;
    j["pass"] = r.pass;
    j["skipped"] = r.skipped;
    j["tolerance"] = r.tolerance;
    j["notes"] = r.notes;
    j["k"] = r.ks;
    j["values"] = r.values;
    for (const auto& [key, vals] : r.diagnostics) j["diagnostics"][key] = vals;
    return j;
}

int run_multipliers(const ResolvedConfig& rc, ArtifactWriter& writer) {
    const auto& cfg = rc.cfg;
    for (int k : rc.ks) {
        KernelSpec spec = kernel_normalize(k, cfg.s, cfg.gamma, 0.5 * (cfg.n - 2));
        MultiplierTable table = multiplier_table(spec, rc.m, rc.j_max);
        Table t;
        t.columns = {"j", "xi"};
        for (int j = 0; j <= table.j_max(); ++j)
            t.rows.push_back({std::to_string(j), fmt17(table.at(j))});
        std::ostringstream stem;
        stem << "multipliers_n" << cfg.n << "_k" << k << "_s" << cfg.s << "_m" << rc.m << "_g"
             << fmt_angle(cfg.gamma);
        writer.add_table(stem.str(), t,
                         json{{"n", cfg.n}, {"k", k}, {"s", cfg.s}, {"m", rc.m}, {"gamma", cfg.gamma},
                              {"jmax", rc.j_max}});
    }
    return 0;
}

int run_moments(const ResolvedConfig& rc, ArtifactWriter& writer) {
    const auto& cfg = rc.cfg;
    double lambda = 0.5 * (cfg.n - 2);
    Table t;
    t.columns = {"beta", "k", "value"};
    json summary;
    summary["name"] = "moments";
    summary["tolerance"] = 0.15;
    bool all_pass = true;
    json results = json::array();
    for (double beta : cfg.betas) {
        std::vector<std::pair<int, double>> series;
        for (int k : rc.ks) {
            KernelSpec spec = kernel_normalize(k, cfg.s, cfg.gamma, lambda);
            double value = kernel_moment(spec, beta);
            series.emplace_back(k, value);
            t.rows.push_back({fmt17(beta), std::to_string(k), fmt17(value)});
        }
        ConvergenceReport rep = fit_order(series);
        bool pass = std::abs(rep.slope + beta) <= 0.15 && rep.r_squared >= 0.999;
        all_pass = all_pass && pass;
        results.push_back(json{{"beta", beta},
                               {"slope", rep.slope},
                               {"r_squared", rep.r_squared},
                               {"pass", pass}});
    }
    summary["results"] = results;
    summary["pass"] = all_pass;
    writer.add_table("moments", t, json{{"betas", cfg.betas}, {"k_list", rc.ks}, {"s", cfg.s}});
    writer.add_json("moments_summary.json", summary,
                    json{{"betas", cfg.betas}, {"k_list", rc.ks}});
    return all_pass ? 0 : 1;
}

int run_approx(const ResolvedConfig& rc, ArtifactWriter& writer) {
    const auto& cfg = rc.cfg;
    for (const auto& [member, f] : build_corpus(cfg)) {
        HarmonicExpansion e = expand(f, rc.j_max);
        std::vector<double> errors = jackson_error_norms(e, f, rc.ks, cfg.s, rc.m, rc.p);
        Table t;
        t.columns = {"k", "error", "modulus", "ratio"};
        for (std::size_t i = 0; i < rc.ks.size(); ++i) {
            double modulus = modulus_smoothness(e, f, 1.0 / rc.ks[i], rc.p);
            double ratio = modulus > 0.0 ? errors[i] / modulus : 0.0;
            t.rows.push_back({std::to_string(rc.ks[i]), fmt17(errors[i]), fmt17(modulus), fmt17(ratio)});
        }
        writer.add_table("errors_" + member, t,
                         json{{"member", member}, {"k_list", rc.ks}, {"s", cfg.s}, {"m", rc.m},
                              {"jmax", rc.j_max}});
    }
    return 0;
}

int run_probe(const ResolvedConfig& rc, Command cmd, ArtifactWriter& writer) {
    const auto& cfg = rc.cfg;
    ProbeParams params;
    params.ks = rc.ks;
    params.s = cfg.s;
    params.m = rc.m;
    params.p = rc.p;
    params.j_max = rc.j_max;

    std::string probe_name = command_name(cmd).substr(6);  // strip "probe-"
    bool all_pass = true;
    json members = json::array();
    for (const auto& [member, f] : build_corpus(cfg)) {
        ProbeResult r;
        switch (cmd) {
            case Command::probe_direct: r = probe_direct(f, params); break;
            case Command::probe_converse: r = probe_converse(f, params); break;
            case Command::probe_saturation: r = probe_saturation(f, params); break;
            default: r = probe_equivalence(f, params); break;
        }
        all_pass = all_pass && r.pass;

        Table t;
        t.columns = {"k", "value", "ratio"};
        for (std::size_t i = 0; i < r.ks.size(); ++i) {
            double value = r.values.empty() ? 0.0 : r.values[i];
            double ratio = value;
            if (cmd == Command::probe_saturation)
                ratio = value * static_cast<double>(r.ks[i]) * r.ks[i];  // compensated decay
            t.rows.push_back({std::to_string(r.ks[i]), fmt17(value), fmt17(ratio)});
        }
        writer.add_table("probe_" + probe_name + "_" + member, t,
                         json{{"member", member}, {"k_list", rc.ks}, {"s", cfg.s}, {"m", rc.m},
                              {"jmax", rc.j_max}});
        members.push_back(probe_to_json(r, member));
    }
    json summary;
    summary["name"] = probe_name;
    summary["pass"] = all_pass;
    summary["parameters"] = json{{"n", cfg.n},     {"gamma", cfg.gamma}, {"s", cfg.s},
                                 {"m", rc.m},      {"k_list", rc.ks},    {"jmax", rc.j_max},
                                 {"p", std::isinf(cfg.p) ? json("inf") : json(cfg.p)}};
    summary["members"] = members;
    writer.add_json("probe_" + probe_name + "_summary.json", summary, summary["parameters"]);
    return all_pass ? 0 : 1;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    return config_from_json(j);
}

std::string ExperimentConfig::to_json_text() const { return config_to_json(*this).dump(2) + "\n"; }

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void ExperimentConfig::validate() const {
    CapGeometry::polar(n, gamma);  // n and gamma checks
    if (s < 1) throw std::invalid_argument("config: s must be >= 1");
    if (m < 0) throw std::invalid_argument("config: m must be >= 1 (or 0 for command default)");
    for (int k : k_list)
        if (k < 1) throw std::invalid_argument("config: k_list entries must be >= 1");
    if (j_max < 0) throw std::invalid_argument("config: jmax must be >= 0");
    norm_from_value(p);  // throws on unsupported exponent
    for (double beta : betas)
        if (beta < -2.0) throw std::invalid_argument("config: betas must be >= -2");
    if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    for (double rho : corpus.bump_rhos)
        if (!(rho > 0.0) || rho > gamma)
            throw std::invalid_argument("config: bump rho must lie in (0, gamma]");
    for (const auto& coeffs : corpus.bandlimited)
        if (coeffs.empty()) throw std::invalid_argument("config: bandlimited member needs coefficients");
    for (int degree : corpus.pure_degrees)
        if (degree < 1) throw std::invalid_argument("config: pure degrees must be >= 1");
}

std::optional<Command> parse_command(const std::string& name) {
    if (name == "multipliers") return Command::multipliers;
    if (name == "moments") return Command::moments;
    if (name == "approx") return Command::approx;
    if (name == "probe-direct") return Command::probe_direct;
    if (name == "probe-converse") return Command::probe_converse;
    if (name == "probe-saturation") return Command::probe_saturation;
    if (name == "probe-equivalence") return Command::probe_equivalence;
    return std::nullopt;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::multipliers: return "multipliers";
        case Command::moments: return "moments";
        case Command::approx: return "approx";
        case Command::probe_direct: return "probe-direct";
        case Command::probe_converse: return "probe-converse";
        case Command::probe_saturation: return "probe-saturation";
        case Command::probe_equivalence: return "probe-equivalence";
    }
    return "unknown";
}

int execute(const ExperimentConfig& config, Command command) {
    try {
        config.validate();
        ResolvedConfig rc = resolve(config, command);
        ArtifactWriter writer(rc.cfg, command);
        int status = 0;
        switch (command) {
            case Command::multipliers: status = run_multipliers(rc, writer); break;
            case Command::moments: status = run_moments(rc, writer); break;
            case Command::approx: status = run_approx(rc, writer); break;
            default: status = run_probe(rc, command, writer); break;
        }
        writer.finish();
        return status;
    } catch (const convergence_error& err) {
        std::cerr << "numerical non-convergence: " << err.what() << "\n";
        return 3;
    } catch (const std::domain_error& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}

}  // namespace capjack
