// Acceptance suite: one pass/fail line per criterion, run at n = 3,
// gamma = pi/2, s = 3 (except where a check names another power).
// Exit status is the number of failed criteria.
//
// Usage: acceptance [path-to-cli-binary]
// The CLI path feeds the byte-determinism check of criterion 10; without
// it that sub-check is reported as a failure.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "capjack/analysis.hpp"
#include "capjack/cli.hpp"
#include "capjack/kernel.hpp"
#include "capjack/metrics.hpp"
#include "capjack/operators.hpp"
#include "capjack/special_fn.hpp"

using namespace capjack;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& label, const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

void info(const std::string& line) { std::printf("            %s\n", line.c_str()); }

CapGeometry geom3() { return CapGeometry::polar(3, pi / 2); }

KernelSpec spec3(int k, int s = 3) { return kernel_normalize(k, s, pi / 2, 0.5); }

std::string fnum(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Composite Gauss-Legendre nodes over [0, b] for profile-space L2 norms.
struct ProfileQuad {
    std::vector<double> nodes, weights;
    ProfileQuad(double b, int panels) {
        for (int p = 0; p < panels; ++p) {
            QuadratureRule r = gauss_legendre_rule(15, b * p / panels, b * (p + 1) / panels);
            nodes.insert(nodes.end(), r.nodes.begin(), r.nodes.end());
            weights.insert(weights.end(), r.weights.begin(), r.weights.end());
        }
    }
    double l2(const std::vector<double>& values) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * values[i] * values[i] * std::sin(nodes[i]);
        return std::sqrt(acc);
    }
};

// --- criterion 1: multiplier normalization and bound ------------------------

void criterion1() {
    bool pass = true;
    std::string detail;
    for (int m : {1, 9})
        for (int k = 1; k <= 256 && pass; k *= 2) {
            MultiplierTable t = multiplier_table(spec3(k), m, 128);
            if (std::abs(t.at(0) - 1.0) > 1e-9) {
                pass = false;
                detail = "xi(0) off at k=" + std::to_string(k) + " m=" + std::to_string(m);
            }
            for (int j = 0; j <= 128; ++j)
                if (std::abs(t.at(j)) > 1.0 + 1e-12) {
                    pass = false;
                    detail = "|xi| bound broken at k=" + std::to_string(k) + " j=" + std::to_string(j);
                    break;
                }
        }
    report(1, pass, "multiplier normalization: xi(0)=1 (1e-9), |xi(j)|<=1+1e-12, k in {1..256}, m in {1,9}",
           detail);
}

// --- criterion 2: moment asymptotics ----------------------------------------

void criterion2() {
    bool pass = true;
    std::ostringstream detail;
    for (double beta : {1.0, 2.0, 3.0}) {
        std::vector<std::pair<int, double>> series;
        for (int k : {16, 32, 64, 128, 256})
            series.emplace_back(k, kernel_moment(spec3(k), beta));
        ConvergenceReport rep = fit_order(series);
        bool ok = std::abs(rep.slope + beta) <= 0.15 && rep.r_squared >= 0.999;
        pass = pass && ok;
        detail << "beta=" << beta << ": slope=" << fnum(rep.slope) << " r2=" << fnum(rep.r_squared)
               << (ok ? "" : " [out of tolerance]") << "; ";
    }
    report(2, pass, "moment asymptotics: slope(log moment vs log k) = -beta +/- 0.15, r2 >= 0.999",
           detail.str());
    if (!pass) {
        info("beta=3 at s=3 sits at the marginal exponent 2s = beta + 2*lambda + 2, where the");
        info("moment scales like k^-3 * log k; no k-range can fit slope -3 +/- 0.15 there.");
        std::vector<std::pair<int, double>> series;
        for (int k : {16, 32, 64, 128, 256})
            series.emplace_back(k, kernel_moment(spec3(k, 4), 3.0));
        ConvergenceReport rep = fit_order(series);
        info("supplementary (ungated): beta=3 at s=4 gives slope=" + fnum(rep.slope) +
             ", r2=" + fnum(rep.r_squared) + " -- the clean k^-3 rate.");
    }
}

// --- criterion 3: eigenvalue limit of multiplier ratios ---------------------

void criterion3() {
    bool pass = true;
    std::ostringstream detail;
    for (int m : {1, 9}) {
        MultiplierTable t = multiplier_table(spec3(256), m, 6);
        double tol = m == 1 ? 0.05 : 0.10;
        double worst = 0.0;
        for (int j = 2; j <= 6; ++j) {
            double target = j * (j + 1.0) / 2.0;
            double ratio = (1.0 - t.at(j)) / (1.0 - t.at(1));
            worst = std::max(worst, std::abs(ratio - target) / target);
        }
        if (worst > tol) pass = false;
        detail << "m=" << m << ": worst rel err " << fnum(worst) << " (tol " << fnum(tol) << "); ";
    }
    report(3, pass, "eigenvalue limit: (1-xi(j))/(1-xi(1)) -> j(j+1)/2 at k=256, j in {2..6}",
           detail.str());
}

// --- criterion 4: oracle equivalence ----------------------------------------

void criterion4() {
    CapFunction f = CapFunction::bump(geom3(), pi / 4);
    KernelSpec spec = spec3(16);

    HarmonicExpansion e128 = expand(f, 128);
    CapFunction spectral = jackson_apply_spectral(e128, multiplier_table(spec, 1, 128));

    ProfileQuad quad(pi / 2, 16);
    std::vector<double> integral =
        jackson_integral_profile(f, spec, quad.nodes, 512);
    std::vector<double> diff(quad.nodes.size()), base(quad.nodes.size());
    for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
        diff[i] = spectral.profile(quad.nodes[i]) - integral[i];
        base[i] = f.profile(quad.nodes[i]);
    }
    double rel = quad.l2(diff) / quad.l2(base);
    bool pass_jackson = rel <= 1e-6;

    HarmonicExpansion e256 = expand(f, 256);
    double worst_translate = 0.0;
    for (double theta : {0.1, 0.3}) {
        CapFunction sf = translate_spectral(e256, theta, 1);
        for (double alpha = 0.05; alpha <= 1.5; alpha += 0.145) {
            std::array<double, 3> x{std::sin(alpha), 0.0, std::cos(alpha)};
            worst_translate =
                std::max(worst_translate, std::abs(sf.profile(alpha) - translate_geometric(f, theta, x, 512)));
        }
    }
    bool pass_translate = worst_translate <= 1e-6;

    report(4, pass_jackson && pass_translate,
           "oracle equivalence: spectral vs circle-average integral paths",
           "jackson rel L2 = " + fnum(rel) + " (tol 1e-6, k=16, jmax=128); translate max diff = " +
               fnum(worst_translate) + " (tol 1e-6, jmax=256)");
}

// --- criterion 5: saturation order ------------------------------------------

void criterion5() {
    std::vector<int> ks = {128, 256, 512, 1024, 2048};
    bool pass = true;
    std::ostringstream detail;
    for (int m : {1, 9}) {
        for (const auto& [name, f] :
             std::vector<std::pair<std::string, CapFunction>>{
                 {"bump", CapFunction::bump(geom3(), pi / 4)},
                 {"pure3", CapFunction::pure_degree(geom3(), 3)}}) {
            ProbeParams params;
            params.ks = ks;
            params.m = m;
            params.j_max = 256;
            ProbeResult r = probe_saturation(f, params);
            bool ok = r.pass && r.r_squared >= 0.995;
            pass = pass && ok;
            detail << name << " m=" << m << ": slope=" << fnum(r.slope) << " r2=" << fnum(r.r_squared)
                   << (ok ? "" : " [out of tolerance]") << "; ";
        }
    }
    report(5, pass, "saturation order: error slope -2 +/- 0.15 (r2 >= 0.995), k in {128..2048}",
           detail.str());
}

// --- criterion 6: direct inequality -----------------------------------------

void criterion6() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [name, f] :
         std::vector<std::pair<std::string, CapFunction>>{
             {"bump1", CapFunction::bump(geom3(), pi / 4)},
             {"bump2", CapFunction::bump(geom3(), 3 * pi / 8)},
             {"band", CapFunction::bandlimited(
                          geom3(), {0.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125})}}) {
        ProbeParams params;
        params.ks = {16, 32, 64, 128, 256};
        params.j_max = 256;
        ProbeResult r = probe_direct(f, params);
        pass = pass && r.pass;
        detail << name << ": slope=" << fnum(r.slope) << " " << r.notes
               << (r.pass ? "" : " [out of tolerance]") << "; ";
    }
    report(6, pass, "direct inequality: ||J_k f - f|| / omega2(f,1/k) slope 0 +/- 0.3, max/min <= 10",
           detail.str());
}

// --- criterion 7: converse inequality ---------------------------------------

void criterion7() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& [name, f] :
         std::vector<std::pair<std::string, CapFunction>>{
             {"bump1", CapFunction::bump(geom3(), pi / 4)},
             {"bump2", CapFunction::bump(geom3(), 3 * pi / 8)},
             {"band", CapFunction::bandlimited(
                          geom3(), {0.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125})}}) {
        ProbeParams params;
        params.ks = {128, 256, 512, 1024, 2048};
        params.m = 9;
        params.j_max = 256;
        ProbeResult r = probe_converse(f, params);
        pass = pass && r.pass;
        detail << name << ": slope=" << fnum(r.slope) << " " << r.notes
               << (r.pass ? "" : " [out of tolerance]") << "; ";
    }
    report(7, pass,
           "converse inequality (m=9): omega2(f,1/k) / max_{k<=v<=4k} ||J_v f - f|| slope 0 +/- 0.3",
           detail.str());
}

// --- criterion 8: Bernstein surrogate ---------------------------------------

void criterion8() {
    std::vector<std::pair<int, double>> series;
    for (int k : {16, 32, 64, 128, 256}) {
        MultiplierTable t = multiplier_table(spec3(k), 9, 256);
        double best = 0.0;
        for (int j = 1; j <= 256; ++j)
            best = std::max(best, j * (j + 1.0) * std::abs(t.at(j)));
        series.emplace_back(k, best);
    }
    ConvergenceReport rep = fit_order(series);
    bool pass = std::abs(rep.slope - 2.0) <= 0.2;
    report(8, pass, "Bernstein surrogate: max_j j(j+1) |xi_k^9(j)| grows like k^2 +/- 0.2",
           "slope=" + fnum(rep.slope) + " r2=" + fnum(rep.r_squared));
}

// --- criterion 9: contraction and boundedness --------------------------------

void criterion9() {
    CapFunction bump = CapFunction::bump(geom3(), pi / 4);
    CapFunction band = CapFunction::bandlimited(
        geom3(), {0.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125});
    bool pass = true;
    std::string detail;

    HarmonicExpansion eb = expand(bump, 256);
    HarmonicExpansion ep = expand(band, 16);
    double bump_norm = cap_norm(bump, NormP::two);

    for (double theta : {0.05, 0.1, 0.2})
        for (int m : {1, 2, 3, 9}) {
            if (cap_norm(translate_spectral(eb, theta, m), NormP::two) > bump_norm * (1 + 1e-8)) {
                pass = false;
                detail = "translation contraction broken (bump)";
            }
            // Sphere-side check through Parseval for the whole-sphere member.
            double lhs = 0.0, rhs = 0.0;
            for (int j = 0; j <= ep.j_max; ++j) {
                double a = ep.coeff[static_cast<std::size_t>(j)];
                double mu = std::pow(legendre_ratio(3, j, std::cos(theta)), m);
                lhs += mu * a * mu * a * degree_norm_sq(3, j);
                rhs += a * a * degree_norm_sq(3, j);
            }
            if (std::sqrt(lhs) > std::sqrt(rhs) * (1 + 1e-8)) {
                pass = false;
                detail = "translation contraction broken (band, Parseval)";
            }
        }

    for (int k = 16; k <= 256; k *= 2)
        for (int m : {1, 9}) {
            MultiplierTable t = multiplier_table(spec3(k), m, 256);
            if (cap_norm(jackson_apply_spectral(eb, t), NormP::two) > bump_norm * (1 + 1e-8)) {
                pass = false;
                detail = "jackson boundedness broken at k=" + std::to_string(k);
            }
        }
    report(9, pass, "contraction/boundedness: ||S_theta^m f||_2 and ||J_k^m f||_2 <= ||f||_2 (1+1e-8)",
           detail);
}

// --- criterion 10: special-function layer and CLI determinism ----------------

bool files_match(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::ostringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

void criterion10(const char* cli_path) {
    // Derivative identity by central differences.
    bool deriv_ok = true;
    for (double lambda : {0.5, 1.0, 1.5})
        for (int j = 1; j <= 12 && deriv_ok; ++j)
            for (double t = -0.99; t < 0.995; t += 0.11) {
                double h = 1e-5;
                double fd = (gegenbauer_eval({lambda, j}, t + h) - gegenbauer_eval({lambda, j}, t - h)) /
                            (2 * h);
                double exact = 2.0 * lambda * gegenbauer_eval({lambda + 1.0, j - 1}, t);
                double scale = std::max(std::abs(exact), 1.0);
                if (std::abs(fd - exact) / scale > 1e-6) deriv_ok = false;
            }

    // Generating-function partial sums.
    bool series_ok = true;
    for (double lambda : {0.5, 1.0, 1.5})
        for (double t : {-0.8, 0.1, 0.9})
            for (double r : {-0.5, 0.3, 0.5}) {
                double partial = 0.0;
                for (int j = 0; j <= 40; ++j)
                    partial += gegenbauer_eval({lambda, j}, t) * std::pow(r, j);
                if (std::abs(partial - std::pow(1.0 - 2.0 * t * r + r * r, -lambda)) > 1e-8)
                    series_ok = false;
            }

    // Two full CLI runs produce byte-identical artifacts.
    bool cli_ok = false;
    std::string cli_detail = "cli binary path not supplied";
    if (cli_path != nullptr) {
        fs::path base = fs::temp_directory_path() / "capjack_acceptance_cli";
        fs::remove_all(base);
        auto run = [&](const std::string& command, const std::string& extra, const fs::path& out) {
            std::ostringstream cmd;
            cmd << '"' << cli_path << '"' << " --command " << command << " " << extra << " --out "
                << out << " > /dev/null 2>&1";
            return std::system(cmd.str().c_str());
        };
        cli_ok = true;
        for (const auto& [command, extra] :
             std::vector<std::pair<std::string, std::string>>{
                 {"multipliers", "--k-list 16,32 --jmax 64"},
                 {"probe-direct", "--k-list 16,32,64 --jmax 128"}}) {
            fs::path out1 = base / (command + "_run1"), out2 = base / (command + "_run2");
            if (run(command, extra, out1) != 0 || run(command, extra, out2) != 0) {
                cli_ok = false;
                cli_detail = command + " exited nonzero";
                break;
            }
            for (const auto& entry : fs::directory_iterator(out1)) {
                if (entry.path().filename() == "manifest.json") continue;  // embeds the out dir
                if (!files_match(entry.path(), out2 / entry.path().filename())) {
                    cli_ok = false;
                    cli_detail = "artifact differs between runs: " + entry.path().filename().string();
                    break;
                }
            }
            if (cli_ok) cli_detail = "all artifacts byte-identical across reruns";
        }
        fs::remove_all(base);
    }

    report(10, deriv_ok && series_ok && cli_ok,
           "special functions (derivative identity 1e-6, generating series 1e-8) + CLI determinism",
           std::string(deriv_ok ? "deriv ok" : "deriv FAILED") + "; " +
               (series_ok ? "series ok" : "series FAILED") + "; " + cli_detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("acceptance suite: n=3, gamma=pi/2, s=3 (s=4 only where stated)\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10(argc > 1 ? argv[1] : nullptr);
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
