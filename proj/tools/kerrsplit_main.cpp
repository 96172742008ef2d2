// Copyright 2026 The kerrsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kerrsplit/experiments.hpp"

namespace {

using namespace kerrsplit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitResource = 3;

struct CommonOptions {
    double beta_mag = 2.0;
    double theta = std::numbers::pi / 2;
    double gamma3 = 0.1;
    std::optional<double> transmission;
    int cutoff = 0;
    KerrConvention convention = KerrConvention::kNSquared;
    ComputePath path = ComputePath::kMatrix;
    int port = 3;
    OutputFormat format = OutputFormat::kCsv;
    std::string out;
    int workers = 1;
    std::uint64_t seed = 1;

    InterferometerConfig config() const {
        InterferometerConfig cfg;
        cfg.beta_mag = beta_mag;
        cfg.theta = theta;
        cfg.gamma3 = gamma3;
        cfg.bs = transmission ? BeamSplitter::from_transmission(*transmission) : BeamSplitter::balanced();
        cfg.cutoff = cutoff;
        cfg.convention = convention;
        cfg.validate();
        return cfg;
    }
    Port port_label() const { return port == 2 ? Port::k2 : Port::k3; }
};

void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--beta-mag", o.beta_mag, "Input amplitude magnitude |beta| (port 0)")->capture_default_str();
    cmd->add_option("--theta", o.theta, "Relative phase in radians; port 1 carries |beta| e^{-i theta}")
        ->capture_default_str();
    cmd->add_option("--gamma3", o.gamma3, "Kerr phase coefficient")->capture_default_str();
    cmd->add_option("--transmission", o.transmission, "Transmission t (r = sqrt(1 - t^2)); default 50:50")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--cutoff", o.cutoff, "Fock cutoff per input mode (0 = auto from Poisson tail)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--kerr-convention", o.convention, "Kerr phase polynomial")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, KerrConvention>{{"n2", KerrConvention::kNSquared},
                                                  {"n2-n", KerrConvention::kNSquaredMinusN}},
            CLI::ignore_case));
    cmd->add_option("--path", o.path, "Computation path")
        ->transform(CLI::CheckedTransformer(std::map<std::string, ComputePath>{{"matrix", ComputePath::kMatrix},
                                                                               {"closed", ComputePath::kClosedForm},
                                                                               {"both", ComputePath::kBoth}},
                                            CLI::ignore_case));
    cmd->add_option("--port", o.port, "Output port")->check(CLI::IsMember({2, 3}))->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::kCsv}, {"json", OutputFormat::kJson}},
            CLI::ignore_case));
    cmd->add_option("--out", o.out, "Output file (directory for `figures`); stdout if omitted");
    cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed for randomized verification sampling")->capture_default_str();
}

void emit(const CommonOptions &o, const std::string &content) {
    if (o.out.empty()) {
        std::cout << content;
    } else {
        write_text_file(o.out, content);
    }
}

int run_sweep(const CommonOptions &o, SweepVariable variable, double start, double stop, int steps) {
    SweepSpec spec;
    spec.variable = variable;
    spec.start = start;
    spec.stop = stop;
    spec.steps = steps;
    spec.fixed = o.config();
    spec.path = o.path;
    spec.workers = o.workers;
    std::vector<SweepRow> rows = sweep(spec);
    emit(o, sweep_table(spec, rows).render(o.format));
    int rc = kExitOk;
    for (const auto &r : rows) {
        if (!r.conserved) {
            std::cerr << "conservation violated at " << format_number(r.value) << ": total_mean "
                      << format_number(r.total_mean) << "\n";
            rc = kExitVerification;
        }
        if (!r.paths_agree) {
            std::cerr << "matrix and closed-form paths disagree at " << format_number(r.value) << " by "
                      << format_number(r.path_disagreement) << "\n";
            rc = kExitVerification;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"kerrsplit: interference of Kerr-evolved coherent states at a beam splitter"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    CommonOptions o;

    auto *dist = app.add_subcommand("dist", "Photon-number distribution at one output port");
    add_common(dist, o);
    int max_n = -1;
    dist->add_option("--max-n", max_n, "Largest photon number to report (-1 = full support)");

    auto *phase = app.add_subcommand("phase-dist", "Phase distribution at one output port (matrix path)");
    add_common(phase, o);
    int phase_points = 256;
    phase->add_option("--points", phase_points, "Phase grid size")->check(CLI::Range(2, 1 << 20));

    double start = 0.0;
    double stop = kTwoPi;
    int steps = kFringeThetaPoints;
    auto *sweep_theta = app.add_subcommand("sweep-theta", "Mean photon numbers versus relative phase");
    add_common(sweep_theta, o);
    sweep_theta->add_option("--start", start)->capture_default_str();
    sweep_theta->add_option("--stop", stop)->capture_default_str();
    sweep_theta->add_option("--steps", steps)->capture_default_str();

    double g_start = 0.0;
    double g_stop = 1.0;
    int g_steps = 51;
    auto *sweep_gamma = app.add_subcommand("sweep-gamma", "Mean photon numbers versus Kerr strength");
    add_common(sweep_gamma, o);
    sweep_gamma->add_option("--start", g_start)->capture_default_str();
    sweep_gamma->add_option("--stop", g_stop)->capture_default_str();
    sweep_gamma->add_option("--steps", g_steps)->capture_default_str();

    auto *vis = app.add_subcommand("visibility", "Fringe visibility of the port-3 mean photon number");
    add_common(vis, o);
    std::vector<double> gammas;
    int theta_points = kVisibilityThetaPoints;
    vis->add_option("--gammas", gammas, "Kerr strengths to evaluate (default: --gamma3)")->delimiter(',');
    vis->add_option("--points", theta_points, "Theta grid size")->check(CLI::Range(32, 1 << 16));

    auto *ver = app.add_subcommand("verify", "Run the verification suite");
    add_common(ver, o);
    std::string level = "quick";
    ver->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();

    auto *figs = app.add_subcommand("figures", "Write the full reproduction data set into --out");
    add_common(figs, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*dist) {
            InterferometerConfig cfg = o.config();
            DistributionReport report = distribution_report(o.port_label(), cfg, max_n, o.path, o.workers);
            emit(o, distribution_table(report, o.port_label(), cfg).render(o.format));
            if (o.path == ComputePath::kBoth && report.path_disagreement > kPathAgreementTol) {
                std::cerr << "matrix and closed-form paths disagree by " << format_number(report.path_disagreement)
                          << "\n";
                return kExitVerification;
            }
            return kExitOk;
        }
        if (*phase) {
            InterferometerConfig cfg = o.config();
            OutputStatistics stats = simulate(cfg);
            Distribution d = phase_distribution(o.port_label() == Port::k2 ? stats.rho2 : stats.rho3, phase_points);
            Table t;
            t.columns = {{"phi"}, {"probability"}};
            for (std::size_t i = 0; i < d.probs.size(); ++i) {
                t.rows.push_back({d.support[i], d.probs[i]});
            }
            t.metadata = config_metadata(cfg, ComputePath::kMatrix);
            t.metadata["port"] = o.port;
            t.metadata["points"] = phase_points;
            emit(o, t.render(o.format));
            return kExitOk;
        }
        if (*sweep_theta) {
            return run_sweep(o, SweepVariable::kTheta, start, stop, steps);
        }
        if (*sweep_gamma) {
            return run_sweep(o, SweepVariable::kGamma3, g_start, g_stop, g_steps);
        }
        if (*vis) {
            InterferometerConfig cfg = o.config();
            if (gammas.empty()) {
                gammas.push_back(o.gamma3);
            }
            Table t;
            t.columns = {{"gamma3"}, {"visibility"}};
            for (double g : gammas) {
                t.rows.push_back({g, visibility(g, cfg, theta_points, o.workers)});
            }
            t.metadata = config_metadata(cfg, ComputePath::kMatrix);
            t.metadata.erase("gamma3");
            t.metadata.erase("theta");
            t.metadata["theta_points"] = theta_points;
            emit(o, t.render(o.format));
            return kExitOk;
        }
        if (*ver) {
            VerifyReport report = verify(level == "full" ? VerifyLevel::kFull : VerifyLevel::kQuick, o.seed, o.workers);
            emit(o, report.render(o.format));
            return report.passed() ? kExitOk : kExitVerification;
        }
        if (*figs) {
            if (o.out.empty()) {
                std::cerr << "figures: --out <directory> is required\n";
                return kExitUsage;
            }
            FigureOptions fo;
            fo.dir = o.out;
            fo.format = o.format;
            fo.path = o.path;
            fo.convention = o.convention;
            fo.workers = o.workers;
            FigureSet set = write_figures(fo);
            for (const auto &f : set.files) {
                std::cout << f.string() << "\n";
            }
            if (set.failures > 0) {
                std::cerr << set.failures << " figure rows failed conservation or path agreement\n";
                return kExitVerification;
            }
            return kExitOk;
        }
    } catch (const ResourceLimitError &e) {
        std::cerr << "resource bound exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const NumericalError &e) {
        std::cerr << "numerical check failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
