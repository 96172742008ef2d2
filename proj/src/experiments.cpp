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

#include "kerrsplit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <random>

#include "kerrsplit/parallel.hpp"

namespace kerrsplit {

std::string_view path_name(ComputePath path) {
    switch (path) {
        case ComputePath::kMatrix:
            return "matrix";
        case ComputePath::kClosedForm:
            return "closed";
        case ComputePath::kBoth:
            return "both";
    }
    return "unknown";
}

void SweepSpec::validate() const {
    if (steps < 2) {
        throw std::invalid_argument("sweep: steps must be >= 2");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw std::invalid_argument("sweep: need finite start < stop");
    }
    fixed.validate();
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> values(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        // Endpoints exact; interior points from the left edge.
        values[static_cast<std::size_t>(i)] =
            i == steps - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (steps - 1);
    }
    return values;
}

namespace {

struct PortSummary {
    double mean_n2 = 0.0;
    double mean_n3 = 0.0;
    double odd_mass_3 = 0.0;
    double tail = 0.0;
};

PortSummary matrix_summary(const InterferometerConfig &cfg, const BeamSplitterUnitary *unitary) {
    OutputStatistics stats = simulate(cfg, unitary);
    return {mean_photon_number(stats.p2), mean_photon_number(stats.p3), odd_probability_mass(stats.p3),
            stats.p2.tail_bound};
}

double input_tail(const InterferometerConfig &cfg) {
    InputPair in = prepare_inputs(cfg);
    return std::max(0.0, 1.0 - norm_sq(in.port0) * norm_sq(in.port1));
}

std::vector<double> closed_pmf(Port port, const ClosedFormConfig &cf, int max_n, int workers) {
    std::vector<double> probs(static_cast<std::size_t>(max_n) + 1);
    ClosedFormOptions opts;
    opts.workers = workers;
    for (int n = 0; n <= max_n; ++n) {
        probs[static_cast<std::size_t>(n)] = port == Port::k2 ? p2(n, cf, opts) : p3(n, cf, opts);
    }
    return probs;
}

PortSummary closed_summary(const InterferometerConfig &cfg, int workers) {
    ClosedFormConfig cf = ClosedFormConfig::from(cfg);
    const int max_n = 2 * cf.cutoff;
    Distribution d2{SupportKind::kPhotonNumber, {}, closed_pmf(Port::k2, cf, max_n, workers), 0.0};
    Distribution d3{SupportKind::kPhotonNumber, {}, closed_pmf(Port::k3, cf, max_n, workers), 0.0};
    for (int n = 0; n <= max_n; ++n) {
        d2.support.push_back(n);
        d3.support.push_back(n);
    }
    return {mean_photon_number(d2), mean_photon_number(d3), odd_probability_mass(d3), input_tail(cfg)};
}

InterferometerConfig with_value(const InterferometerConfig &base, SweepVariable var, double value) {
    InterferometerConfig cfg = base;
    if (var == SweepVariable::kTheta) {
        cfg.theta = value;
    } else {
        cfg.gamma3 = value;
    }
    return cfg;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec &spec) {
    const std::vector<double> values = spec.grid();
    const int cutoff = spec.fixed.resolved_cutoff();
    std::optional<BeamSplitterUnitary> unitary;
    if (spec.path != ComputePath::kClosedForm) {
        unitary.emplace(spec.fixed.bs, 2 * cutoff);
    }
    const double expected_total = 2.0 * spec.fixed.beta_mag * spec.fixed.beta_mag;
    std::vector<SweepRow> rows(values.size());
    parallel_for(values.size(), spec.workers, [&](std::size_t i) {
        InterferometerConfig cfg = with_value(spec.fixed, spec.variable, values[i]);
        cfg.cutoff = cutoff;
        SweepRow &row = rows[i];
        row.value = values[i];
        PortSummary primary;
        if (spec.path == ComputePath::kClosedForm) {
            primary = closed_summary(cfg, 1);
        } else {
            primary = matrix_summary(cfg, &*unitary);
        }
        if (spec.path == ComputePath::kBoth) {
            PortSummary other = closed_summary(cfg, 1);
            row.path_disagreement = std::max({std::abs(primary.mean_n2 - other.mean_n2),
                                              std::abs(primary.mean_n3 - other.mean_n3),
                                              std::abs(primary.odd_mass_3 - other.odd_mass_3)});
            row.paths_agree = row.path_disagreement <= kPathAgreementTol;
        }
        row.mean_n2 = primary.mean_n2;
        row.mean_n3 = primary.mean_n3;
        row.odd_mass_3 = primary.odd_mass_3;
        row.total_mean = primary.mean_n2 + primary.mean_n3;
        row.tail_bound = primary.tail;
        row.conserved = std::abs(row.total_mean - expected_total) <= kConservationTol;
    });
    return rows;
}

double visibility(double gamma3, const InterferometerConfig &fixed, int theta_points, int workers) {
    if (theta_points < 32) {
        throw std::invalid_argument("visibility: need at least 32 theta points");
    }
    InterferometerConfig base = fixed;
    base.gamma3 = gamma3;
    base.cutoff = base.resolved_cutoff();
    BeamSplitterUnitary unitary(base.bs, 2 * base.cutoff);
    std::vector<double> dark(static_cast<std::size_t>(theta_points));
    parallel_for(dark.size(), workers, [&](std::size_t j) {
        InterferometerConfig cfg = base;
        cfg.theta = kTwoPi * static_cast<double>(j) / theta_points;
        dark[j] = matrix_summary(cfg, &unitary).mean_n3;
    });
    auto [lo, hi] = std::minmax_element(dark.begin(), dark.end());
    const double sum = *hi + *lo;
    if (sum == 0.0) {
        if (*hi > 0.0) {
            return 1.0;
        }
        throw std::domain_error("visibility: no light reaches port 3 at any phase");
    }
    return (*hi - *lo) / sum;
}

DistributionReport distribution_report(Port port, const InterferometerConfig &cfg, int max_n, ComputePath path,
                                       int workers) {
    DistributionReport report;
    report.path = path;
    report.cutoff = cfg.resolved_cutoff();
    InterferometerConfig fixed = cfg;
    fixed.cutoff = report.cutoff;
    const int full = 2 * report.cutoff;
    const int shown = max_n < 0 ? full : std::min(max_n, full);

    std::optional<Distribution> matrix;
    if (path != ComputePath::kClosedForm) {
        OutputStatistics stats = simulate(fixed);
        matrix = port == Port::k2 ? stats.p2 : stats.p3;
    }
    std::vector<double> closed;
    if (path != ComputePath::kMatrix) {
        closed = closed_pmf(port, ClosedFormConfig::from(fixed), shown, workers);
    }

    Distribution &dist = report.dist;
    dist.kind = SupportKind::kPhotonNumber;
    for (int n = 0; n <= shown; ++n) {
        dist.support.push_back(n);
        dist.probs.push_back(matrix ? matrix->probs[static_cast<std::size_t>(n)]
                                    : closed[static_cast<std::size_t>(n)]);
    }
    if (path == ComputePath::kBoth) {
        for (int n = 0; n <= shown; ++n) {
            report.path_disagreement =
                std::max(report.path_disagreement,
                         std::abs(matrix->probs[static_cast<std::size_t>(n)] - closed[static_cast<std::size_t>(n)]));
        }
    }
    const double tail = matrix ? matrix->tail_bound : input_tail(fixed);
    dist.tail_bound = std::max(tail, 1.0 - dist.total());
    return report;
}

nlohmann::json config_metadata(const InterferometerConfig &cfg, ComputePath path) {
    nlohmann::json meta;
    meta["tool"] = std::string(kToolName);
    meta["version"] = std::string(kToolVersion);
    meta["beta_mag"] = cfg.beta_mag;
    meta["theta"] = cfg.theta;
    meta["gamma3"] = cfg.gamma3;
    meta["transmission"] = cfg.bs.t();
    meta["reflection"] = cfg.bs.r();
    meta["cutoff"] = cfg.resolved_cutoff();
    meta["kerr_convention"] = cfg.convention == KerrConvention::kNSquared ? "n2" : "n2-n";
    meta["path"] = std::string(path_name(path));
    return meta;
}

Table sweep_table(const SweepSpec &spec, const std::vector<SweepRow> &rows) {
    Table table;
    const bool theta = spec.variable == SweepVariable::kTheta;
    table.columns = {{theta ? "theta" : "gamma3"}, {"mean_n2"},    {"mean_n3"},
                     {"odd_mass_3"},               {"total_mean"}, {"tail_bound"}};
    for (const auto &r : rows) {
        table.rows.push_back({r.value, r.mean_n2, r.mean_n3, r.odd_mass_3, r.total_mean, r.tail_bound});
    }
    table.metadata = config_metadata(spec.fixed, spec.path);
    table.metadata["sweep"] = {{"variable", theta ? "theta" : "gamma3"},
                               {"start", spec.start},
                               {"stop", spec.stop},
                               {"steps", spec.steps}};
    table.metadata.erase(theta ? "theta" : "gamma3");
    return table;
}

Table distribution_table(const DistributionReport &report, Port port, const InterferometerConfig &cfg) {
    Table table;
    table.columns = {{"n", true}, {"probability"}};
    for (std::size_t i = 0; i < report.dist.probs.size(); ++i) {
        table.rows.push_back({report.dist.support[i], report.dist.probs[i]});
    }
    table.metadata = config_metadata(cfg, report.path);
    table.metadata["port"] = static_cast<int>(port);
    table.metadata["tail_bound"] = report.dist.tail_bound;
    if (report.path == ComputePath::kBoth) {
        table.metadata["path_disagreement"] = report.path_disagreement;
    }
    return table;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

std::string VerifyReport::render(OutputFormat format) const {
    if (format == OutputFormat::kCsv) {
        std::string out = "check,residual,tolerance,passed\n";
        for (const auto &c : checks) {
            out += c.name + "," + format_number(c.residual) + "," + format_number(c.tolerance) + "," +
                   (c.passed ? "1" : "0") + "\n";
        }
        return out;
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = {{"tool", std::string(kToolName)},
                       {"version", std::string(kToolVersion)},
                       {"level", level == VerifyLevel::kQuick ? "quick" : "full"},
                       {"passed", passed()}};
    auto &data = doc["data"] = nlohmann::ordered_json::array();
    for (const auto &c : checks) {
        data.push_back({{"check", c.name},
                        {"residual", round_to_printed(c.residual)},
                        {"tolerance", round_to_printed(c.tolerance)},
                        {"passed", c.passed}});
    }
    return doc.dump(2) + "\n";
}

namespace {

CheckResult below(std::string name, double residual, double tolerance) {
    return {std::move(name), residual, tolerance, residual < tolerance};
}

InterferometerConfig dark_port_config(double beta_mag, double gamma3, double theta = std::numbers::pi / 2) {
    InterferometerConfig cfg;
    cfg.beta_mag = beta_mag;
    cfg.gamma3 = gamma3;
    cfg.theta = theta;
    cfg.bs = BeamSplitter::balanced();
    return cfg;
}

double cross_path_residual(const InterferometerConfig &cfg, int max_n, int workers) {
    OutputStatistics stats = simulate(cfg);
    ClosedFormConfig cf = ClosedFormConfig::from(cfg);
    ClosedFormOptions opts;
    opts.workers = workers;
    double worst = 0.0;
    for (int n = 0; n <= max_n && n < static_cast<int>(stats.p2.probs.size()); ++n) {
        worst = std::max(worst, std::abs(p2(n, cf, opts) - stats.p2.probs[static_cast<std::size_t>(n)]));
        worst = std::max(worst, std::abs(p3(n, cf, opts) - stats.p3.probs[static_cast<std::size_t>(n)]));
    }
    return worst;
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

VerifyReport verify(VerifyLevel level, std::uint64_t seed, int workers) {
    VerifyReport report;
    report.level = level;
    auto &checks = report.checks;
    const bool full = level == VerifyLevel::kFull;

    // Cross-path equivalence.
    {
        std::vector<double> beta_sq = full ? std::vector<double>{2, 4, 6} : std::vector<double>{2};
        std::vector<double> gammas = full ? std::vector<double>{0, 0.1, 0.4, 1.0} : std::vector<double>{0.1, 0.4};
        std::vector<double> thetas = full ? std::vector<double>{std::numbers::pi / 4, std::numbers::pi / 2}
                                          : std::vector<double>{std::numbers::pi / 2};
        for (double b2 : beta_sq) {
            for (double g : gammas) {
                for (double th : thetas) {
                    InterferometerConfig cfg = dark_port_config(std::sqrt(b2), g, th);
                    checks.push_back(below("cross_path beta2=" + fmt(b2) + " gamma3=" + fmt(g) + " theta=" + fmt(th),
                                           cross_path_residual(cfg, 10, workers), 1e-8));
                }
            }
        }
        InterferometerConfig asym = dark_port_config(std::sqrt(2.0), 0.4, std::numbers::pi / 4);
        asym.bs = BeamSplitter::from_transmission(std::sqrt(0.7));
        checks.push_back(below("cross_path t2=0.7", cross_path_residual(asym, 10, workers), 1e-8));
    }

    // Dark-port parity, matrix path.
    {
        std::vector<double> betas = {std::sqrt(2.0), 2.0, std::sqrt(6.0)};
        std::vector<double> gammas = {0.01, 0.1, 0.4, 1.0, std::numbers::pi / 4};
        if (!full) {
            betas = {std::sqrt(6.0)};
            gammas = {0.1, 1.0};
        }
        double worst = 0.0;
        for (double b : betas) {
            for (double g : gammas) {
                worst = std::max(worst, odd_probability_mass(simulate(dark_port_config(b, g)).p3));
            }
        }
        checks.push_back(below("dark_port_odd_mass", worst, 1e-10));
    }

    // Symmetric-case sums: odd outputs vanish, and agree with the general sum.
    {
        const std::vector<double> gammas = full ? std::vector<double>{0.1, 0.5, 1.0, std::numbers::pi / 4}
                                                : std::vector<double>{0.5};
        const double beta = std::sqrt(2.0);
        const int cutoff = auto_cutoff(2.0);
        ClosedFormOptions opts;
        opts.workers = workers;
        double worst_odd = 0.0;
        for (double g : gammas) {
            for (int y : {1, 3}) {
                worst_odd = std::max(worst_odd, p3_symmetric_sum(y, beta, g, cutoff, KerrConvention::kNSquared, opts)
                                                    .probability);
            }
        }
        checks.push_back(below("symmetric_sum_odd", worst_odd, 1e-12));
        InterferometerConfig cfg = dark_port_config(2.0, 0.1);
        ClosedFormConfig cf = ClosedFormConfig::from(cfg);
        double diff = std::abs(p3_symmetric_sum(2, 2.0, 0.1, cf.cutoff, KerrConvention::kNSquared, opts).real_part -
                               p3_sum(2, cf, opts).real_part);
        checks.push_back(below("symmetric_vs_general", diff, 1e-10));
    }

    // Energy conservation across a fringe.
    {
        SweepSpec spec;
        spec.fixed = dark_port_config(2.0, 0.1);
        spec.steps = full ? kFringeThetaPoints : 16;
        spec.workers = workers;
        double worst = 0.0;
        for (const auto &row : sweep(spec)) {
            worst = std::max(worst, std::abs(row.total_mean - 8.0));
        }
        checks.push_back(below("energy_conservation", worst, kConservationTol));
    }

    // Coherent limit.
    {
        OutputStatistics s = simulate(dark_port_config(2.0, 0.0));
        checks.push_back(below("coherent_dark_port_vacuum", 1.0 - s.p3.probs[0], 1e-10));
        double worst = 0.0;
        for (std::size_t n = 0; n < s.p2.probs.size(); ++n) {
            double poisson = std::exp(-8.0 + n * std::log(8.0) - std::lgamma(n + 1.0));
            worst = std::max(worst, std::abs(s.p2.probs[n] - poisson));
        }
        checks.push_back(below("coherent_bright_port_poisson", worst, 1e-9));
    }

    // Hong-Ou-Mandel.
    {
        TwoModeState joint = beam_splitter_transform(fock_state(1, 2), fock_state(1, 2), BeamSplitter::balanced());
        checks.push_back(below("hong_ou_mandel", std::norm(joint.at(1, 1)), 1e-14));
    }

    // Kerr evolution leaves photon statistics untouched, bit for bit.
    {
        FockVector parent = coherent_state({2.0, 0.3}, auto_cutoff(4.0));
        double mismatches = 0;
        for (double g : {0.1, 1.0, std::numbers::pi / 4}) {
            for (auto conv : {KerrConvention::kNSquared, KerrConvention::kNSquaredMinusN}) {
                FockVector kerr = apply_kerr(parent, {g, conv});
                for (std::size_t n = 0; n < parent.size(); ++n) {
                    double a = parent.probability(static_cast<int>(n));
                    double b = kerr.probability(static_cast<int>(n));
                    if (std::memcmp(&a, &b, sizeof a) != 0) {
                        mismatches += 1;
                    }
                }
            }
        }
        checks.push_back({"kerr_pmf_bitwise", mismatches, 0.0, mismatches == 0});
    }

    // Pairwise cancellation audit.
    {
        std::mt19937_64 rng(seed);
        const int samples = full ? 10000 : 1000;
        double worst_odd = 0.0;
        double worst_even = 0.0;
        int failed = 0;
        for (int s = 0; s < samples; ++s) {
            const int y = std::uniform_int_distribution<int>(0, 9)(rng);
            SumIndexTuple idx = sample_symmetric_tuple(rng, y, 20);
            for (Exchange ex : {Exchange::kKL, Exchange::kMN}) {
                CancellationVerdict v = cancellation_pair_check(idx, y, std::sqrt(6.0), 0.1, ex);
                (v.odd ? worst_odd : worst_even) =
                    std::max(v.odd ? worst_odd : worst_even, v.relative_residual);
                failed += v.passed ? 0 : 1;
            }
        }
        checks.push_back(below("cancellation_odd_pairs", worst_odd, kCancellationTolerance));
        checks.push_back(below("cancellation_even_pairs", worst_even, kCancellationTolerance));
        checks.push_back({"cancellation_failures", static_cast<double>(failed), 0.0, failed == 0});
    }

    if (full) {
        InterferometerConfig base = dark_port_config(2.0, 0.0);
        std::vector<double> vis;
        for (double g : kVisibilityGammas) {
            vis.push_back(visibility(g, base, kVisibilityThetaPoints, workers));
        }
        checks.push_back(below("visibility_at_zero", 1.0 - vis.front(), 1e-3));
        double rise = 0.0;
        for (std::size_t i = 1; i < vis.size(); ++i) {
            rise = std::max(rise, vis[i] - vis[i - 1]);
        }
        checks.push_back(below("visibility_non_increasing", rise, 1e-6));
        checks.push_back(below("visibility_at_one", vis.back(), 0.1));

        std::vector<double> odd;
        for (double d : kFigure3Detunings) {
            odd.push_back(odd_probability_mass(simulate(dark_port_config(2.0, 0.1, std::numbers::pi / 2 + d)).p3));
        }
        checks.push_back(below("detuning_zero_odd_mass", odd.front(), 1e-10));
        double worst_step = 0.0;
        bool increasing = true;
        for (std::size_t i = 1; i < odd.size(); ++i) {
            increasing = increasing && odd[i] > odd[i - 1];
            worst_step = std::max(worst_step, odd[i - 1] - odd[i]);
        }
        checks.push_back({"detuning_odd_mass_increasing", worst_step, 0.0, increasing});
    }
    return report;
}

namespace {

std::string number_tag(double v) { return format_number(v); }

struct FigureJob {
    std::string name;
    std::function<Table()> build;
    // Set when the job produces rows that break an invariant.
    int failures = 0;
};

}  // namespace

FigureSet write_figures(const FigureOptions &opts) {
    std::filesystem::create_directories(opts.dir);
    const double half_pi = std::numbers::pi / 2;
    std::vector<FigureJob> jobs;

    auto base = [&](double beta_mag, double gamma3, double theta) {
        InterferometerConfig cfg;
        cfg.beta_mag = beta_mag;
        cfg.gamma3 = gamma3;
        cfg.theta = theta;
        cfg.convention = opts.convention;
        return cfg;
    };

    auto sweep_job = [&](std::string name, SweepSpec spec) {
        jobs.push_back({std::move(name), nullptr, 0});
        const std::size_t slot = jobs.size() - 1;
        jobs[slot].build = [spec, slot, &jobs]() {
            std::vector<SweepRow> rows = sweep(spec);
            for (const auto &r : rows) {
                if (!r.conserved || !r.paths_agree) {
                    ++jobs[slot].failures;
                }
            }
            return sweep_table(spec, rows);
        };
    };

    {
        SweepSpec spec;
        spec.variable = SweepVariable::kTheta;
        spec.start = 0.0;
        spec.stop = kTwoPi;
        spec.steps = kFringeThetaPoints;
        spec.fixed = base(2.0, 0.1, half_pi);
        spec.path = opts.path;
        sweep_job("fig1a_fringes", spec);
    }
    {
        SweepSpec spec;
        spec.variable = SweepVariable::kGamma3;
        spec.start = 0.0;
        spec.stop = 1.0;
        spec.steps = 51;
        spec.fixed = base(2.0, 0.0, half_pi);
        spec.path = opts.path;
        sweep_job("fig1b_dark_port_vs_gamma", spec);
    }
    jobs.push_back({"fig1b_visibility",
                    [&]() {
                        Table t;
                        t.columns = {{"gamma3"}, {"visibility"}};
                        InterferometerConfig cfg = base(2.0, 0.0, half_pi);
                        for (int i = 0; i <= 20; ++i) {
                            double g = 0.05 * i;
                            t.rows.push_back({g, visibility(g, cfg, kVisibilityThetaPoints, 1)});
                        }
                        t.metadata = config_metadata(cfg, ComputePath::kMatrix);
                        t.metadata.erase("gamma3");
                        t.metadata.erase("theta");
                        t.metadata["theta_points"] = kVisibilityThetaPoints;
                        return t;
                    },
                    0});
    for (double g : kFigure2Gammas) {
        for (Port port : {Port::k3, Port::k2}) {
            std::string name = std::string("fig2_port") + (port == Port::k3 ? "3" : "2") + "_gamma" + number_tag(g);
            InterferometerConfig cfg = base(std::sqrt(6.0), g, half_pi);
            jobs.push_back({name,
                            [cfg, port, &opts]() {
                                return distribution_table(distribution_report(port, cfg, -1, opts.path, 1), port,
                                                          cfg);
                            },
                            0});
        }
    }
    for (double d : kFigure3Detunings) {
        InterferometerConfig cfg = base(2.0, 0.1, half_pi + d);
        jobs.push_back({"fig3_port3_delta" + number_tag(d),
                        [cfg, &opts]() {
                            return distribution_table(distribution_report(Port::k3, cfg, -1, opts.path, 1), Port::k3,
                                                      cfg);
                        },
                        0});
    }
    jobs.push_back({"fig3_odd_mass",
                    [&]() {
                        Table t;
                        t.columns = {{"delta"}, {"theta"}, {"odd_mass_3"}};
                        for (double d : kFigure3Detunings) {
                            InterferometerConfig cfg = base(2.0, 0.1, half_pi + d);
                            t.rows.push_back(
                                {d, cfg.theta, odd_probability_mass(distribution_report(Port::k3, cfg, -1, opts.path, 1).dist)});
                        }
                        t.metadata = config_metadata(base(2.0, 0.1, half_pi), opts.path);
                        t.metadata.erase("theta");
                        return t;
                    },
                    0});

    std::vector<std::string> contents(jobs.size());
    parallel_for(jobs.size(), opts.workers, [&](std::size_t i) { contents[i] = jobs[i].build().render(opts.format); });

    FigureSet out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::filesystem::path file = opts.dir / (jobs[i].name + std::string(extension(opts.format)));
        write_text_file(file, contents[i]);
        out.files.push_back(file);
        out.failures += jobs[i].failures;
    }
    return out;
}

}  // namespace kerrsplit
