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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.
// Usage: kerrsplit_acceptance <golden_dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kerrsplit/closed_form.hpp"
#include "kerrsplit/experiments.hpp"
#include "kerrsplit/interferometer.hpp"
#include "kerrsplit/state_prep.hpp"

using namespace kerrsplit;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double v) { return format_number(v); }

InterferometerConfig config(double beta, double theta, double gamma3, double t2 = 0.5, int cutoff = 0) {
    InterferometerConfig cfg;
    cfg.beta_mag = beta;
    cfg.theta = theta;
    cfg.gamma3 = gamma3;
    cfg.bs = BeamSplitter::from_transmission(std::sqrt(t2));
    cfg.cutoff = cutoff;
    return cfg;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome dark_port_parity() {
    double worst = 0;
    double slowest = 0;
    for (double beta : {std::sqrt(2.0), 2.0, std::sqrt(6.0)}) {
        for (double g : {0.01, 0.1, 0.4, 1.0, kPi / 4}) {
            auto t0 = std::chrono::steady_clock::now();
            worst = std::max(worst, odd_probability_mass(simulate(config(beta, kPi / 2, g)).p3));
            slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
    }
    return {worst < 1e-10, "max odd mass " + num(worst) + ", slowest config " + num(slowest) + " s"};
}

Outcome cross_path() {
    double worst = 0;
    int configs = 0;
    for (double b2 : {2.0, 4.0}) {
        for (double th : {0.0, kPi / 4, kPi / 2}) {
            for (double g : {0.0, 0.1, 0.4}) {
                for (double t2 : {0.5, 0.7}) {
                    InterferometerConfig cfg = config(std::sqrt(b2), th, g, t2, 20);
                    OutputStatistics s = simulate(cfg);
                    ClosedFormConfig cf = ClosedFormConfig::from(cfg);
                    for (int v = 0; v <= 10; ++v) {
                        worst = std::max(worst, std::abs(p2(v, cf) - s.p2.probs[static_cast<std::size_t>(v)]));
                        worst = std::max(worst, std::abs(p3(v, cf) - s.p3.probs[static_cast<std::size_t>(v)]));
                    }
                    ++configs;
                }
            }
        }
    }
    return {worst < 1e-8, std::to_string(configs) + " configs, cutoff 20, max |diff| " + num(worst)};
}

Outcome energy_conservation() {
    SweepSpec s;
    s.steps = 64;
    s.fixed = config(2.0, 0.0, 0.1);
    double worst = 0;
    for (const auto &r : sweep(s)) {
        worst = std::max(worst, std::abs(r.mean_n2 + r.mean_n3 - 8.0));
    }
    return {worst < 1e-8, "max |<n2>+<n3>-8| " + num(worst)};
}

Outcome coherent_limit() {
    OutputStatistics s = simulate(config(2.0, kPi / 2, 0.0));
    double worst = 0;
    double poisson = std::exp(-8.0);
    for (std::size_t n = 0; n < s.p2.probs.size(); ++n) {
        if (n > 0) {
            poisson *= 8.0 / static_cast<double>(n);
        }
        worst = std::max(worst, std::abs(s.p2.probs[n] - poisson));
    }
    double p30 = s.p3.probs[0];
    return {p30 > 1 - 1e-10 && worst < 1e-9, "p3(0) = " + num(p30) + ", max |p2 - Poisson(8)| " + num(worst)};
}

Outcome visibility_decay() {
    InterferometerConfig fixed = config(2.0, kPi / 2, 0.0);
    std::vector<double> v;
    for (double g : kVisibilityGammas) {
        v.push_back(visibility(g, fixed));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        monotone = monotone && v[i] <= v[i - 1] + 1e-6;
    }
    std::string detail = "V =";
    for (double x : v) {
        detail += " " + num(x);
    }
    return {v.front() > 0.999 && monotone && v.back() < 0.1, detail};
}

Outcome cancellation_audit() {
    std::mt19937_64 rng(20260101);
    const double beta = std::sqrt(6.0);
    const int samples = 10'000;
    double worst_odd = 0;
    double worst_even = 0;
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const Exchange e = i % 2 == 0 ? Exchange::kKL : Exchange::kMN;
        const int y_odd = 1 + 2 * static_cast<int>(rng() % 4);
        const int y_even = 2 * static_cast<int>(rng() % 4);
        SumIndexTuple a = sample_symmetric_tuple(rng, y_odd, 20);
        CancellationVerdict odd = cancellation_pair_check(a, y_odd, beta, 0.1, e);
        SumIndexTuple b = sample_symmetric_tuple(rng, y_even, 20);
        CancellationVerdict even = cancellation_pair_check(b, y_even, beta, 0.1, e);
        worst_odd = std::max(worst_odd, odd.relative_residual);
        worst_even = std::max(worst_even, even.relative_residual);
        failures += (odd.relative_residual > 1e-14) + (even.relative_residual > 1e-14);
    }
    return {failures == 0, std::to_string(samples) + " odd + " + std::to_string(samples) +
                               " even tuples, worst odd " + num(worst_odd) + ", worst even " + num(worst_even)};
}

Outcome robustness_trend(const std::filesystem::path &golden_dir) {
    std::vector<double> odd;
    for (double d : kFigure3Detunings) {
        odd.push_back(odd_probability_mass(distribution_report(Port::k3, config(2.0, kPi / 2 + d, 0.1), -1).dist));
    }
    bool increasing = odd.front() < 1e-10;
    for (std::size_t i = 1; i < odd.size(); ++i) {
        increasing = increasing && odd[i] > odd[i - 1];
    }
    std::ifstream in(golden_dir / "fig3_odd_mass.csv");
    std::string line;
    std::getline(in, line);
    double golden_worst = 0;
    std::size_t rows = 0;
    while (std::getline(in, line) && rows < odd.size()) {
        std::vector<double> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(std::stod(cell));
        }
        golden_worst = std::max(golden_worst, std::abs(f.at(2) - odd[rows]));
        ++rows;
    }
    bool golden_ok = rows == odd.size() && golden_worst < 1e-11;
    std::string detail = "odd mass =";
    for (double x : odd) {
        detail += " " + num(x);
    }
    detail += ", golden rows " + std::to_string(rows) + " max |diff| " + num(golden_worst);
    return {increasing && golden_ok, detail};
}

Outcome kerr_statistics() {
    bool bitwise = true;
    int states = 0;
    for (double mag : {0.5, 2.0, std::sqrt(6.0), 4.0}) {
        for (double phase : {0.0, 1.0, -2.5}) {
            FockVector parent = coherent_state({mag, phase}, auto_cutoff(mag * mag));
            Distribution base = photon_number_distribution(DensityMatrix::pure(parent));
            for (double g : {0.01, 0.1, kPi / 4, 1.0, 7.3}) {
                for (auto conv : {KerrConvention::kNSquared, KerrConvention::kNSquaredMinusN}) {
                    FockVector kerr = apply_kerr(parent, {g, conv});
                    Distribution d = photon_number_distribution(DensityMatrix::pure(kerr));
                    for (int n = 0; n <= parent.cutoff(); ++n) {
                        bitwise = bitwise && kerr.magnitude(n) == parent.magnitude(n) &&
                                  d.probs[static_cast<std::size_t>(n)] == base.probs[static_cast<std::size_t>(n)];
                    }
                    ++states;
                }
            }
        }
    }
    return {bitwise, std::to_string(states) + " Kerr states compared bitwise with their parent pmf"};
}

Outcome hong_ou_mandel() {
    TwoModeState out = beam_splitter_transform(fock_state(1, 2), fock_state(1, 2), BeamSplitter::balanced());
    double p11 = std::norm(out.at(1, 1));
    return {p11 < 1e-14, "p(1,1) = " + num(p11)};
}

Outcome determinism() {
    auto root = std::filesystem::temp_directory_path() / "kerrsplit_acceptance_figures";
    std::filesystem::remove_all(root);
    std::vector<FigureSet> runs;
    for (int w : {1, 1, 4}) {
        FigureOptions o;
        o.dir = root / ("run" + std::to_string(runs.size()));
        o.workers = w;
        runs.push_back(write_figures(o));
    }
    int mismatches = 0;
    for (std::size_t i = 0; i < runs[0].files.size(); ++i) {
        std::string ref = slurp(runs[0].files[i]);
        for (std::size_t r = 1; r < runs.size(); ++r) {
            mismatches += runs[r].files.size() != runs[0].files.size() || slurp(runs[r].files[i]) != ref;
        }
    }
    std::filesystem::remove_all(root);
    return {mismatches == 0 && !runs[0].files.empty(),
            std::to_string(runs[0].files.size()) + " files x 3 runs (workers 1, 1, 4), " +
                std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main(int argc, char **argv) {
    std::filesystem::path golden = argc > 1 ? argv[1] : "tests/golden";
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"dark-port parity", dark_port_parity},
        {"cross-path equivalence", cross_path},
        {"energy conservation", energy_conservation},
        {"coherent limit", coherent_limit},
        {"visibility decay", visibility_decay},
        {"pair cancellation audit", cancellation_audit},
        {"detuning robustness trend", [&] { return robustness_trend(golden); }},
        {"Kerr photon statistics", kerr_statistics},
        {"Hong-Ou-Mandel", hong_ou_mandel},
        {"figure determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu (%s): %s [%.2f s]\n", o.passed ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.c_str(), secs);
        failed += !o.passed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
