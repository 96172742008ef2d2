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

#ifndef KERRSPLIT_EXPERIMENTS_HPP_
#define KERRSPLIT_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kerrsplit/closed_form.hpp"
#include "kerrsplit/interferometer.hpp"
#include "kerrsplit/output.hpp"

namespace kerrsplit {

enum class SweepVariable { kTheta, kGamma3 };
enum class ComputePath { kMatrix, kClosedForm, kBoth };

std::string_view path_name(ComputePath path);

/// Largest allowed |matrix - closed form| before a row counts as a failure.
inline constexpr double kPathAgreementTol = 1e-6;
/// Allowed drift of mean_n2 + mean_n3 from |alpha|^2 + |beta|^2.
inline constexpr double kConservationTol = 1e-8;
inline constexpr int kVisibilityThetaPoints = 128;
inline constexpr int kFringeThetaPoints = 64;

struct SweepSpec {
    SweepVariable variable = SweepVariable::kTheta;
    double start = 0.0;
    double stop = kTwoPi;
    int steps = kFringeThetaPoints;
    InterferometerConfig fixed;
    ComputePath path = ComputePath::kMatrix;
    int workers = 1;

    void validate() const;
    /// `steps` evenly spaced values, both ends included.
    std::vector<double> grid() const;
};

struct SweepRow {
    double value = 0.0;
    double mean_n2 = 0.0;
    double mean_n3 = 0.0;
    double odd_mass_3 = 0.0;
    double total_mean = 0.0;
    double tail_bound = 0.0;
    /// Max |matrix - closed| over the row's quantities (BOTH path only).
    double path_disagreement = 0.0;
    bool conserved = true;
    bool paths_agree = true;
};

/// Rows in grid order; each computed independently.
std::vector<SweepRow> sweep(const SweepSpec &spec);

/// Fringe visibility (max - min) / (max + min) of mean_n3 over a periodic
/// grid theta_j = 2 pi j / theta_points, matrix path.
double visibility(double gamma3, const InterferometerConfig &fixed, int theta_points = kVisibilityThetaPoints,
                  int workers = 1);

struct DistributionReport {
    Distribution dist;
    ComputePath path = ComputePath::kMatrix;
    int cutoff = 0;
    double path_disagreement = 0.0;
};

/// Photon-number pmf of one output port up to max_n (negative: full support).
DistributionReport distribution_report(Port port, const InterferometerConfig &cfg, int max_n,
                                       ComputePath path = ComputePath::kMatrix, int workers = 1);

enum class VerifyLevel { kQuick, kFull };

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    VerifyLevel level = VerifyLevel::kQuick;
    std::vector<CheckResult> checks;

    bool passed() const;
    /// CSV: check,residual,tolerance,passed. JSON adds level and overall verdict.
    std::string render(OutputFormat format) const;
};

VerifyReport verify(VerifyLevel level, std::uint64_t seed = 1, int workers = 1);

struct FigureOptions {
    std::filesystem::path dir;
    OutputFormat format = OutputFormat::kCsv;
    ComputePath path = ComputePath::kMatrix;
    KerrConvention convention = KerrConvention::kNSquared;
    int workers = 1;
};

inline const std::vector<double> kFigure2Gammas{0.01, 0.1, 0.3, 0.6, 1.0, 2.0};
inline const std::vector<double> kFigure3Detunings{0.0, 0.05, 0.1, 0.2, 0.4};
inline const std::vector<double> kVisibilityGammas{0.0, 0.05, 0.1, 0.2, 0.5, 1.0};

struct FigureSet {
    std::vector<std::filesystem::path> files;
    /// Rows violating conservation or path agreement.
    int failures = 0;
};

/// Writes the fringe, visibility, even-Fock and detuning data sets into
/// opts.dir (created if missing). Output bytes depend only on the options,
/// never on opts.workers.
FigureSet write_figures(const FigureOptions &opts);

/// Tables behind the CLI and the figure set.
Table sweep_table(const SweepSpec &spec, const std::vector<SweepRow> &rows);
Table distribution_table(const DistributionReport &report, Port port, const InterferometerConfig &cfg);
nlohmann::json config_metadata(const InterferometerConfig &cfg, ComputePath path);

}  // namespace kerrsplit

#endif  // KERRSPLIT_EXPERIMENTS_HPP_
