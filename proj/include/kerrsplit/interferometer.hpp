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

#ifndef KERRSPLIT_INTERFEROMETER_HPP_
#define KERRSPLIT_INTERFEROMETER_HPP_

#include <numbers>
#include <span>
#include <vector>

#include "kerrsplit/fock_core.hpp"
#include "kerrsplit/kernels.hpp"
#include "kerrsplit/state_prep.hpp"

namespace kerrsplit {

/// Lossless two-port splitter with real coefficients, t^2 + r^2 = 1.
///
/// Port-0 photons map to t a2^dag + i r a3^dag, port-1 photons to
/// t a3^dag + i r a2^dag: reflection picks up a factor i.
class BeamSplitter {
 public:
    BeamSplitter(double t, double r);

    /// r = sqrt(1 - t^2).
    static BeamSplitter from_transmission(double t);
    static BeamSplitter balanced();

    double t() const { return t_; }
    double r() const { return r_; }

 private:
    double t_;
    double r_;
};

enum class Port { k2 = 2, k3 = 3 };

enum class SupportKind { kPhotonNumber, kPhase };

/// Probability mass function over photon number or a uniform phase grid.
struct Distribution {
    SupportKind kind = SupportKind::kPhotonNumber;
    std::vector<double> support;
    std::vector<double> probs;
    /// Upper bound on probability mass missing because of truncation.
    double tail_bound = 0.0;

    double total() const;
};

/// The splitter restricted to each total-photon-number sector J.
///
/// Block J is a (J+1) x (J+1) matrix, row = photons leaving port 2,
/// column = photons entering port 0. Entries come from the binomial
/// expansion of both creation-operator images, evaluated in long double
/// log-magnitude form and rounded once.
class BeamSplitterUnitary {
 public:
    BeamSplitterUnitary(const BeamSplitter &bs, int max_total);

    const BeamSplitter &splitter() const { return bs_; }
    int max_total() const { return static_cast<int>(offsets_.size()) - 1; }
    std::span<const Complex> block(int total) const;
    Complex element(int total, int n2, int m0) const;

 private:
    BeamSplitter bs_;
    std::vector<std::size_t> offsets_;
    std::vector<Complex> data_;
};

/// Joint output state for inputs |in0>_0 |in1>_1. Both inputs must share a
/// cutoff C; the output cutoff is 2C so no photon number is lost.
TwoModeState beam_splitter_transform(const FockVector &in0, const FockVector &in1, const BeamSplitter &bs);

/// Same, with a precomputed (and reusable) unitary. Output cells are
/// parallelized by photon-number sector; each cell has a fixed summation order.
TwoModeState beam_splitter_transform(const FockVector &in0, const FockVector &in1,
                                     const BeamSplitterUnitary &unitary,
                                     const kernels::KernelTable &k = kernels::best(), int workers = 1);

DensityMatrix partial_trace(const TwoModeState &joint, Port keep,
                            const kernels::KernelTable &k = kernels::best());

/// Diagonal of rho. Entries below -1e-12 raise NumericalError; smaller
/// negative rounding is clamped to zero.
Distribution photon_number_distribution(const DensityMatrix &rho);

double mean_photon_number(const Distribution &dist);
double odd_probability_mass(const Distribution &dist);

/// <phi|rho|phi> with |phi> = sum_k e^{ik phi}|k> on phi_j = 2 pi j / num_points,
/// normalized to sum to one over the grid.
Distribution phase_distribution(const DensityMatrix &rho, int num_points,
                                const kernels::KernelTable &k = kernels::best());

/// Two equal-magnitude Kerr states: beta_mag at port 0, beta_mag e^{-i theta} at port 1.
struct InterferometerConfig {
    double beta_mag = 2.0;
    double theta = std::numbers::pi / 2;
    double gamma3 = 0.0;
    BeamSplitter bs = BeamSplitter::balanced();
    /// 0 selects the Poisson-tail policy.
    int cutoff = 0;
    KerrConvention convention = KerrConvention::kNSquared;

    int resolved_cutoff() const;
    void validate() const;
};

struct InputPair {
    FockVector port0;
    FockVector port1;
};

InputPair prepare_inputs(const InterferometerConfig &cfg);

struct OutputStatistics {
    TwoModeState joint;
    DensityMatrix rho2;
    DensityMatrix rho3;
    Distribution p2;
    Distribution p3;
};

/// Full matrix path. `unitary` may be null, or a cached unitary for the same
/// splitter covering at least 2 * resolved_cutoff().
OutputStatistics simulate(const InterferometerConfig &cfg, const BeamSplitterUnitary *unitary = nullptr,
                          const kernels::KernelTable &k = kernels::best());

}  // namespace kerrsplit

#endif  // KERRSPLIT_INTERFEROMETER_HPP_
