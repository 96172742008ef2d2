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

#ifndef KERRSPLIT_CLOSED_FORM_HPP_
#define KERRSPLIT_CLOSED_FORM_HPP_

#include <cstdint>
#include <optional>
#include <random>

#include "kerrsplit/fock_core.hpp"
#include "kerrsplit/interferometer.hpp"
#include "kerrsplit/state_prep.hpp"

// Direct evaluation of the output photon-number probabilities as constrained
// five-fold sums over input (N, M, K, L) and output (m, n, k, l) Fock indices.
//
// With beta at port 0 carrying M (bra: K) photons, alpha at port 1 carrying
// N (bra: L) photons, and m, n of them (bra: k, l) leaving through port 2,
// every term of p(port 3 = y) is
//
//   e^{-|a|^2-|b|^2} b^M b*^K a^N a*^L e^{i g (M^2+N^2-K^2-L^2)}
//     (ir)^{M-m+n} (-ir)^{K-k+l} t^{m+N-n+k+L-l}
//     j! y! / (m! (M-m)! n! (N-n)! k! (K-k)! l! (L-l)!)
//
// with L = M+N-K, n = M+N-m-y, j = m+n, l = j-k. The port-2 sum uses the same
// term with n = x-m, j = M+N-x and x! in place of y!. Free indices are
// (N, M, K, m, k); tuples whose derived indices leave a factorial's domain
// vanish and are skipped. Each infinite sum is truncated at the cutoff, which
// bounds L as well, so the result equals the truncated matrix path.

namespace kerrsplit {

struct ClosedFormConfig {
    Complex alpha{};  ///< port-1 coherent amplitude
    Complex beta{};   ///< port-0 coherent amplitude
    double gamma3 = 0.0;
    BeamSplitter bs = BeamSplitter::balanced();
    int cutoff = 0;
    KerrConvention convention = KerrConvention::kNSquared;

    /// beta = beta_mag, alpha = beta_mag e^{-i theta}, cutoff resolved.
    static ClosedFormConfig from(const InterferometerConfig &cfg);
    void validate() const;
};

struct ClosedFormOptions {
    /// Re-evaluate at cutoff + 2 and flag changes above 1e-9.
    bool check_convergence = false;
    int workers = 1;
};

struct SumResult {
    double probability = 0.0;   ///< real part clamped to [0, 1]
    double real_part = 0.0;
    double imag_residue = 0.0;  ///< |Im| of the accumulated sum
    bool converged = true;
    double convergence_delta = 0.0;
};

SumResult p2_sum(int x, const ClosedFormConfig &cfg, const ClosedFormOptions &opts = {});
SumResult p3_sum(int y, const ClosedFormConfig &cfg, const ClosedFormOptions &opts = {});

inline double p2(int x, const ClosedFormConfig &cfg, const ClosedFormOptions &opts = {}) {
    return p2_sum(x, cfg, opts).probability;
}
inline double p3(int y, const ClosedFormConfig &cfg, const ClosedFormOptions &opts = {}) {
    return p3_sum(y, cfg, opts).probability;
}

/// Free summation indices; the rest follow from the output photon number.
struct SumIndexTuple {
    int N = 0;
    int M = 0;
    int K = 0;
    int m = 0;
    int k = 0;

    bool operator==(const SumIndexTuple &) const = default;
};

struct DerivedIndices {
    int L = 0;
    int n = 0;
    int l = 0;
    int j = 0;
};

/// Derived port-3 indices, or nullopt if any factorial argument is negative.
std::optional<DerivedIndices> derive_port3_indices(const SumIndexTuple &idx, int y);

/// One term of the dark-port sum for beta real, alpha = -i beta, t = r = 1/sqrt 2.
/// Throws std::invalid_argument for tuples outside the summation domain.
Complex symmetric_term(const SumIndexTuple &idx, int y, double beta_mag, double gamma3,
                       KerrConvention convention = KerrConvention::kNSquared);

/// Dark-port probability from the symmetric-case sum.
SumResult p3_symmetric_sum(int y, double beta_mag, double gamma3, int cutoff,
                           KerrConvention convention = KerrConvention::kNSquared,
                           const ClosedFormOptions &opts = {});

inline double p3_symmetric(int y, double beta_mag, double gamma3, int cutoff,
                           KerrConvention convention = KerrConvention::kNSquared) {
    return p3_symmetric_sum(y, beta_mag, gamma3, cutoff, convention).probability;
}

/// Index exchanges that pair up terms of the symmetric sum.
enum class Exchange {
    kKL,  ///< K <-> L together with k <-> l
    kMN,  ///< M <-> N together with m <-> n
};

SumIndexTuple exchange_partner(const SumIndexTuple &idx, int y, Exchange which);

struct CancellationVerdict {
    SumIndexTuple partner;
    Complex term{};
    Complex partner_term{};
    Complex pair_sum{};
    bool odd = false;
    bool self_paired = false;
    /// odd y: |term + partner| / max(|term|, |partner|)
    /// even y: |pair_sum - 2 term| / |2 term|
    double relative_residual = 0.0;
    bool passed = false;
};

inline constexpr double kCancellationTolerance = 1e-14;

CancellationVerdict cancellation_pair_check(const SumIndexTuple &idx, int y, double beta_mag, double gamma3,
                                            Exchange which = Exchange::kKL);

/// Draws, by rejection, a tuple valid for output y with every
/// input index, including the partner's, at most max_index.
SumIndexTuple sample_symmetric_tuple(std::mt19937_64 &rng, int y, int max_index);

}  // namespace kerrsplit

#endif  // KERRSPLIT_CLOSED_FORM_HPP_
