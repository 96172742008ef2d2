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

#include "kerrsplit/state_prep.hpp"

#include <cmath>
#include <string>

namespace kerrsplit {

FockVector coherent_state(const CoherentParams &params, int cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("coherent_state: cutoff must be >= 0");
    }
    if (!(params.magnitude >= 0.0) || !std::isfinite(params.magnitude) || !std::isfinite(params.phase)) {
        throw std::invalid_argument("coherent_state: magnitude must be finite and >= 0");
    }
    if (cutoff > kDefaultFactorialBound) {
        throw ResourceLimitError("coherent_state: cutoff " + std::to_string(cutoff) + " too large");
    }
    const FactorialTable &lf = shared_factorials();
    const double mean = params.magnitude * params.magnitude;
    std::vector<double> mags(static_cast<std::size_t>(cutoff) + 1, 0.0);
    std::vector<double> phases(mags.size(), 0.0);
    if (params.magnitude == 0.0) {
        mags[0] = 1.0;
        return FockVector::from_polar(std::move(mags), std::move(phases));
    }
    const double log_mag = std::log(params.magnitude);
    const double phase = wrap_phase(params.phase);
    for (int n = 0; n <= cutoff; ++n) {
        mags[static_cast<std::size_t>(n)] = std::exp(-0.5 * mean + n * log_mag - 0.5 * lf[n]);
        phases[static_cast<std::size_t>(n)] = static_cast<double>(n) * phase;
    }
    return FockVector::from_polar(std::move(mags), std::move(phases));
}

FockVector apply_kerr(const FockVector &state, const KerrParams &params) {
    if (!std::isfinite(params.gamma3)) {
        throw std::invalid_argument("apply_kerr: gamma3 must be finite");
    }
    if (params.gamma3 == 0.0) {
        return state;
    }
    return state.with_phase_shift(
        [&](int n) { return wrap_phase(params.gamma3 * kerr_exponent(n, params.convention)); });
}

FockVector fock_state(int n, int cutoff) {
    if (cutoff < 0 || n < 0 || n > cutoff) {
        throw std::invalid_argument("fock_state: need 0 <= n <= cutoff (n=" + std::to_string(n) +
                                    ", cutoff=" + std::to_string(cutoff) + ")");
    }
    const std::size_t dim = static_cast<std::size_t>(cutoff) + 1;
    std::vector<double> mags(dim, 0.0);
    mags[static_cast<std::size_t>(n)] = 1.0;
    return FockVector::from_polar(std::move(mags), std::vector<double>(dim, 0.0));
}

}  // namespace kerrsplit
