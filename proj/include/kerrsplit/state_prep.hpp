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

#ifndef KERRSPLIT_STATE_PREP_HPP_
#define KERRSPLIT_STATE_PREP_HPP_

#include "kerrsplit/fock_core.hpp"

namespace kerrsplit {

/// Which photon-number polynomial the Kerr phase multiplies.
enum class KerrConvention {
    kNSquared,          ///< phase gamma3 * n^2
    kNSquaredMinusN,    ///< phase gamma3 * (n^2 - n)
};

struct KerrParams {
    double gamma3 = 0.0;
    KerrConvention convention = KerrConvention::kNSquared;
};

/// Coherent amplitude magnitude * e^{i phase}.
struct CoherentParams {
    double magnitude = 0.0;
    double phase = 0.0;
};

/// Kerr phase polynomial for photon number n under the given convention.
inline double kerr_exponent(long long n, KerrConvention convention) {
    long long p = n * n;
    if (convention == KerrConvention::kNSquaredMinusN) {
        p -= n;
    }
    return static_cast<double>(p);
}

FockVector coherent_state(const CoherentParams &params, int cutoff);

/// Multiplies amps[n] by e^{i gamma3 n^2} (or e^{i gamma3 (n^2 - n)}).
FockVector apply_kerr(const FockVector &state, const KerrParams &params);

FockVector fock_state(int n, int cutoff);

}  // namespace kerrsplit

#endif  // KERRSPLIT_STATE_PREP_HPP_
