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

#include "kerrsplit/fock_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrsplit {

double wrap_phase(double phase) {
    double r = std::fmod(phase, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    // fmod can land exactly on 2pi after the shift for tiny negative inputs.
    if (r >= kTwoPi) {
        r = 0;
    }
    return r;
}

double FactorialTable::log_fact(int n) const {
    if (n < 0 || n > max_n()) {
        throw std::out_of_range("log_fact: n=" + std::to_string(n) + " outside table [0, " +
                                std::to_string(max_n()) + "]");
    }
    return log_fact_[static_cast<std::size_t>(n)];
}

FactorialTable make_factorial_table(int max_n, int bound) {
    if (max_n < 0) {
        throw std::invalid_argument("make_factorial_table: max_n must be >= 0");
    }
    if (max_n > bound) {
        throw ResourceLimitError("make_factorial_table: max_n=" + std::to_string(max_n) +
                                 " exceeds bound " + std::to_string(bound));
    }
    FactorialTable table;
    table.log_fact_.resize(static_cast<std::size_t>(max_n) + 1);
    table.log_fact_[0] = 0.0;
    // Below 171 the running product stays finite in long double and gives a
    // log accurate to the last bit of a double; lgamma takes over above it.
    long double product = 1.0L;
    for (int n = 1; n <= max_n; ++n) {
        if (n <= 170) {
            product *= static_cast<long double>(n);
            table.log_fact_[static_cast<std::size_t>(n)] = static_cast<double>(std::log(product));
        } else {
            table.log_fact_[static_cast<std::size_t>(n)] = std::lgamma(static_cast<double>(n) + 1.0);
        }
    }
    return table;
}

const FactorialTable &shared_factorials() {
    static const FactorialTable table = make_factorial_table(kDefaultFactorialBound);
    return table;
}

FockVector::FockVector(int cutoff) {
    if (cutoff < 0) {
        throw std::invalid_argument("FockVector: cutoff must be >= 0");
    }
    magnitudes_.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
    phases_.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
}

FockVector FockVector::from_amplitudes(std::span<const Complex> amps) {
    if (amps.empty()) {
        throw std::invalid_argument("FockVector: need at least one amplitude");
    }
    FockVector out(static_cast<int>(amps.size()) - 1);
    for (std::size_t n = 0; n < amps.size(); ++n) {
        if (!std::isfinite(amps[n].real()) || !std::isfinite(amps[n].imag())) {
            throw std::invalid_argument("FockVector: non-finite amplitude at n=" + std::to_string(n));
        }
        out.magnitudes_[n] = std::abs(amps[n]);
        out.phases_[n] = out.magnitudes_[n] == 0.0 ? 0.0 : wrap_phase(std::arg(amps[n]));
    }
    return out;
}

FockVector FockVector::from_polar(std::vector<double> magnitudes, std::vector<double> phases) {
    if (magnitudes.empty() || magnitudes.size() != phases.size()) {
        throw std::invalid_argument("FockVector: magnitude/phase arrays must be non-empty and equal length");
    }
    for (std::size_t n = 0; n < magnitudes.size(); ++n) {
        if (!(magnitudes[n] >= 0.0) || !std::isfinite(magnitudes[n]) || !std::isfinite(phases[n])) {
            throw std::invalid_argument("FockVector: invalid polar entry at n=" + std::to_string(n));
        }
        phases[n] = wrap_phase(phases[n]);
    }
    FockVector out(0);
    out.magnitudes_ = std::move(magnitudes);
    out.phases_ = std::move(phases);
    return out;
}

Complex FockVector::amplitude(int n) const {
    return std::polar(magnitude(n), phase(n));
}

std::vector<Complex> FockVector::amplitudes() const {
    std::vector<Complex> out(size());
    for (std::size_t n = 0; n < size(); ++n) {
        out[n] = std::polar(magnitudes_[n], phases_[n]);
    }
    return out;
}

TwoModeState::TwoModeState(int cutoff, double tail) : cutoff_(cutoff), tail_(tail) {
    if (cutoff < 0) {
        throw std::invalid_argument("TwoModeState: cutoff must be >= 0");
    }
    amps_.assign(dim() * dim(), Complex{});
}

TwoModeState TwoModeState::product(const FockVector &port2, const FockVector &port3) {
    int cutoff = std::max(port2.cutoff(), port3.cutoff());
    double tail = std::max(0.0, 1.0 - norm_sq(port2) * norm_sq(port3));
    TwoModeState out(cutoff, tail);
    for (int a = 0; a <= port2.cutoff(); ++a) {
        Complex u = port2.amplitude(a);
        for (int b = 0; b <= port3.cutoff(); ++b) {
            out.at(a, b) = u * port3.amplitude(b);
        }
    }
    return out;
}

DensityMatrix::DensityMatrix(int cutoff, double tail) : cutoff_(cutoff), tail_(tail) {
    if (cutoff < 0) {
        throw std::invalid_argument("DensityMatrix: cutoff must be >= 0");
    }
    elems_.assign(dim() * dim(), Complex{});
}

DensityMatrix DensityMatrix::pure(const FockVector &state) {
    DensityMatrix out(state.cutoff(), std::max(0.0, 1.0 - norm_sq(state)));
    // Built from the polar form so the diagonal depends on magnitudes only.
    auto mags = state.magnitudes();
    for (std::size_t a = 0; a < mags.size(); ++a) {
        for (std::size_t b = 0; b < mags.size(); ++b) {
            const double phase = state.phase(static_cast<int>(a)) - state.phase(static_cast<int>(b));
            out.elems_[a * out.dim() + b] = std::polar(mags[a] * mags[b], phase);
        }
        out.elems_[a * out.dim() + a] = Complex(mags[a] * mags[a], 0.0);
    }
    return out;
}

Complex DensityMatrix::trace() const {
    CompensatedComplexSum acc;
    for (int a = 0; a <= cutoff_; ++a) {
        acc.add(at(a, a));
    }
    return acc.value();
}

void DensityMatrix::check_invariants() const {
    constexpr double kHermitianTol = 1e-12;
    constexpr double kDiagFloor = -1e-12;
    for (int a = 0; a <= cutoff_; ++a) {
        for (int b = a; b <= cutoff_; ++b) {
            Complex lhs = at(a, b);
            Complex rhs = std::conj(at(b, a));
            if (!std::isfinite(lhs.real()) || !std::isfinite(lhs.imag())) {
                throw NumericalError("DensityMatrix: non-finite element");
            }
            if (std::abs(lhs - rhs) > kHermitianTol) {
                throw NumericalError("DensityMatrix: not Hermitian at (" + std::to_string(a) + "," +
                                     std::to_string(b) + ")");
            }
        }
        if (at(a, a).real() < kDiagFloor) {
            throw NumericalError("DensityMatrix: negative diagonal at " + std::to_string(a));
        }
    }
    Complex tr = trace();
    if (std::abs(tr.imag()) > kHermitianTol || tr.real() > 1.0 + kNormEps ||
        tr.real() < 1.0 - tail_ - kNormEps) {
        throw NumericalError("DensityMatrix: trace " + std::to_string(tr.real()) +
                             " outside [1 - tail, 1 + eps]");
    }
}

double norm_sq(const FockVector &state) {
    CompensatedSum<double> acc;
    for (double m : state.magnitudes()) {
        acc.add(m * m);
    }
    return acc.value();
}

double norm_sq(const TwoModeState &state) {
    CompensatedSum<double> acc;
    for (const Complex &z : state.amplitudes()) {
        acc.add(std::norm(z));
    }
    return acc.value();
}

double poisson_tail(double mean, int cutoff) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_tail: mean must be finite and >= 0");
    }
    if (cutoff < 0) {
        return 1.0;
    }
    if (mean == 0.0) {
        return 0.0;
    }
    const double log_mean = std::log(mean);
    CompensatedSum<double> acc;
    // Terms past the mode decay at least geometrically once n > 2*mean.
    for (int n = cutoff + 1;; ++n) {
        double log_term = -mean + n * log_mean - std::lgamma(static_cast<double>(n) + 1.0);
        double term = std::exp(log_term);
        acc.add(term);
        if (n > 2.0 * mean + 1.0 && term < 1e-30 * acc.value()) {
            break;
        }
        if (n > cutoff + 100000) {
            break;
        }
    }
    return acc.value();
}

int auto_cutoff(double mean, double target) {
    if (!(target > 0.0)) {
        throw std::invalid_argument("auto_cutoff: target must be > 0");
    }
    int cutoff = 0;
    while (poisson_tail(mean, cutoff) >= target) {
        ++cutoff;
        if (cutoff > kMaxCutoff) {
            throw ResourceLimitError("auto_cutoff: mean photon number " + std::to_string(mean) +
                                     " needs a cutoff above " + std::to_string(kMaxCutoff));
        }
    }
    return cutoff;
}

}  // namespace kerrsplit
