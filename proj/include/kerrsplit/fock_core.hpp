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

#ifndef KERRSPLIT_FOCK_CORE_HPP_
#define KERRSPLIT_FOCK_CORE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kerrsplit {

using Complex = std::complex<double>;

/// Global slack for normalization checks on truncated states.
inline constexpr double kNormEps = 1e-12;

/// Default tail target used to pick a Fock cutoff automatically.
inline constexpr double kDefaultTailTarget = 1e-12;

/// Largest factorial table `make_factorial_table` will build.
inline constexpr int kDefaultFactorialBound = 4096;

/// Largest single-mode cutoff accepted by the simulation paths.
inline constexpr int kMaxCutoff = 128;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A request would exceed a configured memory/time bound.
class ResourceLimitError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A computed quantity violated a numerical invariant by more than rounding.
class NumericalError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Reduces an angle to [0, 2pi).
double wrap_phase(double phase);

/// Natural-log factorials 0..max_n.
class FactorialTable {
 public:
    FactorialTable() = default;

    int max_n() const { return static_cast<int>(log_fact_.size()) - 1; }
    /// Unchecked lookup; callers keep n within [0, max_n()].
    double operator[](int n) const { return log_fact_[static_cast<std::size_t>(n)]; }
    double log_fact(int n) const;
    std::span<const double> values() const { return log_fact_; }

 private:
    friend FactorialTable make_factorial_table(int max_n, int bound);
    std::vector<double> log_fact_;
};

/// Builds log(n!) for n in [0, max_n]. Throws ResourceLimitError above `bound`.
FactorialTable make_factorial_table(int max_n, int bound = kDefaultFactorialBound);

/// Process-wide read-only table covering [0, kDefaultFactorialBound].
const FactorialTable& shared_factorials();

/// Neumaier-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
    void add(T value) {
        T t = sum_ + value;
        if (abs_(sum_) >= abs_(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(T value) {
        add(value);
        return *this;
    }
    void merge(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
    }
    T value() const { return sum_ + comp_; }

 private:
    static T abs_(T v) { return v < T(0) ? -v : v; }
    T sum_ = T(0);
    T comp_ = T(0);
};

/// Compensated accumulation of real and imaginary parts independently.
class CompensatedComplexSum {
 public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void merge(const CompensatedComplexSum& other) {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }
    Complex value() const { return {re_.value(), im_.value()}; }

 private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

/// Truncated single-mode pure state over photon numbers 0..cutoff.
///
/// Amplitudes are held in polar form. Pure phase operations (Kerr evolution,
/// coherent phase rotation) only touch the phase array, so photon-number
/// statistics survive them bit for bit.
class FockVector {
 public:
    explicit FockVector(int cutoff);

    static FockVector from_amplitudes(std::span<const Complex> amps);
    static FockVector from_polar(std::vector<double> magnitudes, std::vector<double> phases);

    int cutoff() const { return static_cast<int>(magnitudes_.size()) - 1; }
    std::size_t size() const { return magnitudes_.size(); }

    Complex amplitude(int n) const;
    double magnitude(int n) const { return magnitudes_.at(static_cast<std::size_t>(n)); }
    double phase(int n) const { return phases_.at(static_cast<std::size_t>(n)); }
    double probability(int n) const {
        double m = magnitude(n);
        return m * m;
    }
    std::span<const double> magnitudes() const { return magnitudes_; }
    std::span<const double> phases() const { return phases_; }
    std::vector<Complex> amplitudes() const;

    /// Returns a copy with phase[n] += shift(n) (wrapped).
    template <typename F>
    FockVector with_phase_shift(F &&shift) const {
        FockVector out = *this;
        for (std::size_t n = 0; n < out.phases_.size(); ++n) {
            out.phases_[n] = wrap_phase(out.phases_[n] + shift(static_cast<int>(n)));
        }
        return out;
    }

 private:
    std::vector<double> magnitudes_;
    std::vector<double> phases_;
};

/// Joint pure state of output ports 2 and 3, indexed (n2, n3) row-major.
class TwoModeState {
 public:
    explicit TwoModeState(int cutoff, double tail = 0.0);

    int cutoff() const { return cutoff_; }
    std::size_t dim() const { return static_cast<std::size_t>(cutoff_) + 1; }
    /// Probability mass lost to truncation of the inputs.
    double tail() const { return tail_; }

    Complex &at(int n2, int n3) { return amps_[index(n2, n3)]; }
    const Complex &at(int n2, int n3) const { return amps_[index(n2, n3)]; }
    std::span<Complex> row(int n2) { return {amps_.data() + index(n2, 0), dim()}; }
    std::span<const Complex> row(int n2) const { return {amps_.data() + index(n2, 0), dim()}; }
    std::span<const Complex> amplitudes() const { return amps_; }

    static TwoModeState product(const FockVector &port2, const FockVector &port3);

 private:
    std::size_t index(int n2, int n3) const {
        return static_cast<std::size_t>(n2) * dim() + static_cast<std::size_t>(n3);
    }
    int cutoff_;
    double tail_;
    std::vector<Complex> amps_;
};

/// Truncated single-mode density operator, row-major.
class DensityMatrix {
 public:
    explicit DensityMatrix(int cutoff, double tail = 0.0);

    static DensityMatrix pure(const FockVector &state);

    int cutoff() const { return cutoff_; }
    std::size_t dim() const { return static_cast<std::size_t>(cutoff_) + 1; }
    double tail() const { return tail_; }

    Complex &at(int a, int b) { return elems_[index(a, b)]; }
    const Complex &at(int a, int b) const { return elems_[index(a, b)]; }
    std::span<const Complex> row(int a) const { return {elems_.data() + index(a, 0), dim()}; }
    std::span<const Complex> elements() const { return elems_; }

    Complex trace() const;

    /// Throws NumericalError describing the first violated invariant.
    void check_invariants() const;

 private:
    std::size_t index(int a, int b) const {
        return static_cast<std::size_t>(a) * dim() + static_cast<std::size_t>(b);
    }
    int cutoff_;
    double tail_;
    std::vector<Complex> elems_;
};

double norm_sq(const FockVector &state);
double norm_sq(const TwoModeState &state);

/// e^{-mean} * sum_{n > cutoff} mean^n / n!, summed directly over the tail.
double poisson_tail(double mean, int cutoff);

/// Smallest cutoff whose Poisson tail for `mean` is below `target`.
int auto_cutoff(double mean, double target = kDefaultTailTarget);

}  // namespace kerrsplit

#endif  // KERRSPLIT_FOCK_CORE_HPP_
