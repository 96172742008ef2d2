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

#include "kerrsplit/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "kerrsplit/parallel.hpp"

namespace kerrsplit {

BeamSplitter::BeamSplitter(double t, double r) : t_(t), r_(r) {
    if (!std::isfinite(t) || !std::isfinite(r) || t < 0.0 || r < 0.0) {
        throw std::invalid_argument("BeamSplitter: t and r must be finite and >= 0");
    }
    if (std::abs(t * t + r * r - 1.0) >= 1e-12) {
        throw std::invalid_argument("BeamSplitter: t^2 + r^2 must equal 1 (got " +
                                    std::to_string(t * t + r * r) + ")");
    }
}

BeamSplitter BeamSplitter::from_transmission(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("BeamSplitter: transmission must lie in [0, 1]");
    }
    return BeamSplitter(t, std::sqrt(std::max(0.0, 1.0 - t * t)));
}

BeamSplitter BeamSplitter::balanced() {
    return BeamSplitter(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
}

double Distribution::total() const {
    CompensatedSum<double> acc;
    for (double p : probs) {
        acc.add(p);
    }
    return acc.value();
}

namespace {

// Multiplies a real value by i^q.
Complex times_i_power(double v, int q) {
    switch (q & 3) {
        case 0:
            return {v, 0.0};
        case 1:
            return {0.0, v};
        case 2:
            return {-v, 0.0};
        default:
            return {0.0, -v};
    }
}

}  // namespace

BeamSplitterUnitary::BeamSplitterUnitary(const BeamSplitter &bs, int max_total) : bs_(bs) {
    if (max_total < 0) {
        throw std::invalid_argument("BeamSplitterUnitary: max_total must be >= 0");
    }
    if (max_total > 2 * kMaxCutoff) {
        throw ResourceLimitError("BeamSplitterUnitary: max_total " + std::to_string(max_total) +
                                 " exceeds " + std::to_string(2 * kMaxCutoff));
    }
    offsets_.resize(static_cast<std::size_t>(max_total) + 1);
    std::size_t total_size = 0;
    for (int j = 0; j <= max_total; ++j) {
        offsets_[static_cast<std::size_t>(j)] = total_size;
        total_size += static_cast<std::size_t>(j + 1) * static_cast<std::size_t>(j + 1);
    }
    data_.assign(total_size, Complex{});

    // In sector J the splitter is exp(i phi H) with t = cos phi, r = sin phi and
    // H = a2^dag a3 + a3^dag a2, a real tridiagonal matrix with spectrum -J, -J+2, ..., J.
    // Diagonalizing H keeps every block orthogonal to rounding, where the explicit
    // alternating binomial sum loses digits as J grows.
    const double phi = std::atan2(bs.r(), bs.t());
    for (int j = 0; j <= max_total; ++j) {
        Complex *blk = data_.data() + offsets_[static_cast<std::size_t>(j)];
        const std::size_t dim = static_cast<std::size_t>(j) + 1;
        auto at = [&](int n2, int m0) -> Complex & {
            return blk[static_cast<std::size_t>(n2) * dim + static_cast<std::size_t>(m0)];
        };
        if (bs.r() == 0.0) {
            for (int n = 0; n <= j; ++n) {
                at(n, n) = 1.0;
            }
            continue;
        }
        if (bs.t() == 0.0) {
            // Every photon crosses and picks up a factor i.
            for (int m0 = 0; m0 <= j; ++m0) {
                at(j - m0, m0) = times_i_power(1.0, j);
            }
            continue;
        }
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        Eigen::VectorXd sub(static_cast<Eigen::Index>(j));
        for (int n2 = 0; n2 < j; ++n2) {
            sub[n2] = std::sqrt(static_cast<double>(n2 + 1) * static_cast<double>(j - n2));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (es.info() != Eigen::Success) {
            throw NumericalError("BeamSplitterUnitary: eigensolver failed in sector " + std::to_string(j));
        }
        const Eigen::MatrixXd &v = es.eigenvectors();
        Eigen::VectorXd c(static_cast<Eigen::Index>(dim));
        Eigen::VectorXd s(static_cast<Eigen::Index>(dim));
        for (int k = 0; k <= j; ++k) {
            // Eigenvalues are ascending; use their exact integer values.
            const double lambda = static_cast<double>(2 * k - j);
            c[k] = std::cos(phi * lambda);
            s[k] = std::sin(phi * lambda);
        }
        const Eigen::MatrixXd re = v * c.asDiagonal() * v.transpose();
        const Eigen::MatrixXd im = v * s.asDiagonal() * v.transpose();
        // H flips the parity of n2 - m0, so each element is purely real or purely imaginary.
        for (int n2 = 0; n2 <= j; ++n2) {
            for (int m0 = 0; m0 <= j; ++m0) {
                at(n2, m0) = ((n2 + m0) & 1) ? Complex(0.0, im(n2, m0)) : Complex(re(n2, m0), 0.0);
            }
        }
    }
}

std::span<const Complex> BeamSplitterUnitary::block(int total) const {
    if (total < 0 || total > max_total()) {
        throw std::out_of_range("BeamSplitterUnitary: sector " + std::to_string(total) + " not built");
    }
    const std::size_t dim = static_cast<std::size_t>(total) + 1;
    return {data_.data() + offsets_[static_cast<std::size_t>(total)], dim * dim};
}

Complex BeamSplitterUnitary::element(int total, int n2, int m0) const {
    auto blk = block(total);
    if (n2 < 0 || n2 > total || m0 < 0 || m0 > total) {
        throw std::out_of_range("BeamSplitterUnitary: index outside sector");
    }
    return blk[static_cast<std::size_t>(n2) * (static_cast<std::size_t>(total) + 1) +
               static_cast<std::size_t>(m0)];
}

TwoModeState beam_splitter_transform(const FockVector &in0, const FockVector &in1, const BeamSplitter &bs) {
    if (in0.cutoff() != in1.cutoff()) {
        throw std::invalid_argument("beam_splitter_transform: input cutoffs differ");
    }
    BeamSplitterUnitary unitary(bs, 2 * in0.cutoff());
    return beam_splitter_transform(in0, in1, unitary);
}

TwoModeState beam_splitter_transform(const FockVector &in0, const FockVector &in1,
                                     const BeamSplitterUnitary &unitary, const kernels::KernelTable &k,
                                     int workers) {
    if (in0.cutoff() != in1.cutoff()) {
        throw std::invalid_argument("beam_splitter_transform: input cutoffs differ (" +
                                    std::to_string(in0.cutoff()) + " vs " + std::to_string(in1.cutoff()) +
                                    ")");
    }
    const int c = in0.cutoff();
    if (unitary.max_total() < 2 * c) {
        throw std::invalid_argument("beam_splitter_transform: unitary covers too few photons");
    }
    const double tail = std::max(0.0, 1.0 - norm_sq(in0) * norm_sq(in1));
    TwoModeState out(2 * c, tail);

    parallel_for(static_cast<std::size_t>(2 * c + 1), workers, [&](std::size_t sector) {
        const int j = static_cast<int>(sector);
        const int lo = std::max(0, j - c);
        const int hi = std::min(j, c);
        const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
        std::vector<Complex> x(width);
        for (int m0 = lo; m0 <= hi; ++m0) {
            const int m1 = j - m0;
            x[static_cast<std::size_t>(m0 - lo)] =
                std::polar(in0.magnitude(m0) * in1.magnitude(m1), in0.phase(m0) + in1.phase(m1));
        }
        auto blk = unitary.block(j);
        const std::size_t dim = static_cast<std::size_t>(j) + 1;
        for (int n2 = 0; n2 <= j; ++n2) {
            const Complex *row = blk.data() + static_cast<std::size_t>(n2) * dim + static_cast<std::size_t>(lo);
            out.at(n2, j - n2) = k.dot(row, x.data(), width);
        }
    });
    return out;
}

DensityMatrix partial_trace(const TwoModeState &joint, Port keep, const kernels::KernelTable &k) {
    const int c = joint.cutoff();
    const std::size_t dim = joint.dim();
    // Rows of `kept` are indexed by the retained port's photon number.
    std::vector<Complex> kept(dim * dim);
    for (int a = 0; a <= c; ++a) {
        for (int b = 0; b <= c; ++b) {
            kept[static_cast<std::size_t>(a) * dim + static_cast<std::size_t>(b)] =
                keep == Port::k2 ? joint.at(a, b) : joint.at(b, a);
        }
    }
    DensityMatrix rho(c, joint.tail());
    for (int a = 0; a <= c; ++a) {
        const Complex *ra = kept.data() + static_cast<std::size_t>(a) * dim;
        rho.at(a, a) = Complex(k.dot_conj(ra, ra, dim).real(), 0.0);
        for (int b = a + 1; b <= c; ++b) {
            const Complex *rb = kept.data() + static_cast<std::size_t>(b) * dim;
            Complex v = k.dot_conj(ra, rb, dim);
            rho.at(a, b) = v;
            rho.at(b, a) = std::conj(v);
        }
    }
    return rho;
}

Distribution photon_number_distribution(const DensityMatrix &rho) {
    Distribution dist;
    dist.kind = SupportKind::kPhotonNumber;
    dist.tail_bound = rho.tail();
    dist.support.resize(rho.dim());
    dist.probs.resize(rho.dim());
    for (int n = 0; n <= rho.cutoff(); ++n) {
        double p = rho.at(n, n).real();
        if (p < -1e-12) {
            throw NumericalError("photon_number_distribution: diagonal entry " + std::to_string(n) +
                                 " is " + std::to_string(p));
        }
        dist.support[static_cast<std::size_t>(n)] = n;
        dist.probs[static_cast<std::size_t>(n)] = std::max(p, 0.0);
    }
    return dist;
}

namespace {

void require_photon_number(const Distribution &dist, const char *what) {
    if (dist.kind != SupportKind::kPhotonNumber) {
        throw std::invalid_argument(std::string(what) + ": needs a photon-number distribution");
    }
}

}  // namespace

double mean_photon_number(const Distribution &dist) {
    require_photon_number(dist, "mean_photon_number");
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc.add(dist.support[i] * dist.probs[i]);
    }
    return acc.value();
}

double odd_probability_mass(const Distribution &dist) {
    require_photon_number(dist, "odd_probability_mass");
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        if (static_cast<long long>(dist.support[i]) % 2 != 0) {
            acc.add(dist.probs[i]);
        }
    }
    return acc.value();
}

Distribution phase_distribution(const DensityMatrix &rho, int num_points, const kernels::KernelTable &k) {
    if (num_points < 2) {
        throw std::invalid_argument("phase_distribution: num_points must be >= 2");
    }
    const std::size_t dim = rho.dim();
    Distribution dist;
    dist.kind = SupportKind::kPhase;
    dist.tail_bound = rho.tail();
    dist.support.resize(static_cast<std::size_t>(num_points));
    dist.probs.resize(static_cast<std::size_t>(num_points));
    std::vector<Complex> v(dim);
    std::vector<Complex> w(dim);
    auto elems = rho.elements();
    for (int j = 0; j < num_points; ++j) {
        const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(num_points);
        for (std::size_t b = 0; b < dim; ++b) {
            v[b] = std::polar(1.0, wrap_phase(static_cast<double>(b) * phi));
        }
        kernels::matvec(k, elems, dim, dim, v, w);
        double value = k.dot_conj(w.data(), v.data(), dim).real();
        if (value < -1e-9) {
            throw NumericalError("phase_distribution: negative expectation " + std::to_string(value));
        }
        dist.support[static_cast<std::size_t>(j)] = phi;
        dist.probs[static_cast<std::size_t>(j)] = std::max(value, 0.0);
    }
    double total = dist.total();
    if (!(total > 0.0)) {
        throw NumericalError("phase_distribution: density matrix has no weight on the phase grid");
    }
    for (double &p : dist.probs) {
        p /= total;
    }
    return dist;
}

void InterferometerConfig::validate() const {
    if (!std::isfinite(beta_mag) || beta_mag < 0.0) {
        throw std::invalid_argument("InterferometerConfig: beta magnitude must be finite and >= 0");
    }
    if (!std::isfinite(theta) || !std::isfinite(gamma3)) {
        throw std::invalid_argument("InterferometerConfig: theta and gamma3 must be finite");
    }
    if (cutoff < 0) {
        throw std::invalid_argument("InterferometerConfig: cutoff must be >= 0");
    }
    if (cutoff > kMaxCutoff) {
        throw ResourceLimitError("InterferometerConfig: cutoff " + std::to_string(cutoff) + " exceeds " +
                                 std::to_string(kMaxCutoff));
    }
}

int InterferometerConfig::resolved_cutoff() const {
    validate();
    return cutoff > 0 ? cutoff : auto_cutoff(beta_mag * beta_mag);
}

InputPair prepare_inputs(const InterferometerConfig &cfg) {
    const int c = cfg.resolved_cutoff();
    const KerrParams kerr{cfg.gamma3, cfg.convention};
    return {apply_kerr(coherent_state({cfg.beta_mag, 0.0}, c), kerr),
            apply_kerr(coherent_state({cfg.beta_mag, -cfg.theta}, c), kerr)};
}

OutputStatistics simulate(const InterferometerConfig &cfg, const BeamSplitterUnitary *unitary,
                          const kernels::KernelTable &k) {
    InputPair inputs = prepare_inputs(cfg);
    const int c = inputs.port0.cutoff();
    std::optional<BeamSplitterUnitary> local;
    if (unitary == nullptr || unitary->max_total() < 2 * c || unitary->splitter().t() != cfg.bs.t() ||
        unitary->splitter().r() != cfg.bs.r()) {
        local.emplace(cfg.bs, 2 * c);
        unitary = &*local;
    }
    TwoModeState joint = beam_splitter_transform(inputs.port0, inputs.port1, *unitary, k);
    DensityMatrix rho2 = partial_trace(joint, Port::k2, k);
    DensityMatrix rho3 = partial_trace(joint, Port::k3, k);
    Distribution p2 = photon_number_distribution(rho2);
    Distribution p3 = photon_number_distribution(rho3);
    return {std::move(joint), std::move(rho2), std::move(rho3), std::move(p2), std::move(p3)};
}

}  // namespace kerrsplit
