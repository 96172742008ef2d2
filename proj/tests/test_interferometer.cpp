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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "kerrsplit/state_prep.hpp"

using namespace kerrsplit;

namespace {

// Two-mode Fock vector for the ladder-operator oracle, dense over n2, n3 <= dim-1.
struct LadderState {
    int dim;
    std::vector<Complex> c;
    explicit LadderState(int d) : dim(d), c(static_cast<std::size_t>(d * d)) {}
    Complex &at(int a, int b) { return c[static_cast<std::size_t>(a * dim + b)]; }
};

// Applies (u a2^dag + v a3^dag) by explicit creation-operator action.
LadderState create(LadderState s, Complex u, Complex v) {
    LadderState out(s.dim);
    for (int a = 0; a + 1 < s.dim; ++a) {
        for (int b = 0; b + 1 < s.dim; ++b) {
            Complex z = s.at(a, b);
            if (z == Complex{}) {
                continue;
            }
            out.at(a + 1, b) += u * std::sqrt(a + 1.0) * z;
            out.at(a, b + 1) += v * std::sqrt(b + 1.0) * z;
        }
    }
    return out;
}

// |M>_0 |N>_1 through the splitter, built one photon at a time.
LadderState ladder_oracle(int M, int N, double t, double r) {
    const Complex ir(0.0, r);
    LadderState s(M + N + 2);
    s.at(0, 0) = 1.0;
    for (int i = 0; i < M; ++i) {
        s = create(s, t, ir);  // port 0 -> t a2 + i r a3
    }
    for (int i = 0; i < N; ++i) {
        s = create(s, ir, t);  // port 1 -> i r a2 + t a3
    }
    double norm = std::sqrt(std::tgamma(M + 1.0) * std::tgamma(N + 1.0));
    for (auto &z : s.c) {
        z /= norm;
    }
    return s;
}

FockVector random_state(std::mt19937_64 &rng, int cutoff) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(static_cast<std::size_t>(cutoff) + 1);
    double norm = 0;
    for (auto &z : amps) {
        z = {g(rng), g(rng)};
        norm += std::norm(z);
    }
    for (auto &z : amps) {
        z /= std::sqrt(norm);
    }
    return FockVector::from_amplitudes(amps);
}

double poisson_pmf(double mean, int n) {
    double p = std::exp(-mean);
    for (int k = 1; k <= n; ++k) {
        p *= mean / k;
    }
    return p;
}

InterferometerConfig dark(double beta, double gamma3, double theta = std::numbers::pi / 2) {
    InterferometerConfig cfg;
    cfg.beta_mag = beta;
    cfg.gamma3 = gamma3;
    cfg.theta = theta;
    return cfg;
}

}  // namespace

TEST(beam_splitter, coefficient_validation) {
    ASSERT_NO_THROW(BeamSplitter(1.0, 0.0));
    ASSERT_NO_THROW(BeamSplitter::from_transmission(std::sqrt(0.7)));
    ASSERT_THROW(BeamSplitter(0.8, 0.8), std::invalid_argument);
    ASSERT_THROW(BeamSplitter(-0.6, 0.8), std::invalid_argument);
    ASSERT_THROW(BeamSplitter::from_transmission(1.5), std::invalid_argument);
    BeamSplitter b = BeamSplitter::balanced();
    ASSERT_EQ(b.t(), b.r());
}

TEST(beam_splitter_unitary, matches_ladder_operator_oracle) {
    for (double t2 : {0.5, 0.7, 0.2}) {
        BeamSplitter bs = BeamSplitter::from_transmission(std::sqrt(t2));
        BeamSplitterUnitary u(bs, 10);
        for (int j = 0; j <= 10; ++j) {
            for (int M = 0; M <= j; ++M) {
                LadderState s = ladder_oracle(M, j - M, bs.t(), bs.r());
                for (int n2 = 0; n2 <= j; ++n2) {
                    ASSERT_NEAR(std::abs(u.element(j, n2, M) - s.at(n2, j - n2)), 0.0, 1e-13)
                        << "t2=" << t2 << " J=" << j << " M=" << M << " n2=" << n2;
                }
            }
        }
    }
}

TEST(beam_splitter_unitary, blocks_are_unitary) {
    BeamSplitterUnitary u(BeamSplitter::from_transmission(0.6), 160);
    for (int j : {0, 1, 7, 30, 60, 160}) {
        auto blk = u.block(j);
        const int d = j + 1;
        double worst = 0;
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                Complex s{};
                for (int c = 0; c < d; ++c) {
                    s += blk[static_cast<std::size_t>(a * d + c)] * std::conj(blk[static_cast<std::size_t>(b * d + c)]);
                }
                worst = std::max(worst, std::abs(s - Complex(a == b ? 1.0 : 0.0, 0.0)));
            }
        }
        ASSERT_LT(worst, 1e-12) << "J=" << j;
    }
}

TEST(beam_splitter_transform, vacuum_in_vacuum_out) {
    TwoModeState out = beam_splitter_transform(fock_state(0, 3), fock_state(0, 3), BeamSplitter::balanced());
    ASSERT_EQ(out.cutoff(), 6);
    ASSERT_NEAR(std::abs(out.at(0, 0) - Complex(1, 0)), 0.0, 1e-15);
    ASSERT_NEAR(norm_sq(out), 1.0, 1e-15);
}

TEST(beam_splitter_transform, hong_ou_mandel) {
    TwoModeState out = beam_splitter_transform(fock_state(1, 2), fock_state(1, 2), BeamSplitter::balanced());
    ASSERT_LT(std::norm(out.at(1, 1)), 1e-14);
    ASSERT_NEAR(std::norm(out.at(2, 0)), 0.5, 1e-14);
    ASSERT_NEAR(std::norm(out.at(0, 2)), 0.5, 1e-14);

    DensityMatrix rho3 = partial_trace(out, Port::k3);
    ASSERT_NEAR(rho3.at(0, 0).real(), 0.5, 1e-14);
    ASSERT_NEAR(rho3.at(1, 1).real(), 0.0, 1e-14);
    ASSERT_NEAR(rho3.at(2, 2).real(), 0.5, 1e-14);
    ASSERT_NEAR(mean_photon_number(photon_number_distribution(rho3)), 1.0, 1e-14);
}

TEST(beam_splitter_transform, coherent_interference_darkens_port3) {
    FockVector in0 = coherent_state({2.0, 0.0}, 30);
    FockVector in1 = coherent_state({2.0, -std::numbers::pi / 2}, 30);
    TwoModeState out = beam_splitter_transform(in0, in1, BeamSplitter::balanced());
    Distribution p3 = photon_number_distribution(partial_trace(out, Port::k3));
    Distribution p2 = photon_number_distribution(partial_trace(out, Port::k2));
    ASSERT_GT(p3.probs[0], 1 - 1e-10);
    for (std::size_t n = 0; n < p2.probs.size(); ++n) {
        ASSERT_NEAR(p2.probs[n], poisson_pmf(8.0, static_cast<int>(n)), 1e-9) << n;
    }
}

TEST(beam_splitter_transform, rejects_mismatched_cutoffs) {
    ASSERT_THROW(beam_splitter_transform(fock_state(0, 3), fock_state(0, 4), BeamSplitter::balanced()),
                 std::invalid_argument);
    BeamSplitterUnitary small(BeamSplitter::balanced(), 3);
    ASSERT_THROW(beam_splitter_transform(fock_state(0, 3), fock_state(0, 3), small), std::invalid_argument);
}

TEST(beam_splitter_transform, unitarity_property) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        int cutoff = 1 + static_cast<int>(rng() % 20);
        FockVector a = random_state(rng, cutoff);
        FockVector b = random_state(rng, cutoff);
        BeamSplitter bs = BeamSplitter::from_transmission(tdist(rng));
        TwoModeState out = beam_splitter_transform(a, b, bs);
        ASSERT_NEAR(norm_sq(out), norm_sq(a) * norm_sq(b), 1e-10);
    }
}

TEST(beam_splitter_transform, full_transmission_routes_inputs) {
    FockVector a = coherent_state({1.3, 0.4}, 15);
    FockVector b = apply_kerr(coherent_state({0.9, -1.0}, 15), {0.3, KerrConvention::kNSquared});
    TwoModeState out = beam_splitter_transform(a, b, BeamSplitter(1.0, 0.0));
    Distribution p2 = photon_number_distribution(partial_trace(out, Port::k2));
    Distribution p3 = photon_number_distribution(partial_trace(out, Port::k3));
    for (int n = 0; n <= 15; ++n) {
        ASSERT_NEAR(p2.probs[static_cast<std::size_t>(n)], a.probability(n) * norm_sq(b), 1e-15);
        ASSERT_NEAR(p3.probs[static_cast<std::size_t>(n)], b.probability(n) * norm_sq(a), 1e-15);
    }
    for (int n = 16; n <= 30; ++n) {
        ASSERT_EQ(p2.probs[static_cast<std::size_t>(n)], 0.0);
    }
}

TEST(beam_splitter_transform, parallel_sectors_are_bit_identical) {
    InputPair in = prepare_inputs(dark(std::sqrt(6.0), 0.3, 1.1));
    BeamSplitterUnitary u(BeamSplitter::balanced(), 2 * in.port0.cutoff());
    TwoModeState serial = beam_splitter_transform(in.port0, in.port1, u, kernels::best(), 1);
    TwoModeState threaded = beam_splitter_transform(in.port0, in.port1, u, kernels::best(), 4);
    for (std::size_t i = 0; i < serial.amplitudes().size(); ++i) {
        ASSERT_EQ(serial.amplitudes()[i], threaded.amplitudes()[i]);
    }
}

TEST(beam_splitter_transform, simd_and_scalar_paths_agree) {
    InputPair in = prepare_inputs(dark(std::sqrt(6.0), 0.4, 0.9));
    BeamSplitterUnitary u(BeamSplitter::from_transmission(0.8), 2 * in.port0.cutoff());
    const auto &scalar = kernels::table(kernels::Backend::kScalar);
    const auto &fast = kernels::best();
    TwoModeState a = beam_splitter_transform(in.port0, in.port1, u, scalar);
    TwoModeState b = beam_splitter_transform(in.port0, in.port1, u, fast);
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        ASSERT_NEAR(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), 0.0, 1e-14);
    }
    DensityMatrix ra = partial_trace(a, Port::k3, scalar);
    DensityMatrix rb = partial_trace(b, Port::k3, fast);
    for (std::size_t i = 0; i < ra.elements().size(); ++i) {
        ASSERT_NEAR(std::abs(ra.elements()[i] - rb.elements()[i]), 0.0, 1e-14);
    }
}

TEST(partial_trace, product_state_gives_pure_projector) {
    FockVector a = coherent_state({1.2, 0.3}, 12);
    FockVector b = apply_kerr(coherent_state({0.7, 2.0}, 12), {0.2, KerrConvention::kNSquared});
    TwoModeState joint = TwoModeState::product(a, b);
    DensityMatrix keep2 = partial_trace(joint, Port::k2);
    DensityMatrix keep3 = partial_trace(joint, Port::k3);
    const double nb = norm_sq(b), na = norm_sq(a);
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
            ASSERT_NEAR(std::abs(keep2.at(i, j) - a.amplitude(i) * std::conj(a.amplitude(j)) * nb), 0.0, 1e-14);
            ASSERT_NEAR(std::abs(keep3.at(i, j) - b.amplitude(i) * std::conj(b.amplitude(j)) * na), 0.0, 1e-14);
        }
    }
    ASSERT_NO_THROW(keep2.check_invariants());
    ASSERT_NO_THROW(keep3.check_invariants());
}

TEST(partial_trace, product_state_is_rank_one) {
    // Power iteration for the largest eigenvalue of a PSD Hermitian matrix.
    FockVector a = coherent_state({1.8, 0.0}, 20);
    DensityMatrix rho = partial_trace(TwoModeState::product(a, fock_state(3, 20)), Port::k2);
    std::vector<Complex> v(rho.dim(), Complex(1.0, 0.0));
    double lambda = 0;
    for (int it = 0; it < 50; ++it) {
        std::vector<Complex> w(rho.dim());
        for (std::size_t i = 0; i < rho.dim(); ++i) {
            for (std::size_t j = 0; j < rho.dim(); ++j) {
                w[i] += rho.at(static_cast<int>(i), static_cast<int>(j)) * v[j];
            }
        }
        double norm = 0;
        for (auto &z : w) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (auto &z : w) {
            z /= norm;
        }
        lambda = norm;
        v = w;
    }
    ASSERT_GE(lambda, (1 - 1e-9) * rho.trace().real());
}

TEST(partial_trace, output_satisfies_density_invariants) {
    for (double g : {0.0, 0.1, 1.0}) {
        OutputStatistics s = simulate(dark(2.0, g, 0.7));
        ASSERT_NO_THROW(s.rho2.check_invariants());
        ASSERT_NO_THROW(s.rho3.check_invariants());
    }
}

TEST(photon_number_distribution, simple_matrices) {
    Distribution vac = photon_number_distribution(DensityMatrix::pure(fock_state(0, 4)));
    ASSERT_EQ(vac.probs[0], 1.0);
    ASSERT_EQ(mean_photon_number(vac), 0.0);
    ASSERT_EQ(odd_probability_mass(vac), 0.0);

    DensityMatrix mixed(4);
    mixed.at(0, 0) = 0.5;
    mixed.at(1, 1) = 0.5;
    Distribution m = photon_number_distribution(mixed);
    ASSERT_EQ(m.probs[0], 0.5);
    ASSERT_EQ(m.probs[1], 0.5);
    ASSERT_EQ(m.probs[2], 0.0);

    DensityMatrix tiny_negative(1);
    tiny_negative.at(0, 0) = 1.0;
    tiny_negative.at(1, 1) = -5e-13;
    ASSERT_EQ(photon_number_distribution(tiny_negative).probs[1], 0.0);
    DensityMatrix negative(1);
    negative.at(1, 1) = -1e-6;
    ASSERT_THROW(photon_number_distribution(negative), NumericalError);
}

TEST(photon_number_distribution, coherent_is_poisson) {
    Distribution d = photon_number_distribution(DensityMatrix::pure(coherent_state({2.0, 0.0}, 30)));
    for (int n = 0; n <= 30; ++n) {
        ASSERT_NEAR(d.probs[static_cast<std::size_t>(n)], poisson_pmf(4.0, n), 1e-13);
    }
    ASSERT_NEAR(mean_photon_number(d), 4.0, 1e-9);
    ASSERT_NEAR(odd_probability_mass(d), (1 - std::exp(-8.0)) / 2, 1e-12);
    ASSERT_NEAR(odd_probability_mass(d), 0.499832268686048744, 1e-12);
}

TEST(photon_number_distribution, phase_support_is_rejected_for_moments) {
    Distribution d = phase_distribution(DensityMatrix::pure(fock_state(0, 2)), 8);
    ASSERT_THROW(mean_photon_number(d), std::invalid_argument);
    ASSERT_THROW(odd_probability_mass(d), std::invalid_argument);
}

TEST(phase_distribution, vacuum_is_uniform) {
    Distribution d = phase_distribution(DensityMatrix::pure(fock_state(0, 6)), 16);
    ASSERT_EQ(d.probs.size(), 16u);
    for (double p : d.probs) {
        ASSERT_NEAR(p, 1.0 / 16, 1e-15);
    }
    ASSERT_NEAR(d.total(), 1.0, 1e-15);
    ASSERT_THROW(phase_distribution(DensityMatrix::pure(fock_state(0, 6)), 1), std::invalid_argument);
}

TEST(phase_distribution, coherent_peaks_at_zero_symmetrically) {
    const int points = 64;
    Distribution d = phase_distribution(DensityMatrix::pure(coherent_state({2.0, 0.0}, 30)), points);
    auto peak = std::max_element(d.probs.begin(), d.probs.end()) - d.probs.begin();
    ASSERT_EQ(peak, 0);
    for (int j = 1; j < points; ++j) {
        ASSERT_NEAR(d.probs[static_cast<std::size_t>(j)], d.probs[static_cast<std::size_t>(points - j)], 1e-13);
    }
}

TEST(phase_distribution, kerr_state_is_broader) {
    auto circular_variance = [](const Distribution &d) {
        Complex m{};
        for (std::size_t j = 0; j < d.probs.size(); ++j) {
            m += d.probs[j] * std::polar(1.0, d.support[j]);
        }
        return 1.0 - std::abs(m);
    };
    FockVector c = coherent_state({2.0, 0.0}, 30);
    Distribution lin = phase_distribution(DensityMatrix::pure(c), 128);
    Distribution kerr = phase_distribution(DensityMatrix::pure(apply_kerr(c, {0.1, KerrConvention::kNSquared})), 128);
    ASSERT_GT(circular_variance(kerr), circular_variance(lin));
}

TEST(interferometer, energy_conservation_over_phase_and_kerr) {
    for (double g : {0.0, 0.1, 0.7}) {
        for (double th = 0.0; th < kTwoPi; th += 0.41) {
            OutputStatistics s = simulate(dark(2.0, g, th));
            ASSERT_NEAR(mean_photon_number(s.p2) + mean_photon_number(s.p3), 8.0, 1e-8) << g << " " << th;
        }
    }
}

TEST(interferometer, dark_port_parity_both_conventions) {
    for (auto conv : {KerrConvention::kNSquared, KerrConvention::kNSquaredMinusN}) {
        for (double beta : {std::sqrt(2.0), 2.0, std::sqrt(6.0)}) {
            for (double g : {0.01, 0.1, 0.5, 1.0, std::numbers::pi / 4, 2.0}) {
                InterferometerConfig cfg = dark(beta, g);
                cfg.convention = conv;
                ASSERT_LT(odd_probability_mass(simulate(cfg).p3), 1e-10) << beta << " " << g;
            }
        }
    }
}

TEST(interferometer, kerr_does_not_change_input_statistics) {
    InputPair lin = prepare_inputs(dark(2.0, 0.0));
    InputPair kerr = prepare_inputs(dark(2.0, 0.9));
    Distribution a = photon_number_distribution(DensityMatrix::pure(lin.port0));
    Distribution b = photon_number_distribution(DensityMatrix::pure(kerr.port0));
    for (std::size_t n = 0; n < a.probs.size(); ++n) {
        ASSERT_EQ(a.probs[n], b.probs[n]);
    }
}

TEST(interferometer, config_validation) {
    InterferometerConfig cfg;
    cfg.beta_mag = -1;
    ASSERT_THROW(cfg.validate(), std::invalid_argument);
    cfg.beta_mag = 1;
    cfg.cutoff = kMaxCutoff + 1;
    ASSERT_THROW(cfg.validate(), ResourceLimitError);
    cfg.cutoff = 0;
    cfg.beta_mag = 2;
    ASSERT_EQ(cfg.resolved_cutoff(), auto_cutoff(4.0));
}
