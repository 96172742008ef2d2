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

#include "kerrsplit/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kerrsplit/parallel.hpp"

namespace kerrsplit {

namespace {

constexpr double kProbabilitySlack = 1e-10;
constexpr double kConvergenceTol = 1e-9;

Complex times_i_power(Complex z, int q) {
    switch (q & 3) {
        case 0:
            return z;
        case 1:
            return {-z.imag(), z.real()};
        case 2:
            return -z;
        default:
            return {z.imag(), -z.real()};
    }
}

long long kerr_poly(int n, KerrConvention convention) {
    long long p = static_cast<long long>(n) * n;
    return convention == KerrConvention::kNSquaredMinusN ? p - n : p;
}

// log(x^power) with 0^0 = 1. Returns false when the factor is exactly zero.
bool log_power(double log_x, bool x_is_zero, int power, double &acc) {
    if (power == 0) {
        return true;
    }
    if (x_is_zero) {
        return false;
    }
    acc += power * log_x;
    return true;
}

// Precomputed scalars shared by every term of one general sum.
struct GeneralTerms {
    const FactorialTable &lf;
    double log_abs_alpha;
    double log_abs_beta;
    bool alpha_zero;
    bool beta_zero;
    double arg_alpha;
    double arg_beta;
    double log_t;
    double log_r;
    bool t_zero;
    bool r_zero;
    double prefactor_log;
    double gamma3;
    KerrConvention convention;

    explicit GeneralTerms(const ClosedFormConfig &cfg)
        : lf(shared_factorials()),
          log_abs_alpha(cfg.alpha == Complex{} ? 0.0 : std::log(std::abs(cfg.alpha))),
          log_abs_beta(cfg.beta == Complex{} ? 0.0 : std::log(std::abs(cfg.beta))),
          alpha_zero(cfg.alpha == Complex{}),
          beta_zero(cfg.beta == Complex{}),
          arg_alpha(cfg.alpha == Complex{} ? 0.0 : std::arg(cfg.alpha)),
          arg_beta(cfg.beta == Complex{} ? 0.0 : std::arg(cfg.beta)),
          log_t(cfg.bs.t() > 0 ? std::log(cfg.bs.t()) : 0.0),
          log_r(cfg.bs.r() > 0 ? std::log(cfg.bs.r()) : 0.0),
          t_zero(cfg.bs.t() == 0.0),
          r_zero(cfg.bs.r() == 0.0),
          prefactor_log(-(std::norm(cfg.alpha) + std::norm(cfg.beta))),
          gamma3(cfg.gamma3),
          convention(cfg.convention) {}
};

// Accumulates all terms with outermost index N for a fixed output count.
// `port` selects which output photon number is pinned.
void accumulate_general(const GeneralTerms &g, Port port, int count, int cutoff, int N,
                        CompensatedComplexSum &acc) {
    const FactorialTable &lf = g.lf;
    for (int M = 0; M <= cutoff; ++M) {
        const int total = M + N;
        if (total < count) {
            continue;  // pinned port cannot hold more photons than entered
        }
        // j is the photon number of the traced-out port; fixed by (M, N).
        const int j = total - count;
        const double out_log = lf[j] + lf[count];
        for (int K = std::max(0, total - cutoff); K <= std::min(cutoff, total); ++K) {
            const int L = total - K;
            double base_log = g.prefactor_log + out_log;
            if (!log_power(g.log_abs_beta, g.beta_zero, M + K, base_log) ||
                !log_power(g.log_abs_alpha, g.alpha_zero, N + L, base_log)) {
                continue;
            }
            const long long kerr = kerr_poly(M, g.convention) + kerr_poly(N, g.convention) -
                                   kerr_poly(K, g.convention) - kerr_poly(L, g.convention);
            const double base_phase = wrap_phase(g.arg_beta * (M - K)) + wrap_phase(g.arg_alpha * (N - L)) +
                                      wrap_phase(g.gamma3 * static_cast<double>(kerr));
            const Complex unit = std::polar(1.0, wrap_phase(base_phase));
            for (int m = 0; m <= M; ++m) {
                // photons from port 1 that reach port 2
                const int n = port == Port::k3 ? total - m - count : count - m;
                if (n < 0 || n > N) {
                    continue;
                }
                const int to_port2 = m + n;
                const double mn_log = (lf[m] + lf[M - m]) + (lf[n] + lf[N - n]);
                for (int k = 0; k <= K; ++k) {
                    const int l = to_port2 - k;
                    if (l < 0 || l > L) {
                        continue;
                    }
                    const int t_pow = (m + N - n) + (k + L - l);
                    const int r_pow = (M - m + n) + (K - k + l);
                    double log_mag = base_log - mn_log - ((lf[k] + lf[K - k]) + (lf[l] + lf[L - l]));
                    if (!log_power(g.log_t, g.t_zero, t_pow, log_mag) ||
                        !log_power(g.log_r, g.r_zero, r_pow, log_mag)) {
                        continue;
                    }
                    // (i)^{M-m+n} (-i)^{K-k+l}
                    const int quarter_turns = (M - m + n) + 3 * (K - k + l);
                    acc.add(times_i_power(unit * std::exp(log_mag), quarter_turns));
                }
            }
        }
    }
}

Complex evaluate_general(Port port, int count, const ClosedFormConfig &cfg, int cutoff, int workers) {
    GeneralTerms g(cfg);
    // One partition per outer N; merged in N order for run-to-run determinism.
    std::vector<CompensatedComplexSum> partials(static_cast<std::size_t>(cutoff) + 1);
    parallel_for(partials.size(), workers, [&](std::size_t i) {
        accumulate_general(g, port, count, cutoff, static_cast<int>(i), partials[i]);
    });
    CompensatedComplexSum total;
    for (const auto &p : partials) {
        total.merge(p);
    }
    return total.value();
}

SumResult finish(Complex raw, const char *what) {
    SumResult res;
    res.real_part = raw.real();
    res.imag_residue = std::abs(raw.imag());
    if (!std::isfinite(raw.real()) || !std::isfinite(raw.imag()) || raw.real() < -kProbabilitySlack ||
        raw.real() > 1.0 + kProbabilitySlack || res.imag_residue > kProbabilitySlack) {
        throw NumericalError(std::string(what) + ": sum left the probability range (re=" +
                             std::to_string(raw.real()) + ", im=" + std::to_string(raw.imag()) + ")");
    }
    res.probability = std::clamp(raw.real(), 0.0, 1.0);
    return res;
}

void check_count(int count, const char *what) {
    if (count < 0) {
        throw std::invalid_argument(std::string(what) + ": photon number must be >= 0");
    }
}

SumResult general_sum(Port port, int count, const ClosedFormConfig &cfg, const ClosedFormOptions &opts) {
    const char *what = port == Port::k2 ? "p2" : "p3";
    check_count(count, what);
    cfg.validate();
    SumResult res = finish(evaluate_general(port, count, cfg, cfg.cutoff, opts.workers), what);
    if (opts.check_convergence) {
        if (cfg.cutoff + 2 > kMaxCutoff) {
            throw ResourceLimitError(std::string(what) + ": convergence check exceeds the cutoff bound");
        }
        Complex wider = evaluate_general(port, count, cfg, cfg.cutoff + 2, opts.workers);
        res.convergence_delta = std::abs(wider.real() - res.real_part);
        res.converged = res.convergence_delta <= kConvergenceTol;
    }
    return res;
}

}  // namespace

ClosedFormConfig ClosedFormConfig::from(const InterferometerConfig &cfg) {
    ClosedFormConfig out;
    out.beta = Complex(cfg.beta_mag, 0.0);
    out.alpha = std::polar(cfg.beta_mag, -cfg.theta);
    out.gamma3 = cfg.gamma3;
    out.bs = cfg.bs;
    out.cutoff = cfg.resolved_cutoff();
    out.convention = cfg.convention;
    return out;
}

void ClosedFormConfig::validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(beta.real()) ||
        !std::isfinite(beta.imag()) || !std::isfinite(gamma3)) {
        throw std::invalid_argument("ClosedFormConfig: amplitudes and gamma3 must be finite");
    }
    if (cutoff < 0) {
        throw std::invalid_argument("ClosedFormConfig: cutoff must be >= 0");
    }
    if (cutoff > kMaxCutoff) {
        throw ResourceLimitError("ClosedFormConfig: cutoff " + std::to_string(cutoff) + " exceeds " +
                                 std::to_string(kMaxCutoff));
    }
}

SumResult p2_sum(int x, const ClosedFormConfig &cfg, const ClosedFormOptions &opts) {
    return general_sum(Port::k2, x, cfg, opts);
}

SumResult p3_sum(int y, const ClosedFormConfig &cfg, const ClosedFormOptions &opts) {
    return general_sum(Port::k3, y, cfg, opts);
}

std::optional<DerivedIndices> derive_port3_indices(const SumIndexTuple &idx, int y) {
    if (y < 0 || idx.N < 0 || idx.M < 0 || idx.K < 0 || idx.m < 0 || idx.k < 0 || idx.m > idx.M ||
        idx.k > idx.K) {
        return std::nullopt;
    }
    DerivedIndices d;
    d.L = idx.M + idx.N - idx.K;
    d.n = idx.M + idx.N - idx.m - y;
    d.j = idx.m + d.n;
    d.l = d.j - idx.k;
    if (d.L < 0 || d.n < 0 || d.n > idx.N || d.l < 0 || d.l > d.L) {
        return std::nullopt;
    }
    return d;
}

namespace {

// The symmetric-case term is assembled from quantities that are each
// invariant under both exchanges (index-pair factorial groups are added in
// commutative pairs, the Kerr exponent is an exact integer), so a term and
// its partner share bit-identical magnitude and Kerr phase. They differ only
// through the integer count of quarter turns.
Complex symmetric_term_unchecked(const SumIndexTuple &idx, const DerivedIndices &d, int y, double log_beta,
                                 bool beta_zero, double beta_sq, double gamma3, KerrConvention convention,
                                 const FactorialTable &lf) {
    const int photons = idx.M + idx.K + idx.N + d.L;
    double log_mag = -2.0 * beta_sq + lf[d.j] + lf[y];
    if (photons > 0) {
        if (beta_zero) {
            return {};
        }
        log_mag += photons * (log_beta - 0.5 * std::numbers::ln2);
    }
    const double group_mn = (lf[idx.m] + lf[idx.M - idx.m]) + (lf[d.n] + lf[idx.N - d.n]);
    const double group_kl = (lf[idx.k] + lf[idx.K - idx.k]) + (lf[d.l] + lf[d.L - d.l]);
    log_mag -= group_mn + group_kl;
    const long long kerr = kerr_poly(idx.M, convention) + kerr_poly(idx.N, convention) -
                           kerr_poly(idx.K, convention) - kerr_poly(d.L, convention);
    const Complex unit = std::polar(1.0, wrap_phase(gamma3 * static_cast<double>(kerr)));
    // (-i)^{N+K-k+l} (i)^{L+M-m+n}
    const int quarter_turns = 3 * (idx.N + idx.K - idx.k + d.l) + (d.L + idx.M - idx.m + d.n);
    return times_i_power(unit * std::exp(log_mag), quarter_turns);
}

void check_symmetric_inputs(double beta_mag, double gamma3) {
    if (!std::isfinite(beta_mag) || beta_mag < 0.0 || !std::isfinite(gamma3)) {
        throw std::invalid_argument("symmetric sum: beta magnitude must be finite and >= 0, gamma3 finite");
    }
}

}  // namespace

Complex symmetric_term(const SumIndexTuple &idx, int y, double beta_mag, double gamma3,
                       KerrConvention convention) {
    check_symmetric_inputs(beta_mag, gamma3);
    auto d = derive_port3_indices(idx, y);
    if (!d) {
        throw std::invalid_argument("symmetric_term: index tuple outside the summation domain");
    }
    const FactorialTable &lf = shared_factorials();
    const int largest = std::max({idx.M + idx.N, y, d->j});
    if (largest > lf.max_n()) {
        throw ResourceLimitError("symmetric_term: indices exceed the factorial table");
    }
    return symmetric_term_unchecked(idx, *d, y, beta_mag > 0 ? std::log(beta_mag) : 0.0, beta_mag == 0.0,
                                    beta_mag * beta_mag, gamma3, convention, lf);
}

SumResult p3_symmetric_sum(int y, double beta_mag, double gamma3, int cutoff, KerrConvention convention,
                           const ClosedFormOptions &opts) {
    check_count(y, "p3_symmetric");
    check_symmetric_inputs(beta_mag, gamma3);
    if (cutoff < 0) {
        throw std::invalid_argument("p3_symmetric: cutoff must be >= 0");
    }
    if (cutoff > kMaxCutoff) {
        throw ResourceLimitError("p3_symmetric: cutoff exceeds bound");
    }
    const FactorialTable &lf = shared_factorials();
    const double log_beta = beta_mag > 0 ? std::log(beta_mag) : 0.0;
    const bool beta_zero = beta_mag == 0.0;
    const double beta_sq = beta_mag * beta_mag;

    auto evaluate = [&](int c) {
        std::vector<CompensatedComplexSum> partials(static_cast<std::size_t>(c) + 1);
        parallel_for(partials.size(), opts.workers, [&](std::size_t part) {
            SumIndexTuple idx;
            idx.N = static_cast<int>(part);
            for (idx.M = 0; idx.M <= c; ++idx.M) {
                const int total = idx.M + idx.N;
                for (idx.K = std::max(0, total - c); idx.K <= std::min(c, total); ++idx.K) {
                    for (idx.m = 0; idx.m <= idx.M; ++idx.m) {
                        for (idx.k = 0; idx.k <= idx.K; ++idx.k) {
                            auto d = derive_port3_indices(idx, y);
                            if (!d) {
                                continue;
                            }
                            partials[part].add(symmetric_term_unchecked(idx, *d, y, log_beta, beta_zero, beta_sq,
                                                                        gamma3, convention, lf));
                        }
                    }
                }
            }
        });
        CompensatedComplexSum total;
        for (const auto &p : partials) {
            total.merge(p);
        }
        return total.value();
    };

    SumResult res = finish(evaluate(cutoff), "p3_symmetric");
    if (opts.check_convergence) {
        Complex wider = evaluate(cutoff + 2);
        res.convergence_delta = std::abs(wider.real() - res.real_part);
        res.converged = res.convergence_delta <= kConvergenceTol;
    }
    return res;
}

SumIndexTuple exchange_partner(const SumIndexTuple &idx, int y, Exchange which) {
    auto d = derive_port3_indices(idx, y);
    if (!d) {
        throw std::invalid_argument("exchange_partner: index tuple outside the summation domain");
    }
    SumIndexTuple p = idx;
    if (which == Exchange::kKL) {
        p.K = d->L;
        p.k = d->l;
    } else {
        p.M = idx.N;
        p.N = idx.M;
        p.m = d->n;
    }
    return p;
}

CancellationVerdict cancellation_pair_check(const SumIndexTuple &idx, int y, double beta_mag, double gamma3,
                                            Exchange which) {
    CancellationVerdict v;
    v.partner = exchange_partner(idx, y, which);
    v.self_paired = v.partner == idx;
    v.odd = (y % 2) != 0;
    v.term = symmetric_term(idx, y, beta_mag, gamma3);
    v.partner_term = symmetric_term(v.partner, y, beta_mag, gamma3);
    v.pair_sum = v.term + v.partner_term;
    const double scale = std::max(std::abs(v.term), std::abs(v.partner_term));
    if (v.odd) {
        if (v.self_paired) {
            v.relative_residual = scale;
            v.passed = scale == 0.0;
            return v;
        }
        v.relative_residual = scale > 0 ? std::abs(v.pair_sum) / scale : 0.0;
    } else {
        const Complex doubled = 2.0 * v.term;
        v.relative_residual = scale > 0 ? std::abs(v.pair_sum - doubled) / std::abs(doubled) : 0.0;
    }
    v.passed = v.relative_residual <= kCancellationTolerance;
    return v;
}

SumIndexTuple sample_symmetric_tuple(std::mt19937_64 &rng, int y, int max_index) {
    if (y < 0 || max_index < 0) {
        throw std::invalid_argument("sample_symmetric_tuple: y and max_index must be >= 0");
    }
    if (2 * max_index < y) {
        throw std::invalid_argument("sample_symmetric_tuple: no valid tuple for this y");
    }
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int attempt = 0; attempt < 10'000'000; ++attempt) {
        SumIndexTuple idx;
        idx.N = uniform(0, max_index);
        idx.M = uniform(0, max_index);
        const int total = idx.M + idx.N;
        if (total < y) {
            continue;
        }
        idx.K = uniform(std::max(0, total - max_index), std::min(max_index, total));
        idx.m = uniform(0, idx.M);
        idx.k = uniform(0, idx.K);
        if (derive_port3_indices(idx, y)) {
            return idx;
        }
    }
    throw std::runtime_error("sample_symmetric_tuple: rejection sampling did not find a tuple");
}

}  // namespace kerrsplit
