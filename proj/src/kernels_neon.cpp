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

#include "kerrsplit/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace kerrsplit::kernels::detail {

namespace {

// One complex per float64x2_t: p += a * b, q += a * swap(b). Two independent
// accumulator pairs per iteration.
struct Accumulators {
    float64x2_t p;
    float64x2_t q;
};

inline Accumulators accumulate(const Complex *a, const Complex *b, std::size_t n) {
    const double *pa = reinterpret_cast<const double *>(a);
    const double *pb = reinterpret_cast<const double *>(b);
    float64x2_t p0 = vdupq_n_f64(0.0);
    float64x2_t q0 = vdupq_n_f64(0.0);
    float64x2_t p1 = vdupq_n_f64(0.0);
    float64x2_t q1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t va0 = vld1q_f64(pa + 2 * i);
        float64x2_t vb0 = vld1q_f64(pb + 2 * i);
        float64x2_t va1 = vld1q_f64(pa + 2 * i + 2);
        float64x2_t vb1 = vld1q_f64(pb + 2 * i + 2);
        p0 = vfmaq_f64(p0, va0, vb0);
        q0 = vfmaq_f64(q0, va0, vextq_f64(vb0, vb0, 1));
        p1 = vfmaq_f64(p1, va1, vb1);
        q1 = vfmaq_f64(q1, va1, vextq_f64(vb1, vb1, 1));
    }
    if (i < n) {
        float64x2_t va = vld1q_f64(pa + 2 * i);
        float64x2_t vb = vld1q_f64(pb + 2 * i);
        p0 = vfmaq_f64(p0, va, vb);
        q0 = vfmaq_f64(q0, va, vextq_f64(vb, vb, 1));
    }
    return {vaddq_f64(p0, p1), vaddq_f64(q0, q1)};
}

}  // namespace

Complex dot_neon(const Complex *a, const Complex *b, std::size_t n) {
    Accumulators acc = accumulate(a, b, n);
    double re = vgetq_lane_f64(acc.p, 0) - vgetq_lane_f64(acc.p, 1);
    double im = vgetq_lane_f64(acc.q, 0) + vgetq_lane_f64(acc.q, 1);
    return {re, im};
}

Complex dot_conj_neon(const Complex *a, const Complex *b, std::size_t n) {
    Accumulators acc = accumulate(a, b, n);
    double re = vgetq_lane_f64(acc.p, 0) + vgetq_lane_f64(acc.p, 1);
    double im = vgetq_lane_f64(acc.q, 1) - vgetq_lane_f64(acc.q, 0);
    return {re, im};
}

}  // namespace kerrsplit::kernels::detail

#endif
