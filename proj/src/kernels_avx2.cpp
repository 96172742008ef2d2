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

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#define KERRSPLIT_AVX2 __attribute__((target("avx2,fma")))

namespace kerrsplit::kernels::detail {

namespace {

// Lanes hold [re0, im0, re1, im1]. Two accumulators per product:
//   p += a * b          -> [ar*br, ai*bi, ...]
//   q += a * swap(b)    -> [ar*bi, ai*br, ...]
// Four complexes per iteration, split over two accumulator pairs.
struct Accumulators {
    __m256d p;
    __m256d q;
};

KERRSPLIT_AVX2 inline Accumulators accumulate(const Complex *a, const Complex *b, std::size_t n,
                                              std::size_t &i) {
    const double *pa = reinterpret_cast<const double *>(a);
    const double *pb = reinterpret_cast<const double *>(b);
    __m256d p0 = _mm256_setzero_pd();
    __m256d q0 = _mm256_setzero_pd();
    __m256d p1 = _mm256_setzero_pd();
    __m256d q1 = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        p0 = _mm256_fmadd_pd(va0, vb0, p0);
        q0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), q0);
        p1 = _mm256_fmadd_pd(va1, vb1, p1);
        q1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), q1);
    }
    if (i + 2 <= n) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        p0 = _mm256_fmadd_pd(va, vb, p0);
        q0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), q0);
        i += 2;
    }
    return {_mm256_add_pd(p0, p1), _mm256_add_pd(q0, q1)};
}

// Sums the two complex halves: returns [x0 + x2, x1 + x3].
KERRSPLIT_AVX2 inline __m128d fold(__m256d v) {
    return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

}  // namespace

KERRSPLIT_AVX2 Complex dot_avx2(const Complex *a, const Complex *b, std::size_t n) {
    std::size_t i = 0;
    Accumulators acc = accumulate(a, b, n, i);
    alignas(16) double p[2];
    alignas(16) double q[2];
    _mm_store_pd(p, fold(acc.p));
    _mm_store_pd(q, fold(acc.q));
    double re = p[0] - p[1];
    double im = q[0] + q[1];
    for (; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        double br = b[i].real(), bi = b[i].imag();
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

KERRSPLIT_AVX2 Complex dot_conj_avx2(const Complex *a, const Complex *b, std::size_t n) {
    std::size_t i = 0;
    Accumulators acc = accumulate(a, b, n, i);
    alignas(16) double p[2];
    alignas(16) double q[2];
    _mm_store_pd(p, fold(acc.p));
    _mm_store_pd(q, fold(acc.q));
    double re = p[0] + p[1];
    double im = q[1] - q[0];
    for (; i < n; ++i) {
        double ar = a[i].real(), ai = a[i].imag();
        double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

}  // namespace kerrsplit::kernels::detail

#endif
