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

#ifndef KERRSPLIT_KERNELS_HPP_
#define KERRSPLIT_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Complex inner-product kernels used by the matrix path.
//
// Every backend computes the same mathematical quantity; only the summation
// order (lane-wise partial sums, fused multiply-add) differs. Results agree
// to a few ulp of sum |a_i| |b_i| and are deterministic for a fixed backend.

namespace kerrsplit::kernels {

using Complex = std::complex<double>;

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
    Backend backend;
    std::string_view name;
    /// sum_i a[i] * b[i]
    Complex (*dot)(const Complex *a, const Complex *b, std::size_t n);
    /// sum_i a[i] * conj(b[i])
    Complex (*dot_conj)(const Complex *a, const Complex *b, std::size_t n);
};

/// True if the backend was compiled in and the running CPU supports it.
bool supported(Backend backend);

/// Table for a specific backend. Throws std::runtime_error if unsupported.
const KernelTable &table(Backend backend);

/// Best backend for this CPU, resolved once on first use. The environment
/// variable KERRSPLIT_KERNELS=scalar|avx2|neon forces a choice.
const KernelTable &best();

std::string_view backend_name(Backend backend);

inline Complex dot(const KernelTable &k, std::span<const Complex> a, std::span<const Complex> b) {
    return k.dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline Complex dot_conj(const KernelTable &k, std::span<const Complex> a, std::span<const Complex> b) {
    return k.dot_conj(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

/// y[i] = sum_j mat[i * cols + j] * x[j] for i < rows.
void matvec(const KernelTable &k, std::span<const Complex> mat, std::size_t rows, std::size_t cols,
            std::span<const Complex> x, std::span<Complex> y);

namespace detail {
Complex dot_scalar(const Complex *a, const Complex *b, std::size_t n);
Complex dot_conj_scalar(const Complex *a, const Complex *b, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
Complex dot_avx2(const Complex *a, const Complex *b, std::size_t n);
Complex dot_conj_avx2(const Complex *a, const Complex *b, std::size_t n);
#endif
#if defined(__aarch64__)
Complex dot_neon(const Complex *a, const Complex *b, std::size_t n);
Complex dot_conj_neon(const Complex *a, const Complex *b, std::size_t n);
#endif
}  // namespace detail

}  // namespace kerrsplit::kernels

#endif  // KERRSPLIT_KERNELS_HPP_
