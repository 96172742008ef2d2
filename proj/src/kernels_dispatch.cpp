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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kerrsplit/kernels.hpp"

namespace kerrsplit::kernels {

namespace {

constexpr KernelTable kScalarTable{Backend::kScalar, "scalar", &detail::dot_scalar,
                                   &detail::dot_conj_scalar};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2Table{Backend::kAvx2, "avx2", &detail::dot_avx2, &detail::dot_conj_avx2};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeonTable{Backend::kNeon, "neon", &detail::dot_neon, &detail::dot_conj_neon};
#endif

const KernelTable &resolve_best() {
    if (const char *forced = std::getenv("KERRSPLIT_KERNELS")) {
        std::string v(forced);
        if (v == "scalar") {
            return table(Backend::kScalar);
        }
        if (v == "avx2") {
            return table(Backend::kAvx2);
        }
        if (v == "neon") {
            return table(Backend::kNeon);
        }
        if (v != "auto" && !v.empty()) {
            throw std::runtime_error("KERRSPLIT_KERNELS: unknown backend '" + v + "'");
        }
    }
    if (supported(Backend::kAvx2)) {
        return table(Backend::kAvx2);
    }
    if (supported(Backend::kNeon)) {
        return table(Backend::kNeon);
    }
    return kScalarTable;
}

}  // namespace

bool supported(Backend backend) {
    switch (backend) {
        case Backend::kScalar:
            return true;
        case Backend::kAvx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::kNeon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable &table(Backend backend) {
    if (!supported(backend)) {
        throw std::runtime_error("kernel backend '" + std::string(backend_name(backend)) +
                                 "' is not available on this CPU/build");
    }
    switch (backend) {
        case Backend::kScalar:
            return kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::kAvx2:
            return kAvx2Table;
#endif
#if defined(__aarch64__)
        case Backend::kNeon:
            return kNeonTable;
#endif
        default:
            break;
    }
    return kScalarTable;
}

const KernelTable &best() {
    static const KernelTable &chosen = resolve_best();
    return chosen;
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::kScalar:
            return "scalar";
        case Backend::kAvx2:
            return "avx2";
        case Backend::kNeon:
            return "neon";
    }
    return "unknown";
}

void matvec(const KernelTable &k, std::span<const Complex> mat, std::size_t rows, std::size_t cols,
            std::span<const Complex> x, std::span<Complex> y) {
    if (mat.size() < rows * cols || x.size() < cols || y.size() < rows) {
        throw std::invalid_argument("matvec: operand sizes do not match rows x cols");
    }
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = k.dot(mat.data() + i * cols, x.data(), cols);
    }
}

}  // namespace kerrsplit::kernels
