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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace kerrsplit;
using kernels::Backend;
using kernels::Complex;

namespace {

std::vector<Complex> random_vector(std::mt19937_64 &rng, std::size_t n, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<Complex> v(n);
    for (auto &z : v) {
        z = {g(rng), g(rng)};
    }
    return v;
}

// Error scale for a dot product: sum |a_i| |b_i|.
double magnitude_scale(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::abs(a[i]) * std::abs(b[i]);
    }
    return s;
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
        if (kernels::supported(b)) {
            out.push_back(b);
        }
    }
    return out;
}

}  // namespace

TEST(kernels, scalar_reference_small_cases) {
    const auto &k = kernels::table(Backend::kScalar);
    std::vector<Complex> a = {{1, 2}, {3, -1}};
    std::vector<Complex> b = {{0, 1}, {2, 2}};
    // (1+2i)i + (3-i)(2+2i) = (-2+i) + (8+4i)
    ASSERT_EQ(kernels::dot(k, a, b), Complex(6, 5));
    // (1+2i)(-i) + (3-i)(2-2i) = (2-i) + (4-8i)
    ASSERT_EQ(kernels::dot_conj(k, a, b), Complex(6, -9));
    ASSERT_EQ(k.dot(a.data(), b.data(), 0), Complex(0, 0));
}

TEST(kernels, every_backend_matches_scalar_reference) {
    std::mt19937_64 rng(1234);
    const auto &ref = kernels::table(Backend::kScalar);
    for (Backend backend : available_backends()) {
        const auto &k = kernels::table(backend);
        for (std::size_t n = 0; n <= 67; ++n) {
            auto a = random_vector(rng, n, 1.0);
            auto b = random_vector(rng, n, 3.0);
            double tol = 4e-16 * (n + 4) * magnitude_scale(a, b) + 1e-300;
            ASSERT_LE(std::abs(kernels::dot(k, a, b) - kernels::dot(ref, a, b)), tol)
                << kernels::backend_name(backend) << " n=" << n;
            ASSERT_LE(std::abs(kernels::dot_conj(k, a, b) - kernels::dot_conj(ref, a, b)), tol)
                << kernels::backend_name(backend) << " n=" << n;
        }
    }
}

TEST(kernels, exact_on_integer_data) {
    // Small integers make every partial sum exact, so all backends agree bitwise.
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> u(-20, 20);
    for (Backend backend : available_backends()) {
        const auto &k = kernels::table(backend);
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 31u}) {
            std::vector<Complex> a(n), b(n);
            Complex want_dot{}, want_conj{};
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = {double(u(rng)), double(u(rng))};
                b[i] = {double(u(rng)), double(u(rng))};
                want_dot += a[i] * b[i];
                want_conj += a[i] * std::conj(b[i]);
            }
            ASSERT_EQ(kernels::dot(k, a, b), want_dot);
            ASSERT_EQ(kernels::dot_conj(k, a, b), want_conj);
        }
    }
}

TEST(kernels, self_conj_dot_is_real_norm) {
    std::mt19937_64 rng(99);
    for (Backend backend : available_backends()) {
        const auto &k = kernels::table(backend);
        auto a = random_vector(rng, 41, 1.0);
        Complex z = kernels::dot_conj(k, a, a);
        double norm = 0;
        for (auto &v : a) {
            norm += std::norm(v);
        }
        ASSERT_NEAR(z.real(), norm, 1e-13 * norm);
        ASSERT_NEAR(z.imag(), 0.0, 1e-13 * norm);
    }
}

TEST(kernels, matvec_rows_are_dots) {
    std::mt19937_64 rng(3);
    const auto &k = kernels::best();
    auto mat = random_vector(rng, 5 * 7, 1.0);
    auto x = random_vector(rng, 7, 1.0);
    std::vector<Complex> y(5);
    kernels::matvec(k, mat, 5, 7, x, y);
    for (std::size_t i = 0; i < 5; ++i) {
        ASSERT_EQ(y[i], k.dot(mat.data() + 7 * i, x.data(), 7));
    }
    std::vector<Complex> small(4);
    ASSERT_THROW(kernels::matvec(k, mat, 5, 7, x, small), std::invalid_argument);
}

TEST(kernels, dispatch_is_stable) {
    const auto &a = kernels::best();
    const auto &b = kernels::best();
    ASSERT_EQ(&a, &b);
    ASSERT_TRUE(kernels::supported(a.backend));
    ASSERT_TRUE(kernels::supported(Backend::kScalar));
}

TEST(kernels, unsupported_backend_is_rejected) {
    for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
        if (!kernels::supported(b)) {
            ASSERT_THROW(kernels::table(b), std::runtime_error);
        }
    }
}
