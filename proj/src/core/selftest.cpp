// Copyright 2026 The QMLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmlm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qmlm/fidelity.hpp"
#include "qmlm/learner.hpp"
#include "qmlm/linalg.hpp"
#include "qmlm/state.hpp"

namespace qmlm {

namespace {

using Rng = std::mt19937_64;

Statevector random_pure(Rng &rng, int n) {
    std::normal_distribution<double> g;
    ComplexVector v(Eigen::Index{1} << n);
    for (auto &a : v)
        a = complex_t(g(rng), g(rng));
    v.normalize();
    return Statevector::from_amplitudes(std::move(v));
}

CheckResult label_identity() {
    constexpr int kBits = 8;
    double worst = 0.0;
    std::vector<Statevector> encoded;
    std::vector<Bits> all;
    for (unsigned v = 0; v < (1u << kBits); ++v) {
        Bits b(kBits);
        for (int k = 0; k < kBits; ++k)
            b[static_cast<std::size_t>(k)] = (v >> (kBits - 1 - k)) & 1u;
        encoded.push_back(encode_label(b));
        all.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            worst = std::max(worst, std::abs(fidelity_pure(encoded[i], encoded[j]) -
                                             std::ldexp(1.0, -static_cast<int>(hamming(all[i], all[j])))));
    return {"label fidelity = 2^-hamming (L=8, all pairs)", worst <= 1e-12, worst, 1e-12};
}

CheckResult depolarized_trace(Rng &rng) {
    const double lambdas[] = {0.0, 0.3, 0.7, 1.0};
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Statevector a = random_pure(rng, 2), b = random_pure(rng, 2);
        const double f = fidelity_pure(a, b);
        for (double l1 : lambdas)
            for (double l2 : lambdas) {
                const DensityMatrix ra = depolarize_global(DensityMatrix(a), l1);
                const DensityMatrix rb = depolarize_global(DensityMatrix(b), l2);
                const double trace = (ra.matrix() * rb.matrix()).trace().real();
                const double alpha = (1 - l1) * (1 - l2);
                worst = std::max(worst, std::abs(trace - (alpha * f + (1 - alpha) / 4.0)));
            }
    }
    return {"Tr(rho1' rho2') = alpha F + (1 - alpha)/d", worst <= 1e-10, worst, 1e-10};
}

CheckResult mixed_reduces_to_pure(Rng &rng) {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 4;
        const Statevector a = random_pure(rng, n), b = random_pure(rng, n);
        worst = std::max(worst, std::abs(fidelity_mixed(DensityMatrix(a), DensityMatrix(b)) -
                                         fidelity_pure(a, b)));
    }
    return {"mixed-state fidelity reduces to |<a|b>|^2", worst <= 1e-8, worst, 1e-8};
}

CheckResult moore_penrose(Rng &rng) {
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> dim(1, 64);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int rows = dim(rng), cols = dim(rng);
        RealMatrix a(rows, cols);
        if (t % 4 == 3) {
            const int rank = std::max(1, std::min(rows, cols) / 2);
            RealMatrix l(rows, rank), r(rank, cols);
            for (auto &x : l.reshaped()) x = g(rng);
            for (auto &x : r.reshaped()) x = g(rng);
            a = l * r;
        } else {
            for (auto &x : a.reshaped()) x = g(rng);
        }
        const RealMatrix p = pinv(a);
        worst = std::max({worst, (a * p * a - a).norm() / a.norm(),
                          (p * a * p - p).norm() / p.norm(),
                          ((a * p) - (a * p).transpose()).norm(),
                          ((p * a) - (p * a).transpose()).norm()});
    }
    return {"Moore-Penrose conditions (50 random matrices)", worst <= 1e-8, worst, 1e-8};
}

} // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckResult> out;
    out.push_back(label_identity());
    out.push_back(depolarized_trace(rng));
    out.push_back(mixed_reduces_to_pure(rng));
    out.push_back(moore_penrose(rng));
    return out;
}

} // namespace qmlm
