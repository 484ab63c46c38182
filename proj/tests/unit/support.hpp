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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qmlm/linalg.hpp"
#include "qmlm/state.hpp"

namespace qmlm::testing {

using Gen = std::mt19937_64;

inline double uniform(Gen &g, double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(Gen &g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline ComplexMatrix random_complex(Gen &g, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n;
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = complex_t(n(g), n(g));
    return m;
}

inline RealMatrix random_real(Gen &g, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n;
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = n(g);
    return m;
}

inline ComplexMatrix random_hermitian(Gen &g, Eigen::Index d) {
    const ComplexMatrix a = random_complex(g, d, d);
    return (a + a.adjoint()) / 2.0;
}

inline Statevector random_statevector(Gen &g, int n_qubits) {
    ComplexVector v = random_complex(g, Eigen::Index{1} << n_qubits, 1).col(0);
    v.normalize();
    return Statevector::from_amplitudes(std::move(v));
}

// Full-rank mixed state G G^dagger / Tr(G G^dagger).
inline DensityMatrix random_density(Gen &g, int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    const ComplexMatrix a = random_complex(g, d, d);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::from_matrix(rho);
}

inline Circuit random_circuit(Gen &g, int n_qubits, int n_gates) {
    Circuit c(n_qubits);
    for (int k = 0; k < n_gates; ++k) {
        const int kind = uniform_int(g, 0, n_qubits > 1 ? 3 : 2);
        const int q = uniform_int(g, 0, n_qubits - 1);
        switch (kind) {
        case 0: c.add(Gate::rx(q, uniform(g, -M_PI, M_PI))); break;
        case 1: c.add(Gate::rz(q, uniform(g, -M_PI, M_PI))); break;
        case 2: c.add(Gate::h(q)); break;
        default: {
            int t = uniform_int(g, 0, n_qubits - 2);
            if (t >= q)
                ++t;
            c.add(Gate::cnot(q, t));
        }
        }
    }
    return c;
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.cwiseAbs().maxCoeff();
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, complex_t(0, -1), complex_t(0, 1), 0;
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

} // namespace qmlm::testing
