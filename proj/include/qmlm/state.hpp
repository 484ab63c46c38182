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

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmlm/linalg.hpp"

namespace qmlm {

// Qubit ordering is big-endian throughout: qubit 0 is the leftmost tensor
// factor, so qubit q is bit (n - 1 - q) of a basis index.

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;

/// Pure state of n qubits.
class Statevector {
  public:
    /// |0...0>
    explicit Statevector(int n_qubits);

    /// Validates dimension 2^n and unit norm within kNormTol.
    static Statevector from_amplitudes(ComplexVector amplitudes);

    /// Computational basis state |index>.
    static Statevector basis(int n_qubits, std::size_t index);

    int n_qubits() const noexcept { return n_qubits_; }
    Eigen::Index dim() const noexcept { return amps_.size(); }
    const ComplexVector &amplitudes() const noexcept { return amps_; }
    ComplexVector &mutable_amplitudes() noexcept { return amps_; }

    /// |psi><psi|
    ComplexMatrix outer() const { return amps_ * amps_.adjoint(); }

  private:
    Statevector(int n_qubits, ComplexVector amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    int n_qubits_;
    ComplexVector amps_;
};

/// Mixed state of n qubits.
class DensityMatrix {
  public:
    /// |0...0><0...0|
    explicit DensityMatrix(int n_qubits);
    explicit DensityMatrix(const Statevector &psi);

    /// Validates Hermiticity, unit trace and positivity (eigenvalues >= -kPsdTol).
    static DensityMatrix from_matrix(ComplexMatrix matrix);

    /// I / d
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const noexcept { return n_qubits_; }
    Eigen::Index dim() const noexcept { return rho_.rows(); }
    const ComplexMatrix &matrix() const noexcept { return rho_; }
    ComplexMatrix &mutable_matrix() noexcept { return rho_; }

    double purity() const;

  private:
    DensityMatrix(int n_qubits, ComplexMatrix rho)
        : n_qubits_(n_qubits), rho_(std::move(rho)) {}

    int n_qubits_;
    ComplexMatrix rho_;
};

enum class GateKind { RX, RZ, H, CNOT };

struct Gate {
    GateKind kind;
    int target = 0;
    int control = -1; // CNOT only
    double theta = 0.0;

    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }

    int arity() const noexcept { return kind == GateKind::CNOT ? 2 : 1; }

    /// Qubits touched, control first for CNOT.
    std::vector<int> qubits() const;

    /// 2x2 matrix for single-qubit gates; 4x4 (control, target order) for CNOT.
    ComplexMatrix unitary() const;

    bool operator==(const Gate &) const = default;
};

/// Throws InvalidQubitIndex unless the gate fits on n_qubits.
void validate_gate(const Gate &gate, int n_qubits);

class Circuit {
  public:
    explicit Circuit(int n_qubits);

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }

    Circuit &add(const Gate &gate);

    bool operator==(const Circuit &) const = default;

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// Line-oriented text form: "QUBITS n" then one of "RX q theta", "RZ q theta",
/// "H q", "CNOT c t" per line. Angles use 17 significant digits.
std::string circuit_to_text(const Circuit &circuit);
Circuit circuit_from_text(const std::string &text);

Statevector apply_gate_pure(const Statevector &state, const Gate &gate);
DensityMatrix apply_gate_mixed(const DensityMatrix &rho, const Gate &gate);

/// (1 - p) rho + (p / d) I
DensityMatrix depolarize_global(const DensityMatrix &rho, double p);

/// (1 - p) rho + (p / d_sub) Tr_sub(rho) (x) I_sub on one or two qubits.
DensityMatrix depolarize_local(const DensityMatrix &rho, const std::vector<int> &qubits,
                               double p);

Statevector simulate_ideal(const Circuit &circuit);

/// Each gate is followed by depolarize_local on its own qubits with p1
/// (single-qubit gates) or p2 (CNOT).
DensityMatrix simulate_noisy(const Circuit &circuit, double p1, double p2);

/// Re Tr(op rho)
double expectation(const ComplexMatrix &op, const DensityMatrix &rho);

} // namespace qmlm
