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

#include "qmlm/state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "qmlm/error.hpp"

namespace qmlm {

namespace {

constexpr int kMaxQubits = 16;

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits)
        fail(Errc::InvalidArgument,
             "qubit count " + std::to_string(n) + " outside [1, " +
                 std::to_string(kMaxQubits) + "]");
}

int qubits_for_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim)
        ++n;
    if ((Eigen::Index{1} << n) != dim || n < 1)
        fail(Errc::DimensionMismatch,
             "dimension " + std::to_string(dim) + " is not a power of two >= 2");
    check_qubit_count(n);
    return n;
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "probability " << p << " outside [0, 1]";
        fail(Errc::ProbabilityOutOfRange, os.str());
    }
}

inline std::size_t bit_mask(int n_qubits, int q) {
    return std::size_t{1} << (n_qubits - 1 - q);
}

// In-place U acting on qubit q of one contiguous amplitude column.
void apply_1q_column(complex_t *col, std::size_t dim, std::size_t mask,
                     const ComplexMatrix &u) {
    const complex_t u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t i0 = 0; i0 < dim; ++i0) {
        if (i0 & mask)
            continue;
        const std::size_t i1 = i0 | mask;
        const complex_t a0 = col[i0], a1 = col[i1];
        col[i0] = u00 * a0 + u01 * a1;
        col[i1] = u10 * a0 + u11 * a1;
    }
}

// In-place m <- U m with U on qubit q.
void left_apply_1q(ComplexMatrix &m, int n, int q, const ComplexMatrix &u) {
    const std::size_t mask = bit_mask(n, q);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        apply_1q_column(m.col(c).data(), static_cast<std::size_t>(m.rows()), mask, u);
}

// In-place m <- m U^dagger with U on qubit q.
void right_apply_1q_adjoint(ComplexMatrix &m, int n, int q, const ComplexMatrix &u) {
    const std::size_t mask = bit_mask(n, q);
    const auto dim = static_cast<std::size_t>(m.cols());
    const complex_t c00 = std::conj(u(0, 0)), c01 = std::conj(u(0, 1)),
                    c10 = std::conj(u(1, 0)), c11 = std::conj(u(1, 1));
    for (std::size_t j0 = 0; j0 < dim; ++j0) {
        if (j0 & mask)
            continue;
        const std::size_t j1 = j0 | mask;
        auto col0 = m.col(static_cast<Eigen::Index>(j0));
        auto col1 = m.col(static_cast<Eigen::Index>(j1));
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const complex_t a0 = col0(r), a1 = col1(r);
            col0(r) = a0 * c00 + a1 * c01;
            col1(r) = a0 * c10 + a1 * c11;
        }
    }
}

template <class Fn>
void for_each_cnot_swap(std::size_t dim, std::size_t cmask, std::size_t tmask, Fn &&fn) {
    for (std::size_t i = 0; i < dim; ++i)
        if ((i & cmask) && !(i & tmask))
            fn(i, i | tmask);
}

} // namespace

// ---- Statevector -----------------------------------------------------------

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_ = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
    amps_(0) = 1.0;
}

Statevector Statevector::from_amplitudes(ComplexVector amplitudes) {
    const int n = qubits_for_dim(amplitudes.size());
    if (!amplitudes.allFinite())
        fail(Errc::InvalidArgument, "statevector has non-finite amplitudes");
    const double norm2 = amplitudes.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "statevector norm^2 is " << std::setprecision(17) << norm2;
        fail(Errc::InvalidArgument, os.str());
    }
    return Statevector(n, std::move(amplitudes));
}

Statevector Statevector::basis(int n_qubits, std::size_t index) {
    Statevector s(n_qubits);
    if (index >= static_cast<std::size_t>(s.dim()))
        fail(Errc::InvalidArgument, "basis index out of range");
    s.amps_(0) = 0.0;
    s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
}

// ---- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    rho_ = ComplexMatrix::Zero(d, d);
    rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(const Statevector &psi)
    : n_qubits_(psi.n_qubits()), rho_(psi.outer()) {}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix matrix) {
    if (matrix.rows() != matrix.cols())
        fail(Errc::DimensionMismatch, "density matrix must be square");
    const int n = qubits_for_dim(matrix.rows());
    if (!matrix.allFinite())
        fail(Errc::InvalidArgument, "density matrix has non-finite entries");
    const double dev = hermitian_deviation(matrix);
    if (dev > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix deviates from Hermitian by " << dev;
        fail(Errc::NotHermitian, os.str());
    }
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "density matrix trace is " << std::setprecision(17) << tr;
        fail(Errc::InvalidArgument, os.str());
    }
    const RealVector lambda = hermitian_eigenvalues(matrix);
    if (lambda(0) < -kPsdTol) {
        std::ostringstream os;
        os << "density matrix has eigenvalue " << lambda(0);
        fail(Errc::NotPSD, os.str());
    }
    return DensityMatrix(n, std::move(matrix));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    DensityMatrix rho(n_qubits);
    const auto d = rho.dim();
    rho.rho_ = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    return rho;
}

double DensityMatrix::purity() const {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return rho_.squaredNorm();
}

// ---- Gates and circuits ----------------------------------------------------

std::vector<int> Gate::qubits() const {
    if (kind == GateKind::CNOT)
        return {control, target};
    return {target};
}

ComplexMatrix Gate::unitary() const {
    using namespace std::complex_literals;
    switch (kind) {
    case GateKind::RX: {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        ComplexMatrix u(2, 2);
        u << c, -1i * s, -1i * s, c;
        return u;
    }
    case GateKind::RZ: {
        ComplexMatrix u = ComplexMatrix::Zero(2, 2);
        u(0, 0) = std::exp(-0.5i * theta);
        u(1, 1) = std::exp(0.5i * theta);
        return u;
    }
    case GateKind::H: {
        ComplexMatrix u(2, 2);
        u << 1, 1, 1, -1;
        return u * (std::numbers::sqrt2 / 2);
    }
    case GateKind::CNOT: {
        ComplexMatrix u = ComplexMatrix::Zero(4, 4);
        u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
        return u;
    }
    }
    return {};
}

void validate_gate(const Gate &gate, int n_qubits) {
    auto check = [n_qubits](int q) {
        if (q < 0 || q >= n_qubits)
            fail(Errc::InvalidQubitIndex, "qubit " + std::to_string(q) +
                                              " outside a " + std::to_string(n_qubits) +
                                              "-qubit register");
    };
    check(gate.target);
    if (gate.kind == GateKind::CNOT) {
        check(gate.control);
        if (gate.control == gate.target)
            fail(Errc::InvalidQubitIndex, "CNOT control equals target");
    }
    if (!std::isfinite(gate.theta))
        fail(Errc::InvalidArgument, "non-finite rotation angle");
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) { check_qubit_count(n_qubits); }

Circuit &Circuit::add(const Gate &gate) {
    validate_gate(gate, n_qubits_);
    gates_.push_back(gate);
    return *this;
}

std::string circuit_to_text(const Circuit &circuit) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "QUBITS " << circuit.n_qubits() << '\n';
    for (const Gate &g : circuit.gates()) {
        switch (g.kind) {
        case GateKind::RX: os << "RX " << g.target << ' ' << g.theta; break;
        case GateKind::RZ: os << "RZ " << g.target << ' ' << g.theta; break;
        case GateKind::H: os << "H " << g.target; break;
        case GateKind::CNOT: os << "CNOT " << g.control << ' ' << g.target; break;
        }
        os << '\n';
    }
    return os.str();
}

Circuit circuit_from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Circuit> circuit;
    auto parse_error = [&](const std::string &msg) {
        fail(Errc::Parse, "line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string op;
        if (!(fields >> op))
            continue;
        if (!circuit) {
            int n = 0;
            if (op != "QUBITS" || !(fields >> n))
                parse_error("expected 'QUBITS n' header");
            circuit.emplace(n);
        } else if (op == "RX" || op == "RZ") {
            int q = 0;
            double theta = 0.0;
            if (!(fields >> q >> theta))
                parse_error("expected '" + op + " qubit angle'");
            circuit->add(op == "RX" ? Gate::rx(q, theta) : Gate::rz(q, theta));
        } else if (op == "H") {
            int q = 0;
            if (!(fields >> q))
                parse_error("expected 'H qubit'");
            circuit->add(Gate::h(q));
        } else if (op == "CNOT") {
            int c = 0, t = 0;
            if (!(fields >> c >> t))
                parse_error("expected 'CNOT control target'");
            circuit->add(Gate::cnot(c, t));
        } else {
            parse_error("unknown gate '" + op + "'");
        }
        std::string extra;
        if (fields >> extra)
            parse_error("trailing token '" + extra + "'");
    }
    if (!circuit)
        fail(Errc::Parse, "missing 'QUBITS n' header");
    return *std::move(circuit);
}

// ---- Simulation ------------------------------------------------------------

Statevector apply_gate_pure(const Statevector &state, const Gate &gate) {
    const int n = state.n_qubits();
    validate_gate(gate, n);
    Statevector out = state;
    ComplexVector &amps = out.mutable_amplitudes();
    if (gate.kind == GateKind::CNOT) {
        for_each_cnot_swap(static_cast<std::size_t>(amps.size()), bit_mask(n, gate.control),
                           bit_mask(n, gate.target), [&](std::size_t a, std::size_t b) {
                               std::swap(amps(static_cast<Eigen::Index>(a)),
                                         amps(static_cast<Eigen::Index>(b)));
                           });
    } else {
        apply_1q_column(amps.data(), static_cast<std::size_t>(amps.size()),
                        bit_mask(n, gate.target), gate.unitary());
    }
    return out;
}

DensityMatrix apply_gate_mixed(const DensityMatrix &rho, const Gate &gate) {
    const int n = rho.n_qubits();
    validate_gate(gate, n);
    DensityMatrix out = rho;
    ComplexMatrix &m = out.mutable_matrix();
    if (gate.kind == GateKind::CNOT) {
        const auto dim = static_cast<std::size_t>(m.rows());
        for_each_cnot_swap(dim, bit_mask(n, gate.control), bit_mask(n, gate.target),
                           [&](std::size_t a, std::size_t b) {
                               m.row(static_cast<Eigen::Index>(a))
                                   .swap(m.row(static_cast<Eigen::Index>(b)));
                           });
        for_each_cnot_swap(dim, bit_mask(n, gate.control), bit_mask(n, gate.target),
                           [&](std::size_t a, std::size_t b) {
                               m.col(static_cast<Eigen::Index>(a))
                                   .swap(m.col(static_cast<Eigen::Index>(b)));
                           });
    } else {
        const ComplexMatrix u = gate.unitary();
        left_apply_1q(m, n, gate.target, u);
        right_apply_1q_adjoint(m, n, gate.target, u);
    }
    return out;
}

DensityMatrix depolarize_global(const DensityMatrix &rho, double p) {
    check_probability(p);
    DensityMatrix out = rho;
    ComplexMatrix &m = out.mutable_matrix();
    m *= (1.0 - p);
    m.diagonal().array() += p / static_cast<double>(m.rows());
    return out;
}

DensityMatrix depolarize_local(const DensityMatrix &rho, const std::vector<int> &qubits,
                               double p) {
    check_probability(p);
    const int n = rho.n_qubits();
    if (qubits.empty() || qubits.size() > 2)
        fail(Errc::InvalidArgument, "local depolarizing acts on one or two qubits");
    for (int q : qubits)
        if (q < 0 || q >= n)
            fail(Errc::InvalidQubitIndex, "qubit " + std::to_string(q) + " out of range");
    if (qubits.size() == 2 && qubits[0] == qubits[1])
        fail(Errc::InvalidQubitIndex, "repeated qubit in local depolarizing");
    if (p == 0.0)
        return rho;

    // Bit patterns of the subsystem, indexed by the subsystem basis index k.
    std::vector<std::size_t> patterns(std::size_t{1} << qubits.size(), 0);
    for (std::size_t k = 0; k < patterns.size(); ++k)
        for (std::size_t b = 0; b < qubits.size(); ++b)
            if (k & (std::size_t{1} << (qubits.size() - 1 - b)))
                patterns[k] |= bit_mask(n, qubits[b]);
    std::size_t sub_mask = 0;
    for (int q : qubits)
        sub_mask |= bit_mask(n, q);

    const ComplexMatrix &in = rho.matrix();
    const auto dim = static_cast<std::size_t>(in.rows());
    const double d_sub = static_cast<double>(patterns.size());
    DensityMatrix out = rho;
    ComplexMatrix &m = out.mutable_matrix();
    m *= (1.0 - p);
    for (std::size_t jr = 0; jr < dim; ++jr) {
        if (jr & sub_mask)
            continue;
        for (std::size_t ir = 0; ir < dim; ++ir) {
            if (ir & sub_mask)
                continue;
            complex_t partial = 0.0;
            for (std::size_t pat : patterns)
                partial += in(static_cast<Eigen::Index>(ir | pat),
                              static_cast<Eigen::Index>(jr | pat));
            partial *= p / d_sub;
            for (std::size_t pat : patterns)
                m(static_cast<Eigen::Index>(ir | pat), static_cast<Eigen::Index>(jr | pat)) +=
                    partial;
        }
    }
    return out;
}

Statevector simulate_ideal(const Circuit &circuit) {
    Statevector state(circuit.n_qubits());
    for (const Gate &g : circuit.gates())
        state = apply_gate_pure(state, g);
    return state;
}

DensityMatrix simulate_noisy(const Circuit &circuit, double p1, double p2) {
    check_probability(p1);
    check_probability(p2);
    DensityMatrix rho(circuit.n_qubits());
    for (const Gate &g : circuit.gates()) {
        rho = apply_gate_mixed(rho, g);
        rho = depolarize_local(rho, g.qubits(), g.arity() == 2 ? p2 : p1);
    }
    return rho;
}

double expectation(const ComplexMatrix &op, const DensityMatrix &rho) {
    if (op.rows() != rho.dim() || op.cols() != rho.dim())
        fail(Errc::DimensionMismatch, "operator dimension " + std::to_string(op.rows()) + "x" +
                                          std::to_string(op.cols()) + " vs state dimension " +
                                          std::to_string(rho.dim()));
    const double dev = hermitian_deviation(op);
    if (dev > kHermitianTol) {
        std::ostringstream os;
        os << "observable deviates from Hermitian by " << dev;
        fail(Errc::NotHermitian, os.str());
    }
    // Tr(A B) = sum_ij A_ij B_ji
    return op.cwiseProduct(rho.matrix().transpose()).sum().real();
}

} // namespace qmlm
