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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "qmlm/fidelity.hpp"
#include "qmlm/linalg.hpp"
#include "qmlm/mlm.hpp"
#include "qmlm/state.hpp"

namespace qmlm {

/// Tensor product of |+> for every set bit and |0> for every clear bit.
Statevector encode_label(const Bits &bits);

/// Inverse of encode_label; throws NotAnEncodedLabel for any other state.
Bits decode_label(const Statevector &state);

/// 2^-hamming(a, b), the fidelity of the two encoded label states.
double label_fidelity(const Bits &a, const Bits &b);

/// Quantum minimal learning machine. Learns B from
///   gram_mixed(inputs) * B = gram_pure(outputs)
/// and predicts the training output with the largest mapped similarity.
class QmlmModel {
  public:
    std::size_t size() const noexcept { return outputs_.size(); }
    int input_qubits() const { return inputs_.front().state().n_qubits(); }
    int output_qubits() const { return outputs_.front().n_qubits(); }

    const std::vector<RootedState> &train_inputs() const noexcept { return inputs_; }
    const std::vector<Statevector> &train_outputs() const noexcept { return outputs_; }
    /// Present for models trained on encoded labels.
    const std::optional<std::vector<Bits>> &train_labels() const noexcept { return labels_; }
    const RealMatrix &b() const noexcept { return b_; }
    /// Effective pseudoinverse cutoff (the default is resolved at training time).
    double rcond() const noexcept { return rcond_; }

    /// Seed of the run that produced the training data, kept for provenance.
    std::uint64_t seed() const noexcept { return seed_; }
    void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

  private:
    friend QmlmModel train_qmlm(std::vector<DensityMatrix>, std::vector<Statevector>, double,
                                unsigned);
    friend QmlmModel train_qmlm_labels(std::vector<DensityMatrix>, const std::vector<Bits> &,
                                       double, unsigned);
    friend QmlmModel load_qmlm_model(const std::filesystem::path &);

    std::vector<RootedState> inputs_;
    std::vector<Statevector> outputs_;
    std::optional<std::vector<Bits>> labels_;
    RealMatrix b_;
    double rcond_ = 0.0;
    std::uint64_t seed_ = 0;
};

QmlmModel train_qmlm(std::vector<DensityMatrix> inputs, std::vector<Statevector> outputs,
                     double rcond = kDefaultRcond, unsigned threads = 1);

/// Multi-label variant: outputs are the encoded label states.
QmlmModel train_qmlm_labels(std::vector<DensityMatrix> inputs, const std::vector<Bits> &labels,
                            double rcond = kDefaultRcond, unsigned threads = 1);

struct QmlmPrediction {
    std::size_t index;
    Statevector state;
};

/// Fidelities of `test` to every training input, as a vector indexed like the
/// training set.
RealVector fidelity_row(const QmlmModel &model, const DensityMatrix &test);

/// Mapped similarities f * B for the fidelity row f (returned as a column).
RealVector similarity(const QmlmModel &model, const DensityMatrix &test);

/// Argmax of similarity(); ties go to the lowest index.
QmlmPrediction predict_qmlm(const QmlmModel &model, const DensityMatrix &test);

Bits predict_label_qmlm(const QmlmModel &model, const DensityMatrix &test);

/// Fidelity between the predicted and the true ideal state.
double prediction_quality(const Statevector &predicted, const Statevector &true_ideal);

/// Directory layout: inputs/rho_NNNN.csv, outputs/psi_NNNN.csv, b.csv, meta.
void save_qmlm_model(const QmlmModel &model, const std::filesystem::path &dir);
QmlmModel load_qmlm_model(const std::filesystem::path &dir);

} // namespace qmlm
