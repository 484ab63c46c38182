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
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qmlm/learner.hpp"
#include "qmlm/state.hpp"

namespace qmlm {

/// Layered hardware-efficient ansatz: RX, RZ on every qubit, then a linear
/// CNOT chain, repeated `layers` times.
struct AnsatzSpec {
    int n_qubits = 3;
    int layers = 1;
    double delta = std::numbers::pi / 8; // angles drawn from [-delta, +delta]

    std::size_t parameter_count() const noexcept {
        return 2 * static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(layers);
    }
    void validate() const;
};

/// Depolarizing probability after each single-qubit (p1) and two-qubit (p2) gate.
struct NoiseSpec {
    double p1 = 0.001;
    double p2 = 0.01;

    void validate() const;
};

enum class SweepKind { Qubits, Delta, Layers, Noise };

const char *sweep_name(SweepKind kind) noexcept;
SweepKind sweep_kind_from_name(const std::string &name);

struct ExperimentConfig {
    AnsatzSpec ansatz;
    NoiseSpec noise;
    std::vector<std::size_t> dataset_sizes{10, 20, 40, 80, 160, 320};
    std::size_t trials = 400;
    std::uint64_t seed = 20250101;
    SweepKind sweep = SweepKind::Qubits;
    /// Qubit counts, deltas, layer counts or noise scale factors.
    std::vector<double> sweep_values{1, 2, 3, 4, 5};
    double rcond = kDefaultRcond;
    /// 0 = QMLM_THREADS or all cores.
    unsigned threads = 0;

    void validate() const;

    /// Ansatz and noise with the given sweep value substituted in.
    AnsatzSpec ansatz_for(double sweep_value) const;
    NoiseSpec noise_for(double sweep_value) const;
};

struct SweepRecord {
    SweepKind sweep;
    double sweep_value;
    std::size_t dataset_size;
    double mean_fidelity;
    double std_error;
    std::size_t trials;
    std::uint64_t seed;
};

using Rng = std::mt19937_64;

/// Stream tag used for the training dataset of a sweep cell.
inline constexpr std::uint64_t kTrainingStream = ~std::uint64_t{0};

/// Independent generator for one (sweep value, dataset size, trial) cell,
/// derived from the base seed by a stable hash.
Rng derive_stream(std::uint64_t seed, double sweep_value, std::size_t dataset_size,
                  std::uint64_t index);

std::vector<double> sample_thetas(Rng &rng, std::size_t count, double delta);

/// Angles are consumed qubit-major within a layer, layer after layer.
Circuit build_ansatz(const AnsatzSpec &spec, std::span<const double> thetas);

struct Dataset {
    std::vector<DensityMatrix> inputs;  // noisy
    std::vector<Statevector> outputs;   // ideal
};

Dataset generate_dataset(const AnsatzSpec &spec, const NoiseSpec &noise, std::size_t n, Rng &rng);

/// One fresh test circuit: predicts from its noisy state and scores the
/// prediction against its ideal state.
double run_trial(const QmlmModel &model, const AnsatzSpec &spec, const NoiseSpec &noise, Rng &rng);

using RecordSink = std::function<void(const SweepRecord &)>;

/// Trains on a fresh dataset for every (sweep value, dataset size) cell and
/// averages `trials` predictions. The sink sees each record as soon as it is
/// complete. Output does not depend on the thread count.
std::vector<SweepRecord> run_sweep(const ExperimentConfig &config, const RecordSink &sink = {});

/// "key = value" lines; '#' starts a comment. Lists are comma separated and
/// angles accept forms such as "pi", "pi/8" and "3*pi/4".
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::filesystem::path &path);

std::string sweep_csv_header();
std::string format_record(const SweepRecord &record);

} // namespace qmlm
