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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qmlm/linalg.hpp"

namespace qmlm {

/// Multi-hot label vector, one entry (0 or 1) per class.
using Bits = std::vector<std::uint8_t>;

std::string bits_to_string(const Bits &bits);
Bits bits_from_string(const std::string &text);

/// Number of positions where a and b differ.
std::size_t hamming(const Bits &a, const Bits &b);

struct LabeledDataset {
    std::vector<RealVector> inputs;
    std::vector<Bits> labels;
    /// When set, validate() also requires some instance to carry more than one label.
    bool multi_label = false;

    std::size_t size() const noexcept { return inputs.size(); }
    void validate() const;
};

/// Classical minimal learning machine: reference points, training labels and
/// the coefficient matrix mapping input distances to label distances.
struct MlmModel {
    std::vector<RealVector> references;
    std::vector<Bits> train_labels;
    RealMatrix b; // K x N
};

struct MlmPrediction {
    std::size_t index;
    Bits label;
};

/// entry (i, j) = ||points[i] - refs[j]||_2
RealMatrix distance_matrix(std::span<const RealVector> points, std::span<const RealVector> refs);

/// Reference set defaults to the training inputs.
MlmModel train_mlm(const LabeledDataset &data, double rcond = kDefaultRcond);
MlmModel train_mlm(const LabeledDataset &data, std::span<const RealVector> refs,
                   double rcond = kDefaultRcond);

/// Argmin of the estimated output distances; ties go to the lowest index.
MlmPrediction predict_mlm(const MlmModel &model, const RealVector &x);

/// CSV with a header "x_1,...,x_M,y_1,...,y_L" and one instance per row.
LabeledDataset read_dataset_csv(std::istream &in);
void write_dataset_csv(std::ostream &out, const LabeledDataset &data);

/// Model dump: "# references", "# labels" and "# b" blocks of CSV rows.
void write_mlm_model(std::ostream &out, const MlmModel &model);
MlmModel read_mlm_model(std::istream &in);

} // namespace qmlm
