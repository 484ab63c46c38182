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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qmlm/fidelity.hpp"
#include "qmlm/linalg.hpp"
#include "qmlm/state.hpp"

namespace qmlm {

/// Header-less rows of comma-separated decimals.
void write_real_matrix_csv(std::ostream &out, const RealMatrix &m, int significant_digits = 17);
RealMatrix read_real_matrix_csv(std::istream &in);

/// Gram dump: N rows of N entries, 17 significant digits.
void write_gram_csv(std::ostream &out, const GramMatrix &g);

/// One "re,im" row per amplitude.
void write_statevector_csv(std::ostream &out, const Statevector &psi);
Statevector read_statevector_csv(std::istream &in);

/// d rows of 2d columns: re, im pairs interleaved along each row.
void write_density_csv(std::ostream &out, const DensityMatrix &rho);
DensityMatrix read_density_csv(std::istream &in);

using AnyState = std::variant<Statevector, DensityMatrix>;

/// Reads either file layout above, told apart by the column count.
AnyState read_state_csv(std::istream &in);
AnyState load_state_file(const std::filesystem::path &path);

/// Every *.csv file in `dir`, in lexicographic filename order.
std::vector<AnyState> load_state_dir(const std::filesystem::path &dir);

/// gram_pure when every state is pure, otherwise gram_mixed with pure states
/// promoted to density matrices.
GramMatrix gram_of(const std::vector<AnyState> &states, unsigned threads = 1);

} // namespace qmlm
