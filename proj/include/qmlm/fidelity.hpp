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

#include <span>
#include <vector>

#include "qmlm/linalg.hpp"
#include "qmlm/state.hpp"

namespace qmlm {

/// Symmetric matrix of pairwise fidelities with unit diagonal.
class GramMatrix {
  public:
    /// Checks symmetry (1e-10), unit diagonal (1e-9) and range [-1e-9, 1 + 1e-9].
    explicit GramMatrix(RealMatrix values);

    Eigen::Index size() const noexcept { return values_.rows(); }
    const RealMatrix &values() const noexcept { return values_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  private:
    RealMatrix values_;
};

/// A density matrix together with its principal square root, so that repeated
/// fidelity evaluations against it skip the eigendecomposition.
class RootedState {
  public:
    explicit RootedState(DensityMatrix rho);

    const DensityMatrix &state() const noexcept { return rho_; }
    Eigen::Index dim() const noexcept { return rho_.dim(); }
    const ComplexMatrix &root() const noexcept { return root_; }

  private:
    DensityMatrix rho_;
    ComplexMatrix root_;
};

/// |<a|b>|^2
double fidelity_pure(const Statevector &a, const Statevector &b);

/// <psi|rho|psi>
double fidelity_pure_mixed(const Statevector &psi, const DensityMatrix &rho);

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2, clamped to [0, 1].
double fidelity_mixed(const DensityMatrix &a, const DensityMatrix &b);
double fidelity_mixed(const RootedState &a, const RootedState &b);

GramMatrix gram_pure(std::span<const Statevector> states);

/// Independent (i, j) pairs are spread over `threads` workers (0 = default);
/// the result does not depend on the thread count.
GramMatrix gram_mixed(std::span<const DensityMatrix> states, unsigned threads = 1);
GramMatrix gram_mixed(std::span<const RootedState> states, unsigned threads = 1);

struct ConcentrationStats {
    double mean;
    double variance;
};

/// Mean and population variance of the strictly off-diagonal entries.
ConcentrationStats concentration_stats(const GramMatrix &g);

} // namespace qmlm
