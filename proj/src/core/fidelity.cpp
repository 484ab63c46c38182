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

#include "qmlm/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "qmlm/error.hpp"

namespace qmlm {

namespace {

double clamp_unit(double f) { return std::clamp(f, 0.0, 1.0); }

void require_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b)
        fail(Errc::DimensionMismatch,
             "state dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

// (Tr sqrt(sqrt(a) b sqrt(a)))^2 from the eigenvalues of the symmetrized
// product. Eigenvalues at or below dim * eps * max(1, lambda_max) are rounding
// noise; their square roots (~1e-8 each) would otherwise inflate the fidelity
// of (near-)pure states.
double fidelity_from_root(const ComplexMatrix &root_a, const ComplexMatrix &b) {
    ComplexMatrix m = root_a * b * root_a;
    m = (m + m.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(Errc::NoConvergence, "eigensolver did not converge in fidelity");
    const RealVector &lambda = solver.eigenvalues();
    const double cutoff = static_cast<double>(lambda.size()) *
                          std::numeric_limits<double>::epsilon() *
                          std::max(1.0, lambda.maxCoeff());
    double trace_root = 0.0;
    for (double l : lambda)
        if (l > cutoff)
            trace_root += std::sqrt(l);
    return clamp_unit(trace_root * trace_root);
}

template <class State, class Fidelity>
GramMatrix build_gram(std::span<const State> states, unsigned threads, Fidelity &&fid) {
    if (states.empty())
        fail(Errc::InvalidArgument, "Gram matrix of an empty state list");
    const auto n = static_cast<Eigen::Index>(states.size());
    for (const State &s : states)
        require_same_dim(states.front().dim(), s.dim());

    RealMatrix g = RealMatrix::Identity(n, n);
    // Row i owns entries (i, j > i); rows are written by one worker each.
    detail::parallel_for(states.size(), threads, [&](std::size_t row) {
        const auto i = static_cast<Eigen::Index>(row);
        for (Eigen::Index j = i + 1; j < n; ++j)
            g(i, j) = fid(states[row], states[static_cast<std::size_t>(j)]);
    });
    g.triangularView<Eigen::StrictlyLower>() = g.transpose().triangularView<Eigen::StrictlyLower>();
    return GramMatrix(std::move(g));
}

} // namespace

GramMatrix::GramMatrix(RealMatrix values) : values_(std::move(values)) {
    if (values_.rows() != values_.cols() || values_.rows() == 0)
        fail(Errc::DimensionMismatch, "Gram matrix must be square and non-empty");
    if (!values_.allFinite())
        fail(Errc::InvalidArgument, "Gram matrix has non-finite entries");
    const double asym = (values_ - values_.transpose()).cwiseAbs().maxCoeff();
    const double diag = (values_.diagonal().array() - 1.0).abs().maxCoeff();
    if (asym > 1e-10 || diag > 1e-9 || values_.minCoeff() < -1e-9 ||
        values_.maxCoeff() > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "not a fidelity Gram matrix (asymmetry " << asym << ", diagonal error " << diag
           << ", range [" << values_.minCoeff() << ", " << values_.maxCoeff() << "])";
        fail(Errc::InvalidArgument, os.str());
    }
}

RootedState::RootedState(DensityMatrix rho)
    : rho_(std::move(rho)), root_(matrix_sqrt_psd(rho_.matrix())) {}

double fidelity_pure(const Statevector &a, const Statevector &b) {
    require_same_dim(a.dim(), b.dim());
    return clamp_unit(std::norm(a.amplitudes().dot(b.amplitudes())));
}

double fidelity_pure_mixed(const Statevector &psi, const DensityMatrix &rho) {
    require_same_dim(psi.dim(), rho.dim());
    const ComplexVector &v = psi.amplitudes();
    return clamp_unit(v.dot(rho.matrix() * v).real());
}

double fidelity_mixed(const DensityMatrix &a, const DensityMatrix &b) {
    require_same_dim(a.dim(), b.dim());
    return fidelity_from_root(matrix_sqrt_psd(a.matrix()), b.matrix());
}

double fidelity_mixed(const RootedState &a, const RootedState &b) {
    require_same_dim(a.state().dim(), b.state().dim());
    return fidelity_from_root(a.root(), b.state().matrix());
}

GramMatrix gram_pure(std::span<const Statevector> states) {
    return build_gram(states, 1, [](const Statevector &a, const Statevector &b) {
        return fidelity_pure(a, b);
    });
}

GramMatrix gram_mixed(std::span<const DensityMatrix> states, unsigned threads) {
    std::vector<RootedState> rooted;
    rooted.reserve(states.size());
    for (const DensityMatrix &rho : states)
        rooted.emplace_back(rho);
    return gram_mixed(std::span<const RootedState>(rooted), threads);
}

GramMatrix gram_mixed(std::span<const RootedState> states, unsigned threads) {
    return build_gram(states, detail::resolve_threads(threads),
                      [](const RootedState &a, const RootedState &b) {
                          return fidelity_mixed(a, b);
                      });
}

ConcentrationStats concentration_stats(const GramMatrix &g) {
    const Eigen::Index n = g.size();
    if (n < 2)
        fail(Errc::TooSmall, "concentration statistics need at least two states");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j)
                sum += g(i, j);
    const double count = static_cast<double>(n * (n - 1));
    const double mean = sum / count;
    double var = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j)
                var += (g(i, j) - mean) * (g(i, j) - mean);
    return {mean, var / count};
}

} // namespace qmlm
