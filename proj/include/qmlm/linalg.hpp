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

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace qmlm {

using complex_t = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascend; the
/// eigenvectors are the columns of a unitary matrix.
struct HermitianEigen {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

/// Sentinel meaning "use the default cutoff max(rows, cols) * eps".
inline constexpr double kDefaultRcond = -1.0;

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest elementwise |a - a^dagger|.
double hermitian_deviation(const ComplexMatrix &a);

HermitianEigen hermitian_eig(const ComplexMatrix &a);

/// Eigenvalues only; same validation as hermitian_eig.
RealVector hermitian_eigenvalues(const ComplexMatrix &a);

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues down to -kPsdTol are accepted and clamped to zero. Eigenvalues
/// below dim * eps * lambda_max are rounding noise and are zeroed as well, so
/// that the root of a rank-deficient state stays rank-deficient.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &a);

/// Moore-Penrose pseudoinverse via SVD. Singular values <= rcond * sigma_max
/// are treated as zero. A negative rcond selects the default cutoff.
ComplexMatrix pinv(const ComplexMatrix &a, double rcond = kDefaultRcond);
RealMatrix pinv(const RealMatrix &a, double rcond = kDefaultRcond);

/// Least-squares B with dx * B ~= dy, computed as pinv(dx) * dy.
ComplexMatrix solve_linear_map(const ComplexMatrix &dx, const ComplexMatrix &dy,
                               double rcond = kDefaultRcond);
RealMatrix solve_linear_map(const RealMatrix &dx, const RealMatrix &dy,
                            double rcond = kDefaultRcond);

double default_rcond(Eigen::Index rows, Eigen::Index cols);

} // namespace qmlm
