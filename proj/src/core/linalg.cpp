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

#include "qmlm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmlm/error.hpp"

namespace qmlm {

namespace {

template <class Derived>
void require_finite(const Eigen::MatrixBase<Derived> &a, const char *what) {
    if (!a.allFinite())
        fail(Errc::InvalidArgument, std::string(what) + " has non-finite entries");
}

void require_square(const ComplexMatrix &a, const char *what) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        std::ostringstream os;
        os << what << " must be square and non-empty, got " << a.rows() << "x"
           << a.cols();
        fail(Errc::DimensionMismatch, os.str());
    }
}

ComplexMatrix symmetrized(const ComplexMatrix &a, const char *what) {
    require_square(a, what);
    require_finite(a, what);
    const double dev = hermitian_deviation(a);
    if (dev > kHermitianTol) {
        std::ostringstream os;
        os << what << " deviates from Hermitian by " << dev;
        fail(Errc::NotHermitian, os.str());
    }
    return (a + a.adjoint()) * 0.5;
}

template <class Matrix>
Matrix pinv_impl(const Matrix &a, double rcond) {
    if (a.size() == 0)
        fail(Errc::InvalidArgument, "pinv of an empty matrix");
    require_finite(a, "pinv input");
    if (rcond < 0.0)
        rcond = default_rcond(a.rows(), a.cols());

    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        fail(Errc::NoConvergence, "SVD did not converge");

    const RealVector &sigma = svd.singularValues();
    const double cutoff = rcond * (sigma.size() > 0 ? sigma(0) : 0.0);
    RealVector inv = RealVector::Zero(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff && sigma(i) > 0.0)
            inv(i) = 1.0 / sigma(i);

    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

template <class Matrix>
Matrix solve_impl(const Matrix &dx, const Matrix &dy, double rcond) {
    if (dx.rows() != dy.rows()) {
        std::ostringstream os;
        os << "dx has " << dx.rows() << " rows, dy has " << dy.rows();
        fail(Errc::DimensionMismatch, os.str());
    }
    return pinv_impl(dx, rcond) * dy;
}

} // namespace

double default_rcond(Eigen::Index rows, Eigen::Index cols) {
    return static_cast<double>(std::max(rows, cols)) *
           std::numeric_limits<double>::epsilon();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.size() == 0 || b.size() == 0)
        fail(Errc::InvalidArgument, "kron of an empty matrix");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermitian_deviation(const ComplexMatrix &a) {
    if (a.rows() != a.cols())
        return std::numeric_limits<double>::infinity();
    if (a.size() == 0)
        return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eig(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized(a, "hermitian_eig input"));
    if (solver.info() != Eigen::Success)
        fail(Errc::NoConvergence, "Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        symmetrized(a, "hermitian_eigenvalues input"), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(Errc::NoConvergence, "Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &a) {
    const HermitianEigen eig = hermitian_eig(a);
    const RealVector &lambda = eig.eigenvalues;
    if (lambda(0) < -kPsdTol) {
        std::ostringstream os;
        os << "smallest eigenvalue " << lambda(0) << " is below " << -kPsdTol;
        fail(Errc::NotPSD, os.str());
    }
    const double lambda_max = lambda(lambda.size() - 1);
    const double noise = static_cast<double>(lambda.size()) *
                         std::numeric_limits<double>::epsilon() *
                         std::max(lambda_max, 0.0);
    RealVector roots(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        roots(i) = lambda(i) > noise ? std::sqrt(lambda(i)) : 0.0;
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix pinv(const ComplexMatrix &a, double rcond) { return pinv_impl(a, rcond); }
RealMatrix pinv(const RealMatrix &a, double rcond) { return pinv_impl(a, rcond); }

ComplexMatrix solve_linear_map(const ComplexMatrix &dx, const ComplexMatrix &dy,
                               double rcond) {
    return solve_impl(dx, dy, rcond);
}

RealMatrix solve_linear_map(const RealMatrix &dx, const RealMatrix &dy, double rcond) {
    return solve_impl(dx, dy, rcond);
}

} // namespace qmlm
