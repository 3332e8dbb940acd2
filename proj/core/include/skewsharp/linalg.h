// Copyright 2026 The SkewSharp Authors
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

// Dense complex Hermitian linear algebra shared by every other module.
//
// Eigen does the heavy lifting; this layer adds validation, the tolerance
// policy, and the eigenvalue clipping rules used throughout the toolkit.

#ifndef SKEWSHARP_LINALG_H_
#define SKEWSHARP_LINALG_H_

#include <complex>

#include <Eigen/Dense>

#include "skewsharp/error.h"
#include "skewsharp/tolerances.h"

namespace skewsharp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Largest entry magnitude, max_{jk} |A_jk|.
double max_abs(const CMatrix& a);
double max_abs(const RMatrix& a);

/// max |A_jk - conj(A_kj)|.
double hermiticity_defect(const CMatrix& a);

/// A square complex matrix checked to be Hermitian within kTolHerm and then
/// symmetrized, so downstream code sees an exactly Hermitian matrix.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& a, double tol = kTolHerm);
  explicit HermitianMatrix(const RMatrix& a, double tol = kTolHerm)
      : HermitianMatrix(CMatrix(a.cast<Complex>()), tol) {}

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  operator const CMatrix&() const { return m_; }

 private:
  CMatrix m_;
};

/// Eigenvalues in descending order with orthonormal eigenvector columns.
struct EigenSystem {
  RVector values;
  CMatrix vectors;

  Eigen::Index dim() const { return values.size(); }
  CMatrix reconstruct() const;
};

EigenSystem spectral_decompose(const HermitianMatrix& a);

struct PsdVerdict {
  bool holds = false;
  double min_eigenvalue = 0.0;
};

/// min eigenvalue >= -tol * max(1, max|A|).
PsdVerdict is_psd(const HermitianMatrix& a, double tol = kTolPsd);

/// Principal square root of a PSD matrix; eigenvalues in [-tol_psd*scale, 0)
/// are clipped to zero, anything more negative throws kNotPsd.
HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& a);

/// Product of eigenvalues.
double det_hermitian(const HermitianMatrix& a);

/// Determinant of a general complex matrix via partial-pivot LU.
Complex det_general(const CMatrix& a);

/// Moore-Penrose inverse of a Hermitian matrix; eigenvalues with magnitude
/// below tol * max(1, max|A|) are treated as exact zeros.
struct PseudoInverse {
  CMatrix inverse;
  CMatrix range_projector;
  Eigen::Index rank = 0;
};
PseudoInverse pseudo_inverse_hermitian(const HermitianMatrix& a, double tol = kTolPsd);

/// Number of eigenvalues above tol * max(1, max|A|).
Eigen::Index numerical_rank(const HermitianMatrix& a, double tol = kTolPsd);

/// A validated quantum state: Hermitian, unit trace, PSD. The eigensystem is
/// computed once at construction with small negative eigenvalues clipped to 0.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& rho);

  Eigen::Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }
  const EigenSystem& eigen() const { return eig_; }
  const CMatrix& sqrt() const { return sqrt_; }

  /// Tr(rho * op).
  Complex expectation(const CMatrix& op) const;

 private:
  CMatrix rho_;
  EigenSystem eig_;
  CMatrix sqrt_;
};

}  // namespace skewsharp

#endif  // SKEWSHARP_LINALG_H_
