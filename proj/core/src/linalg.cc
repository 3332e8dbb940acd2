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

#include "skewsharp/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace skewsharp {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_finite(const CMatrix& a) {
  if (!a.allFinite()) throw Error(ErrorCode::kNonHermitianInput, "matrix has non-finite entries");
}

}  // namespace

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return max_abs(CMatrix(a - a.adjoint()));
}

HermitianMatrix::HermitianMatrix(const CMatrix& a, double tol) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorCode::kNonHermitianInput,
                "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ", expected non-empty square");
  }
  require_finite(a);
  const double defect = hermiticity_defect(a);
  if (defect > tol * std::max(1.0, max_abs(a))) {
    throw Error(ErrorCode::kNonHermitianInput, "max|A - A^dagger| = " + fmt_double(defect));
  }
  m_ = (a + a.adjoint()) / 2.0;
}

CMatrix EigenSystem::reconstruct() const {
  return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigenSystem spectral_decompose(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonHermitianInput, "eigensolver did not converge");
  }
  // Eigen returns ascending order.
  EigenSystem es;
  es.values = solver.eigenvalues().reverse();
  es.vectors = solver.eigenvectors().rowwise().reverse();
  return es;
}

PsdVerdict is_psd(const HermitianMatrix& a, double tol) {
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly)
                         .eigenvalues();
  const double min_ev = ev.minCoeff();
  return PsdVerdict{min_ev >= -tol * std::max(1.0, max_abs(a.matrix())), min_ev};
}

HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& a) {
  EigenSystem es = spectral_decompose(a);
  const double floor = -kTolPsd * std::max(1.0, max_abs(a.matrix()));
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values[k] < floor) {
      throw Error(ErrorCode::kNotPsd, "eigenvalue " + fmt_double(es.values[k]) + " below zero");
    }
    es.values[k] = std::sqrt(std::max(0.0, es.values[k]));
  }
  return HermitianMatrix(es.reconstruct());
}

double det_hermitian(const HermitianMatrix& a) {
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly)
                         .eigenvalues();
  return ev.prod();
}

Complex det_general(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square");
  if (a.rows() == 0) return Complex(1.0);
  return a.partialPivLu().determinant();
}

PseudoInverse pseudo_inverse_hermitian(const HermitianMatrix& a, double tol) {
  const EigenSystem es = spectral_decompose(a);
  const double cut = tol * std::max(1.0, max_abs(a.matrix()));
  const Eigen::Index d = es.dim();
  PseudoInverse out;
  out.inverse = CMatrix::Zero(d, d);
  out.range_projector = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (std::abs(es.values[k]) <= cut) continue;
    const auto v = es.vectors.col(k);
    out.inverse += (1.0 / es.values[k]) * v * v.adjoint();
    out.range_projector += v * v.adjoint();
    ++out.rank;
  }
  return out;
}

Eigen::Index numerical_rank(const HermitianMatrix& a, double tol) {
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly)
                         .eigenvalues();
  const double cut = tol * std::max(1.0, max_abs(a.matrix()));
  return (ev.array().abs() > cut).count();
}

DensityMatrix::DensityMatrix(const CMatrix& rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::kInvalidState, "density matrix must be non-empty and square");
  }
  if (!rho.allFinite()) throw Error(ErrorCode::kInvalidState, "density matrix has non-finite entries");
  const HermitianMatrix h(rho);
  const double trace = h.matrix().trace().real();
  if (std::abs(trace - 1.0) > kTolTrace) {
    throw Error(ErrorCode::kInvalidState, "trace is " + fmt_double(trace) + ", expected 1");
  }
  rho_ = h.matrix();
  eig_ = spectral_decompose(h);
  // Eigenvalues at the solver's roundoff level are exact zeros of a low-rank
  // state; left in place their square roots (~1e-8) leak into every
  // sqrt(rho)-weighted quantity.
  const double floor = 16.0 * static_cast<double>(dim()) * std::numeric_limits<double>::epsilon();
  for (Eigen::Index k = 0; k < eig_.values.size(); ++k) {
    if (eig_.values[k] < -kTolPsd) {
      throw Error(ErrorCode::kNotPsd,
                  "density matrix has eigenvalue " + fmt_double(eig_.values[k]));
    }
    if (eig_.values[k] <= floor) eig_.values[k] = 0.0;
  }
  const RVector roots = eig_.values.array().sqrt();
  sqrt_ = eig_.vectors * roots.cast<Complex>().asDiagonal() * eig_.vectors.adjoint();
}

Complex DensityMatrix::expectation(const CMatrix& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "operator dimension differs from state");
  }
  return (rho_ * op).trace();
}

}  // namespace skewsharp
