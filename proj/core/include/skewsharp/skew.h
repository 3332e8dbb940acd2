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

// Covariance, commutator, Wigner-Yanase skew information and classical
// uncertainty matrices of a set of observables, the 2n x 2n Gram matrix built
// from them, and the scalar uncertainty relations that follow from its
// positivity.
//
// Conventions: observables are centered (X'_k = X_k - <X_k>) before any
// matrix is formed. The commutator matrix delta_kj = (i/2)<[X_k, X_j]> is real
// antisymmetric; `i_delta` = i * delta is Hermitian and is what appears in the
// off-diagonal blocks of L. Determinants written |M| below are plain
// determinants, and |delta| is reported as |det(i delta)| (>= 0, zero for odd n).

#ifndef SKEWSHARP_SKEW_H_
#define SKEWSHARP_SKEW_H_

#include <map>
#include <string>
#include <vector>

#include "skewsharp/linalg.h"

namespace skewsharp {

class ObservableSet {
 public:
  explicit ObservableSet(std::vector<HermitianMatrix> observables);

  std::size_t size() const { return obs_.size(); }
  Eigen::Index dim() const { return obs_.front().dim(); }
  const HermitianMatrix& operator[](std::size_t k) const { return obs_[k]; }
  const std::vector<HermitianMatrix>& items() const { return obs_; }

  /// X_k - Tr(rho X_k) * identity.
  std::vector<CMatrix> centered(const DensityMatrix& rho) const;

  /// Common conjugation U X_k U^dagger of every observable.
  ObservableSet conjugated(const CMatrix& unitary) const;

 private:
  std::vector<HermitianMatrix> obs_;
};

struct Determinants {
  double sigma = 0.0;      // |sigma_X|
  double delta = 0.0;      // |delta_X| = |det(i delta_X)|
  double skew = 0.0;       // |I_X|
  double classical = 0.0;  // |c_X|
  double plus = 0.0;       // |sigma + c|
  double minus = 0.0;      // |sigma - c|
};

struct UncertaintyReport {
  RMatrix sigma;
  RMatrix delta;    // real antisymmetric
  CMatrix i_delta;  // Hermitian
  RMatrix skew;
  RMatrix classical;
  CMatrix L;
  Determinants dets;
  // Keys: rs, eq3, eq4a, eq4b, eq7-psd, eq8-schur.
  std::map<std::string, Margin> margins;
  double delta_g = 0.0;
  Eigen::Index rank_L = 0;
  double schur_range_residual = 0.0;
};

struct TwoObsReport {
  double delta = 0.0;  // <[X1, X2]> / 2i
  RMatrix Lp;          // sigma + c
  RMatrix Lm;          // sigma - c
  double A = 0.0;      // |sigma| - |c|
  double B = 0.0;      // |L+| |L-|
  double U1 = 0.0;
  double U2 = 0.0;
  double bound_9a = 0.0;  // A - sqrt(A^2 - B), an upper bound on delta^2
  Margin eq9a;
  Margin eq9b[2];
  Margin eq10;
  Margin furuichi;           // refined bound
  Margin furuichi_original;  // U1 U2 >= delta^2 + (L12-)^2
  Margin impossible_branch;  // A - delta^2; rules out A + sqrt(A^2 - B) <= delta^2
};

/// [[sigma]]_kj = Re Tr(rho X'_k X'_j).
RMatrix covariance_matrix(const DensityMatrix& rho, const ObservableSet& x);

/// i * delta_X, Hermitian, with delta_kj = (i/2) <[X_k, X_j]>.
CMatrix commutator_matrix(const DensityMatrix& rho, const ObservableSet& x);

/// Wigner-Yanase skew information matrix from the spectral sum
/// sum_ab (sqrt(l_a) - sqrt(l_b))^2 / 2 * Re <a|X_k|b><b|X_j|a>.
RMatrix wy_skew_matrix(const DensityMatrix& rho, const ObservableSet& x);

/// Same matrix from -1/2 Tr [sqrt(rho), X_k][sqrt(rho), X_j], symmetrized.
RMatrix wy_skew_matrix_commutator(const DensityMatrix& rho, const ObservableSet& x);

/// c_X = sigma - I; throws kNotPsd if the difference is not PSD within tolerance.
RMatrix classical_matrix(const RMatrix& sigma, const RMatrix& skew);

/// Gram matrix of Y_{k+-} = [sqrt(rho), X'_k]_{+-} / sqrt(2), ordered (+ block, - block).
CMatrix gram_L(const DensityMatrix& rho, const ObservableSet& x);

/// L_X assembled both as a Gram matrix and from blocks [[s+c, i d],[(i d)^dag, s-c]];
/// throws kConstructionMismatch if they differ by more than 1e-8.
CMatrix build_L(const DensityMatrix& rho, const ObservableSet& x);

UncertaintyReport check_refined_rs(const DensityMatrix& rho, const ObservableSet& x);

TwoObsReport two_obs_relations(const DensityMatrix& rho, const HermitianMatrix& x1,
                               const HermitianMatrix& x2);

/// Relations derived purely from the 2x2 matrices; shared with the strength study.
TwoObsReport two_obs_from_matrices(const RMatrix& sigma, const RMatrix& classical, double delta);

}  // namespace skewsharp

#endif  // SKEWSHARP_SKEW_H_
