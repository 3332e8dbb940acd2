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

// Thermal states of quadratic bosonic Hamiltonians.
//
// Operators are collected as Lambda = (a_1^dag..a_n^dag, a_1..a_n) and a
// Hamiltonian is H = 1/2 Lambda S Lambda^T with S = N J symmetric, where
// J = [[0, I], [-I, 0]]. The thermal state exp(-beta H)/Z has correlation
// matrix C_kj = Tr(rho Lambda_k Lambda_j) = J (M - I)^{-1} with M = exp(-beta N),
// and sigma +- c = 1/2 J (sqrt M +- I)(sqrt M -+ I)^{-1}.

#ifndef SKEWSHARP_GAUSSIAN_H_
#define SKEWSHARP_GAUSSIAN_H_

#include <cstdint>

#include "skewsharp/skew.h"

namespace skewsharp {

/// J = [[0, I_n], [-I_n, 0]].
RMatrix symplectic_form(int n_modes);
/// Pi = [[0, I_n], [I_n, 0]], the swap a <-> a^dag.
RMatrix block_swap(int n_modes);
/// u = 1/sqrt(2) [[I, iI], [I, -iI]], mapping Lambda to (x, p) = Lambda u.
CMatrix quadrature_transform(int n_modes);

class QuadraticHamiltonian {
 public:
  /// H = sum h_ij a_i^dag a_j + 1/2 sum (k_ij a_i^dag a_j^dag + h.c.), h Hermitian, k symmetric.
  static QuadraticHamiltonian from_blocks(const CMatrix& h, const CMatrix& k, double beta);
  /// omega a^dag a + 1/2 (xi a^dag^2 + conj(xi) a^2).
  static QuadraticHamiltonian single_mode(double omega, Complex xi, double beta);
  /// Two modes with a beamsplitter coupling g (a_1^dag a_2 + h.c.) and per-mode squeezing.
  static QuadraticHamiltonian two_mode(double omega1, double omega2, Complex coupling, Complex xi1,
                                       Complex xi2, double beta);

  int n_modes() const { return n_modes_; }
  double beta() const { return beta_; }
  const CMatrix& S() const { return s_; }
  /// N = -S J, so that [H, Lambda] = Lambda N.
  CMatrix N() const;
  /// h (number-conserving block) and k (pairing block).
  CMatrix h_block() const { return s_.topRightCorner(n_modes_, n_modes_); }
  CMatrix k_block() const { return s_.topLeftCorner(n_modes_, n_modes_); }
  /// S Pi = [[h, k], [conj k, conj h]] positive definite; the thermal state exists.
  bool bounded_below() const;

  QuadraticHamiltonian with_beta(double beta) const;

 private:
  friend QuadraticHamiltonian validate_quadratic(const CMatrix& s, int n_modes, double beta);
  QuadraticHamiltonian(CMatrix s, int n_modes, double beta)
      : s_(std::move(s)), n_modes_(n_modes), beta_(beta) {}

  CMatrix s_;
  int n_modes_;
  double beta_;
};

/// Checks S^T = S and Pi conj(S) Pi = S (H Hermitian) and beta > 0; throws
/// kInvalidGenerator naming the violated constraint.
QuadraticHamiltonian validate_quadratic(const CMatrix& s, int n_modes, double beta = 1.0);

enum class MomentBasis { kLadder, kQuadrature };

struct GaussianMoments {
  CMatrix C;
  CMatrix sigma;
  CMatrix c;
  CMatrix delta;  // J/2 in the ladder basis; i*delta_X (Hermitian) in the quadrature basis
  MomentBasis basis = MomentBasis::kLadder;
  int n_modes = 0;
  bool perturbed = false;     // N was nudged because M - I was singular
  bool via_expm = false;      // computed with Pade exp instead of the eigenbasis of N
  double min_mode_gap = 0.0;  // min |beta * eigenvalue of N|
  double cond_m_minus_i = 0.0;
  bool recursion_checked = false;  // C^T = C M verified (skipped when M overflows)
};

/// Exact moments of exp(-beta H)/Z. When M - I is singular the generator is
/// perturbed by 1e-8 in a random admissible direction (seeded) and the result
/// flagged; still singular throws kSingularM.
GaussianMoments exact_moments(const QuadraticHamiltonian& h, std::uint64_t perturbation_seed = 0);

/// Congruence by u: sigma_X = u^T sigma u and likewise for C, c, delta.
GaussianMoments to_quadrature(const GaussianMoments& m);

/// |(sigma + c)(sigma - c)| - |delta|^2 from a moments object (either basis).
double moments_delta_g(const GaussianMoments& m);
/// max(1, |det(sigma + c) det(sigma - c)|), the scale for the check above.
double moments_delta_g_scale(const GaussianMoments& m);

struct TruncatedThermal {
  DensityMatrix rho;
  double tail_mass = 0.0;         // geometric estimate from exact mean occupations
  double occupation_error = 0.0;  // max_i |<a_i^dag a_i>_trunc - <a_i^dag a_i>_exact|
};

/// exp(-beta H_trunc)/Z on the cutoff^n truncated Fock space, with H_trunc
/// normal ordered (a|m> = sqrt(m)|m-1>). n_modes in {1, 2}, cutoff >= 8.
TruncatedThermal fock_truncate_thermal(const QuadraticHamiltonian& h, int cutoff);

/// Truncated annihilation operator of `mode` on the cutoff^n_modes space.
CMatrix ladder_operator(int n_modes, int cutoff, int mode);

/// x_i = (a_i^dag + a_i)/sqrt 2, p_i = i(a_i^dag - a_i)/sqrt 2, ordered (x.., p..).
ObservableSet quadrature_observables(int n_modes, int cutoff);

struct SaturationResult {
  double delta_g_exact = 0.0;
  double delta_g_numeric = 0.0;
  double exact_scale = 1.0;
  double tail_mass = 0.0;
  GaussianMoments exact;  // quadrature basis
  UncertaintyReport numeric;
};

SaturationResult saturation_check(const QuadraticHamiltonian& h, int cutoff);

/// Delta_G for the 2n quadratures of a state on the truncated Fock space.
double nongaussianity(const DensityMatrix& rho, int n_modes, int cutoff);

/// The converse map: M' = C^{-1} C^T (symplectic), N' = -log M' (principal
/// branch via diagonalization), returned with beta = 1.
QuadraticHamiltonian generator_from_covariance(const CMatrix& c, int n_modes);

}  // namespace skewsharp

#endif  // SKEWSHARP_GAUSSIAN_H_
