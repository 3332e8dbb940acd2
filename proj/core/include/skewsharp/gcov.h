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

// Generalized g-covariance: the superoperator J_rho^g(Z) = sum_jk g(l_j, l_k)
// P_j Z P_k, the matrices sigma_X(g)_kj = Tr X'_k J^g(X'_j), metric-adjusted
// skew information, and the inequalities built on them.

#ifndef SKEWSHARP_GCOV_H_
#define SKEWSHARP_GCOV_H_

#include <optional>
#include <utility>
#include <vector>

#include "skewsharp/kernels.h"
#include "skewsharp/skew.h"

namespace skewsharp {

CMatrix apply_superop(const DensityMatrix& rho, const BivariateKernel& g, const CMatrix& z);

/// Observables are centered before use, so g = mean reproduces the covariance
/// matrix and g = eps reproduces the real antisymmetric commutator matrix.
CMatrix g_covariance(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g);

/// I^f from its spectral sum with coefficient f(0)(l_a - l_b)^2 / (2 m_f(l_a, l_b)).
RMatrix f_skew_matrix(const DensityMatrix& rho, const ObservableSet& x, const MonotoneFunction& f);

struct LambdaResult {
  double lambda = 0.0;
  double argmin_x = 0.0;     // 0 when the infimum sits at the x -> 0 (equivalently x -> inf) end
  double lower_bound = 0.0;  // 1 - f(0)
  double upper_bound = 0.0;  // min{1, 1/(4 f(0))}
  bool conjecture_match = false;
};

/// lambda_f = min over x >= 0 of F(x) = (1 + x - f_*(x)) / (2 f(x)). A
/// 4097-point log grid on [1e-8, 1e8] plus the analytic endpoint value
/// 1/(4 f(0)) locates the minimum; golden-section search in log x refines it.
LambdaResult lambda_f(const MonotoneFunction& f);

/// (x, F(x)) samples on the search grid, for plotting.
std::vector<std::pair<double, double>> lambda_objective_samples(const MonotoneFunction& f);

/// Gram matrix of Y_{ka} = J^{g_a}(X'_k), assembled from the blocks
/// sigma(|g1|^2), sigma(conj(g1) g2), sigma(conj(g2) g1), sigma(|g2|^2) and
/// cross-checked against the direct Gram construction.
CMatrix build_Lg(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g1,
                 const BivariateKernel& g2);

/// |sigma(g+)| |sigma(g-)| - |sigma(g0)|^2. Throws kKernelContractViolation
/// unless g+ >= 0, g- >= 0 and g+ g- >= |g0|^2 on the eigenvalue pairs used.
Margin check_g_triple(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g_plus,
                      const BivariateKernel& g_minus, const BivariateKernel& g_zero);

struct MetricAdjustedReport {
  Margin eq18;  // |sigma(m_f)| |I^f| >= (2 f(0))^n |delta|^2
  Margin eq19;  // |sigma - c^f| |sigma + c^f| >= (4 lambda_f f(0))^n |delta|^2
  double lambda = 0.0;
  RMatrix skew_f;
  RMatrix classical_f;
};

MetricAdjustedReport check_metric_adjusted(const DensityMatrix& rho, const ObservableSet& x,
                                           const MonotoneFunction& f,
                                           std::optional<double> lambda = std::nullopt);

/// f(x) <= f(0)(1 + sqrt x)^2 on a log grid, the class where lambda_f = 1/(4 f(0)).
bool in_wy_strongest_class(const MonotoneFunction& f);

/// |sigma - c^f| |sigma + c^f| - |sigma - c| |sigma + c|; throws
/// kPreconditionViolation for f outside the class above.
Margin wy_strongest_check(const DensityMatrix& rho, const ObservableSet& x, const MonotoneFunction& f);

/// |x^a - x^(1-a)| <= (1 - 2a)|1 - x| at every grid point.
bool alpha_inequality_check(double alpha, const std::vector<double>& grid);

}  // namespace skewsharp

#endif  // SKEWSHARP_GCOV_H_
