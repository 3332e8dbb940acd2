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

#include "skewsharp/skew.h"

#include <algorithm>
#include <cmath>

namespace skewsharp {

namespace {

void require_dims(const DensityMatrix& rho, const ObservableSet& x) {
  if (rho.dim() != x.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state has dim " + std::to_string(rho.dim()) + ", observables have dim " +
                    std::to_string(x.dim()));
  }
}

RMatrix symmetrize(const RMatrix& a) { return (a + a.transpose()) / 2.0; }

// Tr(A B) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().array() * b.array()).sum();
}

double nonneg_root(double v, std::size_t n) {
  return std::pow(std::max(0.0, v), 1.0 / static_cast<double>(n));
}

// Determinant with eigenvalues inside the PSD noise band set to zero. The
// n-th root turns roundoff of size e in a vanishing determinant into e^(1/n).
double det_denoised(const RMatrix& a) {
  const EigenSystem es = spectral_decompose(HermitianMatrix(a));
  const double floor = kTolPsd * std::max(1.0, max_abs(a));
  double det = 1.0;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    det *= std::abs(es.values[k]) <= floor ? 0.0 : es.values[k];
  }
  return det;
}

double max_of(std::initializer_list<double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

ObservableSet::ObservableSet(std::vector<HermitianMatrix> observables)
    : obs_(std::move(observables)) {
  if (obs_.empty()) throw Error(ErrorCode::kDimensionMismatch, "observable set is empty");
  for (const auto& o : obs_) {
    if (o.dim() != obs_.front().dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "observables have differing dimensions");
    }
  }
}

std::vector<CMatrix> ObservableSet::centered(const DensityMatrix& rho) const {
  std::vector<CMatrix> out;
  out.reserve(obs_.size());
  const CMatrix id = CMatrix::Identity(dim(), dim());
  for (const auto& o : obs_) {
    const double mean = rho.expectation(o.matrix()).real();
    out.push_back(o.matrix() - mean * id);
  }
  return out;
}

ObservableSet ObservableSet::conjugated(const CMatrix& unitary) const {
  std::vector<HermitianMatrix> out;
  out.reserve(obs_.size());
  for (const auto& o : obs_) out.emplace_back(CMatrix(unitary * o.matrix() * unitary.adjoint()));
  return ObservableSet(std::move(out));
}

RMatrix covariance_matrix(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const auto xc = x.centered(rho);
  const std::size_t n = x.size();
  RMatrix sigma(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const CMatrix rho_xk = rho.matrix() * xc[k];
    for (std::size_t j = 0; j < n; ++j) sigma(k, j) = trace_product(rho_xk, xc[j]).real();
  }
  return symmetrize(sigma);
}

CMatrix commutator_matrix(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const std::size_t n = x.size();
  CMatrix i_delta(n, n);
  // i * (i/2) <[X_k, X_j]> = -(1/2) <[X_k, X_j]>
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const CMatrix comm = x[k].matrix() * x[j].matrix() - x[j].matrix() * x[k].matrix();
      i_delta(k, j) = -0.5 * rho.expectation(comm);
    }
  }
  // Expectation of an anti-Hermitian operator is imaginary; drop roundoff.
  i_delta = CMatrix(Complex(0, 1) * i_delta.imag().cast<Complex>());
  return (i_delta + i_delta.adjoint()) / 2.0;
}

RMatrix wy_skew_matrix(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const auto& es = rho.eigen();
  const Eigen::Index d = es.dim();
  const RVector roots = es.values.array().sqrt();
  RMatrix weight(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double diff = roots[a] - roots[b];
      weight(a, b) = 0.5 * diff * diff;
    }
  }
  const std::size_t n = x.size();
  std::vector<CMatrix> in_basis;
  in_basis.reserve(n);
  for (const auto& o : x.items()) in_basis.push_back(es.vectors.adjoint() * o.matrix() * es.vectors);
  RMatrix skew(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      // <a|X_k|b><b|X_j|a> = Xk(a,b) * Xj(b,a)
      skew(k, j) =
          (weight.array() * (in_basis[k].array() * in_basis[j].transpose().array()).real()).sum();
    }
  }
  return symmetrize(skew);
}

RMatrix wy_skew_matrix_commutator(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const std::size_t n = x.size();
  const CMatrix& s = rho.sqrt();
  std::vector<CMatrix> comms;
  comms.reserve(n);
  for (const auto& o : x.items()) comms.push_back(s * o.matrix() - o.matrix() * s);
  RMatrix skew(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) skew(k, j) = -0.5 * trace_product(comms[k], comms[j]).real();
  }
  return symmetrize(skew);
}

RMatrix classical_matrix(const RMatrix& sigma, const RMatrix& skew) {
  if (sigma.rows() != skew.rows() || sigma.cols() != skew.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "sigma and skew shapes differ");
  }
  RMatrix c = symmetrize(sigma - skew);
  const PsdVerdict v = is_psd(HermitianMatrix(c));
  if (!v.holds) {
    throw Error(ErrorCode::kNotPsd,
                "classical matrix has eigenvalue " + std::to_string(v.min_eigenvalue));
  }
  return c;
}

CMatrix gram_L(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const std::size_t n = x.size();
  const auto xc = x.centered(rho);
  const CMatrix& s = rho.sqrt();
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> ys;
  ys.reserve(2 * n);
  for (const auto& xk : xc) ys.push_back(inv_root2 * (s * xk + xk * s));
  for (const auto& xk : xc) ys.push_back(inv_root2 * (s * xk - xk * s));
  CMatrix gram(2 * n, 2 * n);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      gram(a, b) = (ys[a].conjugate().array() * ys[b].array()).sum();  // Tr(Y_a^dag Y_b)
    }
  }
  return (gram + gram.adjoint()) / 2.0;
}

namespace {

CMatrix assemble_L(const RMatrix& sigma, const RMatrix& classical, const CMatrix& i_delta) {
  const Eigen::Index n = sigma.rows();
  CMatrix L(2 * n, 2 * n);
  L.topLeftCorner(n, n) = (sigma + classical).cast<Complex>();
  L.topRightCorner(n, n) = i_delta;
  L.bottomLeftCorner(n, n) = i_delta.adjoint();
  L.bottomRightCorner(n, n) = (sigma - classical).cast<Complex>();
  return L;
}

void cross_check_L(const CMatrix& gram, const CMatrix& blocks) {
  const double diff = max_abs(CMatrix(gram - blocks));
  if (diff > 1e-8 * std::max(1.0, max_abs(gram))) {
    throw Error(ErrorCode::kConstructionMismatch,
                "Gram and block constructions of L differ by " + std::to_string(diff));
  }
}

}  // namespace

CMatrix build_L(const DensityMatrix& rho, const ObservableSet& x) {
  const RMatrix sigma = covariance_matrix(rho, x);
  const RMatrix skew = wy_skew_matrix(rho, x);
  const RMatrix classical = symmetrize(sigma - skew);
  const CMatrix blocks = assemble_L(sigma, classical, commutator_matrix(rho, x));
  const CMatrix gram = gram_L(rho, x);
  cross_check_L(gram, blocks);
  return blocks;
}

UncertaintyReport check_refined_rs(const DensityMatrix& rho, const ObservableSet& x) {
  require_dims(rho, x);
  const std::size_t n = x.size();
  UncertaintyReport r;
  r.sigma = covariance_matrix(rho, x);
  r.i_delta = commutator_matrix(rho, x);
  r.delta = r.i_delta.imag();  // i_delta = i * delta with delta real
  r.delta = (r.delta - r.delta.transpose().eval()) / 2.0;
  r.skew = wy_skew_matrix(rho, x);
  r.classical = classical_matrix(r.sigma, r.skew);
  r.L = assemble_L(r.sigma, r.classical, r.i_delta);
  cross_check_L(gram_L(rho, x), r.L);

  const RMatrix plus = r.sigma + r.classical;
  const RMatrix minus = r.sigma - r.classical;
  Determinants& d = r.dets;
  d.sigma = det_hermitian(HermitianMatrix(r.sigma));
  d.delta = std::abs(det_hermitian(HermitianMatrix(r.i_delta)));
  if (n % 2 == 1) d.delta = 0.0;  // antisymmetric of odd order
  d.skew = det_hermitian(HermitianMatrix(r.skew));
  d.classical = det_hermitian(HermitianMatrix(r.classical));
  d.plus = det_hermitian(HermitianMatrix(plus));
  d.minus = det_hermitian(HermitianMatrix(minus));

  r.margins["rs"] = Margin::of(d.sigma - d.delta, max_of({d.sigma, d.delta}));

  const double prod = d.plus * d.minus;
  const double delta_sq = d.delta * d.delta;
  r.delta_g = prod - delta_sq;
  r.margins["eq3"] = Margin::of(r.delta_g, max_of({prod, delta_sq}));

  const double s = nonneg_root(d.sigma, n);
  const double dd = nonneg_root(d.delta, n);
  const double i = nonneg_root(d.skew, n);
  const double c = nonneg_root(det_denoised(r.classical), n);
  const double chain_mid = (s - i) * (s - i);
  r.margins["eq4a"] = Margin::of((s * s - dd * dd) - chain_mid, max_of({s * s, dd * dd}));
  r.margins["eq4b"] = Margin::of(chain_mid - c * c, max_of({s * s, c * c}));

  const HermitianMatrix L(r.L);
  r.margins["eq7-psd"] = Margin::of(is_psd(L).min_eigenvalue, max_abs(r.L));
  r.rank_L = numerical_rank(L);

  // Schur complement of the (sigma - c) block with a pseudo-inverse on its range.
  const PseudoInverse pinv = pseudo_inverse_hermitian(HermitianMatrix(minus));
  const CMatrix schur = plus.cast<Complex>() - r.i_delta * pinv.inverse * r.i_delta.adjoint();
  const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  r.schur_range_residual = max_abs(CMatrix((id - pinv.range_projector) * r.i_delta.adjoint()));
  r.margins["eq8-schur"] =
      Margin::of(is_psd(HermitianMatrix(schur)).min_eigenvalue, max_abs(RMatrix(plus)));
  return r;
}

TwoObsReport two_obs_from_matrices(const RMatrix& sigma, const RMatrix& classical, double delta) {
  if (sigma.rows() != 2 || sigma.cols() != 2 || classical.rows() != 2 || classical.cols() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "two-observable relations need 2x2 matrices");
  }
  TwoObsReport t;
  t.delta = delta;
  t.Lp = sigma + classical;
  t.Lm = sigma - classical;
  const double det_lp = t.Lp.determinant();
  const double det_lm = t.Lm.determinant();
  t.A = sigma.determinant() - classical.determinant();
  t.B = det_lp * det_lm;
  t.U1 = std::sqrt(std::max(0.0, t.Lp(0, 0) * t.Lm(0, 0)));
  t.U2 = std::sqrt(std::max(0.0, t.Lp(1, 1) * t.Lm(1, 1)));
  const double d2 = delta * delta;

  // With det(sigma + t c) = |sigma| + t D + t^2 |c|, A^2 - B = D^2 - 4|sigma||c|
  // exactly; that form keeps A^2 - B near zero accurate, and A - sqrt(A^2 - B)
  // is evaluated as B / (A + sqrt(A^2 - B)).
  const double mixed = sigma(0, 0) * classical(1, 1) + sigma(1, 1) * classical(0, 0) -
                       2.0 * sigma(0, 1) * classical(0, 1);
  const double disc = std::sqrt(std::max(0.0, mixed * mixed - 4.0 * sigma.determinant() *
                                                               classical.determinant()));
  const double denom = t.A + disc;
  t.bound_9a = denom > 0.0 ? std::max(0.0, t.B) / denom : 0.0;
  t.eq9a = Margin::of(t.bound_9a - d2, max_of({t.A, d2}));

  const double scale = max_of({t.Lp(0, 0), t.Lp(1, 1), d2, t.A});
  bool vacuous_diag[2];
  for (int a = 0; a < 2; ++a) {
    vacuous_diag[a] = t.Lm(a, a) <= kTolPsd * std::max(1.0, std::abs(t.Lp(a, a)));
    t.eq9b[a] = vacuous_diag[a] ? Margin::vacuous_true()
                                : Margin::of((t.Lp(a, a) / t.Lm(a, a)) * det_lm - d2,
                                             max_of({scale, t.Lp(a, a) / t.Lm(a, a) * det_lm}));
  }
  const double uu = t.U1 * t.U2;
  t.eq10 = Margin::of(uu - std::sqrt(std::max(0.0, t.B)) - std::abs(t.Lp(0, 1) * t.Lm(0, 1)),
                      max_of({uu, scale}));
  const double lm12_sq = t.Lm(0, 1) * t.Lm(0, 1);
  if (vacuous_diag[0] || vacuous_diag[1]) {
    t.furuichi = Margin::vacuous_true();
  } else {
    const double ratio = std::sqrt((t.Lp(0, 0) * t.Lp(1, 1)) / (t.Lm(0, 0) * t.Lm(1, 1)));
    t.furuichi = Margin::of(uu - d2 - ratio * lm12_sq, max_of({uu, d2, ratio * lm12_sq}));
  }
  t.furuichi_original = Margin::of(uu - d2 - lm12_sq, max_of({uu, d2}));
  t.impossible_branch = Margin::of(t.A - d2, max_of({t.A, d2}));
  return t;
}

TwoObsReport two_obs_relations(const DensityMatrix& rho, const HermitianMatrix& x1,
                               const HermitianMatrix& x2) {
  const ObservableSet x({x1, x2});
  require_dims(rho, x);
  const RMatrix sigma = covariance_matrix(rho, x);
  const RMatrix classical = classical_matrix(sigma, wy_skew_matrix(rho, x));
  // delta_X(0,1) = (i/2)<[X1,X2]> = -<[X1,X2]>/(2i).
  const double delta = -commutator_matrix(rho, x)(0, 1).imag();
  return two_obs_from_matrices(sigma, classical, delta);
}

}  // namespace skewsharp
