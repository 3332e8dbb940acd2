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

#include "skewsharp/gcov.h"

#include <algorithm>
#include <cmath>

namespace skewsharp {

namespace {

constexpr std::size_t kLambdaGridPoints = 4097;
constexpr double kLambdaGridLo = 1e-8;
constexpr double kLambdaGridHi = 1e8;

void require_dims(const DensityMatrix& rho, Eigen::Index d) {
  if (rho.dim() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state has dim " + std::to_string(rho.dim()) + ", operand has dim " +
                    std::to_string(d));
  }
}

// G(a, b) = g(l_a, l_b) over the spectrum of rho.
CMatrix kernel_on_spectrum(const DensityMatrix& rho, const BivariateKernel& g) {
  const RVector& l = rho.eigen().values;
  const Eigen::Index d = l.size();
  CMatrix gm(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Complex v = g(l[a], l[b]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::kKernelDomainError,
                    "kernel '" + g.label() + "' is not finite on the spectrum");
      }
      gm(a, b) = v;
    }
  }
  return gm;
}

std::vector<CMatrix> centered_in_eigenbasis(const DensityMatrix& rho, const ObservableSet& x) {
  const CMatrix& v = rho.eigen().vectors;
  std::vector<CMatrix> out;
  for (const auto& xc : x.centered(rho)) out.push_back(v.adjoint() * xc * v);
  return out;
}

// sum_ab G(a,b) Xk(b,a) Xj(a,b) for every (k, j).
CMatrix weighted_pairing(const std::vector<CMatrix>& xs, const CMatrix& gm) {
  const std::size_t n = xs.size();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      out(k, j) = (gm.array() * xs[k].transpose().array() * xs[j].array()).sum();
    }
  }
  return out;
}

double max_of(std::initializer_list<double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double det_delta(const DensityMatrix& rho, const ObservableSet& x) {
  if (x.size() % 2 == 1) return 0.0;
  return std::abs(det_hermitian(HermitianMatrix(commutator_matrix(rho, x))));
}

RMatrix real_symmetric(const CMatrix& m) {
  const RMatrix r = m.real();
  return (r + r.transpose()) / 2.0;
}

}  // namespace

CMatrix apply_superop(const DensityMatrix& rho, const BivariateKernel& g, const CMatrix& z) {
  if (z.rows() != z.cols()) throw Error(ErrorCode::kDimensionMismatch, "operand is not square");
  require_dims(rho, z.rows());
  const CMatrix& v = rho.eigen().vectors;
  const CMatrix gm = kernel_on_spectrum(rho, g);
  const CMatrix zt = v.adjoint() * z * v;
  return v * CMatrix(gm.cwiseProduct(zt)) * v.adjoint();
}

CMatrix g_covariance(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g) {
  require_dims(rho, x.dim());
  return weighted_pairing(centered_in_eigenbasis(rho, x), kernel_on_spectrum(rho, g));
}

RMatrix f_skew_matrix(const DensityMatrix& rho, const ObservableSet& x, const MonotoneFunction& f) {
  require_dims(rho, x.dim());
  const auto& es = rho.eigen();
  const Eigen::Index d = es.dim();
  RMatrix coef = RMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double la = es.values[a];
      const double lb = es.values[b];
      if (la == lb) continue;
      const double diff = la - lb;
      coef(a, b) = f.f0() * diff * diff / (2.0 * f.mean(la, lb));
    }
  }
  const std::size_t n = x.size();
  std::vector<CMatrix> xs;
  for (const auto& o : x.items()) xs.push_back(es.vectors.adjoint() * o.matrix() * es.vectors);
  RMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      // Tr P_a X_k P_b X_j = Xk(a,b) Xj(b,a)
      out(k, j) = (coef.array() * (xs[k].array() * xs[j].transpose().array()).real()).sum();
    }
  }
  return (out + out.transpose()) / 2.0;
}

std::vector<std::pair<double, double>> lambda_objective_samples(const MonotoneFunction& f) {
  std::vector<std::pair<double, double>> out;
  out.reserve(kLambdaGridPoints);
  for (double x : log_grid(kLambdaGridLo, kLambdaGridHi, kLambdaGridPoints)) {
    out.emplace_back(x, f.lambda_objective(x));
  }
  return out;
}

LambdaResult lambda_f(const MonotoneFunction& f) {
  const double f0 = f.f0();
  LambdaResult r;
  r.lower_bound = 1.0 - f0;
  r.upper_bound = std::min(1.0, 1.0 / (4.0 * f0));

  const auto samples = lambda_objective_samples(f);
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].second < samples[best].second) best = i;
  }

  // Golden section on t = log x over the neighbouring grid cells.
  auto objective = [&f](double t) { return f.lambda_objective(std::exp(t)); };
  double lo = std::log(samples[best == 0 ? 0 : best - 1].first);
  double hi = std::log(samples[std::min(best + 1, samples.size() - 1)].first);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double t1 = hi - inv_phi * (hi - lo);
  double t2 = lo + inv_phi * (hi - lo);
  double f1 = objective(t1);
  double f2 = objective(t2);
  while (hi - lo > 1e-10 * std::max(1.0, std::abs(lo))) {
    if (f1 <= f2) {
      hi = t2;
      t2 = t1;
      f2 = f1;
      t1 = hi - inv_phi * (hi - lo);
      f1 = objective(t1);
    } else {
      lo = t1;
      t1 = t2;
      f1 = f2;
      t2 = lo + inv_phi * (hi - lo);
      f2 = objective(t2);
    }
  }
  double argmin = std::exp(0.5 * (lo + hi));
  double value = objective(0.5 * (lo + hi));
  if (samples[best].second < value) {
    value = samples[best].second;
    argmin = samples[best].first;
  }
  // F(0+) = F(inf) = 1/(4 f(0)).
  const double endpoint = f.lambda_objective(0.0);
  if (endpoint <= value) {
    value = endpoint;
    argmin = 0.0;
  }
  r.lambda = value;
  r.argmin_x = argmin;
  r.conjecture_match = std::abs(value - r.upper_bound) <= 1e-6;
  return r;
}

namespace {

CMatrix assemble_Lg(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g1,
                    const BivariateKernel& g2) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto xs = centered_in_eigenbasis(rho, x);
  CMatrix L(2 * n, 2 * n);
  L.topLeftCorner(n, n) = weighted_pairing(xs, kernel_on_spectrum(rho, g1.abs_squared()));
  L.topRightCorner(n, n) = weighted_pairing(xs, kernel_on_spectrum(rho, conj_product(g1, g2)));
  L.bottomLeftCorner(n, n) = weighted_pairing(xs, kernel_on_spectrum(rho, conj_product(g2, g1)));
  L.bottomRightCorner(n, n) = weighted_pairing(xs, kernel_on_spectrum(rho, g2.abs_squared()));
  return L;
}

CMatrix gram_Lg(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g1,
                const BivariateKernel& g2) {
  const std::size_t n = x.size();
  const auto xc = x.centered(rho);
  std::vector<CMatrix> ys;
  for (const auto& xk : xc) ys.push_back(apply_superop(rho, g1, xk));
  for (const auto& xk : xc) ys.push_back(apply_superop(rho, g2, xk));
  CMatrix gram(2 * n, 2 * n);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = 0; b < 2 * n; ++b) {
      gram(a, b) = (ys[a].conjugate().array() * ys[b].array()).sum();
    }
  }
  return gram;
}

}  // namespace

CMatrix build_Lg(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g1,
                 const BivariateKernel& g2) {
  require_dims(rho, x.dim());
  const CMatrix blocks = assemble_Lg(rho, x, g1, g2);
  const CMatrix gram = gram_Lg(rho, x, g1, g2);
  const double diff = max_abs(CMatrix(blocks - gram));
  if (diff > 1e-8 * std::max(1.0, max_abs(gram))) {
    throw Error(ErrorCode::kConstructionMismatch,
                "block and Gram constructions of L^g differ by " + std::to_string(diff));
  }
  return (blocks + blocks.adjoint()) / 2.0;
}

Margin check_g_triple(const DensityMatrix& rho, const ObservableSet& x, const BivariateKernel& g_plus,
                      const BivariateKernel& g_minus, const BivariateKernel& g_zero) {
  require_dims(rho, x.dim());
  const CMatrix gp = kernel_on_spectrum(rho, g_plus);
  const CMatrix gm = kernel_on_spectrum(rho, g_minus);
  const CMatrix g0 = kernel_on_spectrum(rho, g_zero);
  for (Eigen::Index a = 0; a < gp.rows(); ++a) {
    for (Eigen::Index b = 0; b < gp.cols(); ++b) {
      const double tol = 1e-12 * std::max({1.0, std::abs(gp(a, b)), std::abs(gm(a, b))});
      const bool nonneg = gp(a, b).real() >= -tol && gm(a, b).real() >= -tol &&
                          std::abs(gp(a, b).imag()) <= tol && std::abs(gm(a, b).imag()) <= tol;
      const double prod = gp(a, b).real() * gm(a, b).real();
      if (!nonneg || prod < std::norm(g0(a, b)) - 1e-12 * std::max(1.0, std::abs(prod))) {
        throw Error(ErrorCode::kKernelContractViolation,
                    "g+ g- >= |g0|^2 with g+- >= 0 fails on the spectrum of rho");
      }
    }
  }
  const auto xs = centered_in_eigenbasis(rho, x);
  const double dp = det_general(weighted_pairing(xs, gp)).real();
  const double dm = det_general(weighted_pairing(xs, gm)).real();
  const double d0 = std::norm(det_general(weighted_pairing(xs, g0)));
  return Margin::of(dp * dm - d0, max_of({dp * dm, d0}));
}

MetricAdjustedReport check_metric_adjusted(const DensityMatrix& rho, const ObservableSet& x,
                                           const MonotoneFunction& f, std::optional<double> lambda) {
  require_dims(rho, x.dim());
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  MetricAdjustedReport r;
  r.lambda = lambda ? *lambda : lambda_f(f).lambda;
  const RMatrix sigma = covariance_matrix(rho, x);
  r.skew_f = f_skew_matrix(rho, x, f);
  r.classical_f = sigma - r.skew_f;
  const double dd = det_delta(rho, x);
  const double delta_sq = dd * dd;

  const double det_mf = det_general(g_covariance(rho, x, mean_kernel(f))).real();
  const double det_if = r.skew_f.determinant();
  const double lhs18 = det_mf * det_if;
  const double rhs18 = std::pow(2.0 * f.f0(), nd) * delta_sq;
  r.eq18 = Margin::of(lhs18 - rhs18, max_of({lhs18, rhs18}));

  const double lhs19 = (sigma - r.classical_f).determinant() * (sigma + r.classical_f).determinant();
  const double rhs19 = std::pow(4.0 * r.lambda * f.f0(), nd) * delta_sq;
  r.eq19 = Margin::of(lhs19 - rhs19, max_of({lhs19, rhs19}));
  return r;
}

bool in_wy_strongest_class(const MonotoneFunction& f) {
  for (double x : log_grid(1e-6, 1e6, 241)) {
    const double root = 1.0 + std::sqrt(x);
    const double bound = f.f0() * root * root;
    if (f(x) > bound + 1e-10 * std::max(1.0, bound)) return false;
  }
  return true;
}

Margin wy_strongest_check(const DensityMatrix& rho, const ObservableSet& x, const MonotoneFunction& f) {
  if (!in_wy_strongest_class(f)) {
    throw Error(ErrorCode::kPreconditionViolation,
                "'" + f.label() + "' violates f(x) <= f(0)(1 + sqrt x)^2");
  }
  require_dims(rho, x.dim());
  const RMatrix sigma = covariance_matrix(rho, x);
  const RMatrix c = sigma - wy_skew_matrix(rho, x);
  const RMatrix cf = sigma - f_skew_matrix(rho, x, f);
  const double lhs = (sigma - cf).determinant() * (sigma + cf).determinant();
  const double rhs = (sigma - c).determinant() * (sigma + c).determinant();
  return Margin::of(lhs - rhs, max_of({lhs, rhs}));
}

bool alpha_inequality_check(double alpha, const std::vector<double>& grid) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw Error(ErrorCode::kPreconditionViolation, "alpha must lie in (0, 1/2]");
  }
  for (double x : grid) {
    const double hi = std::pow(x, 1.0 - alpha);
    const double lhs = std::abs(std::pow(x, alpha) - hi);
    const double rhs = (1.0 - 2.0 * alpha) * std::abs(1.0 - x);
    if (lhs > rhs + 1e-12 * std::max({1.0, hi, std::abs(1.0 - x)})) return false;
  }
  return true;
}

}  // namespace skewsharp
