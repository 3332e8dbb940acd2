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

#include "oracles.h"

#include <cmath>

namespace oracle {

namespace qubit {
double skew() { return 1.0 - std::sqrt(3.0) / 2.0; }
double classical() { return std::sqrt(3.0) / 2.0; }
double delta() { return -0.5; }
CMat state() {
  CMat r = CMat::Zero(2, 2);
  r(0, 0) = kP;
  r(1, 1) = 1.0 - kP;
  return r;
}
CMat sigma_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
CMat sigma_y() {
  CMat m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
CMat sigma_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace qubit

namespace thermal {
double mean_occupation(double q) { return q / (1.0 - q); }
double variance(double q) { return (1.0 + q) / (2.0 * (1.0 - q)); }
double classical(double q) { return std::sqrt(q) / (1.0 - q); }
double skew(double q) { return variance(q) - classical(q); }
}  // namespace thermal

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

namespace {

Complex trace_of(const CMat& m) {
  Complex t = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::vector<CMat> center(const CMat& rho, const std::vector<CMat>& xs) {
  std::vector<CMat> out;
  for (const CMat& x : xs) {
    const Complex mean = trace_of(rho * x);
    out.push_back(x - mean * CMat::Identity(x.rows(), x.cols()));
  }
  return out;
}

}  // namespace

RMat covariance(const CMat& rho, const std::vector<CMat>& xs) {
  const auto c = center(rho, xs);
  const auto n = static_cast<Eigen::Index>(xs.size());
  RMat s(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) s(k, j) = trace_of(rho * c[k] * c[j]).real();
  }
  return s;
}

RMat commutator_matrix(const CMat& rho, const std::vector<CMat>& xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  RMat d(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d(k, j) = (Complex(0, 0.5) * trace_of(rho * commutator(xs[k], xs[j]))).real();
    }
  }
  return d;
}

RMat wy_skew(const CMat& rho, const std::vector<CMat>& xs) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  // Eigenvalues at roundoff level are zeros of a rank-deficient state; their
  // square roots would otherwise contribute ~1e-8.
  RMat vals = es.eigenvalues().unaryExpr([](double v) { return v < 1e-13 ? 0.0 : v; });
  const CMat root = es.eigenvectors() * vals.cwiseSqrt().cast<Complex>().asDiagonal() *
                    es.eigenvectors().adjoint();
  const auto n = static_cast<Eigen::Index>(xs.size());
  RMat out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(k, j) = (-0.5 * trace_of(commutator(root, xs[k]) * commutator(root, xs[j]))).real();
    }
  }
  return out;
}

Complex laplace_det(const CMat& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  Complex det = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    CMat minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == col) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    det += (col % 2 == 0 ? 1.0 : -1.0) * a(0, col) * laplace_det(minor);
  }
  return det;
}

double laplace_det(const RMat& a) { return laplace_det(CMat(a.cast<Complex>())).real(); }

double min_eigenvalue(const CMat& hermitian) {
  return Eigen::SelfAdjointEigenSolver<CMat>(hermitian, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double lambda_brute(const std::function<double(double)>& f, int points) {
  const double f0 = f(0.0);
  double best = 1.0 / (4.0 * f0);
  const double lo = std::log(1e-9), hi = std::log(1e9);
  for (int i = 0; i < points; ++i) {
    const double x = std::exp(lo + (hi - lo) * i / (points - 1));
    const double fx = f(x);
    const double star = f0 * (1.0 - x) * (1.0 - x) / (2.0 * fx);
    best = std::min(best, (1.0 + x - star) / (2.0 * fx));
  }
  return best;
}

double wyd(double alpha, double x) {
  if (x == 1.0) return 1.0;
  if (x == 0.0) return alpha * (1.0 - alpha);
  return alpha * (1.0 - alpha) * (x - 1.0) * (x - 1.0) /
         ((std::pow(x, alpha) - 1.0) * (std::pow(x, 1.0 - alpha) - 1.0));
}

CMat annihilation(int n_modes, int cutoff, int mode) {
  const int dim = static_cast<int>(std::lround(std::pow(cutoff, n_modes)));
  CMat a = CMat::Zero(dim, dim);
  // Basis index = sum_m n_m cutoff^(n_modes - 1 - m), mode 0 most significant.
  for (int idx = 0; idx < dim; ++idx) {
    int stride = 1;
    for (int m = n_modes - 1; m > mode; --m) stride *= cutoff;
    const int occ = (idx / stride) % cutoff;
    if (occ > 0) a(idx - stride, idx) = std::sqrt(static_cast<double>(occ));
  }
  return a;
}

CMat fock_correlation(const CMat& rho, int n_modes, int cutoff) {
  std::vector<CMat> lambda;
  for (int m = 0; m < n_modes; ++m) lambda.push_back(annihilation(n_modes, cutoff, m).adjoint());
  for (int m = 0; m < n_modes; ++m) lambda.push_back(annihilation(n_modes, cutoff, m));
  const int d = 2 * n_modes;
  CMat c(d, d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) c(k, j) = trace_of(rho * lambda[k] * lambda[j]);
  }
  return c;
}

CMat random_state(int dim, int rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(dim, rank);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < rank; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  CMat rho = m * m.adjoint();
  rho = (rho + rho.adjoint().eval()) / 2.0;
  return rho / trace_of(rho).real();
}

CMat random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return (m + m.adjoint()) / 2.0;
}

}  // namespace oracle
