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

#include "skewsharp/gaussian.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace skewsharp {

namespace {

constexpr double kGeneratorTol = 1e-10;
constexpr double kSingularGap = 1e-8;
constexpr double kPerturbation = 1e-8;
constexpr double kMaxEigenvectorCond = 1e8;

double cond(const CMatrix& v) {
  const Eigen::JacobiSVD<CMatrix> svd(v);
  const RVector& s = svd.singularValues();
  return s[s.size() - 1] == 0.0 ? INFINITY : s[0] / s[s.size() - 1];
}

// exp(z) - 1 without cancellation near zero.
Complex expm1c(Complex z) {
  if (z.imag() == 0.0) return Complex(std::expm1(z.real()));
  if (std::abs(z) < 1e-5) return z + z * z / 2.0 + z * z * z / 6.0;
  return std::exp(z) - 1.0;
}

Complex tanhc(Complex z) {
  if (z.imag() == 0.0) return Complex(std::tanh(z.real()));
  return std::tanh(z);
}

Complex sinhc(Complex z) {
  if (z.imag() == 0.0) return Complex(std::sinh(z.real()));
  return std::sinh(z);
}

struct Eigenbasis {
  CMatrix v;
  CMatrix v_inv;
  Eigen::VectorXcd values;
};

CMatrix apply(const Eigenbasis& e, const std::function<Complex(Complex)>& fn) {
  Eigen::VectorXcd d(e.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = fn(e.values[i]);
  return e.v * d.asDiagonal() * e.v_inv;
}

CMatrix random_admissible_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix h(n, n), k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = Complex(gauss(rng), gauss(rng));
      k(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  h = (h + h.adjoint().eval()) / 2.0;
  k = (k + k.transpose().eval()) / 2.0;
  CMatrix s(2 * n, 2 * n);
  s << k, h, h.transpose(), k.conjugate();
  const CMatrix dir = -s * symplectic_form(n).cast<Complex>();
  return dir / dir.norm();
}

GaussianMoments moments_via_expm(const CMatrix& n_beta, int n_modes) {
  const auto dim = 2 * n_modes;
  const CMatrix id = CMatrix::Identity(dim, dim);
  const CMatrix j = symplectic_form(n_modes).cast<Complex>();
  const CMatrix m = CMatrix(-n_beta).exp();
  const CMatrix root_m = CMatrix(-0.5 * n_beta).exp();
  GaussianMoments out;
  out.n_modes = n_modes;
  out.via_expm = true;
  out.C = j * (m - id).inverse();
  const CMatrix plus = 0.5 * j * (root_m + id) * (root_m - id).inverse();
  const CMatrix minus = 0.5 * j * (root_m - id) * (root_m + id).inverse();
  out.sigma = (plus + minus) / 2.0;
  out.c = (plus - minus) / 2.0;
  out.delta = j / 2.0;
  out.cond_m_minus_i = cond(m - id);
  if (m.allFinite()) {
    out.recursion_checked = true;
    const double resid = max_abs(CMatrix(out.C.transpose() - out.C * m));
    if (resid > 1e-8 * std::max(1.0, max_abs(out.C) * max_abs(m))) {
      throw Error(ErrorCode::kSingularM, "C^T = C M fails after Pade exponentiation");
    }
  }
  return out;
}

}  // namespace

RMatrix symplectic_form(int n_modes) {
  RMatrix j = RMatrix::Zero(2 * n_modes, 2 * n_modes);
  j.topRightCorner(n_modes, n_modes) = RMatrix::Identity(n_modes, n_modes);
  j.bottomLeftCorner(n_modes, n_modes) = -RMatrix::Identity(n_modes, n_modes);
  return j;
}

RMatrix block_swap(int n_modes) {
  RMatrix p = RMatrix::Zero(2 * n_modes, 2 * n_modes);
  p.topRightCorner(n_modes, n_modes) = RMatrix::Identity(n_modes, n_modes);
  p.bottomLeftCorner(n_modes, n_modes) = RMatrix::Identity(n_modes, n_modes);
  return p;
}

CMatrix quadrature_transform(int n_modes) {
  const CMatrix id = CMatrix::Identity(n_modes, n_modes);
  const Complex i(0.0, 1.0);
  CMatrix u(2 * n_modes, 2 * n_modes);
  u << id, i * id, id, -i * id;
  return u / std::sqrt(2.0);
}

QuadraticHamiltonian validate_quadratic(const CMatrix& s, int n_modes, double beta) {
  if (n_modes < 1 || s.rows() != 2 * n_modes || s.cols() != 2 * n_modes) {
    throw Error(ErrorCode::kInvalidGenerator, "S must be 2n x 2n for n = " + std::to_string(n_modes));
  }
  if (!s.allFinite()) throw Error(ErrorCode::kInvalidGenerator, "S has non-finite entries");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kInvalidGenerator, "beta must be positive and finite");
  }
  const double scale = std::max(1.0, max_abs(s));
  if (max_abs(CMatrix(s - s.transpose())) > kGeneratorTol * scale) {
    throw Error(ErrorCode::kInvalidGenerator, "S is not symmetric");
  }
  const CMatrix pi = block_swap(n_modes).cast<Complex>();
  if (max_abs(CMatrix(pi * s.conjugate() * pi - s)) > kGeneratorTol * scale) {
    throw Error(ErrorCode::kInvalidGenerator, "Pi conj(S) Pi != S, so H is not Hermitian");
  }
  CMatrix sym = (s + s.transpose()) / 2.0;
  sym = (sym + pi * sym.conjugate() * pi) / 2.0;
  return QuadraticHamiltonian(sym, n_modes, beta);
}

QuadraticHamiltonian QuadraticHamiltonian::from_blocks(const CMatrix& h, const CMatrix& k, double beta) {
  const auto n = h.rows();
  if (h.cols() != n || k.rows() != n || k.cols() != n || n == 0) {
    throw Error(ErrorCode::kInvalidGenerator, "h and k must be square of equal size");
  }
  if (max_abs(CMatrix(h - h.adjoint())) > kGeneratorTol * std::max(1.0, max_abs(h))) {
    throw Error(ErrorCode::kInvalidGenerator, "h is not Hermitian");
  }
  if (max_abs(CMatrix(k - k.transpose())) > kGeneratorTol * std::max(1.0, max_abs(k))) {
    throw Error(ErrorCode::kInvalidGenerator, "k is not symmetric");
  }
  CMatrix s(2 * n, 2 * n);
  s << k, h, h.transpose(), k.conjugate();
  return validate_quadratic(s, static_cast<int>(n), beta);
}

QuadraticHamiltonian QuadraticHamiltonian::single_mode(double omega, Complex xi, double beta) {
  CMatrix h(1, 1), k(1, 1);
  h(0, 0) = omega;
  k(0, 0) = xi;
  return from_blocks(h, k, beta);
}

QuadraticHamiltonian QuadraticHamiltonian::two_mode(double omega1, double omega2, Complex coupling,
                                                    Complex xi1, Complex xi2, double beta) {
  CMatrix h(2, 2), k = CMatrix::Zero(2, 2);
  h << omega1, coupling, std::conj(coupling), omega2;
  k(0, 0) = xi1;
  k(1, 1) = xi2;
  return from_blocks(h, k, beta);
}

CMatrix QuadraticHamiltonian::N() const { return -s_ * symplectic_form(n_modes_).cast<Complex>(); }

bool QuadraticHamiltonian::bounded_below() const {
  const CMatrix d = s_ * block_swap(n_modes_).cast<Complex>();
  const RVector ev =
      Eigen::SelfAdjointEigenSolver<CMatrix>((d + d.adjoint()) / 2.0, Eigen::EigenvaluesOnly)
          .eigenvalues();
  return ev.minCoeff() > kGeneratorTol * std::max(1.0, max_abs(d));
}

QuadraticHamiltonian QuadraticHamiltonian::with_beta(double beta) const {
  return validate_quadratic(s_, n_modes_, beta);
}

GaussianMoments exact_moments(const QuadraticHamiltonian& h, std::uint64_t perturbation_seed) {
  const int n = h.n_modes();
  const CMatrix j = symplectic_form(n).cast<Complex>();
  CMatrix n_beta = h.beta() * h.N();
  bool perturbed = false;

  Eigenbasis eb;
  double gap = 0.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::ComplexEigenSolver<CMatrix> solver(n_beta);
    eb.v = solver.eigenvectors();
    eb.values = solver.eigenvalues();
    gap = eb.values.cwiseAbs().minCoeff();
    if (gap >= kSingularGap) break;
    if (attempt == 1) {
      throw Error(ErrorCode::kSingularM, "M - I stays singular after perturbing the generator");
    }
    std::mt19937_64 rng(perturbation_seed);
    n_beta += kPerturbation * std::max(1.0, n_beta.norm()) * random_admissible_direction(n, rng);
    perturbed = true;
  }

  GaussianMoments out;
  if (cond(eb.v) > kMaxEigenvectorCond) {
    out = moments_via_expm(n_beta, n);
  } else {
    eb.v_inv = eb.v.inverse();
    out.n_modes = n;
    // 1/(e^{-x} - 1), -1/2 coth(x/4), -1/2 tanh(x/4), -1/(2 sinh(x/2)) on the spectrum of beta N.
    out.C = j * apply(eb, [](Complex x) { return 1.0 / expm1c(-x); });
    const CMatrix plus = -0.5 * j * apply(eb, [](Complex x) { return 1.0 / tanhc(x / 4.0); });
    const CMatrix minus = -0.5 * j * apply(eb, [](Complex x) { return tanhc(x / 4.0); });
    out.sigma = (plus + minus) / 2.0;
    out.c = -0.5 * j * apply(eb, [](Complex x) { return 1.0 / sinhc(x / 2.0); });
    out.delta = j / 2.0;
    double lo = INFINITY, hi = 0.0;
    for (Eigen::Index i = 0; i < eb.values.size(); ++i) {
      const double g = std::abs(expm1c(-eb.values[i]));
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    out.cond_m_minus_i = hi / lo;
    const CMatrix m = apply(eb, [](Complex x) { return std::exp(-x); });
    if (m.allFinite() && max_abs(m) < 1e12) {
      out.recursion_checked = true;
      const double resid = max_abs(CMatrix(out.C.transpose() - out.C * m));
      if (resid > 1e-8 * std::max(1.0, max_abs(out.C) * max_abs(m))) {
        out = moments_via_expm(n_beta, n);
      }
    }
  }
  out.perturbed = perturbed;
  out.min_mode_gap = gap;
  out.basis = MomentBasis::kLadder;

  const double comm_resid = max_abs(CMatrix(out.C.transpose() - out.C - j));
  if (comm_resid > 1e-8 * std::max(1.0, max_abs(out.C))) {
    throw Error(ErrorCode::kSingularM, "C^T - C = J fails; moments are unreliable");
  }
  return out;
}

GaussianMoments to_quadrature(const GaussianMoments& m) {
  if (m.basis == MomentBasis::kQuadrature) {
    throw Error(ErrorCode::kAlreadyQuadrature, "moments are already in the quadrature basis");
  }
  const CMatrix u = quadrature_transform(m.n_modes);
  GaussianMoments q = m;
  q.C = u.transpose() * m.C * u;
  q.sigma = u.transpose() * m.sigma * u;
  q.c = u.transpose() * m.c * u;
  q.delta = u.transpose() * m.delta * u;
  // sigma and c are real symmetric here; strip roundoff in the imaginary part.
  q.sigma = q.sigma.real().cast<Complex>();
  q.sigma = (q.sigma + q.sigma.transpose().eval()) / 2.0;
  q.c = q.c.real().cast<Complex>();
  q.c = (q.c + q.c.transpose().eval()) / 2.0;
  q.delta = (q.delta + q.delta.adjoint().eval()) / 2.0;
  q.basis = MomentBasis::kQuadrature;
  return q;
}

double moments_delta_g(const GaussianMoments& m) {
  const Complex prod = det_general(CMatrix(m.sigma + m.c)) * det_general(CMatrix(m.sigma - m.c));
  const Complex dd = det_general(m.delta);
  return prod.real() - (dd * dd).real();
}

double moments_delta_g_scale(const GaussianMoments& m) {
  const Complex prod = det_general(CMatrix(m.sigma + m.c)) * det_general(CMatrix(m.sigma - m.c));
  return std::max(1.0, std::abs(prod));
}

CMatrix ladder_operator(int n_modes, int cutoff, int mode) {
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int m = 1; m < cutoff; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  CMatrix out = CMatrix::Identity(1, 1);
  for (int i = 0; i < n_modes; ++i) {
    const CMatrix factor = i == mode ? a : CMatrix(CMatrix::Identity(cutoff, cutoff));
    CMatrix next(out.rows() * cutoff, out.cols() * cutoff);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(r * cutoff, c * cutoff, cutoff, cutoff) = out(r, c) * factor;
      }
    }
    out = std::move(next);
  }
  return out;
}

TruncatedThermal fock_truncate_thermal(const QuadraticHamiltonian& h, int cutoff) {
  const int n = h.n_modes();
  if (n != 1 && n != 2) {
    throw Error(ErrorCode::kUnsupportedModeCount,
                "Fock truncation supports 1 or 2 modes, got " + std::to_string(n));
  }
  if (cutoff < 8) {
    throw Error(ErrorCode::kCutoffTooSmall, "cutoff " + std::to_string(cutoff) + " is below 8");
  }
  if (!h.bounded_below()) {
    throw Error(ErrorCode::kInvalidGenerator, "H is not bounded below; no thermal state exists");
  }
  std::vector<CMatrix> a;
  for (int i = 0; i < n; ++i) a.push_back(ladder_operator(n, cutoff, i));
  const CMatrix hb = h.h_block();
  const CMatrix kb = h.k_block();
  const Eigen::Index dim = a.front().rows();
  CMatrix ham = CMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < n; ++jj) {
      ham += hb(i, jj) * a[i].adjoint() * a[jj];
      const CMatrix pair = a[i].adjoint() * a[jj].adjoint();
      ham += 0.5 * (kb(i, jj) * pair + std::conj(kb(i, jj)) * pair.adjoint());
    }
  }
  const EigenSystem es = spectral_decompose(HermitianMatrix(ham));
  const double e_min = es.values.minCoeff();
  RVector w = (-h.beta() * (es.values.array() - e_min)).exp();
  w /= w.sum();
  CMatrix rho = es.vectors * w.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  rho = (rho + rho.adjoint().eval()) / 2.0;
  rho /= rho.trace().real();

  TruncatedThermal out{DensityMatrix(rho), 0.0, 0.0};
  const GaussianMoments exact = exact_moments(h);
  for (int i = 0; i < n; ++i) {
    const double occ = exact.C(i, n + i).real();  // <a_i^dag a_i>
    const double ratio = occ / (1.0 + occ);
    out.tail_mass += std::pow(ratio, cutoff);
    const double trunc = out.rho.expectation(a[i].adjoint() * a[i]).real();
    out.occupation_error = std::max(out.occupation_error, std::abs(trunc - occ));
  }
  return out;
}

ObservableSet quadrature_observables(int n_modes, int cutoff) {
  if (n_modes < 1 || cutoff < 2) {
    throw Error(ErrorCode::kCutoffTooSmall, "need n_modes >= 1 and cutoff >= 2");
  }
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  std::vector<HermitianMatrix> xs, ps;
  for (int m = 0; m < n_modes; ++m) {
    const CMatrix a = ladder_operator(n_modes, cutoff, m);
    xs.emplace_back(CMatrix(r * (a.adjoint() + a)));
    ps.emplace_back(CMatrix(r * i * (a.adjoint() - a)));
  }
  xs.insert(xs.end(), ps.begin(), ps.end());
  return ObservableSet(std::move(xs));
}

SaturationResult saturation_check(const QuadraticHamiltonian& h, int cutoff) {
  SaturationResult out;
  out.exact = to_quadrature(exact_moments(h));
  out.delta_g_exact = moments_delta_g(out.exact);
  out.exact_scale = moments_delta_g_scale(out.exact);
  const TruncatedThermal t = fock_truncate_thermal(h, cutoff);
  out.tail_mass = t.tail_mass;
  out.numeric = check_refined_rs(t.rho, quadrature_observables(h.n_modes(), cutoff));
  out.delta_g_numeric = out.numeric.delta_g;
  return out;
}

double nongaussianity(const DensityMatrix& rho, int n_modes, int cutoff) {
  if (n_modes < 1 || cutoff < 2) {
    throw Error(ErrorCode::kDimensionMismatch, "need n_modes >= 1 and cutoff >= 2");
  }
  const double expected = std::pow(static_cast<double>(cutoff), n_modes);
  if (static_cast<double>(rho.dim()) != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state dim " + std::to_string(rho.dim()) + " != cutoff^modes = " +
                    std::to_string(static_cast<long long>(expected)));
  }
  return check_refined_rs(rho, quadrature_observables(n_modes, cutoff)).delta_g;
}

QuadraticHamiltonian generator_from_covariance(const CMatrix& c, int n_modes) {
  const int dim = 2 * n_modes;
  if (n_modes < 1 || c.rows() != dim || c.cols() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "C must be 2n x 2n");
  }
  const CMatrix j = symplectic_form(n_modes).cast<Complex>();
  const double scale = std::max(1.0, max_abs(c));
  if (max_abs(CMatrix(c.transpose() - c - j)) > 1e-8 * scale) {
    throw Error(ErrorCode::kNonSymplectic, "C^T - C != J; not a bosonic correlation matrix");
  }
  const Eigen::FullPivLU<CMatrix> lu(c);
  if (!lu.isInvertible() || cond(c) > 1e12) {
    throw Error(ErrorCode::kSingularCovariance, "C is singular (M - I not invertible)");
  }
  const CMatrix m = lu.solve(CMatrix(c.transpose()));
  if (max_abs(CMatrix(m.transpose() * j * m - j)) > 1e-8 * std::max(1.0, max_abs(m) * max_abs(m))) {
    throw Error(ErrorCode::kNonSymplectic, "M' = C^{-1} C^T is not symplectic");
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(m);
  const CMatrix v = solver.eigenvectors();
  const Eigen::VectorXcd lam = solver.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const Complex l = lam[i];
    if (std::abs(l.imag()) <= 1e-12 * std::abs(l) && l.real() <= 0.0) {
      throw Error(ErrorCode::kLogBranchFailure,
                  "M' has an eigenvalue on the closed negative real axis; principal log undefined");
    }
  }
  if (cond(v) > 1e10) {
    throw Error(ErrorCode::kLogBranchFailure, "M' is numerically defective; log not taken");
  }
  Eigen::VectorXcd log_lam(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) log_lam[i] = std::log(lam[i]);
  const CMatrix n_prime = -(v * log_lam.asDiagonal() * v.inverse());
  CMatrix s = n_prime * j;
  const CMatrix pi = block_swap(n_modes).cast<Complex>();
  s = (s + s.transpose().eval()) / 2.0;
  s = (s + pi * s.conjugate() * pi) / 2.0;
  return validate_quadratic(s, n_modes, 1.0);
}

}  // namespace skewsharp
