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

// Bivariate kernels g(x, y) on [0, inf)^2 and the catalog of regular symmetric
// operator monotone functions used to parametrize metric-adjusted skew
// information.

#ifndef SKEWSHARP_KERNELS_H_
#define SKEWSHARP_KERNELS_H_

#include <functional>
#include <string>
#include <vector>

#include "skewsharp/linalg.h"

namespace skewsharp {

class BivariateKernel {
 public:
  using Fn = std::function<Complex(double, double)>;

  BivariateKernel(std::string label, Fn fn, bool nonnegative = false, bool symmetric = false)
      : label_(std::move(label)), fn_(std::move(fn)), nonnegative_(nonnegative),
        symmetric_(symmetric) {}

  Complex operator()(double x, double y) const { return fn_(x, y); }
  const std::string& label() const { return label_; }
  bool nonnegative() const { return nonnegative_; }
  bool symmetric() const { return symmetric_; }

  /// Samples a log grid (plus 0) and throws kKernelContractViolation when a
  /// kernel flagged nonnegative takes a negative or complex value.
  void validate() const;

  BivariateKernel scaled(Complex c) const;
  BivariateKernel conj() const;
  BivariateKernel abs_squared() const;

  friend BivariateKernel operator+(const BivariateKernel& a, const BivariateKernel& b);
  friend BivariateKernel operator-(const BivariateKernel& a, const BivariateKernel& b);
  /// Pointwise conj(a) * b, the kernel of the cross block in the Gram matrix.
  friend BivariateKernel conj_product(const BivariateKernel& a, const BivariateKernel& b);
  friend BivariateKernel operator*(const BivariateKernel& a, const BivariateKernel& b);
  /// Pointwise a / b with 0/0 := 0. A zero denominator under a nonzero
  /// numerator throws kKernelDomainError at evaluation time.
  friend BivariateKernel operator/(const BivariateKernel& a, const BivariateKernel& b);

 private:
  std::string label_;
  Fn fn_;
  bool nonnegative_;
  bool symmetric_;
};

namespace kernels {

BivariateKernel constant(Complex c);
/// (x + y) / 2, the symmetrized covariance kernel.
BivariateKernel mean();
/// i (y - x) / 2, the commutator kernel.
BivariateKernel eps();
/// x * y.
BivariateKernel product();
/// sqrt of a nonnegative real kernel.
BivariateKernel sqrt_of(const BivariateKernel& g);

/// g_pm(x, y) = (a(x) +- a(y)) (b(x) +- b(y)), g0 = mu (a(x) b(y) - a(y) b(x)).
struct ProductTriple {
  BivariateKernel plus;
  BivariateKernel minus;
  BivariateKernel zero;
};
ProductTriple product_triple(std::function<double(double)> a, std::function<double(double)> b,
                             double mu, const std::string& label);

}  // namespace kernels

/// A regular symmetric normalized function f on [0, inf). The catalog holds
/// the Wigner-Yanase-Dyson family f_alpha (alpha in (0, 1/2]) and the SLD
/// function f_M(x) = (1 + x)/2; user-supplied members are accepted after
/// grid validation (operator monotonicity itself is not checked).
class MonotoneFunction {
 public:
  enum class Family { kWyd, kSld, kUser };

  static MonotoneFunction wyd(double alpha);
  static MonotoneFunction sld();
  static MonotoneFunction user(std::string label, std::function<double(double)> f);

  /// "wy", "wyd:<alpha>", "sld". Throws kUnknownLabel or kInvalidFunction.
  static MonotoneFunction from_label(const std::string& label);

  double operator()(double x) const { return fn_(x); }
  double f0() const { return f0_; }
  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  const std::string& label() const { return label_; }

  /// f(1) = 1, x f(1/x) = f(x), f(0) > 0, midpoint concavity, and
  /// f(0)(1 + x) <= f(x) <= (1 + x)/2 on a log grid. Throws kInvalidFunction
  /// naming the first failed check.
  void validate() const;

  /// m_f(x, y) = y f(x/y), evaluated on the side with ratio <= 1; m_f(0,0) = 0.
  double mean(double x, double y) const;

  /// f_*(x) = f(0) (1 - x)^2 / (2 f(x)).
  double star(double x) const;

  /// F(x) = (1 + x - f_*(x)) / (2 f(x)); F(0) = 1 / (4 f(0)).
  double lambda_objective(double x) const;

 private:
  MonotoneFunction(Family family, double alpha, std::string label, std::function<double(double)> fn);

  Family family_;
  double alpha_;
  std::string label_;
  std::function<double(double)> fn_;
  double f0_;
};

/// The kernel m_f.
BivariateKernel mean_kernel(const MonotoneFunction& f);

/// The kernel m_{f_*}(x, y) = f(0) (x - y)^2 / (2 m_f(x, y)); zero on the diagonal.
BivariateKernel f_star(const MonotoneFunction& f);

/// Resolves "mean", "eps", or any monotone-function label (as m_{f_*}).
BivariateKernel kernel_from_label(const std::string& label);

/// Log-spaced grid of `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace skewsharp

#endif  // SKEWSHARP_KERNELS_H_
