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

#include "skewsharp/kernels.h"

#include <cmath>
#include <sstream>

namespace skewsharp {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void BivariateKernel::validate() const {
  if (!nonnegative_) return;
  std::vector<double> pts = log_grid(1e-6, 1.0, 25);
  pts.push_back(0.0);
  for (double x : pts) {
    for (double y : pts) {
      const Complex v = fn_(x, y);
      const double tol = 1e-12 * std::max(1.0, std::abs(v));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v.real() < -tol ||
          std::abs(v.imag()) > tol) {
        throw Error(ErrorCode::kKernelContractViolation,
                    "kernel '" + label_ + "' flagged nonnegative but g(" + num(x) + ", " + num(y) +
                        ") is not");
      }
    }
  }
}

BivariateKernel BivariateKernel::scaled(Complex c) const {
  const bool keeps_sign = c.imag() == 0.0 && c.real() >= 0.0;
  return BivariateKernel(num(c.real()) + (c.imag() != 0.0 ? "+" + num(c.imag()) + "i" : "") + "*" + label_,
                         [fn = fn_, c](double x, double y) { return c * fn(x, y); },
                         nonnegative_ && keeps_sign, symmetric_);
}

BivariateKernel BivariateKernel::conj() const {
  return BivariateKernel("conj(" + label_ + ")",
                         [fn = fn_](double x, double y) { return std::conj(fn(x, y)); },
                         nonnegative_, symmetric_);
}

BivariateKernel BivariateKernel::abs_squared() const {
  return BivariateKernel("|" + label_ + "|^2",
                         [fn = fn_](double x, double y) { return Complex(std::norm(fn(x, y))); },
                         true, symmetric_);
}

BivariateKernel operator+(const BivariateKernel& a, const BivariateKernel& b) {
  return BivariateKernel("(" + a.label_ + "+" + b.label_ + ")",
                         [f = a.fn_, g = b.fn_](double x, double y) { return f(x, y) + g(x, y); },
                         a.nonnegative_ && b.nonnegative_, a.symmetric_ && b.symmetric_);
}

BivariateKernel operator-(const BivariateKernel& a, const BivariateKernel& b) {
  return BivariateKernel("(" + a.label_ + "-" + b.label_ + ")",
                         [f = a.fn_, g = b.fn_](double x, double y) { return f(x, y) - g(x, y); },
                         false, a.symmetric_ && b.symmetric_);
}

BivariateKernel conj_product(const BivariateKernel& a, const BivariateKernel& b) {
  return BivariateKernel(
      "conj(" + a.label_ + ")*" + b.label_,
      [f = a.fn_, g = b.fn_](double x, double y) { return std::conj(f(x, y)) * g(x, y); }, false,
      false);
}

BivariateKernel operator*(const BivariateKernel& a, const BivariateKernel& b) {
  return BivariateKernel("(" + a.label_ + "*" + b.label_ + ")",
                         [f = a.fn_, g = b.fn_](double x, double y) { return f(x, y) * g(x, y); },
                         a.nonnegative_ && b.nonnegative_, a.symmetric_ && b.symmetric_);
}

BivariateKernel operator/(const BivariateKernel& a, const BivariateKernel& b) {
  std::string label = "(" + a.label_ + "/" + b.label_ + ")";
  return BivariateKernel(
      label,
      [f = a.fn_, g = b.fn_, label](double x, double y) {
        const Complex numer = f(x, y);
        const Complex denom = g(x, y);
        if (denom == Complex(0.0)) {
          if (numer == Complex(0.0)) return Complex(0.0);
          throw Error(ErrorCode::kKernelDomainError,
                      label + " has a vanishing denominator at (" + num(x) + ", " + num(y) + ")");
        }
        return numer / denom;
      },
      a.nonnegative_ && b.nonnegative_, a.symmetric_ && b.symmetric_);
}

namespace kernels {

BivariateKernel constant(Complex c) {
  return BivariateKernel(num(c.real()), [c](double, double) { return c; },
                         c.imag() == 0.0 && c.real() >= 0.0, true);
}

BivariateKernel mean() {
  return BivariateKernel("mean", [](double x, double y) { return Complex(0.5 * (x + y)); }, true,
                         true);
}

BivariateKernel eps() {
  return BivariateKernel("eps", [](double x, double y) { return Complex(0.0, 0.5 * (y - x)); },
                         false, false);
}

BivariateKernel product() {
  return BivariateKernel("xy", [](double x, double y) { return Complex(x * y); }, true, true);
}

BivariateKernel sqrt_of(const BivariateKernel& g) {
  return BivariateKernel("sqrt(" + g.label() + ")",
                         [g](double x, double y) {
                           const Complex v = g(x, y);
                           return Complex(std::sqrt(std::max(0.0, v.real())));
                         },
                         true, g.symmetric());
}

ProductTriple product_triple(std::function<double(double)> a, std::function<double(double)> b,
                             double mu, const std::string& label) {
  return ProductTriple{
      BivariateKernel(label + "+",
                      [a, b](double x, double y) { return Complex((a(x) + a(y)) * (b(x) + b(y))); },
                      false, true),
      BivariateKernel(label + "-",
                      [a, b](double x, double y) { return Complex((a(x) - a(y)) * (b(x) - b(y))); },
                      false, true),
      BivariateKernel(label + "0",
                      [a, b, mu](double x, double y) { return Complex(mu * (a(x) * b(y) - a(y) * b(x))); },
                      false, false),
  };
}

}  // namespace kernels

MonotoneFunction::MonotoneFunction(Family family, double alpha, std::string label,
                                   std::function<double(double)> fn)
    : family_(family), alpha_(alpha), label_(std::move(label)), fn_(std::move(fn)),
      f0_(fn_(0.0)) {}

MonotoneFunction MonotoneFunction::wyd(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw Error(ErrorCode::kInvalidFunction, "WYD parameter " + num(alpha) + " outside (0, 1/2]");
  }
  auto fn = [alpha](double x) -> double {
    if (x == 0.0) return alpha * (1.0 - alpha);
    if (x == 1.0) return 1.0;
    // alpha(1-alpha)(x-1)^2 / ((x^alpha - 1)(x^(1-alpha) - 1)), in expm1 form for x near 1.
    const double t = std::log(x);
    const double e = std::expm1(t);
    return alpha * (1.0 - alpha) * e * e / (std::expm1(alpha * t) * std::expm1((1.0 - alpha) * t));
  };
  std::string label = alpha == 0.5 ? "wy" : "wyd:" + num(alpha);
  return MonotoneFunction(Family::kWyd, alpha, std::move(label), fn);
}

MonotoneFunction MonotoneFunction::sld() {
  return MonotoneFunction(Family::kSld, 0.0, "sld", [](double x) { return 0.5 * (1.0 + x); });
}

MonotoneFunction MonotoneFunction::user(std::string label, std::function<double(double)> f) {
  MonotoneFunction out(Family::kUser, 0.0, std::move(label), std::move(f));
  out.validate();
  return out;
}

MonotoneFunction MonotoneFunction::from_label(const std::string& label) {
  if (label == "wy") return wyd(0.5);
  if (label == "sld") return sld();
  if (label.rfind("wyd:", 0) == 0) {
    const std::string arg = label.substr(4);
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) {
      throw Error(ErrorCode::kUnknownLabel, "cannot parse WYD parameter in '" + label + "'");
    }
    return wyd(alpha);
  }
  throw Error(ErrorCode::kUnknownLabel, "unknown function label '" + label + "'");
}

void MonotoneFunction::validate() const {
  auto fail = [this](const std::string& what) {
    throw Error(ErrorCode::kInvalidFunction, "'" + label_ + "': " + what);
  };
  if (!(std::isfinite(f0_) && f0_ > 0.0)) fail("f(0) must be positive (regular)");
  if (std::abs(fn_(1.0) - 1.0) > 1e-12) fail("f(1) = " + num(fn_(1.0)) + ", expected 1");
  std::vector<double> grid = log_grid(1e-6, 1e6, 241);
  for (double x : grid) {
    const double fx = fn_(x);
    if (!std::isfinite(fx)) fail("f(" + num(x) + ") is not finite");
    const double scale = std::max(1.0, std::abs(fx));
    if (std::abs(x * fn_(1.0 / x) - fx) > 1e-10 * scale) fail("not symmetric at x = " + num(x));
    const double upper = 0.5 * (1.0 + x);
    const double lower = f0_ * (1.0 + x);
    if (fx > upper + 1e-10 * std::max(1.0, upper) || fx < lower - 1e-10 * std::max(1.0, upper)) {
      fail("outside f(0)(1+x) <= f(x) <= (1+x)/2 at x = " + num(x));
    }
  }
  for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
    const double a = grid[i];
    const double b = grid[i + 2];
    const double mid = fn_(0.5 * (a + b));
    const double chord = 0.5 * (fn_(a) + fn_(b));
    if (mid < chord - 1e-10 * std::max(1.0, std::abs(chord))) fail("not concave near x = " + num(a));
  }
}

double MonotoneFunction::mean(double x, double y) const {
  if (x == 0.0 && y == 0.0) return 0.0;
  return y >= x ? y * fn_(x / y) : x * fn_(y / x);
}

double MonotoneFunction::star(double x) const {
  const double d = 1.0 - x;
  return f0_ * d * d / (2.0 * fn_(x));
}

double MonotoneFunction::lambda_objective(double x) const {
  if (x == 0.0) return 1.0 / (4.0 * f0_);
  return (1.0 + x - star(x)) / (2.0 * fn_(x));
}

BivariateKernel mean_kernel(const MonotoneFunction& f) {
  return BivariateKernel("m[" + f.label() + "]",
                         [f](double x, double y) { return Complex(f.mean(x, y)); }, true, true);
}

BivariateKernel f_star(const MonotoneFunction& f) {
  return BivariateKernel("mstar[" + f.label() + "]",
                         [f](double x, double y) {
                           if (x == y) return Complex(0.0);
                           const double d = x - y;
                           return Complex(f.f0() * d * d / (2.0 * f.mean(x, y)));
                         },
                         true, true);
}

BivariateKernel kernel_from_label(const std::string& label) {
  if (label == "mean") return kernels::mean();
  if (label == "eps") return kernels::eps();
  return f_star(MonotoneFunction::from_label(label));
}

}  // namespace skewsharp
