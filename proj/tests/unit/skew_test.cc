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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "skewsharp/fuzz.h"
#include "skewsharp/skew.h"

namespace skewsharp {
namespace {

ObservableSet qubit_pair() {
  return ObservableSet({HermitianMatrix(oracle::qubit::sigma_x()), HermitianMatrix(oracle::qubit::sigma_y())});
}

std::vector<CMatrix> raw(const ObservableSet& x) {
  std::vector<CMatrix> out;
  for (const auto& h : x.items()) out.push_back(h.matrix());
  return out;
}

TEST(QubitFixture, MatricesMatchClosedForms) {
  const DensityMatrix rho(oracle::qubit::state());
  const UncertaintyReport r = check_refined_rs(rho, qubit_pair());
  EXPECT_NEAR(r.sigma(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.sigma(1, 1), 1.0, 1e-12);
  EXPECT_NEAR(r.sigma(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(r.delta(0, 1), oracle::qubit::delta(), 1e-12);
  EXPECT_NEAR(r.delta(1, 0), -oracle::qubit::delta(), 1e-12);
  EXPECT_NEAR(r.skew(0, 0), oracle::qubit::skew(), 1e-12);
  EXPECT_NEAR(r.skew(1, 1), oracle::qubit::skew(), 1e-12);
  EXPECT_NEAR(r.classical(0, 0), oracle::qubit::classical(), 1e-12);
  EXPECT_NEAR(r.dets.delta, 0.25, 1e-12);
  EXPECT_NEAR(r.dets.plus * r.dets.minus, 1.0 / 16.0, 1e-12);
}

TEST(QubitFixture, RefinedRelationSaturatesAndRsDoesNot) {
  const UncertaintyReport r = check_refined_rs(DensityMatrix(oracle::qubit::state()), qubit_pair());
  EXPECT_LE(std::abs(r.margins.at("eq3").value), 1e-10);
  EXPECT_TRUE(r.margins.at("eq3").saturated());
  EXPECT_NEAR(r.margins.at("rs").value, 1.0 - 0.25, 1e-12);  // |sigma| - |delta|
  EXPECT_FALSE(r.margins.at("rs").saturated());
  EXPECT_TRUE(r.margins.at("eq7-psd").saturated());
  EXPECT_TRUE(r.margins.at("eq8-schur").saturated());
  EXPECT_EQ(r.rank_L, 2);  // the Schur complement vanishes identically
}

TEST(QubitFixture, TwoObservableRelationsSaturateTogether) {
  const TwoObsReport t = two_obs_relations(DensityMatrix(oracle::qubit::state()),
                                           HermitianMatrix(oracle::qubit::sigma_x()),
                                           HermitianMatrix(oracle::qubit::sigma_y()));
  EXPECT_NEAR(t.delta, 0.5, 1e-12);  // <[X1, X2]>/2i = <sigma_z>
  EXPECT_NEAR(t.bound_9a, 0.25, 1e-12);
  for (const Margin* m : {&t.eq9a, &t.eq9b[0], &t.eq9b[1], &t.furuichi}) {
    EXPECT_LE(std::abs(m->value), 1e-10);
    EXPECT_FALSE(m->vacuous);
  }
  // A = |sigma| - |c| = 1/4 equals delta^2 here, so this margin sits at zero too.
  EXPECT_NEAR(t.impossible_branch.value, 0.0, 1e-12);
}

class RandomInstances : public ::testing::TestWithParam<int> {};

TEST_P(RandomInstances, MatricesAgreeWithBruteForce) {
  std::mt19937_64 rng(1000 + GetParam());
  const int dim = 2 + GetParam() % 5;
  const int n = 1 + GetParam() % 4;
  const CMatrix rho_m = oracle::random_state(dim, 1 + GetParam() % dim, rng);
  std::vector<CMatrix> xs;
  std::vector<HermitianMatrix> hs;
  for (int k = 0; k < n; ++k) {
    xs.push_back(oracle::random_hermitian(dim, rng));
    hs.emplace_back(xs.back());
  }
  const DensityMatrix rho(rho_m);
  const ObservableSet x(hs);
  EXPECT_LT(max_abs(RMatrix(covariance_matrix(rho, x) - oracle::covariance(rho_m, xs))), 1e-10);
  const RMatrix delta = oracle::commutator_matrix(rho_m, xs);
  const CMatrix i_delta = commutator_matrix(rho, x);
  EXPECT_LT(max_abs(CMatrix(i_delta - Complex(0, 1) * delta.cast<Complex>())), 1e-10);
  const RMatrix wy = oracle::wy_skew(rho_m, xs);
  EXPECT_LT(max_abs(RMatrix(wy_skew_matrix(rho, x) - wy)), 1e-10);
  EXPECT_LT(max_abs(RMatrix(wy_skew_matrix_commutator(rho, x) - wy)), 1e-10);

  const UncertaintyReport r = check_refined_rs(rho, x);
  const RMatrix plus = r.sigma + r.classical, minus = r.sigma - r.classical;
  const double prod = oracle::laplace_det(plus) * oracle::laplace_det(minus);
  const double dd = n % 2 == 1 ? 0.0 : oracle::laplace_det(delta);
  EXPECT_NEAR(r.delta_g, prod - dd * dd, 1e-10 * std::max(1.0, prod));
  for (const auto& [id, m] : r.margins) EXPECT_FALSE(m.violated()) << id << " " << m.normalized();
}

INSTANTIATE_TEST_SUITE_P(Skew, RandomInstances, ::testing::Range(0, 24));

TEST(BuildL, GramAndBlockRoutesAgree) {
  Rng rng(9);
  const DensityMatrix rho = random_density(4, 4, rng);
  const ObservableSet x = random_observables(4, 3, rng);
  const CMatrix L = build_L(rho, x);
  EXPECT_LT(max_abs(CMatrix(L - gram_L(rho, x))), 1e-10);
  EXPECT_LT(hermiticity_defect(L), 1e-14);
  EXPECT_GE(oracle::min_eigenvalue(L), -1e-10);
}

TEST(OddCount, DeltaDeterminantVanishes) {
  Rng rng(21);
  const DensityMatrix rho = random_density(4, 4, rng);
  for (int n : {1, 3}) {
    const UncertaintyReport r = check_refined_rs(rho, random_observables(4, n, rng));
    EXPECT_EQ(r.dets.delta, 0.0);
    EXPECT_GT(r.margins.at("eq3").value, 0.0);  // classical part keeps the bound nontrivial
  }
}

TEST(PureState, ClassicalPartVanishes) {
  Rng rng(4);
  const DensityMatrix rho = random_density(5, 1, rng);
  const UncertaintyReport r = check_refined_rs(rho, random_observables(5, 2, rng));
  EXPECT_LT(max_abs(r.classical), 1e-10);
  EXPECT_NEAR(r.dets.plus * r.dets.minus, r.dets.sigma * r.dets.sigma, 1e-10);
}

TEST(CommutingObservable, SkewVanishes) {
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  const ObservableSet z({HermitianMatrix(oracle::qubit::sigma_z())});
  const DensityMatrix rho(pure);
  EXPECT_NEAR(wy_skew_matrix(rho, z)(0, 0), 0.0, 1e-14);
  EXPECT_NEAR(covariance_matrix(rho, z)(0, 0), 0.0, 1e-14);
}

TEST(UnitaryInvariance, JointConjugationLeavesMatricesUnchanged) {
  Rng rng(77);
  const DensityMatrix rho = random_density(4, 3, rng);
  const ObservableSet x = random_observables(4, 2, rng);
  const CMatrix u = random_unitary(4, rng);
  const DensityMatrix rho_u(CMatrix(u * rho.matrix() * u.adjoint()));
  const UncertaintyReport a = check_refined_rs(rho, x);
  const UncertaintyReport b = check_refined_rs(rho_u, x.conjugated(u));
  EXPECT_LT(max_abs(RMatrix(a.sigma - b.sigma)), 1e-10);
  EXPECT_LT(max_abs(RMatrix(a.skew - b.skew)), 1e-10);
  EXPECT_LT(max_abs(RMatrix(a.delta - b.delta)), 1e-10);
}

TEST(Errors, DimensionMismatchAndNotPsd) {
  Rng rng(1);
  const DensityMatrix rho = random_density(3, 3, rng);
  try {
    check_refined_rs(rho, random_observables(2, 2, rng));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  RMatrix sigma = RMatrix::Identity(2, 2), skew = 2.0 * RMatrix::Identity(2, 2);
  try {
    classical_matrix(sigma, skew);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPsd);
  }
}

TEST(TwoObs, VacuousWhenMinusDiagonalVanishes) {
  // Pure qubit state |0>: sigma - c = sigma has a zero diagonal for sigma_z.
  CMatrix pure = CMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  const TwoObsReport t = two_obs_relations(DensityMatrix(pure), HermitianMatrix(oracle::qubit::sigma_z()),
                                           HermitianMatrix(oracle::qubit::sigma_x()));
  EXPECT_TRUE(t.eq9b[0].vacuous);
  EXPECT_FALSE(t.eq9b[0].violated());
  EXPECT_TRUE(t.furuichi.vacuous);
}

}  // namespace
}  // namespace skewsharp
