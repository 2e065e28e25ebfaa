// Copyright 2026 The fockretro Authors
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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fockretro/errors.hpp"
#include "fockretro/linopt.hpp"
#include "test_support.hpp"

namespace fockretro {
namespace {

using testing::kI;
using testing::kInvSqrt2;

BeamSplitter fifty_fifty(std::size_t i = 0, std::size_t j = 1) {
  return BeamSplitter::symmetric(kInvSqrt2, kI * kInvSqrt2, i, j);
}

TEST(BeamSplitter, SymmetricMatrixLayout) {
  const auto bs = fifty_fifty();
  EXPECT_EQ(bs.matrix()(0, 0), Complex(kInvSqrt2));
  EXPECT_EQ(bs.matrix()(1, 1), Complex(kInvSqrt2));
  EXPECT_EQ(bs.matrix()(0, 1), kI * kInvSqrt2);
  EXPECT_EQ(bs.matrix()(1, 0), kI * kInvSqrt2);
  EXPECT_EQ(bs.transmission(), Complex(kInvSqrt2));
  EXPECT_EQ(bs.reflection(), kI * kInvSqrt2);
}

TEST(BeamSplitter, IdentityElementLeavesStatesAlone) {
  const auto id = BeamSplitter::symmetric(1.0, 0.0, 0, 1);
  std::mt19937_64 rng(21);
  const auto s = testing::random_state(rng, FockBasis::up_to(2, 2));
  EXPECT_LT(testing::max_abs_diff(apply(id, s), s), 1e-15);
}

TEST(BeamSplitter, RejectsNonUnitaryParameters) {
  EXPECT_THROW(BeamSplitter::symmetric(kInvSqrt2, kInvSqrt2, 0, 1), InvalidElement);
  try {
    BeamSplitter::symmetric(kInvSqrt2, kInvSqrt2, 0, 1);
  } catch (const InvalidElement& e) {
    EXPECT_NEAR(e.deviation(), 1.0, 1e-12);
  }
}

TEST(BeamSplitter, RejectsRepeatedModeAndNonFinite) {
  EXPECT_THROW(BeamSplitter::symmetric(1.0, 0.0, 1, 1), InvalidArgument);
  EXPECT_THROW(BeamSplitter::symmetric(std::nan(""), 0.0, 0, 1), InvalidElement);
}

TEST(BeamSplitter, AcceptsDecimalParametersWithinConstructionTolerance) {
  EXPECT_NO_THROW(BeamSplitter::symmetric(0.70710678118655, Complex(0, 0.70710678118655), 0, 1));
  EXPECT_THROW(BeamSplitter::symmetric(0.7071, Complex(0, 0.7071), 0, 1), InvalidElement);
}

TEST(Circuit, RejectsElementOutsideModeRange) {
  EXPECT_THROW(Circuit(2, {fifty_fifty(0, 2)}), InvalidArgument);
}

TEST(Apply, SinglePhotonOnFiftyFifty) {
  const auto out = apply(fifty_fifty(), StateVector::basis_state(Occupation{1, 0}));
  const StateVector expected(2, {{Occupation{1, 0}, kInvSqrt2}, {Occupation{0, 1}, kI * kInvSqrt2}});
  EXPECT_LT(testing::max_abs_diff(out, expected), 1e-15);
}

TEST(Apply, HongOuMandelBunching) {
  const auto out = apply(fifty_fifty(), StateVector::basis_state(Occupation{1, 1}));
  EXPECT_EQ(out.amplitude(Occupation{1, 1}), Complex(0.0));
  EXPECT_EQ(out.size(), 2u);
  // i (psi_1^2 + psi_2^2)/sqrt2 with psi^2 = sqrt2 |2>: amplitude i/sqrt2 on |2,0> and |0,2>.
  EXPECT_NEAR(std::abs(out.amplitude(Occupation{2, 0}) - kI * kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(Occupation{0, 2}) - kI * kInvSqrt2), 0.0, 1e-15);
}

TEST(Apply, ActsOnlyOnItsModes) {
  const auto out = apply(fifty_fifty(1, 2), StateVector::basis_state(Occupation{2, 1, 0}));
  for (const auto& [occ, amp] : out) EXPECT_EQ(occ[0], 2);
}

TEST(RunCircuit, TwoSourceStageOne) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 5; ++k) {
    const auto p = testing::random_two_source(rng);
    const auto circuit = testing::two_source_circuit(p);
    const Circuit stage1(4, {circuit.elements()[0], circuit.elements()[1]});
    const auto psi1 = run_circuit(stage1, StateVector::basis_state(Occupation{1, 1, 0, 0}));
    EXPECT_LT(testing::max_abs_diff(psi1, testing::two_source_psi1(p)), 1e-14);
  }
}

TEST(RunCircuit, TwoSourceSevenTerms) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 5; ++k) {
    const auto p = testing::random_two_source(rng);
    const auto psi2 =
        run_circuit(testing::two_source_circuit(p), StateVector::basis_state(Occupation{1, 1, 0, 0}));
    EXPECT_EQ(psi2.size(), 7u);
    EXPECT_LT(testing::max_abs_diff(psi2, testing::two_source_psi2(p)), 1e-14);
  }
}

TEST(RunCircuit, EmptyCircuitIsIdentity) {
  std::mt19937_64 rng(24);
  const auto s = testing::random_state(rng, FockBasis::up_to(3, 2));
  EXPECT_EQ(testing::max_abs_diff(run_circuit(Circuit(3), s), s), 0.0);
}

TEST(Invert, IsAnInvolution) {
  std::mt19937_64 rng(25);
  const auto c = testing::random_circuit(rng, 4);
  EXPECT_EQ(invert(invert(c)), c);
}

TEST(Invert, UndoesTwoSourceCircuit) {
  std::mt19937_64 rng(26);
  const auto p = testing::random_two_source(rng);
  const auto c = testing::two_source_circuit(p);
  const auto psi0 = StateVector::basis_state(Occupation{1, 1, 0, 0});
  EXPECT_GE(fidelity(run_circuit(invert(c), run_circuit(c, psi0)), psi0), 1.0 - 1e-12);
}

TEST(Invert, FiftyFiftyAdjoint) {
  const Circuit c(2, {fifty_fifty()});
  const StateVector s(2, {{Occupation{1, 0}, kInvSqrt2}, {Occupation{0, 1}, kI * kInvSqrt2}});
  const auto back = run_circuit(invert(c), s);
  EXPECT_LT(testing::max_abs_diff(back, StateVector::basis_state(Occupation{1, 0})), 1e-15);
}

TEST(Permanent, RyserMatchesPermutationSum) {
  std::mt19937_64 rng(27);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 6; ++n) {
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = Complex(g(rng), g(rng));
    EXPECT_LT(std::abs(permanent(m) - testing::brute_force_permanent(m)), 1e-12) << n;
  }
  EXPECT_EQ(permanent(Eigen::MatrixXcd(0, 0)), Complex(1.0));
}

TEST(LiftToDense, IdentityCircuitIsIdentityMatrix) {
  const auto basis = FockBasis::up_to(3, 2);
  const auto u = lift_to_dense(Circuit(3), basis);
  EXPECT_LT((u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LiftToDense, FiftyFiftyTwoPhotonMatrix) {
  // Reference from exp(i pi/4 (a1^dag a2 + a2^dag a1)) in a truncated Fock
  // space; basis order (0,2), (1,1), (2,0).
  const auto basis = FockBasis::fixed_total(2, 2);
  Eigen::Matrix3cd expected;
  expected << 0.5, kI * kInvSqrt2, -0.5,  //
      kI * kInvSqrt2, 0.0, kI * kInvSqrt2,  //
      -0.5, kI * kInvSqrt2, 0.5;
  const auto u = lift_to_dense(Circuit(2, {fifty_fifty()}), basis);
  EXPECT_LT((u - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(std::abs(u(1, 1)), 1e-15);
  EXPECT_LT(unitarity_deviation(u), 1e-12);
}

TEST(LiftToDense, AgreesWithSparseApplyOnRandomStates) {
  std::mt19937_64 rng(28);
  for (int k = 0; k < 100; ++k) {
    const std::size_t modes = 2 + static_cast<std::size_t>(k % 3);
    const auto basis = FockBasis::up_to(modes, 2);
    const auto c = testing::random_circuit(rng, modes);
    const auto s = testing::random_state(rng, basis);
    const Eigen::VectorXcd dense = lift_to_dense(c, basis) * basis.to_dense(s);
    const Eigen::VectorXcd sparse = basis.to_dense(run_circuit(c, s));
    EXPECT_LT((dense - sparse).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LiftToDense, ElementLiftsAreUnitary) {
  std::mt19937_64 rng(29);
  for (std::size_t modes = 2; modes <= 4; ++modes) {
    const auto basis = FockBasis::up_to(modes, 2);
    for (int k = 0; k < 10; ++k) {
      const auto u = lift_to_dense(testing::random_element(rng, modes), modes, basis);
      EXPECT_LT(unitarity_deviation(u), 1e-10);
    }
  }
}

TEST(ModeTransferMatrix, ComposesElementMatrices) {
  const auto t = mode_transfer_matrix(Circuit(2, {fifty_fifty(), fifty_fifty()}));
  // Two 50:50 passes swap the modes with a phase i.
  Eigen::Matrix2cd expected;
  expected << 0.0, kI, kI, 0.0;
  EXPECT_LT((t - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Invariants, NormAndPhotonNumberPreserved) {
  std::mt19937_64 rng(30);
  for (int k = 0; k < 100; ++k) {
    const std::size_t modes = 2 + static_cast<std::size_t>(k % 3);
    const int photons = 1 + k % 3;
    const auto c = testing::random_circuit(rng, modes);
    const auto s = testing::random_state(rng, FockBasis::fixed_total(modes, photons));
    const auto out = run_circuit(c, s);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    for (const auto& [occ, amp] : out) EXPECT_EQ(occ.total(), photons);
  }
}

}  // namespace
}  // namespace fockretro
