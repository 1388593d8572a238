// Copyright 2026 The qrd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "qrd/quantum.hpp"
#include "qrd/random.hpp"

using namespace qrd;

namespace {

Matrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

// Element-wise partial trace over the middle factor of a (2,2,2) system.
Matrix trace_middle_by_summation(const Matrix& m) {
  Matrix r = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 2; ++b) r(a * 2 + c, a2 * 2 + c2) += m(a * 4 + b * 2 + c, a2 * 4 + b * 2 + c2);
  return r;
}

}  // namespace

TEST(DensityOperator, ValidatesInvariants) {
  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -0.1;
  EXPECT_THROW(DensityOperator(neg * 0.5), DomainError);
  EXPECT_THROW(DensityOperator(Matrix(Matrix::Identity(2, 2))), DomainError);  // trace 2
  Matrix nonherm = 0.5 * Matrix::Identity(2, 2);
  nonherm(0, 1) = 0.3;
  EXPECT_THROW(DensityOperator{nonherm}, DomainError);
  EXPECT_NO_THROW(DensityOperator(0.3 * ket_bra(2, 0, 0)));
}

TEST(Tensor, MaximallyMixedProduct) {
  auto half = DensityOperator::maximally_mixed(SystemDims::single("A", 2));
  auto half_b = DensityOperator::maximally_mixed(SystemDims::single("B", 2));
  DensityOperator t = tensor(half, half_b);
  EXPECT_LT((t.matrix() - identity(4) / 4.0).norm(), 1e-15);
  EXPECT_EQ(t.dims().dims(), (std::vector<std::size_t>{2, 2}));
}

TEST(Tensor, BasisCase) {
  DensityOperator t = tensor(DensityOperator::basis(2, 0, "A"), DensityOperator::basis(2, 1, "B"));
  EXPECT_EQ(t.matrix(), ket_bra(4, 1, 1));
}

TEST(Tensor, LabelCollisionRejected) {
  auto a = DensityOperator::basis(2, 0, "A");
  EXPECT_THROW(tensor(a, a), DomainError);
}

TEST(Tensor, TraceMultipliesOnRandomInputs) {
  Rng rng = make_rng(11);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3, 0, "A").scaled(0.7);
    DensityOperator s = random_density(rng, 2, 0, "B").scaled(0.4);
    EXPECT_NEAR(tensor(r, s).trace(), r.trace() * s.trace(), 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  DensityOperator phi = PureState::maximally_entangled(2, "R", "B").density();
  DensityOperator r = partial_trace(phi, {"R"});
  EXPECT_LT((r.matrix() - identity(2) / 2.0).norm(), 1e-15);
}

TEST(PartialTrace, ProductStateScalesByPartnerTrace) {
  Rng rng = make_rng(12);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3, 0, "A");
    DensityOperator s = random_density(rng, 2, 0, "B").scaled(0.6);
    DensityOperator a = partial_trace(tensor(r, s), {"A"});
    EXPECT_LT((a.matrix() - 0.6 * r.matrix()).norm(), 1e-12);
    DensityOperator b = partial_trace(tensor(r, s), {"B"});
    EXPECT_LT((b.matrix() - s.matrix()).norm(), 1e-12);
  }
}

TEST(PartialTrace, MatchesIndexSummationOracle) {
  Rng rng = make_rng(13);
  SystemDims dims({"q1", "q2", "q3"}, {2, 2, 2});
  for (int k = 0; k < 10; ++k) {
    DensityOperator rho = random_density(rng, dims);
    DensityOperator red = partial_trace(rho, {"q1", "q3"});
    EXPECT_LT((red.matrix() - trace_middle_by_summation(rho.matrix())).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PartialTrace, UnknownLabel) {
  DensityOperator phi = PureState::maximally_entangled(2).density();
  EXPECT_THROW(partial_trace(phi, {"Q"}), DomainError);
}

TEST(Purify, MaximallyMixedGivesBellState) {
  auto half = DensityOperator::maximally_mixed(SystemDims::single("A", 2));
  PureState p = purify(half);
  EXPECT_EQ(p.dims().dims(), (std::vector<std::size_t>{2, 2}));
  // Up to an isometry on R the Schmidt coefficients are both 1/sqrt(2).
  DensityOperator r = partial_trace(p.density(), {"R"});
  EXPECT_LT((r.matrix() - identity(2) / 2.0).norm(), 1e-12);
  DensityOperator a = partial_trace(p.density(), {"A"});
  EXPECT_LT((a.matrix() - half.matrix()).norm(), 1e-12);
}

TEST(Purify, PureInputHasOneDimensionalPurifier) {
  Rng rng = make_rng(14);
  PureState psi = random_pure_state(rng, SystemDims::single("A", 3));
  PureState p = purify(psi.density());
  EXPECT_EQ(p.dims().dim_of("R"), 1u);
  EXPECT_LT((partial_trace(p.density(), {"A"}).matrix() - psi.projector()).norm(), 1e-10);
}

TEST(Purify, RankTwoQutrit) {
  Rng rng = make_rng(15);
  DensityOperator rho = random_density(rng, 3, 2);
  PureState p = purify(rho);
  EXPECT_EQ(p.dims().dim_of("R"), 2u);
  EXPECT_LT((partial_trace(p.density(), {"A"}).matrix() - rho.matrix()).norm(), 1e-10);
}

TEST(Purify, RejectsSubnormalized) {
  EXPECT_THROW(purify(DensityOperator::basis(2, 0).scaled(0.5)), DomainError);
}

TEST(Fidelity, Basics) {
  Rng rng = make_rng(16);
  DensityOperator rho = random_density(rng, 3);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)), 0.0, 1e-15);
  auto half = DensityOperator::maximally_mixed(SystemDims::single("A", 2));
  EXPECT_NEAR(fidelity(DensityOperator::basis(2, 0), half), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(Fidelity, SymmetricOnRandomPairs) {
  Rng rng = make_rng(17);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3), s = random_density(rng, 3);
    EXPECT_NEAR(fidelity(r, s), fidelity(s, r), 1e-10);
  }
}

TEST(GeneralizedFidelity, Examples) {
  Rng rng = make_rng(18);
  DensityOperator r = random_density(rng, 2), s = random_density(rng, 2);
  EXPECT_NEAR(generalized_fidelity(r, s), fidelity(r, s), 1e-14);
  DensityOperator half0 = DensityOperator::basis(2, 0).scaled(0.5);
  EXPECT_NEAR(generalized_fidelity(half0, half0), 1.0, 1e-14);
  EXPECT_NEAR(generalized_fidelity(half0, DensityOperator::basis(2, 1)), 0.0, 1e-14);
}

TEST(PurifiedDistance, Examples) {
  Rng rng = make_rng(19);
  DensityOperator r = random_density(rng, 2);
  EXPECT_NEAR(purified_distance(r, r), 0.0, 1e-6);
  EXPECT_NEAR(purified_distance(DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)), 1.0, 1e-14);
  for (int k = 0; k < 10; ++k) {
    DensityOperator a = random_density(rng, 2), b = random_density(rng, 2).scaled(0.8);
    double f = generalized_fidelity(a, b);
    EXPECT_NEAR(purified_distance(a, b), std::sqrt(1 - f * f), 1e-12);
  }
}

TEST(TraceDistance, Examples) {
  Rng rng = make_rng(20);
  DensityOperator r = random_density(rng, 3);
  EXPECT_NEAR(trace_distance(r, r), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)), 1.0, 1e-15);
}

TEST(Properties, FuchsVanDeGraaf) {
  Rng rng = make_rng(21);
  for (int k = 0; k < 200; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator r = random_density(rng, d, 1 + k % d), s = random_density(rng, d);
    double f = fidelity(r, s), t = trace_distance(r, s);
    EXPECT_GE(t - (1 - f), -1e-9);
    EXPECT_GE(std::sqrt(1 - f * f) - t, -1e-9);
  }
}

TEST(Properties, PurifiedDistanceTriangle) {
  Rng rng = make_rng(22);
  for (int k = 0; k < 100; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator a = random_density(rng, d), b = random_density(rng, d).scaled(0.9),
                    c = random_density(rng, d, 1);
    EXPECT_LE(purified_distance(a, c), purified_distance(a, b) + purified_distance(b, c) + 1e-9);
  }
}

TEST(Properties, GentleOperatorLemma) {
  Rng rng = make_rng(23);
  int tested = 0;
  for (int k = 0; k < 100; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator rho = random_density(rng, d);
    Matrix lam = random_psd(rng, d);  // 0 <= Lambda <= I
    double eps = 1.0 - trace_product(lam, rho.matrix());
    Matrix sl = sqrtm_psd(lam);
    double lhs = trace_norm(rho.matrix() - sl * rho.matrix() * sl);
    EXPECT_LE(lhs, 2 * std::sqrt(std::max(eps, 0.0)) + 1e-9);
    ++tested;
  }
  EXPECT_EQ(tested, 100);
}

TEST(Properties, TraceInequalityForTests) {
  Rng rng = make_rng(24);
  for (int k = 0; k < 100; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    Matrix lam = random_psd(rng, d);
    EXPECT_GE(trace_product(lam, r.matrix()), trace_product(lam, s.matrix()) - trace_distance(r, s) - 1e-12);
  }
}

TEST(Channel, IdentityLeavesInputUnchanged) {
  Rng rng = make_rng(25);
  DensityOperator rho = random_density(rng, 3);
  QuantumChannel id = QuantumChannel::identity_channel(3, "A", "A");
  EXPECT_LT((apply_channel(id, rho).matrix() - rho.matrix()).norm(), 1e-14);
}

TEST(Channel, FullyDepolarizingOnBellState) {
  PureState phi = PureState::maximally_entangled(2, "R", "A");
  QuantumChannel dep = QuantumChannel::depolarizing(2, 1.0);
  DensityOperator w = extend_to_reference(dep, phi);
  EXPECT_EQ(w.dims().labels(), (std::vector<std::string>{"R", "B"}));
  EXPECT_LT((w.matrix() - identity(4) / 4.0).norm(), 1e-12);
}

TEST(Channel, KrausAndChoiAgreeOnRandomChannels) {
  Rng rng = make_rng(26);
  for (int k = 0; k < 10; ++k) {
    QuantumChannel n = random_channel(rng, SystemDims::single("A", 2), SystemDims::single("B", 3), 3);
    DensityOperator rho = random_density(rng, 2);
    Matrix a = n.apply_via_kraus(rho.matrix());
    Matrix b = n.apply_via_choi(rho.matrix());
    EXPECT_LT((a - b).norm(), 1e-10);
    EXPECT_NEAR(a.trace().real(), 1.0, 1e-10);
    EXPECT_TRUE(is_psd(a));
  }
}

TEST(Channel, ChoiKrausRoundTripOnBasisInputs) {
  Rng rng = make_rng(27);
  QuantumChannel n = random_channel(rng, SystemDims::single("A", 3), SystemDims::single("B", 2), 4);
  QuantumChannel back = QuantumChannel::from_choi(n.choi(), n.input_dims(), n.output_dims());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Matrix e = ket_bra(3, i, j);
      EXPECT_LT((n.apply_via_kraus(e) - back.apply_via_kraus(e)).norm(), 1e-10);
    }
}

TEST(Channel, ApplyOnSubsystemKeepsLabelOrder) {
  Rng rng = make_rng(28);
  PureState phi = random_pure_state(rng, SystemDims({"A", "R"}, {2, 2}));
  QuantumChannel n = random_channel(rng, SystemDims::single("A", 2), SystemDims::single("B", 2), 2);
  DensityOperator w = extend_to_reference(n, phi);
  EXPECT_EQ(w.dims().labels(), (std::vector<std::string>{"B", "R"}));
  EXPECT_NEAR(w.trace(), 1.0, 1e-10);
  // Reference marginal is untouched by a channel on A.
  DensityOperator r0 = partial_trace(phi.density(), {"R"});
  EXPECT_LT((partial_trace(w, {"R"}).matrix() - r0.matrix()).norm(), 1e-12);
}

TEST(Channel, RejectsNonTracePreserving) {
  std::vector<Matrix> k{0.5 * identity(2)};
  EXPECT_THROW(QuantumChannel::from_kraus(k, SystemDims::single("A", 2), SystemDims::single("B", 2)), DomainError);
}
