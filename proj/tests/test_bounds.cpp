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

#include "qrd/bounds.hpp"
#include "qrd/isotropic.hpp"
#include "qrd/random.hpp"

using namespace qrd;

namespace {

PureState bell(const std::string& r = "R", const std::string& a = "A") {
  return PureState::maximally_entangled(2, r, a);
}

DistortionObservable bell_observable() { return entanglement_fidelity_observable(bell()); }

// n Bell pairs on R1 A1 R2 A2 ... with the averaged observable on R1 B1 R2 B2 ...
struct BlockInstance {
  PureState phi;
  DistortionObservable delta;
};

BlockInstance isotropic_block(std::size_t n) {
  PureState phi = bell("R1", "A1");
  for (std::size_t k = 2; k <= n; ++k) phi = tensor(phi, bell("R" + std::to_string(k), "A" + std::to_string(k)));
  SymbolwiseObservable sym = average_symbolwise(bell_observable(), n);
  return {phi, DistortionObservable(sym.materialize(), sym.dense_dims())};
}

// sum_x sqrt(p(x)) |x>_R |x>_A.
PureState classical_purification(const std::vector<double>& p) {
  auto k = static_cast<Eigen::Index>(p.size());
  Vector v = Vector::Zero(k * k);
  for (Eigen::Index x = 0; x < k; ++x) v(x * k + x) = std::sqrt(p[static_cast<std::size_t>(x)]);
  return PureState(v, SystemDims({"R", "A"}, {p.size(), p.size()}));
}

RealMatrix hamming(Eigen::Index k) {
  RealMatrix d = RealMatrix::Ones(k, k);
  for (Eigen::Index x = 0; x < k; ++x) d(x, x) = 0.0;
  return d;
}

// Classical beta by linear programming over the two-point test family:
// enumerate every threshold set and take the best randomized boundary.
double classical_beta_bruteforce(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  std::size_t k = p.size();
  double best = kInf;
  for (std::size_t mask = 0; mask < (1u << k); ++mask) {
    double pp = 0, qq = 0;
    for (std::size_t x = 0; x < k; ++x)
      if (mask >> x & 1) {
        pp += p[x];
        qq += q[x];
      }
    if (pp >= 1 - eps - 1e-15) best = std::min(best, qq);
    // Randomize one extra symbol to hit the power exactly.
    for (std::size_t y = 0; y < k; ++y) {
      if (mask >> y & 1 || p[y] <= 0) continue;
      double t = (1 - eps - pp) / p[y];
      if (t >= 0 && t <= 1) best = std::min(best, qq + t * q[y]);
    }
  }
  return best;
}

}  // namespace

TEST(ConverseAlt, BellExample) {
  PureState phi = bell();
  BoundResult b = converse_alt(phi, bell_observable(), 0.0, 0.1, phi.density());
  EXPECT_NEAR(b.value, 0.5 * (2 + std::log2(0.9)), 1e-9);
  EXPECT_NEAR(b.value, 0.9240, 5e-5);
  EXPECT_EQ(b.direction, Direction::lower_bound_on_log_m);
  EXPECT_EQ(b.validity, Validity::valid);
  EXPECT_NEAR(b.param("lambda_max"), 0.25, 1e-12);
}

TEST(ConverseAlt, MatchesIsotropicClosedForm) {
  for (std::size_t n = 1; n <= 3; ++n) {
    BlockInstance inst = isotropic_block(n);
    for (double d : {0.0, 1.0 / 3, 0.5, 2.0 / 3}) {
      for (double eps : {0.01, 0.2}) {
        BoundResult b = converse_alt(inst.phi, inst.delta, d, eps, inst.phi.density());
        double expected = static_cast<double>(n) * isotropic::converse_rate(n, d, eps);
        EXPECT_NEAR(b.value, expected, 1e-9) << "n=" << n << " D=" << d << " eps=" << eps;
      }
    }
  }
}

TEST(ConverseAlt, VacuousWhenBallCoversEverything) {
  PureState phi = bell();
  BoundResult b = converse_alt(phi, bell_observable(), 1.0, 0.1, phi.density());
  EXPECT_LE(b.value, 0.0);
  EXPECT_TRUE(std::isfinite(b.value));
}

TEST(ConverseAlt, InfiniteHypothesisTestingDivergence) {
  // sigma orthogonal to phi: beta = 0, the bound is reported as -inf.
  PureState phi = bell();
  Matrix other = Matrix::Zero(4, 4);
  other(1, 1) = 1.0;
  BoundResult b = converse_alt(phi, bell_observable(), 0.0, 0.1, DensityOperator(other, phi.dims()));
  EXPECT_EQ(b.value, -kInf);
  EXPECT_FALSE(b.note.empty());
}

TEST(ConverseAlt, EverySigmaStaysBelowAchievability) {
  // Random sigma gives a valid lower bound; compare with the isotropic code.
  Rng rng = make_rng(301);
  PureState phi = bell();
  for (int k = 0; k < 20; ++k) {
    DensityOperator sigma = random_density(rng, phi.dims());
    for (double d : {0.0, 0.25, 0.5}) {
      BoundResult b = converse_alt(phi, bell_observable(), d, 0.05, sigma);
      EXPECT_LE(b.value, isotropic::achievability_rate(1, d, 0.05) + 1e-9);
    }
  }
}

TEST(ConverseSimpleInner, IdentityChannelBell) {
  PureState phi = bell();
  QuantumChannel id = QuantumChannel::identity_channel(2);
  BoundResult b = converse_simple_inner(phi, bell_observable(), 0.0, 0.01, 0.05, id);
  // beta_{0.95}(Phi || pi (x) pi): the test Phi has power 1 and beta 1/4;
  // power 0.05 costs beta 0.05/4.
  double expected = 0.5 * (-std::log2(0.05 / 4) + std::log2(7.5e-4));
  EXPECT_NEAR(b.param("eps_pp"), 7.5e-4, 1e-15);
  EXPECT_NEAR(b.value, expected, 1e-6);
  EXPECT_LE(b.lo, b.value + 1e-12);
  EXPECT_GE(b.hi, b.value - 1e-12);
  EXPECT_LT(b.hi - b.lo, 1e-5);
  EXPECT_EQ(b.validity, Validity::conditional);
}

TEST(ConverseSimpleInner, DegenerateEpsPrime) {
  PureState phi = bell();
  BoundResult b =
      converse_simple_inner(phi, bell_observable(), 0.0, 0.02, 0.04, QuantumChannel::identity_channel(2));
  EXPECT_EQ(b.value, -kInf);
  EXPECT_THROW(converse_simple_inner(phi, bell_observable(), 0.0, 0.02, 0.03, QuantumChannel::identity_channel(2)),
               DomainError);
}

TEST(ConverseSimpleInner, RejectsChannelViolatingExcess) {
  PureState phi = bell();
  EXPECT_THROW(converse_simple_inner(phi, bell_observable(), 0.1, 0.01, 0.05, QuantumChannel::depolarizing(2, 0.5)),
               DomainError);
}

TEST(ConverseSimpleInner, JointSdpAgreesWithSupergradientRoute) {
  Rng rng = make_rng(302);
  for (int inst = 0; inst < 3; ++inst) {
    PureState phi = purify(random_density(rng, 2), "R");
    DistortionObservable delta(random_psd(rng, 4), SystemDims({"R", "B"}, {2, 2}));
    QuantumChannel ch = random_channel(rng, SystemDims::single("A", 2), SystemDims::single("B", 2), 2);
    DensityOperator omega = extend_to_reference(ch, phi).reordered({"R", "B"});
    Matrix phi_r = partial_trace(phi.projector(), phi.dims(), {"R"});
    MaxBeta mb = max_beta_over_output(omega, phi_r, delta, {"R"}, 0.05);
    // The supergradient route attains a feasible psi, so it cannot beat the SDP.
    EXPECT_LE(mb.alternating, mb.sdp_hi + 1e-9);
    EXPECT_NEAR(mb.alternating, mb.sdp_lo, 2e-3 * mb.sdp_lo);
    // The SDP maximizer is a state and reproduces its value through Neyman-Pearson.
    EXPECT_NEAR(mb.psi.trace().real(), 1.0, 1e-7);
    Matrix sig = kron(phi_r, mb.psi);
    double beta = neyman_pearson(omega, DensityOperator(hermitian_part(sig), omega.dims()), 0.95).beta;
    EXPECT_NEAR(beta, mb.sdp_lo, 1e-6);
  }
}

TEST(ConverseSimpleInner, DepolarizingFamilyIsConditional) {
  PureState phi = bell();
  double prev = kInf;
  for (double p : {0.0, 0.01, 0.02, 0.03}) {
    QuantumChannel ch = QuantumChannel::depolarizing(2, p);
    BoundResult b = converse_simple_inner(phi, bell_observable(), 0.05, 0.03, 0.1, ch);
    EXPECT_EQ(b.validity, Validity::conditional);
    EXPECT_FALSE(b.note.empty());
    EXPECT_LE(b.value, prev + 1e-9);  // noisier channels need fewer qubits
    prev = b.value;
  }
}

TEST(ClassicalKv, IdenticalHypotheses) {
  std::vector<double> p{0.5, 0.3, 0.2};
  BoundResult b = classical_kv_converse(p, hamming(3), 0.0, 0.1, p);
  EXPECT_NEAR(b.param("beta"), 0.9, 1e-15);
  EXPECT_NEAR(b.value, std::log2(0.9) - std::log2(0.5), 1e-12);
}

TEST(ClassicalKv, UniformQuaternary) {
  std::vector<double> u(4, 0.25);
  for (double eps : {0.01, 0.1, 0.5}) {
    BoundResult b = classical_kv_converse(u, hamming(4), 0.0, eps, u);
    EXPECT_NEAR(b.value, std::log2(1 - eps) + 2, 1e-12);
  }
}

TEST(ClassicalKv, BetaMatchesBruteForce) {
  Rng rng = make_rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<double> p(4), q(4);
    double sp = 0, sq = 0;
    for (int x = 0; x < 4; ++x) {
      p[x] = u(rng);
      q[x] = x == k % 4 ? 0.0 : u(rng);
      sp += p[x];
      sq += q[x];
    }
    for (int x = 0; x < 4; ++x) {
      p[x] /= sp;
      q[x] /= sq;
    }
    double eps = 0.05 + 0.5 * u(rng);
    EXPECT_NEAR(classical_beta(p, q, eps), classical_beta_bruteforce(p, q, eps), 1e-12);
  }
}

TEST(ClassicalKv, EmbeddedInstanceIsTwiceConverseAlt) {
  // With q = p and sigma = phi the ratio bound carries no square root, so it
  // equals twice the quantum bound on the diagonal embedding.
  Rng rng = make_rng(304);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    std::vector<double> p(3);
    double s = 0;
    for (auto& x : p) s += x = 0.1 + u(rng);
    for (auto& x : p) x /= s;
    RealMatrix dist(3, 3);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) dist(x, y) = x == y ? 0.0 : 0.2 + u(rng);
    PureState phi = classical_purification(p);
    DistortionObservable delta = classical_cc_observable(dist);
    for (double d : {0.0, 0.5, 0.9}) {
      BoundResult kv = classical_kv_converse(p, dist, d, 0.1, p);
      BoundResult q = converse_alt(phi, delta, d, 0.1, phi.density());
      EXPECT_NEAR(kv.value, 2 * q.value, 1e-9);
    }
  }
}

TEST(ClassicalKv, RejectsInvalidDistributions) {
  EXPECT_THROW(classical_kv_converse({0.5, 0.6}, hamming(2), 0.0, 0.1, {0.5, 0.5}), DomainError);
  EXPECT_THROW(classical_kv_converse({0.5, 0.5}, hamming(2), 0.0, 0.1, {-0.1, 1.1}), DomainError);
  EXPECT_THROW(classical_kv_converse({0.5, 0.5}, hamming(3), 0.0, 0.1, {0.5, 0.5}), DomainError);
}

TEST(Chi, ReferenceValues) {
  EXPECT_NEAR(chi2(0.01, 0.05), 0.5 * std::log2((20 + 1 / (1 - std::sqrt(0.1))) / 0.015), 1e-12);
  EXPECT_NEAR(chi2(0.01, 0.05), 5.241, 5e-4);
  EXPECT_NEAR(chi1(0.5, 2), 2 * std::log2(10.0) + 4 + std::log2(std::log2(102.0)), 1e-12);
  EXPECT_NEAR(chi1(0.5, 2), 13.382, 5e-4);
  bool clamped = true;
  chi1(0.5, 2, &clamped);
  EXPECT_FALSE(clamped);
  EXPECT_THROW(chi2(0.01, 0.6), DomainError);
  EXPECT_THROW(chi2(0.03, 0.05), DomainError);
}

TEST(Chi, MonotoneInEps) {
  double prev = 0.0;
  for (double eps : {0.5, 0.2, 0.1, 0.01, 0.001}) {
    double c = chi1(eps, 2);
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(Achievability, EmbezzlingIdentityChannel) {
  PureState phi = bell();
  for (double eps : {0.1, 0.01}) {
    BoundResult b =
        achievability_embezzling(phi, bell_observable(), 0.0, QuantumChannel::identity_channel(2), eps);
    double c1 = chi1(eps, 2);
    EXPECT_EQ(b.direction, Direction::upper_bound_on_log_m);
    // Smoothing can only lower I_max below the unsmoothed value 2.
    EXPECT_LE(b.value, 1.0 + c1 + 1e-6);
    EXPECT_GE(b.value, 1.0 + c1 + std::log2(1 - eps / 5) - 1e-6);
  }
}

TEST(Achievability, EmbezzlingRejectsExcess) {
  EXPECT_THROW(achievability_embezzling(bell(), bell_observable(), 0.0, QuantumChannel::depolarizing(2, 0.5), 0.1),
               DomainError);
}

TEST(Achievability, MesParameters) {
  MesParameters m = mes_parameters(1e-4);
  EXPECT_NEAR(m.delta_prime, 1e-4 + std::sqrt(4e-2 - 4e-4), 1e-15);
  EXPECT_NEAR(m.eps, 2 * std::sqrt(5 * m.delta_prime) + 2e-2, 1e-15);
  EXPECT_THROW(mes_parameters(0.0), DomainError);
}

TEST(Achievability, MesMainTermDominatesForUniformOutput) {
  // I_max(B;R) <= H_0(B) - H_min(B|R) whenever omega_B is maximally mixed:
  // Bell source through random mixtures of unitaries.
  Rng rng = make_rng(305);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PureState phi = bell();
  for (int k = 0; k < 6; ++k) {
    std::vector<Matrix> kraus;
    double w = u(rng);
    kraus.push_back(std::sqrt(w) * random_unitary(rng, 2));
    kraus.push_back(std::sqrt(1 - w) * random_unitary(rng, 2));
    QuantumChannel ch = QuantumChannel::from_kraus(kraus, SystemDims::single("A", 2), SystemDims::single("B", 2));
    DensityOperator omega = extend_to_reference(ch, phi);
    double h0v = h0(partial_trace(omega, {"B"}));
    double hmin = h_min(omega, {"R"}).hi();
    double im = i_max(omega, {"B"}).lo();
    EXPECT_LE(im, h0v - hmin + 1e-6);
    BoundResult mes = achievability_mes(phi, bell_observable(), 1.0, ch, 1e-6);
    EXPECT_NEAR(mes.value, 0.5 * (mes.param("h0") - mes.param("hmin")) + std::log2(1 / mes.param("delta_prime")),
                1e-4);
  }
}

TEST(Achievability, DominatesConverseOnIsotropicFamily) {
  PureState phi = bell();
  for (double eps : {0.05, 0.2}) {
    for (double p : {0.0, 0.005, 0.01}) {
      QuantumChannel ch = QuantumChannel::depolarizing(2, p);
      DensityOperator omega = extend_to_reference(ch, phi);
      double dist = mean_distortion(omega, bell_observable());
      BoundResult up = achievability_embezzling(phi, bell_observable(), dist + 1e-9, ch, eps);
      BoundResult mes = achievability_mes(phi, bell_observable(), dist + 1e-9, ch, 1e-4);
      BoundResult lo = converse_alt(phi, bell_observable(), dist + 1e-9, eps, phi.density());
      EXPECT_GE(up.value, lo.value);
      EXPECT_GE(mes.value, lo.value);
    }
  }
}

TEST(Sandwich, OrderedAndGapDecomposes) {
  PureState phi = bell();
  std::vector<QuantumChannel> family;
  for (double p : {0.0, 0.001, 0.002}) family.push_back(QuantumChannel::depolarizing(2, p));
  double eps = 0.01, eps_prime = 0.05;
  Sandwich s = theorem10_sandwich(phi, bell_observable(), 0.0, eps, eps_prime, family);
  ASSERT_GE(s.upper_index, 0);
  ASSERT_GE(s.lower_index, 0);
  EXPECT_GE(s.upper.value, s.lower.value);
  double c1 = chi1(eps, 2), c2 = chi2(eps, eps_prime);
  EXPECT_NEAR(s.upper.value - s.lower.value, c1 + c2 + 0.5 * (s.imax_upper - s.imax_lower), 1e-12);
  // A larger smoothing radius cannot raise I_max.
  EXPECT_LE(s.imax_lower, s.imax_upper + 1e-6);
  EXPECT_EQ(s.lower.validity, Validity::conditional);
  EXPECT_EQ(s.upper.validity, Validity::valid);
}

TEST(Sandwich, RejectsLargeEpsPrime) {
  std::vector<QuantumChannel> family{QuantumChannel::identity_channel(2)};
  EXPECT_THROW(theorem10_sandwich(bell(), bell_observable(), 0.0, 0.1, 0.6, family), DomainError);
  EXPECT_THROW(theorem10_sandwich(bell(), bell_observable(), 0.0, 0.1, 0.15, family), DomainError);
}

TEST(IidConverse, CorrectionReferenceValue) {
  double r = std::sqrt(0.1);
  double expected = (5 * r * 100 - 3 * h2(r) + std::log2(0.015)) / 200;
  EXPECT_NEAR(f_correction(0.01, 0.05, 100, 2), expected, 1e-14);
  EXPECT_NEAR(f_correction(0.01, 0.05, 100, 2), 0.7468, 5e-5);
  double conservative = (5 * r * 100 + 3 * h2(r) - std::log2(0.015)) / 200;
  EXPECT_NEAR(f_correction(0.01, 0.05, 100, 2, CorrectionVariant::conservative), conservative, 1e-14);
  EXPECT_GT(f_correction(0.01, 0.05, 100, 2, CorrectionVariant::conservative), f_correction(0.01, 0.05, 100, 2));
}

TEST(IidConverse, CorrectionLimit) {
  double limit = 2.5 * std::sqrt(2 * 0.05);
  double prev = kInf;
  for (std::size_t n : {10u, 100u, 1000u, 100000u}) {
    double f = f_correction(0.01, 0.05, n, 2, CorrectionVariant::conservative);
    EXPECT_LT(f, prev);
    EXPECT_GT(f, limit);
    prev = f;
  }
  EXPECT_NEAR(prev, limit, 1e-3);
}

TEST(IidConverse, IsotropicLongBlock) {
  BoundResult b = iid_converse_rate(bell(), bell_observable(), 1000000, 0.25, 1e-3, 3e-3);
  double shifted = isotropic::rate_distortion_closed_form(0.25 + 1e-3);
  EXPECT_NEAR(b.value, 0.39624, 0.2);
  EXPECT_LE(b.value, shifted - b.param("f") + 1e-6);
  EXPECT_EQ(b.validity, Validity::conditional);
  BoundResult c = iid_converse_rate(bell(), bell_observable(), 1000000, 0.25, 1e-3, 3e-3, CorrectionVariant::conservative);
  EXPECT_EQ(c.validity, Validity::valid);
  EXPECT_LT(c.value, b.value);
  EXPECT_LT(c.value, isotropic::rate_distortion_closed_form(0.25));
}

TEST(IidConverse, DomainErrors) {
  EXPECT_THROW(iid_converse_rate(bell(), bell_observable(), 10, 0.25, 0.01, 0.015), DomainError);
  EXPECT_THROW(iid_converse_rate(bell(), bell_observable(), 10, 0.25, 0.01, 0.6), DomainError);
  EXPECT_THROW(iid_converse_rate(bell(), bell_observable(), 0, 0.25, 0.01, 0.05), DomainError);
}
