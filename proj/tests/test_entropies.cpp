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

#include "qrd/entropies.hpp"
#include "qrd/random.hpp"

using namespace qrd;

namespace {

DensityOperator ket0() { return DensityOperator::basis(2, 0); }
DensityOperator mixed2() { return DensityOperator::maximally_mixed(SystemDims::single("A", 2)); }
DensityOperator bell() { return PureState::maximally_entangled(2, "A", "B").density(); }

// Smallest gamma with 2^gamma sigma - rho >= 0, by bisection on the PSD test.
double d_max_by_bisection(const Matrix& rho, const Matrix& sigma) {
  double lo = -60, hi = 60;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    if (lambda_min(std::exp2(mid) * sigma - rho) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Qubit state from a Bloch vector.
Matrix bloch(double x, double y, double z) {
  Matrix m(2, 2);
  m << cplx(1 + z, 0), cplx(x, -y), cplx(x, y), cplx(1 - z, 0);
  return 0.5 * m;
}

}  // namespace

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann(mixed2()), 1.0, 1e-14);
  EXPECT_NEAR(von_neumann(ket0()), 0.0, 1e-14);
  EXPECT_NEAR(mutual_information(PureState::maximally_entangled(2, "R", "B").density()), 2.0, 1e-12);
  EXPECT_NEAR(conditional_entropy(bell(), {"B"}), -1.0, 1e-12);
}

TEST(RelativeEntropy, Examples) {
  EXPECT_NEAR(relative_entropy(ket0(), mixed2()), 1.0, 1e-14);
  EXPECT_EQ(relative_entropy(mixed2(), ket0()), kInf);
  Rng rng = make_rng(41);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3), s = random_density(rng, 3);
    EXPECT_GE(relative_entropy(r, s), -1e-12);
  }
}

TEST(Beta, IdenticalHypotheses) {
  Rng rng = make_rng(42);
  DensityOperator rho = random_density(rng, 3);
  for (double eps : {0.1, 0.5, 0.9}) EXPECT_NEAR(beta_epsilon(rho, rho, eps), 1.0 - eps, 1e-12);
}

TEST(Beta, OrthogonalSupports) {
  EXPECT_NEAR(beta_epsilon(ket0(), DensityOperator::basis(2, 1), 0.3), 0.0, 1e-15);
}

TEST(Beta, EpsilonOneIsFree) { EXPECT_EQ(beta_epsilon(mixed2(), ket0(), 1.0), 0.0); }

TEST(Beta, MatchesSdpOnNonCommutingQubits) {
  Rng rng = make_rng(43);
  sdp::Options tight;
  tight.tol_gap = 1e-10;
  for (int k = 0; k < 10; ++k) {
    DensityOperator r = random_density(rng, 2), s = random_density(rng, 2);
    sdp::SdpSolution sol = beta_epsilon_sdp(r, s, 0.1, tight);
    ASSERT_TRUE(sol.optimal());
    EXPECT_NEAR(beta_epsilon(r, s, 0.1), sol.primal_value, 1e-6);
  }
}

TEST(Beta, ExplicitTestIsNearOptimal) {
  Rng rng = make_rng(44);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 4), s = random_density(rng, 4);
    NeymanPearson np = neyman_pearson(r, s, 0.2);
    EXPECT_NEAR(np.test_power, 0.8, 1e-7);
    EXPECT_NEAR(np.test_beta, np.beta, 1e-7);
    EXPECT_TRUE(is_psd(np.test) && is_psd(identity(4) - np.test));
  }
}

TEST(Beta, MonotoneInEpsilon) {
  Rng rng = make_rng(45);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3), s = random_density(rng, 3);
    double prev = 1.0, prev_dh = -kInf;
    for (double eps = 0.05; eps < 1.0; eps += 0.1) {
      double b = beta_epsilon(r, s, eps);
      EXPECT_LE(b, prev + 1e-12);
      prev = b;
      double dh = d_h(r, s, eps);
      EXPECT_GE(dh, prev_dh - 1e-9);
      prev_dh = dh;
    }
  }
}

TEST(HypothesisTestingEntropy, Examples) {
  Rng rng = make_rng(46);
  DensityOperator rho = random_density(rng, 3);
  EXPECT_NEAR(d_h(rho, rho, 0.25), -std::log2(0.75), 1e-12);
  // Lambda = |0><0|/2 meets the constraint; beta = 1/4.
  EXPECT_NEAR(d_h(ket0(), mixed2(), 0.5), 2.0, 1e-12);
  EXPECT_EQ(d_h(ket0(), DensityOperator::basis(2, 1), 0.5), kInf);
}

TEST(DMax, Examples) {
  Rng rng = make_rng(47);
  DensityOperator rho = random_density(rng, 3);
  EXPECT_NEAR(d_max(rho, rho), 0.0, 1e-10);
  EXPECT_NEAR(d_max(ket0(), mixed2()), 1.0, 1e-14);
  EXPECT_EQ(d_max(mixed2(), ket0()), kInf);
}

TEST(DMax, MatchesBisectionOracle) {
  Rng rng = make_rng(48);
  for (int k = 0; k < 20; ++k) {
    DensityOperator r = random_density(rng, 3), s = random_density(rng, 3);
    EXPECT_NEAR(d_max(r, s), d_max_by_bisection(r.matrix(), s.matrix()), 1e-8);
  }
}

TEST(DMax, DominatesRelativeEntropy) {
  Rng rng = make_rng(49);
  for (int k = 0; k < 50; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    double rel = relative_entropy(r, s);
    EXPECT_GE(rel, -1e-12);
    EXPECT_GE(d_max(r, s), rel - 1e-9);
  }
}

TEST(SmoothDMax, ZeroRadiusIsDMax) {
  Rng rng = make_rng(50);
  DensityOperator r = random_density(rng, 2), s = random_density(rng, 2);
  EntropyResult e = smooth_d_max(r, s, 0.0);
  EXPECT_EQ(e.certainty, Certainty::exact);
  EXPECT_NEAR(e.value, d_max(r, s), 1e-12);
}

TEST(SmoothDMax, MonotoneInRadius) {
  Rng rng = make_rng(51);
  for (int k = 0; k < 5; ++k) {
    DensityOperator r = random_density(rng, 3), s = random_density(rng, 3);
    EntropyResult a = smooth_d_max(r, s, 0.1), b = smooth_d_max(r, s, 0.2);
    ASSERT_TRUE(a.interval && b.interval);
    EXPECT_GE(a.hi(), b.lo() - 1e-6);
    EXPECT_LE(a.lo(), a.value + 1e-12);
    EXPECT_LE(a.value, a.hi() + 1e-12);
  }
}

TEST(SmoothDMax, MatchesGridSearchOnQubit) {
  // Grid over subnormalized qubit operators [[a, z], [z, b]], z real >= 0
  // (phases do not change the spectrum or the overlap with |0><0|).
  DensityOperator rho = ket0(), sigma = mixed2();
  double best = kInf;
  const int n = 100;
  for (int ia = 0; ia <= n; ++ia) {
    double a = double(ia) / n;
    for (int ib = 0; a + double(ib) / n <= 1.0 + 1e-12; ++ib) {
      double b = double(ib) / n;
      for (int iz = 0; iz <= 10; ++iz) {
        double z = std::sqrt(a * b) * iz / 10.0;
        Matrix m(2, 2);
        m << a, z, z, b;
        if (m.trace().real() <= 0) continue;
        DensityOperator cand(m);
        if (purified_distance(rho, cand) > 0.2 + 1e-12) continue;
        best = std::min(best, std::log2(2.0 * lambda_max(m)));
      }
    }
  }
  EntropyResult e = smooth_d_max(rho, sigma, 0.2);
  EXPECT_NEAR(e.value, best, 2e-3);
  EXPECT_LE(e.lo(), best + 1e-9);
}

TEST(SmoothDMax, RadiusOneOrMoreIsUnbounded) {
  EXPECT_EQ(smooth_d_max(mixed2(), ket0(), 1.0).value, -kInf);
}

TEST(HMin, Examples) {
  EXPECT_NEAR(h_min(mixed2(), {}).value, 1.0, 1e-14);
  EntropyResult e = h_min(bell(), {"B"});
  EXPECT_NEAR(e.value, -1.0, 1e-6);
  EXPECT_LE(e.lo(), -1.0 + 1e-9);
  EXPECT_GE(e.hi(), -1.0 - 1e-9);
  // The feasible point sigma_B = I/2 scaled by 2 certifies H_min >= -1.
  Matrix s = kron(identity(2), identity(2));
  EXPECT_GE(lambda_min(s - bell().matrix()), -1e-12);
}

TEST(HMin, SmoothingIncreases) {
  Rng rng = make_rng(52);
  DensityOperator rho = random_density(rng, SystemDims({"A", "B"}, {2, 2}));
  EntropyResult a = h_min_smooth(rho, {"B"}, 0.1), b = h_min_smooth(rho, {"B"}, 0.2);
  EntropyResult z = h_min(rho, {"B"});
  EXPECT_LE(z.lo(), a.hi() + 1e-6);
  EXPECT_LE(a.lo(), b.hi() + 1e-6);
}

TEST(H0, Examples) {
  EXPECT_NEAR(h0(mixed2()), 1.0, 1e-15);
  Rng rng = make_rng(53);
  DensityOperator rho = random_density(rng, 3, 2);
  EXPECT_NEAR(h0_smooth(rho, 0.0).value, h0(rho), 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  DensityOperator r(d);
  EntropyResult e = h0_smooth(r, 0.4);
  EXPECT_EQ(e.value, 0.0);
  // The truncated state sits at purified distance sqrt(0.1) from rho.
  EXPECT_NEAR(purified_distance(r, DensityOperator(e.smoothed_state)), std::sqrt(0.1), 1e-12);
}

TEST(H0, TruncationIsOptimalAmongRankOneGrid) {
  // No rank-one qubit state is closer than the top eigenvector when the
  // budget is just below sqrt(1 - lambda_max).
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = 0.3;
  DensityOperator r(d);
  EXPECT_EQ(h0_smooth(r, std::sqrt(0.3) - 1e-6).value, 1.0);
  EXPECT_EQ(h0_smooth(r, std::sqrt(0.3) + 1e-6).value, 0.0);
  for (int k = 0; k <= 200; ++k) {
    double th = M_PI * k / 200;
    Vector v(2);
    v << std::cos(th), std::sin(th);
    DensityOperator cand(Matrix(v * v.adjoint()));
    EXPECT_GE(purified_distance(r, cand), std::sqrt(0.3) - 1e-12);
  }
}

TEST(IMax, ProductStateIsZero) {
  Rng rng = make_rng(54);
  DensityOperator p = tensor(random_density(rng, 2, 0, "A"), random_density(rng, 2, 0, "B"));
  EntropyResult e = i_max(p);
  EXPECT_NEAR(e.value, 0.0, 1e-6);
}

TEST(IMax, BellStateIsTwo) {
  EntropyResult e = i_max(bell());
  EXPECT_NEAR(e.value, 2.0, 1e-6);
  // Brute force over a Bloch-ball grid for sigma_B.
  double best = kInf;
  for (int ix = -10; ix <= 10; ++ix)
    for (int iy = -10; iy <= 10; ++iy)
      for (int iz = -10; iz <= 10; ++iz) {
        double x = ix / 10.5, y = iy / 10.5, z = iz / 10.5;
        if (x * x + y * y + z * z >= 1) continue;
        DensityOperator s(kron(identity(2) / 2.0, bloch(x, y, z)), bell().dims());
        best = std::min(best, d_max(bell(), s));
      }
  EXPECT_NEAR(best, 2.0, 1e-12);
  EXPECT_GE(best, e.lo() - 1e-9);
}

TEST(IMax, DominatesMutualInformation) {
  Rng rng = make_rng(55);
  for (int k = 0; k < 10; ++k) {
    DensityOperator rho = random_density(rng, SystemDims({"A", "B"}, {2, 2}), 1 + k % 4);
    EXPECT_GE(i_max(rho).hi(), mutual_information(rho) - 1e-6);
  }
}

TEST(IMax, SmoothingSweepIsMonotone) {
  Rng rng = make_rng(56);
  DensityOperator rho = random_density(rng, SystemDims({"A", "B"}, {2, 2}));
  EntropyOptions opt;
  opt.restarts = 2;
  auto sweep = i_max_smooth_sweep(rho, {"A"}, {0.0, 0.1, 0.2}, opt);
  ASSERT_EQ(sweep.size(), 3u);
  for (std::size_t k = 1; k < sweep.size(); ++k) EXPECT_LE(sweep[k].value, sweep[k - 1].value + 1e-9);
  for (const auto& r : sweep) EXPECT_EQ(r.certainty, Certainty::heuristic_upper_bound);
  // The smoothed optimizer stays inside the ball.
  DensityOperator tilde(hermitian_part(sweep[2].smoothed_state) , rho.dims());
  EXPECT_LE(purified_distance(rho, tilde), 0.2 + 1e-5);
}

TEST(IMax, VariantsAreReportedSeparately) {
  Rng rng = make_rng(57);
  DensityOperator rho = random_density(rng, SystemDims({"A", "B"}, {2, 2}));
  EntropyOptions opt;
  opt.restarts = 1;
  EntropyResult own = i_max_smooth(rho, {"A"}, 0.1, opt);
  EntropyResult fixed = i_max_smooth_fixed_marginal(rho, {"A"}, 0.1, opt);
  EntropyResult alt = i_max_alt(rho, {"A"}, 0.1, opt);
  EXPECT_EQ(fixed.certainty, Certainty::certified_interval);
  EXPECT_EQ(alt.certainty, Certainty::heuristic_upper_bound);
  // Product reference states include rho_A (x) sigma_B, so the alternative
  // quantity is never larger than the fixed-marginal one.
  EXPECT_LE(alt.value, fixed.hi() + 1e-6);
  EXPECT_LE(own.value, i_max(rho).hi() + 1e-9);
}

TEST(Invariants, EntropyOrdering) {
  Rng rng = make_rng(58);
  for (int k = 0; k < 100; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator rho = random_density(rng, d, 1 + k % d);
    double hmin = h_min(rho, {}).value, h = von_neumann(rho), hz = h0(rho);
    EXPECT_GE(hz, h - 1e-9);
    EXPECT_GE(h, hmin - 1e-9);
  }
}

TEST(Invariants, LemmaOneSandwichSmallSample) {
  Rng rng = make_rng(59);
  for (int k = 0; k < 15; ++k) {
    std::size_t d = 2 + k % 3;
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    for (double eps : {0.3, 0.5, 0.8}) {
      double dh = d_h(r, s, eps);
      double corr = std::log2(1.0 / (1.0 - eps));
      EXPECT_LE(dh, d_max(r, s) + corr + 1e-9);
      EntropyResult sm = smooth_d_max(r, s, std::sqrt(2.0 * (1.0 - eps)));
      EXPECT_LE(sm.lo() + corr, dh + 1e-4);
    }
  }
}

TEST(Invariants, H0TrendUnderTensorPowers) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.8;
  d(1, 1) = 0.2;
  DensityOperator rho(d);
  double h = von_neumann(rho), prev = kInf;
  for (std::size_t n = 1; n <= 3; ++n) {
    double rate = h0_smooth(tensor_power(rho, n), 0.1).value / double(n);
    EXPECT_LE(rate, prev + 1e-12);
    EXPECT_GE(rate, h - 0.5);
    prev = rate;
  }
}
