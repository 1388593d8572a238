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

// Seeded invariant suites over random instances. Each check reports a slack
// that must stay above minus its tolerance.

#ifndef QRD_VALIDATION_HPP
#define QRD_VALIDATION_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "qrd/distortion.hpp"
#include "qrd/entropies.hpp"
#include "qrd/protocol.hpp"
#include "qrd/quantum.hpp"
#include "qrd/random.hpp"

namespace qrd::validation {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0, total = 0;
  double worst_slack = kInf;
  std::vector<std::string> failures;  // first few

  bool ok() const { return total > 0 && passed == total; }
};

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  // One instance; passes when every slack is >= -tol.
  void instance(const std::vector<double>& slacks, double tol, const std::string& what) {
    ++r_.total;
    bool ok = true;
    for (double s : slacks) {
      r_.worst_slack = std::min(r_.worst_slack, s);
      if (!(s >= -tol)) ok = false;
    }
    if (ok) {
      ++r_.passed;
    } else if (r_.failures.size() < 5) {
      r_.failures.push_back(what);
    }
  }

  // Instance that threw: counted as a failure with the message.
  void error(const std::string& what) {
    ++r_.total;
    if (r_.failures.size() < 5) r_.failures.push_back(what);
  }

  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

namespace detail {

template <class Body>
SuiteResult run(const std::string& name, std::size_t count, Body body) {
  Recorder rec(name);
  for (std::size_t k = 0; k < count; ++k) {
    try {
      body(rec, k);
    } catch (const std::exception& e) {
      rec.error("instance " + std::to_string(k) + ": " + e.what());
    }
  }
  return rec.result();
}

inline std::size_t small_dim(std::size_t k) { return 2 + k % 3; }

}  // namespace detail

// D_max^{sqrt(2(1-e))} + log 1/(1-e) <= D_H^e <= D_max + log 1/(1-e).
inline SuiteResult lemma1(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 1);
  return detail::run("lemma1", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    std::vector<double> slack;
    for (double eps : {0.3, 0.5, 0.8}) {
      double dh = d_h(r, s, eps), corr = std::log2(1.0 / (1.0 - eps));
      slack.push_back(d_max(r, s) + corr - dh);
      slack.push_back(dh - (smooth_d_max(r, s, std::sqrt(2 * (1 - eps))).lo() + corr));
    }
    rec.instance(slack, 1e-4, "lemma1 instance " + std::to_string(k));
  });
}

// Neyman-Pearson beta against the SDP value.
inline SuiteResult beta_oracle(std::uint64_t seed, std::size_t count = 50) {
  Rng rng = make_rng(seed, 2);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  return detail::run("beta_oracle", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = 2 + k % 7;
    DensityOperator r = random_density(rng, d, k % 3 == 0 ? 1 + k % d : 0), s = random_density(rng, d);
    double eps = u(rng);
    double np = beta_epsilon(r, s, eps);
    sdp::Options tight;
    tight.tol_gap = 1e-10;
    sdp::SdpSolution sol = beta_epsilon_sdp(r, s, eps, tight);
    double diff = std::abs(np - sol.primal_value);
    rec.instance({1e-6 - diff}, 0.0, "beta d=" + std::to_string(d) + " diff=" + std::to_string(diff));
  });
}

// 1 - F <= T <= sqrt(1 - F^2).
inline SuiteResult fuchs_van_de_graaf(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 3);
  return detail::run("fvg", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator r = random_density(rng, d, 1 + k % d), s = random_density(rng, d);
    double f = fidelity(r, s), t = trace_distance(r, s);
    rec.instance({t - (1 - f), std::sqrt(std::max(0.0, 1 - f * f)) - t}, 1e-9, "fvg " + std::to_string(k));
  });
}

inline SuiteResult purified_distance_triangle(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 4);
  return detail::run("pd_triangle", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator a = random_density(rng, d), b = random_density(rng, d).scaled(0.9), c = random_density(rng, d, 1);
    double slack = purified_distance(a, b) + purified_distance(b, c) - purified_distance(a, c);
    rec.instance({slack}, 1e-9, "pd " + std::to_string(k));
  });
}

// ||rho - sqrt(L) rho sqrt(L)||_1 <= 2 sqrt(eps) with Tr(L rho) = 1 - eps.
inline SuiteResult gentle_operator(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 5);
  return detail::run("gentle", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator rho = random_density(rng, d);
    Matrix lam = random_psd(rng, d);
    double eps = std::max(0.0, 1.0 - trace_product(lam, rho.matrix()));
    Matrix sl = sqrtm_psd(lam);
    double lhs = trace_norm(rho.matrix() - sl * rho.matrix() * sl);
    rec.instance({2 * std::sqrt(eps) - lhs}, 1e-9, "gentle " + std::to_string(k));
  });
}

// Tr(L rho) >= Tr(L sigma) - (1/2)||rho - sigma||_1.
inline SuiteResult trace_inequality(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 6);
  return detail::run("trace_inequality", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    Matrix lam = random_psd(rng, d);
    double slack = trace_product(lam, r.matrix()) - trace_product(lam, s.matrix()) + trace_distance(r, s);
    rec.instance({slack}, 1e-12, "trace " + std::to_string(k));
  });
}

// Larger balls never raise D_max^eps or H_0^eps, nor lower H_min^eps.
inline SuiteResult smoothing_monotone(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 7);
  return detail::run("smoothing_monotone", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator r = random_density(rng, d), s = random_density(rng, d);
    double e1 = 0.05 + 0.1 * static_cast<double>(k % 3), e2 = e1 + 0.15;
    std::vector<double> slack;
    slack.push_back(d_max(r, s) - smooth_d_max(r, s, e1).lo());
    slack.push_back(smooth_d_max(r, s, e1).hi() - smooth_d_max(r, s, e2).lo());
    slack.push_back(h0_smooth(r, e1).value - h0_smooth(r, e2).value);
    slack.push_back(h0(r) - h0_smooth(r, e1).value);
    slack.push_back(h_min_smooth(r, {}, e2).hi() - h_min_smooth(r, {}, e1).lo());
    rec.instance(slack, 1e-6, "smoothing " + std::to_string(k));
  });
}

// I_max(A;B) >= I(A;B).
inline SuiteResult imax_dominates_mutual_information(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 8);
  return detail::run("imax_mi", count, [&](Recorder& rec, std::size_t k) {
    std::size_t da = 2, db = 2 + k % 2;
    DensityOperator rho = random_density(rng, SystemDims({"A", "B"}, {da, db}), 1 + k % (da * db));
    double im = i_max(rho, {"A"}).hi();
    double mi = mutual_information(rho);
    rec.instance({im - mi}, 1e-6, "imax " + std::to_string(k));
  });
}

// H_0 >= H >= H_min.
inline SuiteResult entropy_ordering(std::uint64_t seed, std::size_t count = 100) {
  Rng rng = make_rng(seed, 9);
  return detail::run("entropy_order", count, [&](Recorder& rec, std::size_t k) {
    std::size_t d = detail::small_dim(k);
    DensityOperator rho = random_density(rng, d, 1 + k % d);
    double hz = h0(rho), h = von_neumann(rho), hm = h_min(rho, {}).value;
    rec.instance({hz - h, h - hm}, 1e-9, "entropy " + std::to_string(k));
  });
}

// Dense average observable against its structured spectrum, n in {2, 3}.
inline SuiteResult lemma7(std::uint64_t seed, std::size_t count = 4) {
  Rng rng = make_rng(seed, 10);
  return detail::run("lemma7", count, [&](Recorder& rec, std::size_t k) {
    DistortionObservable base = entanglement_fidelity_observable(PureState::maximally_entangled(2));
    if (k % 2 == 1) {
      RealMatrix h = RealMatrix::Ones(2, 2) - RealMatrix::Identity(2, 2);
      base = classical_cc_observable(h, random_unitary(rng, 2), random_unitary(rng, 2));
    }
    std::size_t n = 2 + (k / 2) % 2;
    SymbolwiseObservable sym = average_symbolwise(base, n);
    HermitianEig e = eigh(sym.materialize());
    std::vector<double> dense(e.values.data(), e.values.data() + e.values.size()), structured;
    std::sort(dense.begin(), dense.end());
    for (const auto& [v, mult] : sym.spectrum())
      for (long j = 0; j < std::lround(mult); ++j) structured.push_back(v);
    std::vector<double> slack;
    if (structured.size() != dense.size()) {
      slack.push_back(-1.0);
    } else {
      for (std::size_t i = 0; i < dense.size(); ++i) slack.push_back(1e-12 - std::abs(dense[i] - structured[i]));
    }
    for (const auto& [v, mult] : sym.spectrum()) {
      Matrix p = spectral_projector(e, [&](double x) { return std::abs(x - v) < 1e-8; });
      slack.push_back(1e-10 - (p - sym.eigenspace_projector(v)).norm());
    }
    rec.instance(slack, 0.0, std::string(k % 2 ? "hamming" : "ent_fid") + " n=" + std::to_string(n));
  });
}

// Pauli correction distortion equals the Hamming distortion of the outcomes.
inline SuiteResult step5(std::size_t max_n = 3) {
  Recorder rec("step5");
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t words = std::size_t(1) << (2 * n);
    for (std::size_t x = 0; x < words; ++x)
      for (std::size_t y = 0; y < words; ++y) {
        std::vector<int> wx(n), wy(n);
        for (std::size_t i = 0, cx = x, cy = y; i < n; ++i, cx /= 4, cy /= 4) {
          wx[i] = static_cast<int>(cx % 4);
          wy[i] = static_cast<int>(cy % 4);
        }
        EquivalenceCheck c = verify_distortion_equivalence(n, wx, wy);
        rec.instance({1e-12 - std::abs(c.lhs - c.rhs)}, 0.0, "step5 n=" + std::to_string(n));
      }
  }
  return rec.result();
}

struct NamedSuite {
  std::string name;
  std::function<SuiteResult(std::uint64_t)> run;
};

// Property suites: every listed invariant on at least 100 instances.
inline std::vector<NamedSuite> property_suites() {
  return {{"fvg", [](std::uint64_t s) { return fuchs_van_de_graaf(s); }},
          {"pd_triangle", [](std::uint64_t s) { return purified_distance_triangle(s); }},
          {"gentle", [](std::uint64_t s) { return gentle_operator(s); }},
          {"trace_inequality", [](std::uint64_t s) { return trace_inequality(s); }},
          {"smoothing_monotone", [](std::uint64_t s) { return smoothing_monotone(s); }},
          {"imax_mi", [](std::uint64_t s) { return imax_dominates_mutual_information(s); }},
          {"entropy_order", [](std::uint64_t s) { return entropy_ordering(s); }}};
}

inline std::vector<NamedSuite> all_suites() {
  std::vector<NamedSuite> out{{"lemma1", [](std::uint64_t s) { return lemma1(s); }},
                              {"beta_oracle", [](std::uint64_t s) { return beta_oracle(s); }},
                              {"lemma7", [](std::uint64_t s) { return lemma7(s); }},
                              {"step5", [](std::uint64_t) { return step5(); }}};
  for (auto& s : property_suites()) out.push_back(std::move(s));
  return out;
}

}  // namespace qrd::validation

#endif  // QRD_VALIDATION_HPP
