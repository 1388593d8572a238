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

// Monte Carlo simulation of teleportation-based rate-distortion coding of the
// isotropic qubit source, and of the symbol-wise excess-distortion tail.
//
// Bell-measurement outcomes on maximally entangled pairs are uniform and
// independent, so source words are drawn directly as uniform 4-ary strings.
// verify_distortion_equivalence is the dense check that ties the Pauli
// correction to the Hamming distortion of the outcome strings.

#ifndef QRD_PROTOCOL_HPP
#define QRD_PROTOCOL_HPP

#include <algorithm>
#include <bit>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "qrd/distortion.hpp"
#include "qrd/isotropic.hpp"
#include "qrd/quantum.hpp"
#include "qrd/random.hpp"

namespace qrd {

enum class CodebookMode { fresh_per_trial, fixed };

inline const char* to_string(CodebookMode m) { return m == CodebookMode::fixed ? "fixed" : "fresh_per_trial"; }

struct SimulationConfig {
  std::size_t n = 8;
  std::uint64_t m = 1000;
  double d = 0.25;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  CodebookMode codebook_mode = CodebookMode::fresh_per_trial;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline constexpr std::uint64_t kMaxCodebookSymbols = std::uint64_t(1) << 28;

struct Interval {
  double lo = 0.0, hi = 1.0;
};

// Exact two-sided Clopper-Pearson interval at the given confidence.
inline Interval clopper_pearson(std::size_t k, std::size_t n, double confidence = 0.99) {
  if (n == 0) throw DomainError("clopper_pearson: no trials");
  if (k > n) throw DomainError("clopper_pearson: more successes than trials");
  double alpha = 1.0 - confidence;
  auto kk = static_cast<double>(k), nn = static_cast<double>(n);
  Interval ci;
  ci.lo = k == 0 ? 0.0 : boost::math::ibeta_inv(kk, nn - kk + 1, alpha / 2);
  ci.hi = k == n ? 1.0 : boost::math::ibeta_inv(kk + 1, nn - kk, 1 - alpha / 2);
  return ci;
}

struct SimulationReport {
  SimulationConfig config;
  std::size_t excess_count = 0;
  double empirical_excess = 0.0;
  double ci_low = 0.0, ci_high = 1.0;  // Clopper-Pearson 99%
  double target = 0.0;                 // (1 - S 4^{-n})^M
  double mean_distortion_hat = 0.0;
  std::vector<std::uint64_t> histogram;  // trials by minimum Hamming distance 0..n
  std::size_t threshold_index = 0;       // excess when distance > this

  double standard_error() const {
    auto t = static_cast<double>(config.trials);
    return std::sqrt(std::max(target * (1 - target), 1e-300) / t);
  }
};

namespace detail::protocol {

// 4-ary words packed 32 symbols per 64-bit word.
class PackedWords {
 public:
  PackedWords(std::size_t n, std::uint64_t count) : n_(n), stride_((n + 31) / 32), data_(stride_ * count, 0) {}

  std::size_t stride() const { return stride_; }
  std::uint64_t* word(std::uint64_t i) { return data_.data() + i * stride_; }
  const std::uint64_t* word(std::uint64_t i) const { return data_.data() + i * stride_; }

  void fill_uniform(Rng& rng) {
    std::size_t tail = n_ % 32;
    std::uint64_t mask = tail == 0 ? ~std::uint64_t(0) : (std::uint64_t(1) << (2 * tail)) - 1;
    for (std::size_t w = 0; w < data_.size(); ++w) {
      data_[w] = rng();
      if ((w + 1) % stride_ == 0) data_[w] &= mask;
    }
  }

 private:
  std::size_t n_, stride_;
  std::vector<std::uint64_t> data_;
};

inline std::size_t hamming4(const std::uint64_t* a, const std::uint64_t* b, std::size_t stride) {
  constexpr std::uint64_t kLow = 0x5555555555555555ULL;
  std::size_t d = 0;
  for (std::size_t w = 0; w < stride; ++w) {
    std::uint64_t x = a[w] ^ b[w];
    d += static_cast<std::size_t>(std::popcount((x | (x >> 1)) & kLow));
  }
  return d;
}

// Minimum distance over the codebook; the lowest index wins ties.
inline std::size_t nearest_distance(const std::uint64_t* x, const PackedWords& book, std::uint64_t m,
                                    std::size_t stride) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::uint64_t i = 0; i < m && best > 0; ++i) best = std::min(best, hamming4(x, book.word(i), stride));
  return best;
}

inline constexpr std::uint64_t kFixedCodebookStream = ~std::uint64_t(0);

// Runs body(begin, end) over contiguous trial blocks.
template <class Body>
void parallel_blocks(std::size_t trials, unsigned threads, Body body) {
  unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  t = static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(trials, 1)));
  if (t <= 1) {
    body(0, trials);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (trials + t - 1) / t;
  for (unsigned k = 0; k < t; ++k) {
    std::size_t b = k * chunk, e = std::min(trials, b + chunk);
    if (b >= e) break;
    pool.emplace_back(body, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail::protocol

inline void validate(const SimulationConfig& cfg) {
  if (cfg.n == 0) throw DomainError("simulate: n must be positive");
  if (cfg.m == 0) throw DomainError("simulate: M must be positive");
  if (cfg.trials == 0) throw DomainError("simulate: trials must be positive");
  if (!(cfg.d >= 0.0)) throw DomainError("simulate: D must be non-negative");
  if (cfg.m > kMaxCodebookSymbols / cfg.n) throw DomainError("simulate: M n exceeds the 2^28 symbol memory guard");
}

inline SimulationReport simulate_teleportation_rd(const SimulationConfig& cfg) {
  validate(cfg);
  using detail::protocol::PackedWords;
  SimulationReport rep;
  rep.config = cfg;
  rep.threshold_index = isotropic::distortion_index(cfg.n, std::min(cfg.d, 1.0));
  rep.target = cfg.d >= 1.0 ? 0.0 : isotropic::achievability_eps(cfg.n, isotropic::BigInt(cfg.m), cfg.d);

  PackedWords fixed(cfg.n, cfg.codebook_mode == CodebookMode::fixed ? cfg.m : 0);
  if (cfg.codebook_mode == CodebookMode::fixed) {
    Rng rng = make_rng(cfg.seed, detail::protocol::kFixedCodebookStream);
    fixed.fill_uniform(rng);
  }

  std::vector<std::uint32_t> distance(cfg.trials);
  detail::protocol::parallel_blocks(cfg.trials, cfg.threads, [&](std::size_t b, std::size_t e) {
    PackedWords source(cfg.n, 1);
    PackedWords fresh(cfg.n, cfg.codebook_mode == CodebookMode::fresh_per_trial ? cfg.m : 0);
    for (std::size_t t = b; t < e; ++t) {
      Rng rng = make_rng(cfg.seed, t);
      source.fill_uniform(rng);
      const PackedWords* book = &fixed;
      if (cfg.codebook_mode == CodebookMode::fresh_per_trial) {
        fresh.fill_uniform(rng);
        book = &fresh;
      }
      distance[t] = static_cast<std::uint32_t>(
          detail::protocol::nearest_distance(source.word(0), *book, cfg.m, source.stride()));
    }
  });

  rep.histogram.assign(cfg.n + 1, 0);
  double dsum = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    ++rep.histogram[distance[t]];
    dsum += distance[t];
    if (distance[t] > rep.threshold_index) ++rep.excess_count;
  }
  auto trials = static_cast<double>(cfg.trials);
  rep.empirical_excess = static_cast<double>(rep.excess_count) / trials;
  rep.mean_distortion_hat = dsum / (trials * static_cast<double>(cfg.n));
  Interval ci = clopper_pearson(rep.excess_count, cfg.trials);
  rep.ci_low = ci.lo;
  rep.ci_high = ci.hi;
  return rep;
}

// ------------------------------------------------- Pauli correction check

inline Matrix pauli(int k) {
  Matrix p = Matrix::Zero(2, 2);
  switch (k) {
    case 0:
      p(0, 0) = p(1, 1) = 1;
      break;
    case 1:
      p(0, 1) = p(1, 0) = 1;
      break;
    case 2:
      p(0, 1) = cplx(0, -1);
      p(1, 0) = cplx(0, 1);
      break;
    case 3:
      p(0, 0) = 1;
      p(1, 1) = -1;
      break;
    default:
      throw DomainError("pauli: index must lie in 0..3");
  }
  return p;
}

struct EquivalenceCheck {
  double lhs = 0.0;  // Tr(Delta_bar |Phi_{x,y}><Phi_{x,y}|)
  double rhs = 0.0;  // (1/n) sum 1{x_i != y_i}
};

// Applies sigma_{y_i} sigma_{x_i} to the output half of each Bell pair and
// evaluates the averaged entanglement-fidelity observable (n <= 3).
inline EquivalenceCheck verify_distortion_equivalence(std::size_t n, const std::vector<int>& x,
                                                      const std::vector<int>& y) {
  if (n == 0 || n > 3) throw DomainError("verify_distortion_equivalence: n must lie in 1..3");
  if (x.size() != n || y.size() != n) throw DomainError("verify_distortion_equivalence: word length differs from n");
  PureState bell = PureState::maximally_entangled(2, "R", "B");
  Vector state = Vector::Ones(1);
  Matrix local = identity(1);
  for (std::size_t i = 0; i < n; ++i) {
    state = kron(state, bell.vector());
    local = kron(local, kron(identity(2), pauli(y[i]) * pauli(x[i])));
  }
  state = local * state;
  SymbolwiseObservable sym = average_symbolwise(entanglement_fidelity_observable(bell, "B"), n);
  EquivalenceCheck out;
  out.lhs = (state.adjoint() * sym.materialize() * state)(0, 0).real();
  std::size_t diff = 0;
  for (std::size_t i = 0; i < n; ++i) diff += x[i] != y[i];
  out.rhs = static_cast<double>(diff) / static_cast<double>(n);
  return out;
}

// ---------------------------------------------------------- tail check

struct HoeffdingReport {
  double mean_distortion = 0.0;  // single-symbol Tr(Delta omega)
  double gap = 0.0;              // D - mean
  double bound = 0.0;            // exp(-2 n gap^2 / d_max^2)
  double estimate = 0.0;
  double ci_low = 0.0, ci_high = 1.0;
  double exact = 0.0;  // distribution of the symbol-wise mean by convolution
  std::size_t trials = 0;
  bool within_bound = false;  // estimate <= bound + 3 half-widths
  bool matches_exact = false;  // exact value inside the 99% interval
};

inline HoeffdingReport hoeffding_check(const DistortionObservable& delta, const QuantumChannel& channel,
                                       const PureState& phi, std::size_t n, double d, std::size_t trials,
                                       std::uint64_t seed, unsigned threads = 0) {
  if (n == 0 || trials == 0) throw DomainError("hoeffding_check: n and trials must be positive");
  DensityOperator omega = extend_to_reference(channel, phi).reordered(delta.dims().labels());
  HoeffdingReport rep;
  rep.trials = trials;
  rep.mean_distortion = mean_distortion(omega, delta);
  rep.gap = d - rep.mean_distortion;
  if (!(rep.gap > 0)) throw DomainError("hoeffding_check: channel mean distortion must lie below D");
  double dm = delta.d_max();
  rep.bound = dm > 0 ? std::exp(-2.0 * static_cast<double>(n) * rep.gap * rep.gap / (dm * dm)) : 0.0;
  rep.exact = excess_probability_iid(omega, average_symbolwise(delta, n), d);

  std::vector<double> probs = level_probabilities(omega, delta);
  std::vector<double> values;
  for (const auto& l : delta.levels()) values.push_back(l.value);
  std::vector<std::uint8_t> hit(trials, 0);
  detail::protocol::parallel_blocks(trials, threads, [&](std::size_t b, std::size_t e) {
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    for (std::size_t t = b; t < e; ++t) {
      Rng rng = make_rng(seed, t);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += values[pick(rng)];
      double mean = s / static_cast<double>(n);
      hit[t] = mean > d && !at_threshold(mean, d);
    }
  });
  std::size_t k = 0;
  for (auto h : hit) k += h;
  rep.estimate = static_cast<double>(k) / static_cast<double>(trials);
  Interval ci = clopper_pearson(k, trials);
  rep.ci_low = ci.lo;
  rep.ci_high = ci.hi;
  double half = 0.5 * (ci.hi - ci.lo);
  rep.within_bound = rep.estimate <= rep.bound + 3 * half;
  rep.matches_exact = rep.exact >= ci.lo && rep.exact <= ci.hi;
  return rep;
}

}  // namespace qrd

#endif  // QRD_PROTOCOL_HPP
