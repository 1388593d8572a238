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

// Finite-blocklength formulas for the isotropic qubit source under the
// entanglement-fidelity distortion observable.

#ifndef QRD_ISOTROPIC_HPP
#define QRD_ISOTROPIC_HPP

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "qrd/linalg.hpp"

namespace qrd::isotropic {

using BigInt = boost::multiprecision::cpp_int;

inline const double kLog2Of3 = std::log2(3.0);

// floor(nD) with a relative guard so that e.g. 8 * 0.25 is 2, not 1.
inline std::size_t distortion_index(std::size_t n, double d) {
  double x = static_cast<double>(n) * d;
  double r = std::round(x);
  double k = std::abs(x - r) <= 1e-12 * std::max(1.0, x) ? r : std::floor(x);
  return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n)));
}

inline void check_distortion(double d, const char* who) {
  if (!(d >= 0.0 && d <= 1.0)) throw DomainError(std::string(who) + ": D must lie in [0, 1]");
}

inline void check_open_distortion(double d, const char* who) {
  if (!(d > 0.0 && d < 0.75)) throw DomainError(std::string(who) + ": D must lie in (0, 3/4)");
}

inline void check_eps(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError(std::string(who) + ": eps must lie in (0, 1)");
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    c *= n - k + j;
    c /= j;
  }
  return c;
}

// sum_{j=0}^{k} C(n, j) 3^j.
inline BigInt s_k(std::size_t n, std::size_t k) {
  if (k > n) throw DomainError("s_k: k must not exceed n");
  BigInt sum = 0, term = 1;  // C(n, j) 3^j
  for (std::size_t j = 0; j <= k; ++j) {
    if (j > 0) {
      term *= 3 * (n - j + 1);
      term /= j;
    }
    sum += term;
  }
  return sum;
}

// log2 of a positive big integer from its top 64 bits in extended precision.
inline double log2_big(const BigInt& x) {
  if (x <= 0) throw DomainError("log2_big: argument must be positive");
  std::size_t msb = boost::multiprecision::msb(x);
  if (msb < 64) return static_cast<double>(std::log2(static_cast<long double>(static_cast<std::uint64_t>(x))));
  std::size_t shift = msb - 63;
  auto top = static_cast<std::uint64_t>(x >> shift);
  return static_cast<double>(std::log2(static_cast<long double>(top)) + static_cast<long double>(shift));
}

inline double log2_s(std::size_t n, double d) { return log2_big(s_k(n, distortion_index(n, d))); }

// 1 - (1/2n) log S + (1/2n) log(1 - eps).
inline double converse_rate(std::size_t n, double d, double eps) {
  if (n == 0) throw DomainError("converse_rate: n must be positive");
  check_distortion(d, "converse_rate");
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("converse_rate: eps must lie in [0, 1)");
  double two_n = 2.0 * static_cast<double>(n);
  return 1.0 - log2_s(n, d) / two_n + std::log2(1.0 - eps) / two_n;
}

// log2 of x = S 4^{-n}, the probability that a uniform codeword lands within
// distortion D of a uniform 4-ary source word.
inline double log2_cover_probability(std::size_t n, double d) { return log2_s(n, d) - 2.0 * static_cast<double>(n); }

// log2(-ln(1 - x)) for x = 2^{log2x} without cancellation.
inline double log2_neg_log1m(double log2x) {
  if (log2x >= 0.0) return kInf;  // x = 1
  double x = std::exp2(log2x);
  if (x > 1e-8) return std::log2(-std::log1p(-x));
  return log2x + std::log2(1.0 + x / 2.0);
}

// ln of (1 - S 4^{-n})^M for M = 2^{log2_m}.
inline double achievability_log_eps(std::size_t n, double log2_m, double d) {
  check_distortion(d, "achievability_eps");
  double l = log2_neg_log1m(log2_cover_probability(n, d));
  if (std::isinf(l)) return -kInf;
  return -std::exp2(log2_m + l);
}

// (1 - S 4^{-n})^M.
inline double achievability_eps(std::size_t n, const BigInt& m, double d) {
  if (n == 0) throw DomainError("achievability_eps: n must be positive");
  if (m < 1) throw DomainError("achievability_eps: M must be at least 1");
  return std::exp(achievability_log_eps(n, log2_big(m), d));
}

struct CodebookSize {
  BigInt m;
  double log2_m = 0.0;
};

// Smallest M with (1 - S 4^{-n})^M <= eps, by doubling then bisection.
inline CodebookSize minimal_codebook(std::size_t n, double d, double eps) {
  if (n == 0) throw DomainError("minimal_codebook: n must be positive");
  check_distortion(d, "minimal_codebook");
  check_eps(eps, "minimal_codebook");
  double l = log2_neg_log1m(log2_cover_probability(n, d));
  double target = std::log2(-std::log(eps));
  // M * (-ln(1-x)) >= -ln eps, compared in log2.
  auto ok = [&](const BigInt& m) { return std::isinf(l) || log2_big(m) + l >= target; };
  BigInt lo = 0, hi = 1;
  while (!ok(hi)) {
    lo = hi;
    hi <<= 1;
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, log2_big(hi)};
}

inline double achievability_rate_classical(std::size_t n, double d, double eps) {
  return minimal_codebook(n, d, eps).log2_m / static_cast<double>(n);
}

// Super-dense coding halves the classical rate.
inline double achievability_rate(std::size_t n, double d, double eps) {
  return 0.5 * achievability_rate_classical(n, d, eps);
}

// n h2(D) + n D log 3 - (1/2) log n, without the O(1) term.
inline double asymptotic_estimate(std::size_t n, double d) {
  check_open_distortion(d, "asymptotic_estimate");
  double nn = static_cast<double>(n);
  return nn * h2(d) + nn * d * kLog2Of3 - 0.5 * std::log2(nn);
}

// 1 - (1/2) H({1-D, D/3, D/3, D/3}), zero for D >= 3/4.
inline double rate_distortion_closed_form(double d) {
  check_distortion(d, "rate_distortion_closed_form");
  if (d >= 0.75) return 0.0;
  return 1.0 - 0.5 * (h2(d) + d * kLog2Of3);
}

// First- and second-order approximation 1 - (1/2)[h2(D) + D log 3] + log n / (4n).
inline double rate_approx(std::size_t n, double d, double eps) {
  check_open_distortion(d, "rate_approx");
  check_eps(eps, "rate_approx");
  double nn = static_cast<double>(n);
  return 1.0 - 0.5 * (h2(d) + d * kLog2Of3) + std::log2(nn) / (4.0 * nn);
}

struct CurvePoint {
  std::size_t n = 0;
  double d = 0, eps = 0;
  double converse = 0, achievability_quantum = 0, achievability_classical = 0, approx = 0;
  double log_s_exact = 0, log_s_estimate = 0;
};

inline CurvePoint curve_point(std::size_t n, double d, double eps) {
  CurvePoint p;
  p.n = n;
  p.d = d;
  p.eps = eps;
  p.converse = converse_rate(n, d, eps);
  p.achievability_classical = achievability_rate_classical(n, d, eps);
  p.achievability_quantum = 0.5 * p.achievability_classical;
  p.log_s_exact = log2_s(n, d);
  bool open = d > 0.0 && d < 0.75;
  p.approx = open ? rate_approx(n, d, eps) : std::nan("");
  p.log_s_estimate = open ? asymptotic_estimate(n, d) : std::nan("");
  return p;
}

}  // namespace qrd::isotropic

#endif  // QRD_ISOTROPIC_HPP
