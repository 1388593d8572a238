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

#ifndef QRD_ENTROPIES_HPP
#define QRD_ENTROPIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrd/quantum.hpp"
#include "qrd/random.hpp"
#include "qrd/sdp.hpp"

namespace qrd {

enum class Certainty { exact, certified_interval, heuristic_upper_bound };

inline const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::exact: return "exact";
    case Certainty::certified_interval: return "certified_interval";
    case Certainty::heuristic_upper_bound: return "heuristic_upper_bound";
  }
  return "unknown";
}

struct EntropyResult {
  double value = 0.0;  // bits
  Certainty certainty = Certainty::exact;
  std::optional<std::pair<double, double>> interval;
  std::string note;
  Matrix smoothed_state;  // optimizer, when one exists

  double lo() const { return interval ? interval->first : value; }
  double hi() const { return interval ? interval->second : value; }
};

struct EntropyOptions {
  sdp::Options sdp{};
  int restarts = 5;          // random restarts for non-convex smoothing
  int max_alternations = 8;  // per restart
  double alternation_tol = 1e-6;
  std::uint64_t seed = 0x51ed;
};

// ---------------------------------------------------------------- von Neumann

inline double von_neumann(const DensityOperator& rho) { return entropy_of_spectrum(eigvalsh(rho.matrix())); }

// H(A|B) = H(AB) - H(B).
inline double conditional_entropy(const DensityOperator& rho, const std::vector<std::string>& cond) {
  if (cond.empty()) return von_neumann(rho);
  return von_neumann(rho) - von_neumann(partial_trace(rho, cond));
}

inline double mutual_information(const DensityOperator& rho, const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  return von_neumann(partial_trace(rho, a)) + von_neumann(partial_trace(rho, b)) - von_neumann(rho);
}

// Two-factor shorthand: I(first; second).
inline double mutual_information(const DensityOperator& rho) {
  if (rho.dims().size() != 2) throw DomainError("mutual_information: expected a bipartite state");
  return mutual_information(rho, {rho.dims().labels()[0]}, {rho.dims().labels()[1]});
}

// Tr rho log rho - Tr rho log sigma; +inf when supp(rho) is not inside supp(sigma).
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("relative_entropy: dimension mismatch");
  HermitianEig es = eigh(sigma.matrix());
  double cut = tolerance().pinv * es.max_abs();
  Matrix ker = spectral_projector(es, [cut](double x) { return x <= cut; });
  if (trace_product(ker, rho.matrix()) > tolerance().psd * std::max(1.0, rho.trace())) return kInf;
  RealVector logs = es.values.unaryExpr([cut](double x) { return x > cut ? std::log2(x) : 0.0; });
  double cross = trace_product(reconstruct(es, logs), rho.matrix());
  RealVector lr = eigvalsh(rho.matrix());
  double self = 0.0;
  for (double x : lr)
    if (x > 0) self += x * std::log2(x);
  return self - cross;
}

// ------------------------------------------------------------- D_max family

// log lambda_max(sigma^{-1/2} rho sigma^{-1/2}) on the support of sigma.
inline double d_max(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("d_max: dimension mismatch");
  HermitianEig es = eigh(sigma.matrix());
  double cut = tolerance().pinv * es.max_abs();
  Matrix ker = spectral_projector(es, [cut](double x) { return x <= cut; });
  if (trace_product(ker, rho.matrix()) > tolerance().psd * std::max(1.0, rho.trace())) return kInf;
  RealVector inv = es.values.unaryExpr([cut](double x) { return x > cut ? 1.0 / std::sqrt(x) : 0.0; });
  Matrix s = reconstruct(es, inv);
  return log2_safe(lambda_max(s * rho.matrix() * s));
}

// ---------------------------------------------------- hypothesis testing

struct NeymanPearson {
  double beta = 0.0;         // certified value (dual bound at the crossing)
  double threshold = 0.0;    // t with Lambda built from rho - t sigma
  double randomization = 0;  // weight on the zero eigenspace
  Matrix test;               // optimal test Lambda
  double test_beta = 0.0;    // Tr(Lambda sigma)
  double test_power = 0.0;   // Tr(Lambda rho)
};

namespace detail {

// Tr (rho - t sigma)_+ and Tr P_{>0}(rho - t sigma) rho.
struct PositivePart {
  double pos_trace;
  double rho_mass;
};

inline PositivePart positive_part(const Matrix& rho, const Matrix& sigma, double t) {
  HermitianEig e = eigh(rho - t * sigma);
  double cut = 1e-14 * std::max(1.0, e.max_abs());
  PositivePart p{0.0, 0.0};
  Matrix proj = Matrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (e.values(k) > cut) {
      p.pos_trace += e.values(k);
      proj += e.vectors.col(k) * e.vectors.col(k).adjoint();
    }
  }
  p.rho_mass = trace_product(proj, rho);
  return p;
}

}  // namespace detail

// min Tr(Lambda sigma) s.t. Tr(Lambda rho) >= 1 - eps, 0 <= Lambda <= I.
inline NeymanPearson neyman_pearson(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
  if (rho.dim() != sigma.dim()) throw DomainError("beta_epsilon: dimension mismatch");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("beta_epsilon: eps must lie in (0, 1]");
  if (!rho.normalized()) throw DomainError("beta_epsilon: rho must be normalized");
  const Matrix& r = rho.matrix();
  const Matrix& s = sigma.matrix();
  auto n = r.rows();
  NeymanPearson out;
  const double target = 1.0 - eps;
  if (target <= 0.0) {
    out.test = Matrix::Zero(n, n);
    return out;
  }
  HermitianEig es = eigh(s);
  double cut = tolerance().pinv * es.max_abs();
  Matrix ker = spectral_projector(es, [cut](double x) { return x <= cut; });
  double ker_mass = trace_product(ker, r);
  if (ker_mass >= target) {
    // A test inside ker(sigma) reaches the required power at zero cost.
    out.test = ker * (target / ker_mass);
    out.test_power = target;
    out.threshold = kInf;
    return out;
  }
  double lmin_pos = kInf;
  for (double v : es.values)
    if (v > cut) lmin_pos = std::min(lmin_pos, v);
  double t_hi = lambda_max(r) / lmin_pos;
  for (int k = 0; k < 200 && detail::positive_part(r, s, t_hi).rho_mass >= target; ++k) t_hi *= 2.0;
  double t_lo = 0.0;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;
    if (detail::positive_part(r, s, mid).rho_mass >= target) {
      t_lo = mid;
    } else {
      t_hi = mid;
    }
  }
  // Dual value h(t) = [(1-eps) - Tr(rho - t sigma)_+] / t is a lower bound
  // for every t > 0 and is tight at the crossing.
  auto h = [&](double t) { return t > 0 ? (target - detail::positive_part(r, s, t).pos_trace) / t : -kInf; };
  out.beta = std::clamp(std::max(h(t_lo), h(t_hi)), 0.0, 1.0);
  out.threshold = 0.5 * (t_lo + t_hi);

  // Explicit test: positive part plus a fraction of the near-zero block.
  HermitianEig e = eigh(r - out.threshold * s);
  double zcut = 1e-9 * std::max(1.0, e.max_abs());
  Matrix pos = spectral_projector(e, [zcut](double x) { return x > zcut; });
  Matrix zero = spectral_projector(e, [zcut](double x) { return std::abs(x) <= zcut; });
  double pm = trace_product(pos, r), zm = trace_product(zero, r);
  double c = zm > 0 ? std::clamp((target - pm) / zm, 0.0, 1.0) : 0.0;
  out.randomization = c;
  out.test = pos + c * zero;
  out.test_beta = trace_product(out.test, s);
  out.test_power = trace_product(out.test, r);
  return out;
}

inline double beta_epsilon(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
  return neyman_pearson(rho, sigma, eps).beta;
}

// -log beta_eps; +inf when beta vanishes.
inline double d_h(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
  double b = beta_epsilon(rho, sigma, eps);
  return b > 0 ? -std::log2(b) : kInf;
}

// The same quantity as a semidefinite program, kept as an independent route.
inline sdp::SdpSolution beta_epsilon_sdp(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                                         const sdp::Options& opt = {}) {
  sdp::SdpProblem p;
  std::size_t b = p.add_block(rho.dim(), true);
  p.set_objective(b, sigma.matrix());
  p.add_constraint({{b, rho.matrix()}}, 1.0 - eps, sdp::Relation::greater_equal);
  return sdp::solve(p, opt);
}

// ------------------------------------------------ smoothed dominance SDP

struct DominanceResult {
  sdp::SdpSolution solution;
  double lower = 0.0;  // certified bounds on min Tr X
  double upper = 0.0;
  Matrix smoothed;     // rho~ in the original space
  Matrix x;            // optimal X on the variable labels
  bool infeasible = false;
};

namespace detail {

inline Matrix embed_block(const Matrix& e, Eigen::Index n, Eigen::Index offset) {
  Matrix m = Matrix::Zero(n, n);
  m.block(offset, offset, e.rows(), e.cols()) = e;
  return m;
}

}  // namespace detail

// min Tr X  s.t.  F (x) X >= rho~,  rho~ in the purified-distance ball of
// radius eps around rho (rho~ = rho when eps = 0). F acts on fixed_labels,
// X on the remaining labels of rho (a scalar when none remain).
inline DominanceResult smoothed_dominance(const DensityOperator& rho, const Matrix& fixed,
                                          const std::vector<std::string>& fixed_labels, double eps,
                                          const sdp::Options& opt = {}) {
  const SystemDims& dims = rho.dims();
  std::vector<std::string> var_labels = dims.complement(fixed_labels);
  std::vector<std::string> order = fixed_labels;
  order.insert(order.end(), var_labels.begin(), var_labels.end());
  auto df = static_cast<Eigen::Index>(dims.restrict_to(fixed_labels).total());
  auto dv = static_cast<Eigen::Index>(var_labels.empty() ? 1 : dims.restrict_to(var_labels).total());
  if (fixed.rows() != df || fixed.cols() != df) throw DomainError("smoothed_dominance: fixed operator has wrong shape");

  // Work in [fixed, variable] order, compressed to the support of F.
  Matrix r = reorder(rho.matrix(), dims, order);
  HermitianEig ef = eigh(fixed);
  double fcut = tolerance().pinv * ef.max_abs();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ef.values.size(); ++k)
    if (ef.values(k) > fcut) keep.push_back(k);
  auto rf = static_cast<Eigen::Index>(keep.size());
  if (rf == 0) throw DomainError("smoothed_dominance: fixed operator is zero");
  Matrix v(df, rf);
  RealVector fvals(rf);
  for (Eigen::Index k = 0; k < rf; ++k) {
    v.col(k) = ef.vectors.col(keep[k]);
    fvals(k) = ef.values(keep[k]);
  }
  Matrix vv = kron(v, identity(dv));
  Matrix rc = hermitian_part(vv.adjoint() * r * vv);
  Matrix fc = fvals.cast<cplx>().asDiagonal();
  const Eigen::Index d = rf * dv;
  const double tr_rho = rho.trace();
  const double outside = tr_rho - rc.trace().real();

  DominanceResult out;
  auto adj_x = [fc, dv](const Matrix& e) {
    Matrix m = kron(fc, identity(dv)) * e;
    return partial_trace(m, {static_cast<std::size_t>(fc.rows()), static_cast<std::size_t>(dv)}, {false, true});
  };

  sdp::SdpProblem p;
  std::size_t bx = p.add_block(static_cast<std::size_t>(dv));
  p.set_objective(bx, identity(dv));
  std::size_t bs = p.add_block(static_cast<std::size_t>(d));
  std::size_t bw = 0;
  bool with_tail = false;
  std::size_t bt = 0;
  if (eps <= 0.0) {
    if (outside > tolerance().psd * std::max(1.0, tr_rho)) {
      out.infeasible = true;
      out.lower = out.upper = kInf;
      return out;
    }
    p.add_linear_equality({{bx, adj_x}, {bs, [](const Matrix& e) { return Matrix(-e); }}}, rc);
  } else {
    bw = p.add_block(static_cast<std::size_t>(2 * d));
    p.add_linear_equality({{bw, [d](const Matrix& e) { return detail::embed_block(e, 2 * d, 0); }}}, rc);
    p.add_linear_equality({{bx, adj_x},
                           {bw, [d](const Matrix& e) { return Matrix(-detail::embed_block(e, 2 * d, d)); }},
                           {bs, [](const Matrix& e) { return Matrix(-e); }}},
                          Matrix::Zero(d, d));
    Matrix tr22 = detail::embed_block(identity(d), 2 * d, d);
    p.add_constraint({{bw, tr22}}, 1.0, sdp::Relation::less_equal);
    Matrix re_z = Matrix::Zero(2 * d, 2 * d);
    re_z.block(0, d, d, d) = 0.5 * identity(d);
    re_z.block(d, 0, d, d) = 0.5 * identity(d);
    double cdef = 1.0 - tr_rho;
    with_tail = cdef > 1e-12;
    double target = std::sqrt(std::max(0.0, 1.0 - eps * eps));
    if (with_tail) {
      bt = p.add_block(2);
      Matrix sx = Matrix::Zero(2, 2);
      sx(0, 1) = sx(1, 0) = 0.5;
      p.add_constraint({{bw, re_z}, {bt, sx}}, target, sdp::Relation::greater_equal);
      Matrix e00 = Matrix::Zero(2, 2), e11 = Matrix::Zero(2, 2);
      e00(0, 0) = 1.0;
      e11(1, 1) = 1.0;
      p.add_constraint({{bt, e00}}, cdef);
      p.add_constraint({{bt, e11}, {bw, tr22}}, 1.0);
    } else {
      p.add_constraint({{bw, re_z}}, target, sdp::Relation::greater_equal);
    }
  }
  out.solution = sdp::solve(p, opt);
  out.lower = out.solution.lower();
  out.upper = out.solution.upper();
  out.x = out.solution.primal[bx];
  Matrix tilde = eps <= 0.0 ? rc : Matrix(out.solution.primal[bw].block(d, d, d, d));
  // Back to the original factor order and space.
  Matrix full = vv * tilde * vv.adjoint();
  out.smoothed = hermitian_part(reorder(full, dims.reordered(order), dims.labels()));
  return out;
}

namespace detail {

inline void check_status(const DominanceResult& r, const char* what) {
  if (r.solution.status == sdp::Status::infeasible_suspected)
    throw NumericError(std::string(what) + ": solver reports suspected infeasibility");
}

inline EntropyResult log_result(const DominanceResult& r, bool negate, Certainty c) {
  EntropyResult out;
  out.certainty = c;
  out.smoothed_state = r.smoothed;
  if (r.infeasible) {
    out.value = negate ? -kInf : kInf;
    out.interval = {out.value, out.value};
    out.certainty = Certainty::exact;
    return out;
  }
  double lo = log2_safe(std::max(r.lower, 0.0));
  double hi = log2_safe(r.upper);
  double val = log2_safe(r.solution.primal_value);
  if (negate) {
    out.value = -val;
    out.interval = {-hi, -lo};
  } else {
    out.value = val;
    out.interval = {lo, hi};
  }
  if (r.solution.status != sdp::Status::optimal) out.note = std::string("solver status ") + to_string(r.solution.status);
  return out;
}

}  // namespace detail

inline EntropyResult smooth_d_max(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                                  const EntropyOptions& opt = {}) {
  if (rho.dims().dims() != sigma.dims().dims()) throw DomainError("smooth_d_max: dimension mismatch");
  if (eps < 0) throw DomainError("smooth_d_max: eps must be non-negative");
  if (eps >= 1.0) {
    // The ball then contains operators of arbitrarily small trace.
    EntropyResult r;
    r.value = -kInf;
    r.interval = {-kInf, -kInf};
    r.note = "smoothing radius >= 1";
    return r;
  }
  if (eps == 0.0) {
    EntropyResult r;
    r.value = d_max(rho, sigma);
    return r;
  }
  DominanceResult d = smoothed_dominance(rho, sigma.matrix(), rho.dims().labels(), eps, opt.sdp);
  detail::check_status(d, "smooth_d_max");
  return detail::log_result(d, false, Certainty::certified_interval);
}

// H_min(A|B) with B the conditioning labels; empty B gives -log ||rho||_inf.
inline EntropyResult h_min(const DensityOperator& rho, const std::vector<std::string>& cond,
                           const EntropyOptions& opt = {}) {
  if (cond.empty()) {
    EntropyResult r;
    r.value = -std::log2(lambda_max(rho.matrix()));
    return r;
  }
  std::vector<std::string> a = rho.dims().complement(cond);
  if (a.empty()) throw DomainError("h_min: conditioning system covers the whole state");
  auto da = static_cast<Eigen::Index>(rho.dims().restrict_to(a).total());
  DominanceResult d = smoothed_dominance(rho, identity(da), a, 0.0, opt.sdp);
  detail::check_status(d, "h_min");
  return detail::log_result(d, true, Certainty::certified_interval);
}

inline EntropyResult h_min_smooth(const DensityOperator& rho, const std::vector<std::string>& cond, double eps,
                                  const EntropyOptions& opt = {}) {
  if (eps < 0 || eps >= 1) throw DomainError("h_min_smooth: eps must lie in [0, 1)");
  std::vector<std::string> a = rho.dims().complement(cond);
  if (a.empty()) throw DomainError("h_min_smooth: conditioning system covers the whole state");
  auto da = static_cast<Eigen::Index>(rho.dims().restrict_to(a).total());
  DominanceResult d = smoothed_dominance(rho, identity(da), a, eps, opt.sdp);
  detail::check_status(d, "h_min_smooth");
  return detail::log_result(d, true, Certainty::certified_interval);
}

// ----------------------------------------------------------------- H_0

inline double h0(const DensityOperator& rho) {
  RealVector v = eigvalsh(rho.matrix());
  double lmax = v.size() ? v(v.size() - 1) : 0.0;
  std::size_t rank = 0;
  for (double x : v)
    if (x > tolerance().rank * lmax) ++rank;
  return std::log2(static_cast<double>(rank));
}

// Smallest k whose top-k eigenvalue mass m_k satisfies sqrt(1 - m_k) <= eps.
// The renormalized top-k truncation attains fidelity sqrt(m_k), which is the
// largest fidelity any rank-k operator of trace <= 1 can reach.
inline EntropyResult h0_smooth_spectrum(std::vector<double> spectrum, double eps) {
  if (eps < 0 || eps >= 1) throw DomainError("h0_smooth: eps must lie in [0, 1)");
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  double total = 0.0;
  for (double x : spectrum) total += std::max(x, 0.0);
  double lmax = spectrum.empty() ? 0.0 : spectrum.front();
  std::size_t rank = 0;
  for (double x : spectrum)
    if (x > tolerance().rank * lmax) ++rank;
  double need = total * (1.0 - eps * eps);
  double mass = 0.0;
  std::size_t k = 0;
  while (k < rank) {
    mass += spectrum[k];
    ++k;
    if (mass >= need * (1.0 - 1e-14)) break;
  }
  EntropyResult r;
  r.value = std::log2(static_cast<double>(std::max<std::size_t>(k, 1)));
  r.note = "rank_tol = 1e-10 * lambda_max";
  return r;
}

inline EntropyResult h0_smooth(const DensityOperator& rho, double eps) {
  if (!rho.normalized()) throw DomainError("h0_smooth: rho must be normalized");
  RealVector v = eigvalsh(rho.matrix());
  EntropyResult r = h0_smooth_spectrum(std::vector<double>(v.data(), v.data() + v.size()), eps);
  if (eps > 0) {
    HermitianEig e = eigh(rho.matrix());
    std::size_t k = static_cast<std::size_t>(std::llround(std::exp2(r.value)));
    Matrix t = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    double m = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      Eigen::Index idx = e.values.size() - 1 - static_cast<Eigen::Index>(j);
      t += e.values(idx) * e.vectors.col(idx) * e.vectors.col(idx).adjoint();
      m += e.values(idx);
    }
    r.smoothed_state = t / m;
  }
  return r;
}

// ----------------------------------------------------------- max-information

namespace detail {

inline std::vector<std::string> first_factor(const DensityOperator& rho) {
  if (rho.dims().size() < 2) throw DomainError("max-information: expected a multipartite state");
  return {rho.dims().labels()[0]};
}

}  // namespace detail

// I_max(A;B) = min_sigma D_max(rho_AB || rho_A (x) sigma_B), A the listed labels.
inline EntropyResult i_max(const DensityOperator& rho, const std::vector<std::string>& a,
                           const EntropyOptions& opt = {}) {
  DensityOperator ra = partial_trace(rho, a);
  DominanceResult d = smoothed_dominance(rho, ra.matrix(), a, 0.0, opt.sdp);
  detail::check_status(d, "i_max");
  return detail::log_result(d, false, Certainty::certified_interval);
}

inline EntropyResult i_max(const DensityOperator& rho, const EntropyOptions& opt = {}) {
  return i_max(rho, detail::first_factor(rho), opt);
}

// Ball smoothing with the first marginal pinned to rho_A. Convex, so the value
// is certified; it upper-bounds the own-marginal variant only heuristically.
inline EntropyResult i_max_smooth_fixed_marginal(const DensityOperator& rho, const std::vector<std::string>& a,
                                                 double eps, const EntropyOptions& opt = {}) {
  DensityOperator ra = partial_trace(rho, a);
  DominanceResult d = smoothed_dominance(rho, ra.matrix(), a, eps, opt.sdp);
  detail::check_status(d, "i_max_smooth_fixed_marginal");
  EntropyResult r = detail::log_result(d, false, Certainty::certified_interval);
  r.note = "first marginal fixed at rho_A";
  return r;
}

namespace detail {

inline Matrix mix_with_random(Rng& rng, const Matrix& base, double w) {
  auto d = base.rows();
  Matrix g = ginibre(rng, d, d);
  Matrix m = hermitian_part(g * g.adjoint());
  m /= m.trace().real();
  return (1.0 - w) * base / base.trace().real() + w * m;
}

// Exact I_max of a (possibly subnormalized) smoothed candidate.
inline double i_max_of(const Matrix& m, const SystemDims& dims, const std::vector<std::string>& a,
                       const sdp::Options& opt) {
  double tr = m.trace().real();
  if (tr <= 0) return kInf;
  Matrix clean = hermitian_part(m);
  // Clip tiny negative eigenvalues left by the interior-point iterate.
  HermitianEig e = eigh(clean);
  RealVector v = e.values.cwiseMax(0.0);
  clean = reconstruct(e, v);
  if (clean.trace().real() > 1.0) clean /= clean.trace().real();
  DensityOperator cand(clean, dims);
  DensityOperator ca = partial_trace(cand, a);
  DominanceResult d = smoothed_dominance(cand, ca.matrix(), a, 0.0, opt);
  return log2_safe(d.upper);
}

}  // namespace detail

// Smooth max-information with the smoothed state's own marginal. The joint
// problem is not convex; alternate between the SDP at a frozen marginal and an
// exact re-evaluation, over several starts. Every reported value is attained
// by an explicit member of the ball, so it is an upper bound.
inline EntropyResult i_max_smooth(const DensityOperator& rho, const std::vector<std::string>& a, double eps,
                                  const EntropyOptions& opt = {}, const std::vector<Matrix>& warm_starts = {}) {
  if (eps < 0 || eps >= 1) throw DomainError("i_max_smooth: eps must lie in [0, 1)");
  EntropyResult best = i_max(rho, a, opt);
  best.smoothed_state = rho.matrix();
  best.certainty = Certainty::heuristic_upper_bound;
  best.interval.reset();
  best.value = best.hi();
  if (eps == 0.0) return best;

  Rng rng = make_rng(opt.seed, 0x1a11);
  DensityOperator ra = partial_trace(rho, a);
  std::vector<Matrix> starts;
  starts.push_back(ra.matrix());
  for (const auto& w : warm_starts) starts.push_back(partial_trace(w, rho.dims(), a));
  for (int k = 0; k < opt.restarts; ++k) starts.push_back(detail::mix_with_random(rng, ra.matrix(), 0.3 + 0.1 * k));

  for (const Matrix& start : starts) {
    Matrix tau = start;
    double prev = kInf;
    for (int it = 0; it < opt.max_alternations; ++it) {
      DominanceResult d = smoothed_dominance(rho, tau, a, eps, opt.sdp);
      if (d.solution.status == sdp::Status::infeasible_suspected) break;
      double exact = detail::i_max_of(d.smoothed, rho.dims(), a, opt.sdp);
      if (exact < best.value) {
        best.value = exact;
        best.smoothed_state = d.smoothed;
      }
      if (!(prev - exact > opt.alternation_tol)) break;
      prev = exact;
      tau = partial_trace(d.smoothed, rho.dims(), a);
    }
  }
  best.note = "own-marginal smoothing; alternating minimization over " + std::to_string(starts.size()) + " starts";
  return best;
}

inline EntropyResult i_max_smooth(const DensityOperator& rho, double eps, const EntropyOptions& opt = {}) {
  return i_max_smooth(rho, detail::first_factor(rho), eps, opt);
}

// Carries each optimizer forward as a warm start so the sweep is monotone.
inline std::vector<EntropyResult> i_max_smooth_sweep(const DensityOperator& rho, const std::vector<std::string>& a,
                                                     std::vector<double> eps_values,
                                                     const EntropyOptions& opt = {}) {
  std::sort(eps_values.begin(), eps_values.end());
  std::vector<EntropyResult> out;
  std::vector<Matrix> warm;
  for (double e : eps_values) {
    EntropyResult r = i_max_smooth(rho, a, e, opt, warm);
    if (!out.empty() && out.back().value < r.value) {
      // The previous optimizer also lies in the larger ball.
      r.value = out.back().value;
      r.smoothed_state = out.back().smoothed_state;
    }
    warm.push_back(r.smoothed_state);
    out.push_back(r);
  }
  return out;
}

// Alternative smooth max-information: min over the ball and over product
// states sigma_A (x) tau_B. Alternates exact SDPs in the two factors.
inline EntropyResult i_max_alt(const DensityOperator& rho, const std::vector<std::string>& a, double eps,
                               const EntropyOptions& opt = {}) {
  if (eps < 0 || eps >= 1) throw DomainError("i_max_alt: eps must lie in [0, 1)");
  std::vector<std::string> b = rho.dims().complement(a);
  if (b.empty()) throw DomainError("i_max_alt: second system is empty");
  Rng rng = make_rng(opt.seed, 0xa17);
  DensityOperator ra = partial_trace(rho, a);
  std::vector<Matrix> starts{ra.matrix()};
  for (int k = 0; k < opt.restarts; ++k) starts.push_back(detail::mix_with_random(rng, ra.matrix(), 0.3 + 0.1 * k));

  EntropyResult best;
  best.value = kInf;
  best.certainty = Certainty::heuristic_upper_bound;
  for (const Matrix& start : starts) {
    Matrix sig_a = start;
    double prev = kInf;
    for (int it = 0; it < opt.max_alternations; ++it) {
      DominanceResult d1 = smoothed_dominance(rho, sig_a, a, eps, opt.sdp);
      if (d1.solution.status == sdp::Status::infeasible_suspected) break;
      Matrix tau_b = d1.x / d1.x.trace().real();
      DominanceResult d2 = smoothed_dominance(rho, tau_b, b, eps, opt.sdp);
      if (d2.solution.status == sdp::Status::infeasible_suspected) break;
      double v = log2_safe(d2.upper);
      if (v < best.value) {
        best.value = v;
        best.smoothed_state = d2.smoothed;
      }
      if (!(prev - v > opt.alternation_tol)) break;
      prev = v;
      sig_a = d2.x / d2.x.trace().real();
    }
  }
  best.note = "alternating minimization over product reference states";
  return best;
}

inline EntropyResult i_max_alt(const DensityOperator& rho, double eps, const EntropyOptions& opt = {}) {
  return i_max_alt(rho, detail::first_factor(rho), eps, opt);
}

}  // namespace qrd

#endif  // QRD_ENTROPIES_HPP
