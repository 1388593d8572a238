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

// One-shot converse and achievability bounds on log M*, the minimum number of
// qubits of an entanglement-assisted rate-distortion code.
//
// Systems are identified by label. The purification phi carries the reference
// labels R and the source labels A; the distortion observable acts on R and
// the output labels B. A label shared by both is a reference label.

#ifndef QRD_BOUNDS_HPP
#define QRD_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qrd/distortion.hpp"
#include "qrd/entropies.hpp"
#include "qrd/quantum.hpp"
#include "qrd/rate_distortion.hpp"
#include "qrd/sdp.hpp"

namespace qrd {

enum class Direction { lower_bound_on_log_m, upper_bound_on_log_m };
enum class Validity { valid, conditional };

inline const char* to_string(Direction d) {
  return d == Direction::lower_bound_on_log_m ? "lower_bound_on_logM" : "upper_bound_on_logM";
}

inline const char* to_string(Validity v) { return v == Validity::valid ? "valid" : "conditional"; }

struct BoundResult {
  double value = 0.0;  // qubits (log2 M), or qubits per symbol for rates
  Direction direction = Direction::lower_bound_on_log_m;
  Validity validity = Validity::valid;
  std::string provenance;
  std::vector<std::pair<std::string, double>> params;
  double lo = 0.0, hi = 0.0;  // numerical interval around value
  std::string note;

  double param(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nan("");
  }
};

namespace detail::bounds {

struct Roles {
  std::vector<std::string> r, a, b;
};

inline Roles roles(const SystemDims& phi, const SystemDims& delta) {
  Roles out;
  for (const auto& l : delta.labels()) (phi.has(l) ? out.r : out.b).push_back(l);
  for (const auto& l : phi.labels())
    if (!delta.has(l)) out.a.push_back(l);
  if (out.r.empty()) throw DomainError("bounds: the distortion observable shares no reference label with phi");
  if (out.b.empty()) throw DomainError("bounds: the distortion observable has no output label");
  if (out.a.empty()) throw DomainError("bounds: phi has no source label");
  for (const auto& l : out.r)
    if (phi.dim_of(l) != delta.dim_of(l)) throw DomainError("bounds: reference dimension mismatch on '" + l + "'");
  return out;
}

// omega in the factor order of the distortion observable.
inline DensityOperator aligned(const DensityOperator& omega, const DistortionObservable& delta) {
  for (const auto& l : delta.dims().labels())
    if (!omega.dims().has(l)) throw DomainError("bounds: channel output lacks label '" + l + "'");
  if (omega.dims().size() != delta.dims().size()) throw DomainError("bounds: channel output has extra systems");
  return omega.reordered(delta.dims().labels());
}

inline double dim_of(const SystemDims& dims, const std::vector<std::string>& labels) {
  double d = 1.0;
  for (const auto& l : labels) d *= static_cast<double>(dims.dim_of(l));
  return d;
}

inline void check_eps(double eps, const char* who) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError(std::string(who) + ": eps must lie in (0, 1)");
}

inline double log2_or_inf(double x) { return x > 0 ? std::log2(x) : -kInf; }

}  // namespace detail::bounds

// ------------------------------------------------------------ converses

// (1/2)[-log lambda_max(K) - D_H^eps(phi || sigma)] with
// K = Tr_R[(sigma_R (x) I) Pi_{<=D}]. Every sigma gives a valid bound.
inline BoundResult converse_alt(const PureState& phi, const DistortionObservable& delta, double d, double eps,
                                const DensityOperator& sigma) {
  detail::bounds::check_eps(eps, "converse_alt");
  if (sigma.dims() != phi.dims()) {
    if (sigma.dims().size() != phi.dims().size()) throw DomainError("converse_alt: sigma must live on phi's systems");
  }
  if (!sigma.normalized()) throw DomainError("converse_alt: sigma must have unit trace");
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  DensityOperator sig = sigma.reordered(phi.dims().labels());
  if (sig.dims() != phi.dims()) throw DomainError("converse_alt: sigma dims differ from phi dims");

  Matrix sigma_r = partial_trace(sig.matrix(), sig.dims(), roles.r);
  Matrix keep = excess_projector(delta, d).complement();
  Matrix weighted = embed_operator(sigma_r, delta.dims(), roles.r) * keep;
  double lmax = std::max(lambda_max(hermitian_part(partial_trace(weighted, delta.dims(), roles.b))), 0.0);

  NeymanPearson np = neyman_pearson(phi.density(), sig, eps);
  double dh = np.beta > 0 ? -std::log2(np.beta) : kInf;

  BoundResult out;
  out.provenance = "alternative hypothesis-testing converse";
  out.direction = Direction::lower_bound_on_log_m;
  out.validity = Validity::valid;
  out.params = {{"D", d}, {"eps", eps}, {"lambda_max", lmax}, {"beta", np.beta}};
  if (lmax <= 0.0) {
    out.value = np.beta > 0 ? kInf : -kInf;
    out.note = "no product state reaches the distortion threshold";
  } else if (std::isinf(dh)) {
    out.value = -kInf;
    out.note = "D_H is +inf; bound vacuous";
  } else {
    out.value = 0.5 * (-std::log2(lmax) - dh);
  }
  out.lo = out.hi = out.value;
  return out;
}

// max over mixed psi_B of beta_{1-eps'}(omega || phi_R (x) psi_B), two routes.
struct MaxBeta {
  double sdp_lo = 0.0, sdp_hi = 0.0;  // certified interval from the joint SDP
  Matrix psi;                         // maximizer from the SDP
  double alternating = 0.0;           // value attained by supergradient ascent
};

namespace detail::bounds {

inline Matrix reference_product(const Matrix& phi_r, const Matrix& psi, const DistortionObservable& delta,
                                const Roles& roles) {
  std::vector<std::string> order = roles.r;
  order.insert(order.end(), roles.b.begin(), roles.b.end());
  return reorder(kron(phi_r, psi), delta.dims().reordered(order), delta.dims().labels());
}

// Tr_R[(phi_R (x) I) X], the adjoint of psi -> phi_R (x) psi.
inline Matrix reference_adjoint(const Matrix& phi_r, const Matrix& x, const DistortionObservable& delta,
                                const Roles& roles) {
  Matrix w = embed_operator(phi_r, delta.dims(), roles.r) * x;
  return hermitian_part(partial_trace(w, delta.dims(), roles.b));
}

}  // namespace detail::bounds

// beta_e(rho||sigma) = max{mu(1-e) - Tr Y : mu rho <= sigma + Y, Y >= 0, mu >= 0}
// is jointly concave in sigma, so the maximization over psi is one SDP.
inline MaxBeta max_beta_over_output(const DensityOperator& omega, const Matrix& phi_r, const DistortionObservable& delta,
                                    const std::vector<std::string>& r_labels, double power,
                                    const sdp::Options& opt = {}) {
  detail::bounds::Roles roles;
  roles.r = r_labels;
  roles.b = delta.dims().complement(r_labels);
  auto n = static_cast<Eigen::Index>(delta.dims().total());
  auto db = static_cast<Eigen::Index>(detail::bounds::dim_of(delta.dims(), roles.b));
  MaxBeta out;

  sdp::SdpProblem p;
  std::size_t mu = p.add_block(1), y = p.add_block(static_cast<std::size_t>(n));
  std::size_t psi = p.add_block(static_cast<std::size_t>(db)), s = p.add_block(static_cast<std::size_t>(n));
  p.set_objective(mu, Matrix::Constant(1, 1, -power));
  p.set_objective(y, identity(n));
  const Matrix& w = omega.matrix();
  p.add_linear_equality({{psi, [&](const Matrix& e) { return detail::bounds::reference_adjoint(phi_r, e, delta, roles); }},
                         {y, [](const Matrix& e) { return e; }},
                         {mu, [&w](const Matrix& e) { return Matrix::Constant(1, 1, -trace_product(w, e)); }},
                         {s, [](const Matrix& e) { return Matrix(-e); }}},
                        Matrix::Zero(n, n));
  p.add_constraint({{psi, identity(db)}}, 1.0);
  sdp::SdpSolution sol = sdp::solve(p, opt);
  out.sdp_lo = std::max(-sol.primal_value, 0.0);
  out.sdp_hi = std::max(-sol.dual_value, out.sdp_lo);
  out.psi = hermitian_part(sol.primal[psi]);

  // Supergradient ascent: the optimal test Lambda at psi gives the supergradient
  // Tr_R[(phi_R (x) I) Lambda]; step toward its top eigenvector.
  Matrix cur = identity(db) / static_cast<double>(db);
  double best = 0.0;
  for (int k = 0; k < 300; ++k) {
    DensityOperator sig(detail::bounds::reference_product(phi_r, cur, delta, roles), delta.dims());
    NeymanPearson np = neyman_pearson(omega, sig, 1.0 - power);
    best = std::max(best, np.beta);
    HermitianEig e = eigh(detail::bounds::reference_adjoint(phi_r, np.test, delta, roles));
    Vector top = e.vectors.col(e.values.size() - 1);
    double gamma = 2.0 / (k + 3.0);
    cur = hermitian_part((1 - gamma) * cur + gamma * top * top.adjoint());
  }
  out.alternating = best;
  return out;
}

// (1/2)[min_psi D_H^{1-eps'}(omega || phi_R (x) psi) - log(1/eps'')] for one
// channel, eps'' = eps'(eps'/2 - eps). Conditional: the bound proper needs
// the minimum over all channels meeting the excess-distortion constraint.
inline BoundResult converse_simple_inner(const PureState& phi, const DistortionObservable& delta, double d, double eps,
                                         double eps_prime, const QuantumChannel& channel,
                                         const sdp::Options& opt = {}) {
  detail::bounds::check_eps(eps, "converse_simple_inner");
  if (!(eps_prime >= 2 * eps && eps_prime <= 1.0))
    throw DomainError("converse_simple_inner: eps' must satisfy 2 eps <= eps' <= 1");
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  DensityOperator omega = detail::bounds::aligned(extend_to_reference(channel, phi), delta);
  double excess = excess_probability(omega, excess_projector(delta, d));
  if (excess > eps + 1e-12) throw DomainError("converse_simple_inner: channel violates Tr(Pi_{<=D} omega) >= 1 - eps");

  BoundResult out;
  out.provenance = "hypothesis-testing converse (one channel)";
  out.direction = Direction::lower_bound_on_log_m;
  out.validity = Validity::conditional;
  double eps2 = eps_prime * (eps_prime / 2 - eps);
  out.params = {{"D", d}, {"eps", eps}, {"eps_prime", eps_prime}, {"eps_pp", eps2}, {"excess", excess}};
  out.note = "inner value for one channel; the bound requires the minimum over all admissible channels";
  if (eps2 <= 0.0) {
    out.value = out.lo = out.hi = -kInf;
    out.note = "eps' = 2 eps makes eps'' = 0; bound vacuous";
    return out;
  }
  Matrix phi_r = partial_trace(phi.projector(), phi.dims(), roles.r);
  MaxBeta mb = max_beta_over_output(omega, phi_r, delta, roles.r, eps_prime, opt);
  double beta_lo = std::max(mb.sdp_lo, mb.alternating);
  auto val = [&](double beta) { return 0.5 * (-detail::bounds::log2_or_inf(beta) + std::log2(eps2)); };
  out.value = val(beta_lo);
  out.lo = val(mb.sdp_hi);
  out.hi = val(beta_lo);
  out.params.push_back({"beta_sdp", mb.sdp_lo});
  out.params.push_back({"beta_alternating", mb.alternating});
  return out;
}

// Classical beta_eps(p || q) from the likelihood-ratio order.
inline double classical_beta(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  if (p.size() != q.size()) throw DomainError("classical_beta: length mismatch");
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Descending p/q with q = 0 first, compared without division.
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] * q[b] > p[b] * q[a]; });
  double need = 1.0 - eps, beta = 0.0;
  for (std::size_t i : idx) {
    if (need <= 0.0) break;
    if (p[i] <= 0.0) continue;
    double take = std::min(1.0, need / p[i]);
    beta += take * q[i];
    need -= take * p[i];
  }
  return beta;
}

// log beta_eps(p || q) - log max_y sum_x q(x) 1{d(x, y) <= D}.
inline BoundResult classical_kv_converse(const std::vector<double>& px, const RealMatrix& dist, double d, double eps,
                                         const std::vector<double>& q) {
  detail::bounds::check_eps(eps, "classical_kv_converse");
  auto valid = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
      if (!(x >= 0.0)) return false;
      s += x;
    }
    return std::abs(s - 1.0) <= 1e-9;
  };
  if (!valid(px) || !valid(q)) throw DomainError("classical_kv_converse: inputs must be probability vectors");
  if (static_cast<Eigen::Index>(px.size()) != dist.rows() || q.size() != px.size())
    throw DomainError("classical_kv_converse: distortion matrix rows must match the alphabet");
  if (dist.cols() == 0) throw DomainError("classical_kv_converse: empty reconstruction alphabet");
  double ball = 0.0;
  for (Eigen::Index y = 0; y < dist.cols(); ++y) {
    double m = 0.0;
    for (Eigen::Index x = 0; x < dist.rows(); ++x) {
      double v = dist(x, y);
      if (v <= d || at_threshold(v, d)) m += q[static_cast<std::size_t>(x)];
    }
    ball = std::max(ball, m);
  }
  if (ball <= 0.0) throw DomainError("classical_kv_converse: no reconstruction symbol covers any source symbol");
  double beta = classical_beta(px, q, eps);
  BoundResult out;
  out.provenance = "classical ratio converse";
  out.direction = Direction::lower_bound_on_log_m;
  out.validity = Validity::valid;
  out.value = out.lo = out.hi = detail::bounds::log2_or_inf(beta) - std::log2(ball);
  out.params = {{"D", d}, {"eps", eps}, {"beta", beta}, {"ball_mass", ball}};
  return out;
}

// --------------------------------------------------------- achievability

// 2 log(5/eps) + 4 + log log(|B| + (5/eps)^2), inner argument clamped at 2.
inline double chi1(double eps, double dim_b, bool* clamped = nullptr) {
  detail::bounds::check_eps(eps, "chi1");
  double arg = dim_b + std::pow(5.0 / eps, 2);
  if (clamped) *clamped = arg < 2.0;
  return 2 * std::log2(5.0 / eps) + 4 + std::log2(std::log2(std::max(arg, 2.0)));
}

// (1/2) log[(1/eps' + 1/(1 - sqrt(2 eps'))) / (eps'/2 - eps)].
inline double chi2(double eps, double eps_prime) {
  detail::bounds::check_eps(eps, "chi2");
  double r = std::sqrt(2 * eps_prime);
  if (!(r < 1.0)) throw DomainError("chi2: sqrt(2 eps') must be below 1");
  if (!(eps_prime / 2 - eps > 0)) throw DomainError("chi2: eps' must exceed 2 eps");
  return 0.5 * std::log2((1 / eps_prime + 1 / (1 - r)) / (eps_prime / 2 - eps));
}

// (1/2) I_max^{eps/5}(B;R)_omega + chi1 for a channel with excess probability
// at most eps/5. I_max^{eps/5} comes from an explicit smoothed state, so the
// value is a valid upper bound on log M* even though the smoothing is heuristic.
inline BoundResult achievability_embezzling(const PureState& phi, const DistortionObservable& delta, double d,
                                            const QuantumChannel& channel, double eps,
                                            const EntropyOptions& opt = {}) {
  detail::bounds::check_eps(eps, "achievability_embezzling");
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  DensityOperator omega = detail::bounds::aligned(extend_to_reference(channel, phi), delta);
  double excess = excess_probability(omega, excess_projector(delta, d));
  if (excess > eps / 5 + 1e-12) throw DomainError("achievability_embezzling: excess probability exceeds eps/5");
  EntropyResult im = i_max_smooth(omega, roles.b, eps / 5, opt);
  double db = detail::bounds::dim_of(delta.dims(), roles.b);
  bool clamped = false;
  double c1 = chi1(eps, db, &clamped);
  BoundResult out;
  out.provenance = "embezzling-state channel simulation";
  out.direction = Direction::upper_bound_on_log_m;
  out.validity = Validity::valid;
  out.value = 0.5 * im.value + c1;
  out.lo = 0.5 * im.lo() + c1;
  out.hi = 0.5 * im.hi() + c1;
  out.params = {{"D", d}, {"eps", eps}, {"imax", im.value}, {"chi1", c1}, {"excess", excess}};
  out.note = std::string("smoothing: ") + to_string(im.certainty) + (clamped ? "; log log argument clamped" : "");
  return out;
}

struct MesParameters {
  double delta = 0, delta_prime = 0, eps = 0;
};

// delta' = delta + sqrt(4 sqrt(delta) - 4 delta), eps = 2 sqrt(5 delta') + 2 sqrt(delta).
inline MesParameters mes_parameters(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("mes_parameters: delta must lie in (0, 1)");
  MesParameters m;
  m.delta = delta;
  m.delta_prime = delta + std::sqrt(4 * std::sqrt(delta) - 4 * delta);
  m.eps = 2 * std::sqrt(5 * m.delta_prime) + 2 * std::sqrt(delta);
  return m;
}

// (1/2)[H_0^delta(B) - H_min^delta(B|R)] + log(1/delta'). The code error is
// eps(delta); the channel's own excess probability eps1 must stay below it.
// H_min enters through its certified lower end.
inline BoundResult achievability_mes(const PureState& phi, const DistortionObservable& delta, double d,
                                     const QuantumChannel& channel, double delta_param,
                                     const EntropyOptions& opt = {}) {
  MesParameters mp = mes_parameters(delta_param);
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  DensityOperator omega = detail::bounds::aligned(extend_to_reference(channel, phi), delta);
  double eps1 = excess_probability(omega, excess_projector(delta, d));
  if (!(eps1 < mp.eps)) throw DomainError("achievability_mes: channel excess probability is not below eps(delta)");
  EntropyResult h0 = h0_smooth(partial_trace(omega, roles.b), delta_param);
  EntropyResult hmin = h_min_smooth(omega, roles.r, delta_param, opt);
  BoundResult out;
  out.provenance = "maximally-entangled channel simulation";
  out.direction = Direction::upper_bound_on_log_m;
  out.validity = Validity::valid;
  double tail = std::log2(1 / mp.delta_prime);
  out.value = 0.5 * (h0.value - hmin.lo()) + tail;
  out.lo = 0.5 * (h0.value - hmin.hi()) + tail;
  out.hi = out.value;
  out.params = {{"D", d},         {"delta", delta_param}, {"delta_prime", mp.delta_prime},
                {"eps", mp.eps},  {"eps1", eps1},         {"h0", h0.value},
                {"hmin", hmin.value}};
  return out;
}

// ------------------------------------------------------------- sandwich

struct Sandwich {
  BoundResult upper, lower;
  double imax_upper = kInf;  // I_max^{eps/5} at the upper minimizer
  double imax_lower = kInf;  // I_max^{2 sqrt(2 eps')} at the lower minimizer
  long upper_index = -1, lower_index = -1;  // position in the family, -1 if none admissible
};

// Both sides minimized over a supplied channel family. The lower side is
// conditional unless the family is known to contain the true minimizer.
inline Sandwich theorem10_sandwich(const PureState& phi, const DistortionObservable& delta, double d, double eps,
                                   double eps_prime, const std::vector<QuantumChannel>& family,
                                   const EntropyOptions& opt = {}) {
  detail::bounds::check_eps(eps, "sandwich");
  if (!(eps_prime >= 2 * eps)) throw DomainError("sandwich: eps' must be at least 2 eps");
  double r = std::sqrt(2 * eps_prime);
  if (!(r < 1.0)) throw DomainError("sandwich: sqrt(2 eps') must be below 1");
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  double db = detail::bounds::dim_of(delta.dims(), roles.b);
  double c1 = chi1(eps, db);
  double c2 = eps_prime / 2 - eps > 0 ? chi2(eps, eps_prime) : kInf;
  double lower_radius = 2 * r;
  ExcessProjector proj = excess_projector(delta, d);

  Sandwich s;
  s.upper.provenance = "max-information sandwich (upper)";
  s.upper.direction = Direction::upper_bound_on_log_m;
  s.upper.validity = Validity::valid;
  s.upper.value = kInf;
  s.lower.provenance = "max-information sandwich (lower)";
  s.lower.direction = Direction::lower_bound_on_log_m;
  s.lower.validity = Validity::conditional;
  s.lower.value = kInf;
  for (std::size_t i = 0; i < family.size(); ++i) {
    DensityOperator omega = detail::bounds::aligned(extend_to_reference(family[i], phi), delta);
    double excess = excess_probability(omega, proj);
    if (excess <= eps / 5 + 1e-12) {
      double im = i_max_smooth(omega, roles.b, eps / 5, opt).value;
      if (0.5 * im + c1 < s.upper.value) {
        s.upper.value = 0.5 * im + c1;
        s.imax_upper = im;
        s.upper_index = static_cast<long>(i);
      }
    }
    if (excess <= eps + 1e-12) {
      double im = lower_radius < 1.0 ? i_max_smooth(omega, roles.b, lower_radius, opt).value : -kInf;
      if (0.5 * im - c2 < s.lower.value) {
        s.lower.value = 0.5 * im - c2;
        s.imax_lower = im;
        s.lower_index = static_cast<long>(i);
      }
    }
  }
  s.upper.lo = s.upper.hi = s.upper.value;
  s.lower.lo = s.lower.hi = s.lower.value;
  s.upper.params = {{"D", d}, {"eps", eps}, {"chi1", c1}};
  s.lower.params = {{"D", d}, {"eps", eps}, {"eps_prime", eps_prime}, {"chi2", c2}};
  if (s.upper_index < 0) s.upper.note = "no channel in the family meets excess probability eps/5";
  s.lower.note = "minimum over the supplied family only; smoothed max-information from an explicit ball member";
  if (lower_radius >= 1.0) s.lower.note += "; smoothing radius 2 sqrt(2 eps') >= 1 makes the term vacuous";
  if (s.lower_index < 0) s.lower.note = "no channel in the family meets excess probability eps";
  return s;
}

// ------------------------------------------------------ i.i.d. converse

enum class CorrectionVariant { printed, conservative };

// printed:      (1/2n)[5 sqrt(2 eps') n log|R| - 3 h2(sqrt(2 eps')) + log(eps'/2 - eps)]
// conservative: (1/2n)[5 sqrt(2 eps') n log|R| + 3 h2(sqrt(2 eps')) - log(eps'/2 - eps)]
inline double f_correction(double eps, double eps_prime, std::size_t n, double dim_r,
                           CorrectionVariant v = CorrectionVariant::printed) {
  if (n == 0) throw DomainError("f_correction: n must be positive");
  detail::bounds::check_eps(eps, "f_correction");
  double r = std::sqrt(2 * eps_prime);
  if (!(r < 1.0)) throw DomainError("f_correction: sqrt(2 eps') must be below 1");
  if (!(eps_prime / 2 - eps > 0)) throw DomainError("f_correction: eps' must exceed 2 eps");
  double nn = static_cast<double>(n);
  double main = 5 * r * nn * std::log2(dim_r);
  double h = 3 * h2(r), l = std::log2(eps_prime / 2 - eps);
  double inner = v == CorrectionVariant::printed ? main - h + l : main + h - l;
  return inner / (2 * nn);
}

// R(D + d_max eps) - f(eps, eps', n) per symbol, R taken at its certified lower end.
inline BoundResult iid_converse_rate(const PureState& phi, const DistortionObservable& delta, std::size_t n, double d,
                                     double eps, double eps_prime,
                                     CorrectionVariant variant = CorrectionVariant::printed,
                                     const RateDistortionOptions& rd = {}) {
  auto roles = detail::bounds::roles(phi.dims(), delta.dims());
  double dim_r = detail::bounds::dim_of(delta.dims(), roles.r);
  double f = f_correction(eps, eps_prime, n, dim_r, variant);
  double shifted = d + delta.d_max() * eps;
  RateDistortionPoint pt = ea_qrd_function(phi, delta, shifted, rd);
  BoundResult out;
  out.provenance = "i.i.d. converse chain";
  out.direction = Direction::lower_bound_on_log_m;
  out.validity = variant == CorrectionVariant::conservative ? Validity::valid : Validity::conditional;
  out.value = pt.lower - f;
  out.lo = pt.lower - f;
  out.hi = pt.upper - f;
  out.params = {{"D", d}, {"eps", eps}, {"eps_prime", eps_prime}, {"n", static_cast<double>(n)},
                {"f", f},  {"rate_lower", pt.lower}, {"rate_upper", pt.upper}};
  out.note = std::string("rate status ") + to_string(pt.status) + "; correction " +
             (variant == CorrectionVariant::printed ? "as printed (sign of the h2 and log terms unverified)"
                                                    : "conservative signs from the continuity bound");
  return out;
}

}  // namespace qrd

#endif  // QRD_BOUNDS_HPP
