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

// Entanglement-assisted rate-distortion function
//   R(D) = (1/2) min { I(R;B)_omega : Tr(Delta omega) <= D },
// omega = (id (x) N)(phi), over channels N.
//
// The distortion constraint is dualized. For a multiplier lambda the
// Lagrangian (1/2) I + lambda Tr(Delta omega) is minimized over the Choi
// spectrahedron by damped Newton steps on its affine hull, falling back to
// Frank-Wolfe with exact line search when the minimizer sits on the boundary.
// A call to the interior-point linear oracle at the final iterate yields a
// certified lower bound on the inner minimum, hence on R(D). The multiplier is
// bisected until the minimizer meets the constraint; feasible iterates give
// the upper end of the interval.

#ifndef QRD_RATE_DISTORTION_HPP
#define QRD_RATE_DISTORTION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qrd/distortion.hpp"
#include "qrd/entropies.hpp"
#include "qrd/quantum.hpp"
#include "qrd/sdp.hpp"

namespace qrd {

struct RateDistortionOptions {
  int max_newton_iterations = 200;
  int max_fw_iterations = 400;
  double fw_tolerance = 1e-9;      // inner certified gap
  int max_bisections = 60;
  double tolerance = 1e-7;         // target width of [lower, upper]
  double lambda_cap = 1e6;
  std::size_t max_dim = 4;         // per-system guard on A and B
  sdp::Options oracle{1e-9, 1e-9, 120, 256};
};

enum class RdStatus { optimal, zero_rate, infeasible, not_converged };

inline const char* to_string(RdStatus s) {
  switch (s) {
    case RdStatus::optimal: return "optimal";
    case RdStatus::zero_rate: return "zero_rate";
    case RdStatus::infeasible: return "infeasible";
    case RdStatus::not_converged: return "not_converged";
  }
  return "unknown";
}

struct RateDistortionPoint {
  double d = 0.0;
  double rate = 0.0;        // attained by `channel`, in qubits per symbol
  double lower = 0.0;       // certified
  double upper = 0.0;
  double lambda = 0.0;      // final multiplier
  double distortion = 0.0;  // Tr(Delta omega) of the reported channel
  double min_distortion = 0.0;
  RdStatus status = RdStatus::optimal;
  int fw_iterations = 0;
  int oracle_calls = 0;
  QuantumChannel channel;
  std::string note;

  double width() const { return upper - lower; }
};

namespace detail::rd {

inline Matrix log2m(const Matrix& m) {
  return apply_function(m, [](double x) { return std::log2(std::max(x, 1e-300)); });
}

inline double entropy(const Matrix& m) { return entropy_of_spectrum(eigvalsh(m)); }

// Frechet derivative of log2 at a positive matrix with eigensystem e, in direction x.
inline Matrix log2_derivative(const HermitianEig& e, const Matrix& x) {
  const Eigen::Index n = e.values.size();
  Matrix y = e.vectors.adjoint() * x * e.vectors;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      double a = e.values(i), b = e.values(k);
      double q = std::abs(a - b) > 1e-8 * std::max(a, b) ? std::log(a / b) / (a - b) : 2.0 / (a + b);
      y(i, k) *= q / std::log(2.0);
    }
  return e.vectors * y * e.vectors.adjoint();
}

// Data of one instance compressed to the support of rho_R. Variables are
// J on R'(x)B with Tr_B J = I_{R'}, and omega = (sqrt(p) (x) I) J (sqrt(p) (x) I).
class Instance {
 public:
  Instance(const PureState& phi, const DistortionObservable& delta) {
    const SystemDims& pd = phi.dims();
    if (pd.size() != 2) throw DomainError("ea_qrd_function: purification must have two factors (R, A)");
    const SystemDims& dd = delta.dims();
    if (dd.size() != 2) throw DomainError("ea_qrd_function: distortion observable must act on (R, B)");
    d_r_full_ = pd.dims()[0];
    d_a_ = pd.dims()[1];
    d_b_ = dd.dims()[1];
    if (dd.dims()[0] != d_r_full_) throw DomainError("ea_qrd_function: reference dimensions differ");
    a_label_ = pd.labels()[1];
    b_label_ = dd.labels()[1];
    Matrix rho_r = partial_trace(phi.projector(), pd.dims(), {true, false});
    HermitianEig e = eigh(rho_r);
    double cut = 1e-12 * std::max(1.0, e.max_abs());
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < e.values.size(); ++k)
      if (e.values(k) > cut) support.push_back(k);
    r_ = static_cast<Eigen::Index>(support.size());
    v_ = Matrix(static_cast<Eigen::Index>(d_r_full_), r_);
    p_ = RealVector(r_);
    for (Eigen::Index j = 0; j < r_; ++j) {
      v_.col(j) = e.vectors.col(support[j]);
      p_(j) = e.values(support[j]);
    }
    // Schmidt partners a_k = (<v_k| (x) I)|phi> / sqrt(p_k).
    auto da = static_cast<Eigen::Index>(d_a_);
    u_ = Matrix(da, r_);
    for (Eigen::Index j = 0; j < r_; ++j) {
      Vector a = Vector::Zero(da);
      for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d_r_full_); ++i)
        a += std::conj(v_(i, j)) * phi.vector().segment(i * da, da);
      u_.col(j) = a / std::sqrt(p_(j));
    }
    Matrix vb = kron(v_, identity(db()));
    Matrix delta_c = vb.adjoint() * delta.op() * vb;
    sqrt_p_ = kron(Matrix(p_.cwiseSqrt().cast<cplx>().asDiagonal()), identity(db()));
    delta_ = hermitian_part(delta_c);
    weighted_delta_ = hermitian_part(sqrt_p_ * delta_ * sqrt_p_);
    s_r_ = entropy_of_spectrum(p_);
    build_tangent();
  }

  Eigen::Index r() const { return r_; }
  Eigen::Index db() const { return static_cast<Eigen::Index>(d_b_); }
  std::size_t d_a() const { return d_a_; }
  std::size_t d_b() const { return d_b_; }
  std::vector<std::size_t> dims() const { return {static_cast<std::size_t>(r_), d_b_}; }

  Matrix omega(const Matrix& j) const { return sqrt_p_ * j * sqrt_p_; }
  Matrix omega_b(const Matrix& w) const { return partial_trace(w, dims(), {false, true}); }

  double distortion(const Matrix& j) const { return trace_product(weighted_delta_, j); }
  const Matrix& weighted_delta() const { return weighted_delta_; }
  const Matrix& weight() const { return sqrt_p_; }
  // Orthonormal Hermitian directions X with Tr_B X = 0.
  const std::vector<Matrix>& tangent() const { return tangent_; }

  // (1/2) I(R;B) in bits.
  double rate(const Matrix& j) const {
    Matrix w = omega(j);
    return 0.5 * (s_r_ + entropy(omega_b(w)) - entropy(w));
  }

  Matrix gradient(const Matrix& j, double lambda) const {
    Matrix w = omega(j);
    Matrix g = 0.5 * (log2m(w) - kron(identity(r_), log2m(omega_b(w)))) + lambda * delta_;
    return hermitian_part(sqrt_p_ * g * sqrt_p_);
  }

  struct Oracle {
    Matrix s;
    double lower;  // certified lower bound on min <G, S>
  };

  // min <G, S> s.t. Tr_B S = I, S >= 0. The lower bound comes from a dual
  // point Y with G - Y (x) I >= 0 repaired by an eigenvalue shift.
  Oracle oracle(const Matrix& g, const sdp::Options& opt) const {
    sdp::SdpProblem p;
    std::size_t b = p.add_block(static_cast<std::size_t>(r_ * db()));
    p.set_objective(b, g);
    Eigen::Index nb = db();
    p.add_linear_equality({{b, [nb](const Matrix& e) { return kron(e, identity(nb)); }}}, identity(r_));
    sdp::SdpSolution sol = sdp::solve(p, opt);
    Oracle o;
    o.s = hermitian_part(sol.primal[0]);
    Matrix y = partial_trace(Matrix(g - sol.slack[0]), dims(), {true, false}) / static_cast<double>(d_b_);
    y = hermitian_part(y);
    double m = lambda_min(g - kron(y, identity(nb)));
    o.lower = y.trace().real() + std::min(m, 0.0) * static_cast<double>(r_);
    return o;
  }

  // Smallest distortion over replacement channels rho_R (x) sigma_B.
  double replacement_distortion(Vector* best_b) const {
    Matrix k = partial_trace(Matrix(sqrt_p_ * delta_ * sqrt_p_), dims(), {false, true});
    HermitianEig e = eigh(hermitian_part(k));
    if (best_b) *best_b = e.vectors.col(0);
    return e.values(0);
  }

  Matrix replacement(const Vector& b) const { return kron(identity(r_), Matrix(b * b.adjoint())); }

  // Choi matrix on A (x) B of a channel realizing J on the Schmidt support.
  QuantumChannel channel(const Matrix& j) const {
    Matrix ubar = u_.conjugate();
    Matrix ub = kron(ubar, identity(db()));
    auto da = static_cast<Eigen::Index>(d_a_);
    Matrix choi = ub * j * ub.adjoint();
    Matrix perp = identity(da) - ubar * ubar.adjoint();
    if (perp.norm() > 1e-12) choi += kron(perp, identity(db()) / static_cast<double>(d_b_));
    return QuantumChannel::from_choi(hermitian_part(choi), SystemDims::single(a_label_, d_a_),
                                     SystemDims::single(b_label_, d_b_));
  }

 private:
  void build_tangent() {
    Eigen::Index n = r_ * db();
    std::vector<Matrix> full = sdp::hermitian_basis(n), small = sdp::hermitian_basis(r_);
    RealMatrix c(static_cast<Eigen::Index>(full.size()), static_cast<Eigen::Index>(small.size()));
    for (std::size_t k = 0; k < full.size(); ++k) {
      Matrix t = partial_trace(full[k], dims(), {true, false});
      for (std::size_t a = 0; a < small.size(); ++a)
        c(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = trace_product(small[a], t);
    }
    Eigen::HouseholderQR<RealMatrix> qr(c);
    RealMatrix q = qr.householderQ();
    for (Eigen::Index col = c.cols(); col < c.rows(); ++col) {
      Matrix x = Matrix::Zero(n, n);
      for (std::size_t k = 0; k < full.size(); ++k) x += q(static_cast<Eigen::Index>(k), col) * full[k];
      tangent_.push_back(x);
    }
  }

  std::size_t d_r_full_ = 0, d_a_ = 0, d_b_ = 0;
  std::string a_label_, b_label_;
  Eigen::Index r_ = 0;
  Matrix v_, u_;
  RealVector p_;
  Matrix sqrt_p_, delta_, weighted_delta_;
  double s_r_ = 0.0;
  std::vector<Matrix> tangent_;
};

struct Inner {
  Matrix j;
  double rate = 0.0;
  double distortion = 0.0;
  double lagrangian_lower = -kInf;  // certified lower bound on min_J L_lambda
  int iterations = 0;
  int oracle_calls = 0;
};

struct NewtonResult {
  Matrix j;              // last centered point
  bool centered = false;  // some barrier stage finished
  bool converged = false; // the final stage finished
  int iterations = 0;
};

// Damped Newton on the affine slice Tr_B J = I for L + tau (-ln det J), with
// tau decreased geometrically. The barrier keeps the Hessian definite at
// product states and lets iterates approach minimizers on the boundary.
inline NewtonResult newton_lagrangian(const Instance& inst, double lambda, Matrix j, int max_iter) {
  NewtonResult out;
  out.j = j;
  const std::vector<Matrix>& t = inst.tangent();
  const auto m = static_cast<Eigen::Index>(t.size());
  if (m == 0) {
    out.centered = out.converged = true;
    return out;
  }
  const Matrix& w = inst.weight();
  const Matrix id_r = identity(inst.r());
  auto value = [&](const Matrix& x, double tau) {
    double ld = eigvalsh(x).array().log().sum();
    return inst.rate(x) + lambda * inst.distortion(x) - tau * ld;
  };
  const double tau_min = 1e-10;
  for (double tau = 1e-1; tau >= tau_min * 0.5; tau *= 0.1) {
    double f = value(j, tau);
    bool done = false;
    while (out.iterations < max_iter && !done) {
      ++out.iterations;
      Matrix om = inst.omega(j);
      HermitianEig eo = eigh(om), eb = eigh(inst.omega_b(om));
      if (eo.min() <= 0.0 || eb.min() <= 0.0) return out;
      Matrix j_inv = pinv_hermitian(j, 0.0);
      Matrix g = inst.gradient(j, lambda) - tau * j_inv;
      RealVector gr(m);
      std::vector<Matrix> hx(t.size());
      for (Eigen::Index k = 0; k < m; ++k) {
        const Matrix& x = t[static_cast<std::size_t>(k)];
        gr(k) = trace_product(x, g);
        Matrix wx = w * x * w;
        Matrix b = log2_derivative(eb, partial_trace(wx, inst.dims(), {false, true}));
        hx[static_cast<std::size_t>(k)] =
            0.5 * w * (log2_derivative(eo, wx) - kron(id_r, b)) * w + tau * j_inv * x * j_inv;
      }
      RealMatrix h(m, m);
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = a; b < m; ++b)
          h(a, b) = h(b, a) = 0.5 * (trace_product(t[static_cast<std::size_t>(a)], hx[static_cast<std::size_t>(b)]) +
                                     trace_product(t[static_cast<std::size_t>(b)], hx[static_cast<std::size_t>(a)]));
      RealVector step;
      double dec = -1.0;
      double mu = 0.0;
      for (int tries = 0; tries < 8 && !(dec > 0.0); ++tries) {
        Eigen::LDLT<RealMatrix> ldlt(h + mu * RealMatrix::Identity(m, m));
        step = ldlt.solve(-gr);
        dec = ldlt.info() == Eigen::Success ? -gr.dot(step) : -1.0;
        if (!std::isfinite(dec)) dec = -1.0;
        if (dec == 0.0) break;
        mu = std::max(10.0 * mu, 1e-12 * std::max(1.0, h.diagonal().maxCoeff()));
      }
      if (dec < 0.0) return out;
      if (dec <= 1e-14 * std::max(1.0, std::abs(f))) {
        done = true;
        break;
      }
      Matrix dir = Matrix::Zero(j.rows(), j.cols());
      for (Eigen::Index k = 0; k < m; ++k) dir += step(k) * t[static_cast<std::size_t>(k)];
      bool moved = false;
      for (double s = 1.0; s > 1e-12; s *= 0.5) {
        Matrix cand = hermitian_part(j + s * dir);
        if (lambda_min(cand) <= 0.0) continue;
        double fc = value(cand, tau);
        if (fc <= f - 1e-4 * s * dec) {
          j = cand;
          f = fc;
          moved = true;
          break;
        }
      }
      // Armijo fails once the decrement is at rounding level.
      if (!moved) {
        if (dec > 1e-10 * std::max(1.0, std::abs(f))) return out;
        done = true;
      }
    }
    if (!done) return out;
    out.j = j;
    out.centered = true;
  }
  out.converged = true;
  return out;
}

// Newton then, if needed, Frank-Wolfe on (1/2) I + lambda Tr(Delta omega) from j0.
inline Inner minimize_lagrangian(const Instance& inst, double lambda, Matrix j0, const RateDistortionOptions& opt) {
  Inner out;
  Matrix j = std::move(j0);
  if (lambda_min(j) <= 0.0) j = identity(j.rows()) / static_cast<double>(inst.db());
  NewtonResult nr = newton_lagrangian(inst, lambda, j, opt.max_newton_iterations);
  if (nr.centered) j = nr.j;
  auto value = [&](const Matrix& x) { return inst.rate(x) + lambda * inst.distortion(x); };
  double fj = value(j);
  int stalls = 0;
  for (int k = 0; k < opt.max_fw_iterations; ++k) {
    Matrix g = inst.gradient(j, lambda);
    Instance::Oracle o = inst.oracle(g, opt.oracle);
    ++out.oracle_calls;
    double gap = trace_product(g, j) - o.lower;
    out.lagrangian_lower = std::max(out.lagrangian_lower, fj - gap);
    out.iterations = k + 1;
    if (gap <= opt.fw_tolerance || nr.converged) break;
    Matrix dir = o.s - j;
    auto slope = [&](double t) { return trace_product(inst.gradient(Matrix(j + t * dir), lambda), dir); };
    double step;
    const double top = 1.0 - 1e-12;
    if (slope(0.0) >= 0.0) {
      step = 0.0;
    } else if (slope(top) <= 0.0) {
      step = top;
    } else {
      double lo = 0.0, hi = top;
      for (int it = 0; it < 50; ++it) {
        double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
      }
      step = lo;
    }
    Matrix next = hermitian_part(j + step * dir);
    double fn = value(next);
    if (fn <= fj) {
      j = next;
      stalls = (fj - fn <= 1e-15 * std::max(1.0, std::abs(fj))) ? stalls + 1 : 0;
      fj = fn;
    } else {
      ++stalls;
    }
    if (stalls >= 5) break;
  }
  out.j = j;
  out.rate = inst.rate(j);
  out.distortion = inst.distortion(j);
  return out;
}

}  // namespace detail::rd

// R(D) for the source purified by phi on (R, A) and a distortion observable on
// (R, B). The returned rate is attained by the returned channel; [lower, upper]
// is certified.
inline RateDistortionPoint ea_qrd_function(const PureState& phi, const DistortionObservable& delta, double d,
                                           const RateDistortionOptions& opt = {}) {
  if (d < 0) throw DomainError("ea_qrd_function: D must be non-negative");
  detail::rd::Instance inst(phi, delta);
  if (inst.d_a() > opt.max_dim || inst.d_b() > opt.max_dim)
    throw DomainError("ea_qrd_function: input/output dimension above " + std::to_string(opt.max_dim));

  RateDistortionPoint out;
  out.d = d;
  const double tie = 1e-12 * std::max(1.0, d);

  // Replacement channels have zero rate.
  Vector b_best;
  double d_rep = inst.replacement_distortion(&b_best);
  Eigen::Index nb = inst.db();
  if (d_rep <= d + tie) {
    Matrix j = inst.replacement(b_best);
    out.rate = out.lower = out.upper = 0.0;
    out.distortion = inst.distortion(j);
    out.min_distortion = std::min(d_rep, d);
    out.status = RdStatus::zero_rate;
    out.channel = inst.channel(j);
    out.note = "a replacement channel meets the distortion constraint";
    return out;
  }

  // Minimum achievable distortion.
  detail::rd::Instance::Oracle omin = inst.oracle(inst.weighted_delta(), opt.oracle);
  Matrix j_min = omin.s;
  double d_min = inst.distortion(j_min);
  out.min_distortion = std::max(omin.lower, 0.0);
  if (omin.lower > d + tie) {
    out.status = RdStatus::infeasible;
    out.rate = out.upper = inst.rate(j_min);
    out.lower = kInf;
    out.distortion = d_min;
    out.channel = inst.channel(j_min);
    out.note = "D is below the minimum achievable distortion; value at the distortion-minimizing channel";
    return out;
  }

  Matrix j_start = identity(inst.r() * nb) / static_cast<double>(nb);
  double best_lower = 0.0;  // rate 0 is always a lower bound
  double best_upper = kInf;
  Matrix best_j;
  double best_lambda = 0.0;
  int fw_total = 0, calls = 1;

  auto consider_upper = [&](const Matrix& j, double lam) {
    double g = inst.distortion(j);
    if (g <= d + tie) {
      double r = inst.rate(j);
      if (r < best_upper) {
        best_upper = r;
        best_j = j;
        best_lambda = lam;
      }
    }
  };
  if (d_min <= d + tie) consider_upper(j_min, opt.lambda_cap);

  auto evaluate = [&](double lam, const Matrix& start) {
    detail::rd::Inner in = detail::rd::minimize_lagrangian(inst, lam, start, opt);
    fw_total += in.iterations;
    calls += in.oracle_calls;
    best_lower = std::max(best_lower, in.lagrangian_lower - lam * d);
    consider_upper(in.j, lam);
    return in;
  };

  // Bracket: g(J_lambda) is non-increasing in lambda.
  double lam_lo = 0.0, lam_hi = 1.0;
  detail::rd::Inner lo_in;
  lo_in.j = j_start;
  lo_in.distortion = inst.distortion(j_start);
  lo_in.rate = inst.rate(j_start);
  detail::rd::Inner hi_in = evaluate(lam_hi, j_start);
  while (hi_in.distortion > d + tie && lam_hi < opt.lambda_cap) {
    lam_lo = lam_hi;
    lo_in = hi_in;
    lam_hi *= 2.0;
    hi_in = evaluate(lam_hi, hi_in.j);
  }

  // Mixing bracket endpoints to meet the constraint exactly stays feasible.
  auto mix_upper = [&]() {
    double gl = lo_in.distortion, gh = hi_in.distortion;
    if (gl > d && gh <= d && gl - gh > 0) {
      double t = (gl - d) / (gl - gh);
      consider_upper(Matrix(hermitian_part((1 - t) * lo_in.j + t * hi_in.j)), 0.5 * (lam_lo + lam_hi));
    }
  };
  mix_upper();

  for (int it = 0; it < opt.max_bisections; ++it) {
    if (best_upper - best_lower <= opt.tolerance) break;
    if (hi_in.distortion > d + tie) break;  // lambda cap reached
    double lam = 0.5 * (lam_lo + lam_hi);
    detail::rd::Inner mid = evaluate(lam, hi_in.j);
    if (mid.distortion > d + tie) {
      lam_lo = lam;
      lo_in = mid;
    } else {
      lam_hi = lam;
      hi_in = mid;
    }
    mix_upper();
  }

  out.fw_iterations = fw_total;
  out.oracle_calls = calls;
  out.lower = std::min(best_lower, best_upper);
  out.upper = best_upper;
  out.rate = best_upper;
  out.lambda = best_lambda;
  if (!std::isfinite(best_upper)) {
    out.status = RdStatus::not_converged;
    out.note = "no feasible iterate found";
    return out;
  }
  out.distortion = inst.distortion(best_j);
  out.channel = inst.channel(best_j);
  out.status = best_upper - best_lower <= std::max(opt.tolerance, 1e-6) ? RdStatus::optimal : RdStatus::not_converged;
  out.note = "Lagrangian Frank-Wolfe; certified interval [" + std::to_string(out.lower) + ", " +
             std::to_string(out.upper) + "]";
  return out;
}

// Uses the standard purification of rho; Delta must act on (R, B) with
// dim R = rank(rho).
inline RateDistortionPoint ea_qrd_function(const DensityOperator& rho, const DistortionObservable& delta, double d,
                                           const RateDistortionOptions& opt = {}) {
  return ea_qrd_function(purify(rho, delta.dims().labels()[0]), delta, d, opt);
}

inline std::vector<RateDistortionPoint> ea_qrd_sweep(const PureState& phi, const DistortionObservable& delta,
                                                     const std::vector<double>& ds,
                                                     const RateDistortionOptions& opt = {}) {
  std::vector<RateDistortionPoint> out;
  out.reserve(ds.size());
  for (double d : ds) out.push_back(ea_qrd_function(phi, delta, d, opt));
  return out;
}

}  // namespace qrd

#endif  // QRD_RATE_DISTORTION_HPP
