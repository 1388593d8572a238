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

#ifndef QRD_QUANTUM_HPP
#define QRD_QUANTUM_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qrd/linalg.hpp"
#include "qrd/systems.hpp"

namespace qrd {

// Positive semidefinite operator with trace at most one.
class DensityOperator {
 public:
  DensityOperator() = default;

  DensityOperator(Matrix m, SystemDims dims) : dims_(std::move(dims)) {
    if (m.rows() != m.cols()) throw DomainError("DensityOperator: matrix is not square");
    if (static_cast<std::size_t>(m.rows()) != dims_.total())
      throw DomainError("DensityOperator: matrix " + shape_string(m) + " does not match dims " + dims_.to_string());
    const Tolerance& tol = tolerance();
    double scale = std::max(1.0, m.norm());
    double asym = asymmetry(m);
    if (asym > tol.hermitian * scale) {
      throw DomainError("DensityOperator: not Hermitian (asymmetry norm " + std::to_string(asym) + ")");
    }
    matrix_ = hermitian_part(m);
    RealVector ev = eigvalsh(matrix_);
    double lmax = ev.size() ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
    if (ev.size() && ev(0) < -tol.psd * std::max(lmax, 1e-300)) {
      throw DomainError("DensityOperator: negative eigenvalue " + std::to_string(ev(0)));
    }
    double tr = matrix_.trace().real();
    if (tr > 1.0 + tol.trace) throw DomainError("DensityOperator: trace " + std::to_string(tr) + " exceeds 1");
    if (tr <= 0.0) throw DomainError("DensityOperator: trace must be positive");
  }

  // Single-factor convenience constructor.
  explicit DensityOperator(Matrix m, const std::string& label = "A")
      : DensityOperator(m, SystemDims::single(label, static_cast<std::size_t>(m.rows()))) {}

  static DensityOperator maximally_mixed(const SystemDims& dims) {
    auto n = static_cast<Eigen::Index>(dims.total());
    return DensityOperator(identity(n) / static_cast<double>(n), dims);
  }

  static DensityOperator basis(std::size_t dim, std::size_t k, const std::string& label = "A") {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    return DensityOperator(m, SystemDims::single(label, dim));
  }

  const Matrix& matrix() const { return matrix_; }
  const SystemDims& dims() const { return dims_; }
  std::size_t dim() const { return dims_.total(); }
  double trace() const { return matrix_.trace().real(); }
  bool normalized(double tol = 1e-9) const { return std::abs(trace() - 1.0) <= tol; }

  DensityOperator relabeled(const std::string& from, const std::string& to) const {
    return DensityOperator(matrix_, dims_.relabeled(from, to));
  }

  DensityOperator reordered(const std::vector<std::string>& order) const {
    return DensityOperator(reorder(matrix_, dims_, order), dims_.reordered(order));
  }

  DensityOperator scaled(double c) const { return DensityOperator(c * matrix_, dims_); }

 private:
  Matrix matrix_;
  SystemDims dims_;
};

class PureState {
 public:
  PureState() = default;

  PureState(Vector v, SystemDims dims) : vector_(std::move(v)), dims_(std::move(dims)) {
    if (static_cast<std::size_t>(vector_.size()) != dims_.total())
      throw DomainError("PureState: vector length does not match dims " + dims_.to_string());
    double n = vector_.norm();
    if (std::abs(n - 1.0) > 1e-9) throw DomainError("PureState: vector norm " + std::to_string(n) + " is not 1");
  }

  // (|00> + |11> + ...)/sqrt(d) on labels (a, b).
  static PureState maximally_entangled(std::size_t d, const std::string& a = "R", const std::string& b = "A") {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
    return PureState(v, SystemDims({a, b}, {d, d}));
  }

  const Vector& vector() const { return vector_; }
  const SystemDims& dims() const { return dims_; }

  DensityOperator density() const { return DensityOperator(vector_ * vector_.adjoint(), dims_); }
  Matrix projector() const { return vector_ * vector_.adjoint(); }

  PureState reordered(const std::vector<std::string>& order) const {
    return PureState(reorder(vector_, dims_, order), dims_.reordered(order));
  }

 private:
  Vector vector_;
  SystemDims dims_;
};

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  SystemDims d = a.dims().concat(b.dims());
  return DensityOperator(kron(a.matrix(), b.matrix()), d);
}

inline PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.vector(), b.vector()), a.dims().concat(b.dims()));
}

// n-fold tensor power; copies get labels suffixed with their index.
inline DensityOperator tensor_power(const DensityOperator& rho, std::size_t n) {
  if (n == 0) throw DomainError("tensor_power: n must be positive");
  auto labelled = [&](std::size_t k) {
    std::vector<std::string> l;
    for (const auto& s : rho.dims().labels()) l.push_back(s + std::to_string(k + 1));
    return SystemDims(l, rho.dims().dims());
  };
  Matrix m = rho.matrix();
  SystemDims dims = labelled(0);
  for (std::size_t k = 1; k < n; ++k) {
    m = kron(m, rho.matrix());
    dims = dims.concat(labelled(k));
  }
  return DensityOperator(m, dims);
}

inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw DomainError("partial_trace: keep set must be non-empty");
  return DensityOperator(partial_trace(rho.matrix(), rho.dims(), keep), rho.dims().restrict_to(keep));
}

// Purification on (purifier, system...). The purifier dimension is the rank.
inline PureState purify(const DensityOperator& rho, const std::string& purifier = "R") {
  if (!rho.normalized()) throw DomainError("purify: input must be normalized");
  if (rho.dims().has(purifier)) throw DomainError("purify: purifier label '" + purifier + "' already in use");
  HermitianEig e = eigh(rho.matrix());
  double cut = tolerance().rank * e.max_abs();
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = e.values.size(); k-- > 0;)
    if (e.values(k) > cut) support.push_back(k);
  auto r = static_cast<std::size_t>(support.size());
  auto d = static_cast<Eigen::Index>(rho.dim());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(r) * d);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < r; ++j) norm2 += e.values(support[j]);
  for (std::size_t j = 0; j < r; ++j) {
    double w = std::sqrt(e.values(support[j]) / norm2);
    v.segment(static_cast<Eigen::Index>(j) * d, d) = w * e.vectors.col(support[j]);
  }
  SystemDims dims = SystemDims::single(purifier, r).concat(rho.dims());
  return PureState(v, dims);
}

inline double fidelity_unchecked(const Matrix& rho, const Matrix& sigma) {
  Matrix s = sqrtm_psd(rho);
  RealVector v = eigvalsh(s * sigma * s);
  double f = 0.0;
  for (double x : v)
    if (x > 0) f += std::sqrt(x);
  return f;
}

// ||sqrt(rho) sqrt(sigma)||_1 for normalized inputs.
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("fidelity: dimension mismatch");
  if (!rho.normalized() || !sigma.normalized()) throw DomainError("fidelity: inputs must be normalized");
  return std::min(1.0, fidelity_unchecked(rho.matrix(), sigma.matrix()));
}

inline double generalized_fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("generalized_fidelity: dimension mismatch");
  double f = fidelity_unchecked(rho.matrix(), sigma.matrix());
  double a = std::max(0.0, 1.0 - rho.trace());
  double b = std::max(0.0, 1.0 - sigma.trace());
  return std::clamp(f + std::sqrt(a * b), 0.0, 1.0);
}

inline double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  double f = generalized_fidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

// Completely positive trace-preserving map, held in Kraus and Choi form.
// Choi convention: J = sum_ij |i><j| (x) N(|i><j|) on input (x) output.
class QuantumChannel {
 public:
  QuantumChannel() = default;

  static QuantumChannel from_kraus(std::vector<Matrix> kraus, SystemDims in, SystemDims out) {
    QuantumChannel c;
    c.in_ = std::move(in);
    c.out_ = std::move(out);
    auto din = static_cast<Eigen::Index>(c.in_.total());
    auto dout = static_cast<Eigen::Index>(c.out_.total());
    if (kraus.empty()) throw DomainError("QuantumChannel: empty Kraus list");
    Matrix sum = Matrix::Zero(din, din);
    for (const auto& k : kraus) {
      if (k.rows() != dout || k.cols() != din)
        throw DomainError("QuantumChannel: Kraus operator shape " + shape_string(k) + " does not match dims");
      sum += k.adjoint() * k;
    }
    if ((sum - identity(din)).norm() > 1e-8)
      throw DomainError("QuantumChannel: Kraus operators are not trace preserving");
    c.kraus_ = std::move(kraus);
    c.choi_ = Matrix::Zero(din * dout, din * dout);
    for (const auto& k : c.kraus_) {
      // Column vector of (I (x) K)|Gamma>.
      Vector v(din * dout);
      for (Eigen::Index i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
      c.choi_ += v * v.adjoint();
    }
    return c;
  }

  static QuantumChannel from_choi(const Matrix& choi, SystemDims in, SystemDims out) {
    auto din = static_cast<Eigen::Index>(in.total());
    auto dout = static_cast<Eigen::Index>(out.total());
    if (choi.rows() != din * dout || choi.cols() != din * dout)
      throw DomainError("QuantumChannel: Choi matrix shape " + shape_string(choi) + " does not match dims");
    if (!is_psd(choi, 1e-8)) throw DomainError("QuantumChannel: Choi matrix is not PSD");
    std::vector<bool> keep{true, false};
    Matrix tr_out = partial_trace(choi, {static_cast<std::size_t>(din), static_cast<std::size_t>(dout)}, keep);
    if ((tr_out - identity(din)).norm() > 1e-8)
      throw DomainError("QuantumChannel: Choi matrix is not trace preserving");
    HermitianEig e = eigh(choi);
    double cut = 1e-13 * std::max(1.0, e.max_abs());
    std::vector<Matrix> kraus;
    for (Eigen::Index k = e.values.size(); k-- > 0;) {
      if (e.values(k) <= cut) continue;
      Matrix kr(dout, din);
      double s = std::sqrt(e.values(k));
      for (Eigen::Index i = 0; i < din; ++i) kr.col(i) = s * e.vectors.col(k).segment(i * dout, dout);
      kraus.push_back(kr);
    }
    QuantumChannel c = from_kraus(std::move(kraus), std::move(in), std::move(out));
    c.choi_ = hermitian_part(choi);
    return c;
  }

  static QuantumChannel identity_channel(std::size_t d, const std::string& in = "A", const std::string& out = "B") {
    return from_kraus({identity(static_cast<Eigen::Index>(d))}, SystemDims::single(in, d), SystemDims::single(out, d));
  }

  // rho -> (1-p) rho + p I/d.
  static QuantumChannel depolarizing(std::size_t d, double p, const std::string& in = "A",
                                     const std::string& out = "B") {
    if (p < 0 || p > 1) throw DomainError("depolarizing: p must lie in [0,1]");
    auto n = static_cast<Eigen::Index>(d);
    Matrix j = Matrix::Zero(n * n, n * n);
    Vector gamma = Vector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) gamma(i * n + i) = 1.0;
    j = (1 - p) * gamma * gamma.adjoint() + p * identity(n * n) / double(d);
    return from_choi(j, SystemDims::single(in, d), SystemDims::single(out, d));
  }

  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& choi() const { return choi_; }
  const SystemDims& input_dims() const { return in_; }
  const SystemDims& output_dims() const { return out_; }

  // N(rho) via the Choi form: Tr_in[(rho^T (x) I) J].
  Matrix apply_via_choi(const Matrix& rho) const {
    auto din = static_cast<std::size_t>(in_.total());
    auto dout = static_cast<std::size_t>(out_.total());
    Matrix t = kron(Matrix(rho.transpose()), identity(static_cast<Eigen::Index>(dout))) * choi_;
    return partial_trace(t, {din, dout}, {false, true});
  }

  Matrix apply_via_kraus(const Matrix& rho) const {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_.total()), static_cast<Eigen::Index>(out_.total()));
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
  }

 private:
  std::vector<Matrix> kraus_;
  Matrix choi_;
  SystemDims in_, out_;
};

// Applies the channel to the factors of rho named by the channel's input
// labels (all of them, in order, contiguous after reordering). The output
// factors take the place of the first input factor.
inline DensityOperator apply_channel(const QuantumChannel& n, const DensityOperator& rho) {
  const auto& in_labels = n.input_dims().labels();
  for (const auto& l : in_labels) {
    if (rho.dims().dim_of(l) != n.input_dims().dim_of(l))
      throw DomainError("apply_channel: dimension mismatch on '" + l + "'");
  }
  if (rho.dims().size() == in_labels.size() && rho.dims().labels() == in_labels) {
    return DensityOperator(hermitian_part(n.apply_via_kraus(rho.matrix())), n.output_dims());
  }
  // Bring inputs to the back, act with I (x) K, then restore the order.
  std::vector<std::string> rest = rho.dims().complement(in_labels);
  std::vector<std::string> order = rest;
  order.insert(order.end(), in_labels.begin(), in_labels.end());
  Matrix m = reorder(rho.matrix(), rho.dims(), order);
  std::size_t d_rest = rho.dims().restrict_to(rest).total();
  Matrix id = identity(static_cast<Eigen::Index>(d_rest));
  auto dout = static_cast<Eigen::Index>(n.output_dims().total());
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d_rest) * dout, static_cast<Eigen::Index>(d_rest) * dout);
  for (const auto& k : n.kraus()) {
    Matrix big = kron(id, k);
    out += big * m * big.adjoint();
  }
  SystemDims rest_dims = rho.dims().restrict_to(rest);
  SystemDims out_dims = rest_dims.concat(n.output_dims());
  // Output order: original order with the input block replaced by outputs.
  std::vector<std::string> final_order;
  bool placed = false;
  for (const auto& l : rho.dims().labels()) {
    if (std::find(in_labels.begin(), in_labels.end(), l) != in_labels.end()) {
      if (!placed) {
        for (const auto& o : n.output_dims().labels()) final_order.push_back(o);
        placed = true;
      }
    } else {
      final_order.push_back(l);
    }
  }
  return DensityOperator(hermitian_part(reorder(out, out_dims, final_order)), out_dims.reordered(final_order));
}

// (id_R (x) N)(phi).
inline DensityOperator extend_to_reference(const QuantumChannel& n, const PureState& phi) {
  return apply_channel(n, phi.density());
}

}  // namespace qrd

#endif  // QRD_QUANTUM_HPP
