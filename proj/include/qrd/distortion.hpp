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

#ifndef QRD_DISTORTION_HPP
#define QRD_DISTORTION_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qrd/quantum.hpp"

namespace qrd {

enum class ObservableKind { dense, ent_fid, classical };

inline const char* to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::dense: return "dense";
    case ObservableKind::ent_fid: return "ent_fid";
    case ObservableKind::classical: return "classical";
  }
  return "dense";
}

// Eigenvalues closer than this (relative to d_max) are one level.
inline constexpr double kLevelGap = 1e-10;

// Relative tolerance deciding that an eigenvalue sits exactly at D.
inline bool at_threshold(double value, double d) { return std::abs(value - d) <= 1e-12 * std::max(1.0, d); }

struct SpectralLevel {
  double value;
  std::vector<Eigen::Index> columns;  // eigenvector indices
};

// PSD operator on reference (x) output with cached spectrum.
class DistortionObservable {
 public:
  DistortionObservable() = default;

  DistortionObservable(const Matrix& op, SystemDims dims, ObservableKind kind = ObservableKind::dense)
      : dims_(std::move(dims)), kind_(kind) {
    if (static_cast<std::size_t>(op.rows()) != dims_.total() || op.rows() != op.cols())
      throw DomainError("DistortionObservable: operator shape does not match dims " + dims_.to_string());
    if (asymmetry(op) > tolerance().hermitian * std::max(1.0, op.norm()))
      throw DomainError("DistortionObservable: operator is not Hermitian");
    op_ = hermitian_part(op);
    eig_ = eigh(op_);
    if (eig_.min() < -tolerance().psd * std::max(1.0, eig_.max_abs()))
      throw DomainError("DistortionObservable: negative eigenvalue " + std::to_string(eig_.min()));
    eig_.values = eig_.values.cwiseMax(0.0);
    d_max_ = eig_.max();
    // Group nearly equal eigenvalues.
    double gap = kLevelGap * std::max(1.0, d_max_);
    for (Eigen::Index k = 0; k < eig_.values.size(); ++k) {
      double v = eig_.values(k);
      if (levels_.empty() || v - levels_.back().value > gap) {
        levels_.push_back({v, {k}});
      } else {
        levels_.back().columns.push_back(k);
      }
    }
    for (auto& l : levels_) {
      double s = 0.0;
      for (auto c : l.columns) s += eig_.values(c);
      l.value = s / static_cast<double>(l.columns.size());
    }
  }

  const Matrix& op() const { return op_; }
  const SystemDims& dims() const { return dims_; }
  ObservableKind kind() const { return kind_; }
  const RealVector& eigenvalues() const { return eig_.values; }
  const Matrix& eigenvectors() const { return eig_.vectors; }
  double d_max() const { return d_max_; }
  const std::vector<SpectralLevel>& levels() const { return levels_; }

  Matrix level_projector(std::size_t l) const {
    Matrix p = Matrix::Zero(op_.rows(), op_.cols());
    for (auto c : levels_.at(l).columns) p += eig_.vectors.col(c) * eig_.vectors.col(c).adjoint();
    return p;
  }

  double reconstruction_error() const { return (reconstruct(eig_, eig_.values) - op_).norm(); }

 private:
  Matrix op_;
  SystemDims dims_;
  ObservableKind kind_ = ObservableKind::dense;
  HermitianEig eig_;
  double d_max_ = 0.0;
  std::vector<SpectralLevel> levels_;
};

// I - |phi><phi| on the purification's factors, with the source factor
// renamed to the output label.
inline DistortionObservable entanglement_fidelity_observable(const PureState& phi, const std::string& source = "A",
                                                             const std::string& output = "B") {
  SystemDims dims = phi.dims().has(source) ? phi.dims().relabeled(source, output) : phi.dims();
  auto n = static_cast<Eigen::Index>(dims.total());
  return DistortionObservable(identity(n) - phi.projector(), dims, ObservableKind::ent_fid);
}

// sum_x |x><x| (x) sum_y d(x,y) |y><y| in the given bases (columns); empty
// basis matrices mean the computational basis.
inline DistortionObservable classical_cc_observable(const RealMatrix& d, const Matrix& basis_r = Matrix(),
                                                    const Matrix& basis_b = Matrix(), const std::string& r = "R",
                                                    const std::string& b = "B") {
  if (d.size() == 0) throw DomainError("classical_cc_observable: empty distortion matrix");
  if (d.minCoeff() < 0) throw DomainError("classical_cc_observable: negative distortion entry");
  auto nx = d.rows(), ny = d.cols();
  Matrix diag = Matrix::Zero(nx * ny, nx * ny);
  for (Eigen::Index x = 0; x < nx; ++x)
    for (Eigen::Index y = 0; y < ny; ++y) diag(x * ny + y, x * ny + y) = d(x, y);
  Matrix ur = basis_r.size() ? basis_r : identity(nx);
  Matrix ub = basis_b.size() ? basis_b : identity(ny);
  if (ur.rows() != nx || ub.rows() != ny) throw DomainError("classical_cc_observable: basis has wrong shape");
  Matrix u = kron(ur, ub);
  SystemDims dims({r, b}, {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)});
  return DistortionObservable(u * diag * u.adjoint(), dims, ObservableKind::classical);
}

struct ExcessProjector {
  double threshold = 0.0;
  Matrix matrix;                          // Pi_{>D}
  std::vector<Eigen::Index> selected;     // eigenvector indices with d_z > D
  std::size_t boundary_count = 0;         // eigenvalues assigned to <= D by the tie rule

  Matrix complement() const { return identity(matrix.rows()) - matrix; }
};

inline ExcessProjector excess_projector(const DistortionObservable& delta, double d) {
  if (d < 0) throw DomainError("excess_projector: D must be non-negative");
  ExcessProjector p;
  p.threshold = d;
  auto n = delta.op().rows();
  p.matrix = Matrix::Zero(n, n);
  const RealVector& ev = delta.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (at_threshold(ev(k), d)) {
      ++p.boundary_count;
    } else if (ev(k) > d) {
      p.selected.push_back(k);
      p.matrix += delta.eigenvectors().col(k) * delta.eigenvectors().col(k).adjoint();
    }
  }
  return p;
}

inline double excess_probability(const DensityOperator& omega, const ExcessProjector& p) {
  if (static_cast<Eigen::Index>(omega.dim()) != p.matrix.rows())
    throw DomainError("excess_probability: dimension mismatch");
  return std::clamp(trace_product(p.matrix, omega.matrix()), 0.0, 1.0);
}

inline double mean_distortion(const DensityOperator& omega, const DistortionObservable& delta) {
  if (omega.dim() != delta.dims().total()) throw DomainError("mean_distortion: dimension mismatch");
  return trace_product(delta.op(), omega.matrix());
}

// (1/n) sum_i Delta_{R_i B_i}, never materialized beyond n = 3.
class SymbolwiseObservable {
 public:
  SymbolwiseObservable(DistortionObservable base, std::size_t n) : base_(std::move(base)), n_(n) {
    if (n == 0) throw DomainError("average_symbolwise: n must be positive");
    detect_lattice();
  }

  const DistortionObservable& base() const { return base_; }
  std::size_t n() const { return n_; }
  double d_max() const { return base_.d_max(); }

  // Distinct eigenvalues (1/n) sum d_{z_i} with multiplicities.
  std::vector<std::pair<double, double>> spectrum() const {
    std::vector<double> mult;
    for (const auto& l : base_.levels()) mult.push_back(static_cast<double>(l.columns.size()));
    return level_distribution(mult, false);
  }

  // Distribution of the mean symbol distortion when each symbol's level is
  // drawn independently with the given probabilities.
  std::vector<std::pair<double, double>> mean_distribution(const std::vector<double>& level_probs) const {
    return level_distribution(level_probs, true);
  }

  // Dense (1/n) sum_i I..Delta_i..I on factors R1 B1 R2 B2 ... (n <= 3).
  Matrix materialize() const {
    guard_dense();
    const Matrix& d = base_.op();
    auto k = d.rows();
    auto total = static_cast<Eigen::Index>(std::pow(double(k), double(n_)));
    Matrix out = Matrix::Zero(total, total);
    for (std::size_t i = 0; i < n_; ++i) {
      Matrix term = identity(1);
      for (std::size_t j = 0; j < n_; ++j) term = kron(term, j == i ? d : identity(k));
      out += term;
    }
    return out / static_cast<double>(n_);
  }

  SystemDims dense_dims() const {
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t f = 0; f < base_.dims().size(); ++f) {
        labels.push_back(base_.dims().labels()[f] + std::to_string(i + 1));
        dims.push_back(base_.dims().dims()[f]);
      }
    return SystemDims(labels, dims);
  }

  // Projector onto the eigenspace with mean distortion equal to value,
  // assembled from tensor products of base level projectors (n <= 3).
  Matrix eigenspace_projector(double value) const {
    guard_dense();
    std::size_t nl = base_.levels().size();
    std::vector<Matrix> lp;
    for (std::size_t l = 0; l < nl; ++l) lp.push_back(base_.level_projector(l));
    auto k = base_.op().rows();
    auto total = static_cast<Eigen::Index>(std::pow(double(k), double(n_)));
    Matrix out = Matrix::Zero(total, total);
    std::vector<std::size_t> idx(n_, 0);
    for (;;) {
      double s = 0.0;
      for (auto i : idx) s += base_.levels()[i].value;
      if (std::abs(s / double(n_) - value) <= kLevelGap * std::max(1.0, d_max())) {
        Matrix term = identity(1);
        for (auto i : idx) term = kron(term, lp[i]);
        out += term;
      }
      std::size_t pos = n_;
      while (pos > 0) {
        --pos;
        if (++idx[pos] < nl) break;
        idx[pos] = 0;
        if (pos == 0) return out;
      }
      if (n_ == 0) return out;
    }
  }

  // True when every level is an integer multiple of a common grid step.
  bool on_lattice() const { return lattice_step_ > 0; }

 private:
  void guard_dense() const {
    if (n_ > 3)
      throw DomainError("average_symbolwise: dense materialization is limited to n <= 3; "
                        "use the implicit spectrum/excess-probability operations");
  }

  void detect_lattice() {
    double top = base_.d_max();
    if (top <= 0) {
      lattice_step_ = 1.0;
      lattice_.assign(base_.levels().size(), 0);
      return;
    }
    for (long q = 1; q <= 1000; ++q) {
      double g = top / static_cast<double>(q);
      std::vector<long> idx;
      bool ok = true;
      for (const auto& l : base_.levels()) {
        double r = l.value / g;
        long k = std::lround(r);
        if (std::abs(r - static_cast<double>(k)) > 1e-9 * std::max(1.0, r)) {
          ok = false;
          break;
        }
        idx.push_back(k);
      }
      if (ok) {
        lattice_step_ = g;
        lattice_ = idx;
        return;
      }
    }
    lattice_step_ = 0.0;
  }

  // Convolution of n independent draws over levels with the given weights
  // (probabilities, or multiplicities when counting eigenvalues).
  std::vector<std::pair<double, double>> level_distribution(const std::vector<double>& w, bool probabilities) const {
    const auto& levels = base_.levels();
    if (w.size() != levels.size()) throw DomainError("level distribution: weight count mismatch");
    std::vector<std::pair<double, double>> out;
    if (on_lattice()) {
      long maxk = 0;
      for (long k : lattice_) maxk = std::max(maxk, k);
      std::vector<double> dp(1, 1.0);
      for (std::size_t step = 0; step < n_; ++step) {
        std::vector<double> next(dp.size() + static_cast<std::size_t>(maxk), 0.0);
        for (std::size_t s = 0; s < dp.size(); ++s) {
          if (dp[s] == 0.0) continue;
          for (std::size_t l = 0; l < levels.size(); ++l) next[s + static_cast<std::size_t>(lattice_[l])] += dp[s] * w[l];
        }
        dp.swap(next);
      }
      for (std::size_t s = 0; s < dp.size(); ++s)
        if (dp[s] != 0.0) out.emplace_back(static_cast<double>(s) * lattice_step_ / static_cast<double>(n_), dp[s]);
      return out;
    }
    // Generic levels: merge sums that agree to rounding.
    std::vector<std::pair<double, double>> dp{{0.0, 1.0}};
    double tol = kLevelGap * std::max(1.0, d_max());
    for (std::size_t step = 0; step < n_; ++step) {
      std::vector<std::pair<double, double>> next;
      next.reserve(dp.size() * levels.size());
      for (const auto& [s, p] : dp)
        for (std::size_t l = 0; l < levels.size(); ++l) next.emplace_back(s + levels[l].value, p * w[l]);
      std::sort(next.begin(), next.end());
      dp.clear();
      for (const auto& e : next) {
        if (!dp.empty() && e.first - dp.back().first <= tol) {
          dp.back().second += e.second;
        } else {
          dp.push_back(e);
        }
      }
      if (dp.size() > 4000000) throw NumericError("symbol-wise convolution: too many distinct sums");
    }
    (void)probabilities;
    for (const auto& [s, p] : dp) out.emplace_back(s / static_cast<double>(n_), p);
    return out;
  }

  DistortionObservable base_;
  std::size_t n_;
  double lattice_step_ = 0.0;
  std::vector<long> lattice_;
};

inline SymbolwiseObservable average_symbolwise(const DistortionObservable& delta, std::size_t n) {
  return SymbolwiseObservable(delta, n);
}

// Per-level probabilities p_Z for one symbol of omega.
inline std::vector<double> level_probabilities(const DensityOperator& omega, const DistortionObservable& delta) {
  if (omega.dim() != delta.dims().total()) throw DomainError("level_probabilities: dimension mismatch");
  std::vector<double> p;
  for (std::size_t l = 0; l < delta.levels().size(); ++l)
    p.push_back(std::max(0.0, trace_product(delta.level_projector(l), omega.matrix())));
  return p;
}

// Tr(Pi_{>D} omega^{(x)n}) from the single-symbol omega, without forming
// anything of dimension above one symbol.
inline double excess_probability_iid(const DensityOperator& omega, const SymbolwiseObservable& sym, double d) {
  if (d < 0) throw DomainError("excess_probability: D must be non-negative");
  auto dist = sym.mean_distribution(level_probabilities(omega, sym.base()));
  double tail = 0.0;
  for (const auto& [v, p] : dist)
    if (v > d && !at_threshold(v, d)) tail += p;
  return std::clamp(tail, 0.0, 1.0);
}

// For omega^{(x)n} the symbol-wise mean equals the single-symbol mean.
inline double mean_distortion_n(const DensityOperator& omega, const SymbolwiseObservable& sym) {
  return mean_distortion(omega, sym.base());
}

}  // namespace qrd

#endif  // QRD_DISTORTION_HPP
