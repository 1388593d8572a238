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

// Dense complex semidefinite programming.
//
//   primal:  min  sum_b Tr(C_b X_b)   s.t.  sum_b Tr(A_ib X_b) (=,<=,>=) b_i,  X_b >= 0
//   dual:    max  b.y                 s.t.  sum_i y_i A_ib + Z_b = C_b,         Z_b >= 0
//
// Inequalities become equalities with scalar slack blocks; a block flagged
// unit_bounded gets a companion block Y with X + Y = I. The method is an
// infeasible-start Mehrotra predictor-corrector with Nesterov-Todd scaling,
// working directly on complex Hermitian blocks.

#ifndef QRD_SDP_HPP
#define QRD_SDP_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qrd/linalg.hpp"

namespace qrd::sdp {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  cplx value;
};

// Hermitian coefficient matrix, stored as its nonzero entries.
struct Coefficient {
  std::vector<Entry> entries;

  static Coefficient from_dense(const Matrix& m, double drop = 1e-15) {
    Coefficient c;
    double cut = drop * std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (std::abs(m(i, j)) > cut) c.entries.push_back({i, j, m(i, j)});
    return c;
  }

  static Coefficient scalar(double v) { return Coefficient{{{0, 0, cplx(v, 0.0)}}}; }

  Matrix dense(Eigen::Index n) const {
    Matrix m = Matrix::Zero(n, n);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
  }

  double norm2() const {
    double s = 0.0;
    for (const auto& e : entries) s += std::norm(e.value);
    return s;
  }

  // Re Tr(A X).
  double inner(const Matrix& x) const {
    double s = 0.0;
    for (const auto& e : entries) s += (e.value * x(e.col, e.row)).real();
    return s;
  }

  void add_to(Matrix& m, double scale) const {
    for (const auto& e : entries) m(e.row, e.col) += scale * e.value;
  }
};

enum class Relation { equal, less_equal, greater_equal };

struct Constraint {
  std::vector<std::pair<std::size_t, Coefficient>> terms;
  double rhs = 0.0;
  Relation relation = Relation::equal;
};

// One block's contribution to a matrix-valued linear equality. The map is
// given through its adjoint, which is all the constraint rows need.
struct LinearTerm {
  std::size_t block;
  std::function<Matrix(const Matrix&)> adjoint;
};

// Orthonormal basis of n x n Hermitian matrices under the trace inner product.
inline std::vector<Matrix> hermitian_basis(Eigen::Index n) {
  std::vector<Matrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index p = 0; p < n; ++p) {
    Matrix e = Matrix::Zero(n, n);
    e(p, p) = 1.0;
    basis.push_back(e);
  }
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p + 1; q < n; ++q) {
      Matrix e = Matrix::Zero(n, n);
      e(p, q) = r;
      e(q, p) = r;
      basis.push_back(e);
      Matrix f = Matrix::Zero(n, n);
      f(p, q) = cplx(0, r);
      f(q, p) = cplx(0, -r);
      basis.push_back(f);
    }
  return basis;
}

class SdpProblem {
 public:
  std::size_t add_block(std::size_t dim, bool unit_bounded = false) {
    if (dim == 0) throw DomainError("SdpProblem: block dimension must be positive");
    dims_.push_back(static_cast<Eigen::Index>(dim));
    unit_bounded_.push_back(unit_bounded);
    objective_.push_back(Matrix::Zero(dims_.back(), dims_.back()));
    return dims_.size() - 1;
  }

  void set_objective(std::size_t block, const Matrix& c) {
    check_block(block, c);
    objective_[block] = hermitian_part(c);
  }

  std::size_t add_constraint(Constraint c) {
    for (const auto& [b, coef] : c.terms) {
      if (b >= dims_.size()) throw DomainError("SdpProblem: constraint references unknown block");
      for (const auto& e : coef.entries)
        if (e.row >= dims_[b] || e.col >= dims_[b]) throw DomainError("SdpProblem: coefficient out of range");
    }
    constraints_.push_back(std::move(c));
    return constraints_.size() - 1;
  }

  // Convenience: dense coefficients per block.
  std::size_t add_constraint(const std::vector<std::pair<std::size_t, Matrix>>& terms, double rhs,
                             Relation rel = Relation::equal) {
    Constraint c;
    for (const auto& [b, m] : terms) {
      check_block(b, m);
      c.terms.emplace_back(b, Coefficient::from_dense(hermitian_part(m)));
    }
    c.rhs = rhs;
    c.relation = rel;
    return add_constraint(std::move(c));
  }

  // sum_t L_t(X_{block_t}) = rhs for n x n Hermitian rhs, one scalar row per
  // element of the Hermitian basis. Returns the first row index.
  std::size_t add_linear_equality(const std::vector<LinearTerm>& terms, const Matrix& rhs) {
    std::size_t first = constraints_.size();
    for (const Matrix& e : hermitian_basis(rhs.rows())) {
      Constraint c;
      for (const auto& t : terms) {
        Matrix adj = t.adjoint(e);
        if (adj.rows() != dims_.at(t.block)) throw DomainError("add_linear_equality: adjoint has wrong shape");
        Coefficient coef = Coefficient::from_dense(adj);
        if (!coef.entries.empty()) c.terms.emplace_back(t.block, std::move(coef));
      }
      c.rhs = trace_product(e, rhs);
      add_constraint(std::move(c));
    }
    return first;
  }

  const std::vector<Eigen::Index>& block_dims() const { return dims_; }
  const std::vector<bool>& unit_bounded() const { return unit_bounded_; }
  const std::vector<Matrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t num_blocks() const { return dims_.size(); }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims_) s += static_cast<std::size_t>(d);
    return s;
  }

 private:
  void check_block(std::size_t b, const Matrix& m) const {
    if (b >= dims_.size()) throw DomainError("SdpProblem: unknown block");
    if (m.rows() != dims_[b] || m.cols() != dims_[b])
      throw DomainError("SdpProblem: matrix " + shape_string(m) + " does not fit block " + std::to_string(b));
  }

  std::vector<Eigen::Index> dims_;
  std::vector<bool> unit_bounded_;
  std::vector<Matrix> objective_;
  std::vector<Constraint> constraints_;
};

enum class Status { optimal, max_iter, infeasible_suspected };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::max_iter: return "max_iter";
    case Status::infeasible_suspected: return "infeasible_suspected";
  }
  return "unknown";
}

struct IterateRecord {
  int iter;
  double primal;
  double dual;
  double gap;
  double primal_residual;
  double dual_residual;
  double complementarity;  // sum_b <X_b, Z_b>, never negative
};

struct SdpSolution {
  Status status = Status::max_iter;
  std::vector<Matrix> primal;  // one per user block
  std::vector<Matrix> slack;   // dual slack Z per user block
  std::vector<double> dual;    // one multiplier per user constraint
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // primal_value - dual_value
  double relative_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::string message;
  std::vector<IterateRecord> history;

  bool optimal() const { return status == Status::optimal; }
  double lower() const { return std::min(dual_value, primal_value); }
  double upper() const { return std::max(dual_value, primal_value); }

  void write_history_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << "iter,primal,dual,gap\n";
    char buf[128];
    for (const auto& h : history) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", h.iter, h.primal, h.dual, h.gap);
      os << buf;
    }
  }
};

struct Options {
  double tol_gap = 1e-7;
  double tol_feas = 1e-8;
  int max_iter = 120;
  std::size_t max_total_dim = 256;
};

namespace detail {

struct Row {
  std::vector<std::pair<std::size_t, Coefficient>> terms;
  double rhs = 0.0;
};

struct StandardForm {
  std::vector<Eigen::Index> dims;
  std::vector<Matrix> c;
  std::vector<Row> rows;
  std::vector<double> row_scale;
  std::vector<std::size_t> user_row;  // user constraint -> internal row
  std::size_t user_blocks = 0;
  // Per block: (row index, coefficient) pairs.
  std::vector<std::vector<std::pair<std::size_t, const Coefficient*>>> by_block;
};

inline StandardForm standardize(const SdpProblem& p) {
  StandardForm s;
  s.dims = p.block_dims();
  s.c = p.objective();
  s.user_blocks = p.num_blocks();

  auto merge_terms = [](std::vector<std::pair<std::size_t, Coefficient>> terms) {
    std::vector<std::pair<std::size_t, Coefficient>> out;
    for (auto& t : terms) {
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.first == t.first; });
      if (it == out.end()) {
        out.push_back(std::move(t));
      } else {
        it->second.entries.insert(it->second.entries.end(), t.second.entries.begin(), t.second.entries.end());
      }
    }
    return out;
  };

  for (const auto& con : p.constraints()) {
    Row r;
    r.terms = merge_terms(con.terms);
    r.rhs = con.rhs;
    if (con.relation != Relation::equal) {
      std::size_t sb = s.dims.size();
      s.dims.push_back(1);
      s.c.push_back(Matrix::Zero(1, 1));
      r.terms.emplace_back(sb, Coefficient::scalar(con.relation == Relation::less_equal ? 1.0 : -1.0));
    }
    s.user_row.push_back(s.rows.size());
    s.rows.push_back(std::move(r));
  }
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    if (!p.unit_bounded()[b]) continue;
    std::size_t yb = s.dims.size();
    Eigen::Index n = s.dims[b];
    s.dims.push_back(n);
    s.c.push_back(Matrix::Zero(n, n));
    for (const Matrix& e : hermitian_basis(n)) {
      Row r;
      Coefficient coef = Coefficient::from_dense(e);
      r.terms.emplace_back(b, coef);
      r.terms.emplace_back(yb, coef);
      r.rhs = e.trace().real();
      s.rows.push_back(std::move(r));
    }
  }
  // Row equilibration.
  for (auto& r : s.rows) {
    double n2 = 0.0;
    for (const auto& t : r.terms) n2 += t.second.norm2();
    double sc = n2 > 0 ? 1.0 / std::sqrt(n2) : 1.0;
    for (auto& t : r.terms)
      for (auto& e : t.second.entries) e.value *= sc;
    r.rhs *= sc;
    s.row_scale.push_back(sc);
  }
  s.by_block.assign(s.dims.size(), {});
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (const auto& t : s.rows[i].terms) s.by_block[t.first].emplace_back(i, &t.second);
  return s;
}

struct Iterate {
  std::vector<Matrix> x, z;
  RealVector y;
};

inline double inner(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += trace_product(a[k], b[k]);
  return s;
}

// Largest alpha with X + alpha dX >= 0, given the Cholesky factor of X.
inline double max_step(const Eigen::LLT<Matrix>& chol, const Matrix& dx) {
  Matrix t = chol.matrixL().solve(dx);
  Matrix u = chol.matrixL().solve(Matrix(t.adjoint()));
  double lmin = lambda_min(u);
  if (lmin >= 0) return kInf;
  return -1.0 / lmin;
}

}  // namespace detail

class Solver {
 public:
  Solver(const SdpProblem& p, Options opt) : opt_(opt), s_(detail::standardize(p)) {
    if (p.total_dim() > opt.max_total_dim)
      throw DomainError("sdp::solve: total variable dimension " + std::to_string(p.total_dim()) + " exceeds " +
                        std::to_string(opt.max_total_dim));
    if (p.constraints().empty() && std::none_of(p.unit_bounded().begin(), p.unit_bounded().end(),
                                                [](bool b) { return b; }))
      throw DomainError("sdp::solve: problem has no constraints");
    m_ = s_.rows.size();
    nb_ = s_.dims.size();
    b_ = RealVector(m_);
    for (std::size_t i = 0; i < m_; ++i) b_(i) = s_.rows[i].rhs;
  }

  SdpSolution run() {
    using detail::inner;
    detail::Iterate it = initial_point();
    detail::Iterate best = it;
    double best_merit = kInf;
    SdpSolution sol;
    double norm_b = b_.norm();
    double norm_c = 0.0;
    for (const auto& c : s_.c) norm_c += c.squaredNorm();
    norm_c = std::sqrt(norm_c);
    double total_n = 0.0;
    for (auto d : s_.dims) total_n += static_cast<double>(d);

    int stalls = 0;
    double pinf = kInf, dinf = kInf, relgap = kInf, pobj = 0, dobj = 0;
    int iter = 0;
    for (;; ++iter) {
      RealVector rp = b_ - apply_a(it.x);
      std::vector<Matrix> rd = dual_residual(it);
      pobj = inner(s_.c, it.x);
      dobj = b_.dot(it.y);
      double xz = inner(it.x, it.z);
      double rd_norm = 0.0;
      for (const auto& r : rd) rd_norm += r.squaredNorm();
      rd_norm = std::sqrt(rd_norm);
      pinf = rp.norm() / (1.0 + norm_b);
      dinf = rd_norm / (1.0 + norm_c);
      relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      sol.history.push_back({iter, pobj, dobj, pobj - dobj, pinf, dinf, xz});

      double merit = std::max({relgap / opt_.tol_gap, pinf / opt_.tol_feas, dinf / opt_.tol_feas});
      if (merit < best_merit) {
        best_merit = merit;
        best = it;
      }
      if (relgap <= opt_.tol_gap && pinf <= opt_.tol_feas && dinf <= opt_.tol_feas) {
        sol.status = Status::optimal;
        break;
      }
      double xnorm = 0.0;
      for (const auto& x : it.x) xnorm = std::max(xnorm, x.cwiseAbs().maxCoeff());
      if (xnorm > 1e12 || it.y.cwiseAbs().maxCoeff() > 1e12) {
        sol.status = Status::infeasible_suspected;
        sol.message = "iterates diverged";
        break;
      }
      if (iter >= opt_.max_iter) {
        sol.status = Status::max_iter;
        sol.message = "iteration limit reached";
        break;
      }
      if (stalls >= 4) {
        sol.status = Status::max_iter;
        sol.message = "progress stalled";
        break;
      }

      double mu = xz / total_n;
      if (!(mu > 0) || !std::isfinite(mu)) {
        sol.status = Status::max_iter;
        sol.message = "complementarity breakdown";
        break;
      }

      if (!scale(it)) {
        sol.status = Status::max_iter;
        sol.message = "scaling breakdown (iterate lost definiteness)";
        break;
      }
      if (!factor_schur()) {
        sol.status = Status::max_iter;
        sol.message = "Schur complement factorization failed";
        break;
      }

      // Predictor.
      std::vector<Matrix> rc_pred(nb_);
      for (std::size_t k = 0; k < nb_; ++k) rc_pred[k] = -it.x[k];
      Direction pred = solve_direction(rp, rd, rc_pred);
      double ap = std::min(1.0, step_to_boundary(chol_x_, pred.dx));
      double ad = std::min(1.0, step_to_boundary(chol_z_, pred.dz));
      double xz_aff = 0.0;
      for (std::size_t k = 0; k < nb_; ++k)
        xz_aff += trace_product(it.x[k] + ap * pred.dx[k], it.z[k] + ad * pred.dz[k]);
      double ratio = std::clamp(xz_aff / xz, 0.0, 1.0);
      double expon = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
      double sigma = std::pow(ratio, expon);
      if (pinf > 1e-3 || dinf > 1e-3) sigma = std::max(sigma, 0.1 * (1.0 - std::min(ap, ad)));

      // Corrector.
      std::vector<Matrix> rc(nb_);
      for (std::size_t k = 0; k < nb_; ++k) {
        const Matrix& g = g_[k];
        const Matrix& ginv = ginv_[k];
        Matrix dxp = ginv * pred.dx[k] * ginv.adjoint();
        Matrix dzp = g.adjoint() * pred.dz[k] * g;
        Matrix r = -hermitian_part(dxp * dzp);
        const RealVector& d = d_[k];
        for (Eigen::Index i = 0; i < d.size(); ++i) r(i, i) += sigma * mu - d(i) * d(i);
        for (Eigen::Index i = 0; i < d.size(); ++i)
          for (Eigen::Index j = 0; j < d.size(); ++j) r(i, j) *= 2.0 / (d(i) + d(j));
        rc[k] = g * r * g.adjoint();
      }
      Direction dir = solve_direction(rp, rd, rc);
      double gamma = std::min(0.995, 0.9 + 0.09 * std::min(ap, ad));
      double alpha_p = std::min(1.0, gamma * step_to_boundary(chol_x_, dir.dx));
      double alpha_d = std::min(1.0, gamma * step_to_boundary(chol_z_, dir.dz));
      if (!std::isfinite(alpha_p) || !std::isfinite(alpha_d)) {
        sol.status = Status::max_iter;
        sol.message = "non-finite step";
        break;
      }
      stalls = (alpha_p < 1e-8 && alpha_d < 1e-8) ? stalls + 1 : 0;
      for (std::size_t k = 0; k < nb_; ++k) {
        it.x[k] = hermitian_part(it.x[k] + alpha_p * dir.dx[k]);
        it.z[k] = hermitian_part(it.z[k] + alpha_d * dir.dz[k]);
      }
      it.y += alpha_d * dir.dy;
    }

    if (sol.status != Status::optimal) it = best;
    return finish(it, sol, iter);
  }

 private:
  struct Direction {
    std::vector<Matrix> dx, dz;
    RealVector dy;
  };

  detail::Iterate initial_point() const {
    detail::Iterate it;
    it.y = RealVector::Zero(m_);
    for (std::size_t k = 0; k < nb_; ++k) {
      double n = static_cast<double>(s_.dims[k]);
      double xi = std::max(10.0, std::sqrt(n));
      double eta = std::max({10.0, std::sqrt(n), s_.c[k].norm()});
      for (const auto& [i, coef] : s_.by_block[k]) {
        double na = std::sqrt(coef->norm2());
        xi = std::max(xi, n * (1.0 + std::abs(b_(i))) / (1.0 + na));
        eta = std::max(eta, na);
      }
      it.x.push_back(xi * identity(s_.dims[k]));
      it.z.push_back(eta * identity(s_.dims[k]));
    }
    return it;
  }

  RealVector apply_a(const std::vector<Matrix>& x) const {
    RealVector r = RealVector::Zero(m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (const auto& [b, coef] : s_.rows[i].terms) r(i) += coef.inner(x[b]);
    return r;
  }

  std::vector<Matrix> apply_at(const RealVector& y) const {
    std::vector<Matrix> out(nb_);
    for (std::size_t k = 0; k < nb_; ++k) out[k] = Matrix::Zero(s_.dims[k], s_.dims[k]);
    for (std::size_t i = 0; i < m_; ++i)
      for (const auto& [b, coef] : s_.rows[i].terms) coef.add_to(out[b], y(i));
    return out;
  }

  std::vector<Matrix> dual_residual(const detail::Iterate& it) const {
    std::vector<Matrix> aty = apply_at(it.y);
    std::vector<Matrix> rd(nb_);
    for (std::size_t k = 0; k < nb_; ++k) rd[k] = s_.c[k] - it.z[k] - aty[k];
    return rd;
  }

  // NT scaling point for every block. Returns false if an iterate is no
  // longer numerically positive definite.
  bool scale(const detail::Iterate& it) {
    chol_x_.clear();
    chol_z_.clear();
    g_.assign(nb_, Matrix());
    ginv_.assign(nb_, Matrix());
    w_.assign(nb_, Matrix());
    d_.assign(nb_, RealVector());
    for (std::size_t k = 0; k < nb_; ++k) {
      chol_x_.emplace_back(it.x[k]);
      chol_z_.emplace_back(it.z[k]);
      if (chol_x_.back().info() != Eigen::Success || chol_z_.back().info() != Eigen::Success) return false;
      Matrix l = chol_x_.back().matrixL();
      Matrix t = l.adjoint() * it.z[k] * l;
      HermitianEig e = eigh(t);
      if (e.min() <= 0) return false;
      RealVector d = e.values.cwiseSqrt();
      RealVector d_m14 = d.cwiseSqrt().cwiseInverse();
      RealVector d_p14 = d.cwiseSqrt();
      g_[k] = l * e.vectors * d_m14.cast<cplx>().asDiagonal();
      Matrix linv_u = chol_x_.back().matrixL().solve(identity(s_.dims[k]));
      ginv_[k] = d_p14.cast<cplx>().asDiagonal() * e.vectors.adjoint() * linv_u;
      w_[k] = hermitian_part(g_[k] * g_[k].adjoint());
      d_[k] = d;
    }
    return true;
  }

  Matrix wa_w(std::size_t k, const Coefficient& a) const {
    const Matrix& w = w_[k];
    Eigen::Index n = s_.dims[k];
    if (static_cast<Eigen::Index>(a.entries.size()) > n) return w * a.dense(n) * w;
    Matrix q = Matrix::Zero(n, n);
    for (const auto& e : a.entries) q.noalias() += e.value * w.col(e.row) * w.row(e.col);
    return q;
  }

  bool factor_schur() {
    RealMatrix schur = RealMatrix::Zero(m_, m_);
    for (std::size_t k = 0; k < nb_; ++k) {
      const auto& lst = s_.by_block[k];
      for (std::size_t jj = 0; jj < lst.size(); ++jj) {
        Matrix q = wa_w(k, *lst[jj].second);
        std::size_t j = lst[jj].first;
        for (std::size_t ii = 0; ii <= jj; ++ii) {
          double v = lst[ii].second->inner(q);
          std::size_t i = lst[ii].first;
          schur(i, j) += v;
          if (i != j) schur(j, i) += v;
        }
      }
    }
    ldlt_.compute(schur);
    if (ldlt_.info() == Eigen::Success && ldlt_.isPositive()) {
      RealVector probe = ldlt_.vectorD();
      if (probe.minCoeff() > 1e-14 * std::max(1.0, probe.cwiseAbs().maxCoeff())) return true;
    }
    double reg = 1e-12 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    schur.diagonal().array() += reg;
    ldlt_.compute(schur);
    return ldlt_.info() == Eigen::Success;
  }

  Direction solve_direction(const RealVector& rp, const std::vector<Matrix>& rd, const std::vector<Matrix>& rc) const {
    std::vector<Matrix> wrdw(nb_);
    for (std::size_t k = 0; k < nb_; ++k) wrdw[k] = w_[k] * rd[k] * w_[k];
    RealVector rhs = rp - apply_a(rc) + apply_a(wrdw);
    Direction d;
    d.dy = ldlt_.solve(rhs);
    std::vector<Matrix> atdy = apply_at(d.dy);
    d.dz.resize(nb_);
    d.dx.resize(nb_);
    for (std::size_t k = 0; k < nb_; ++k) {
      d.dz[k] = hermitian_part(rd[k] - atdy[k]);
      d.dx[k] = hermitian_part(rc[k] - w_[k] * d.dz[k] * w_[k]);
    }
    return d;
  }

  double step_to_boundary(const std::vector<Eigen::LLT<Matrix>>& chol, const std::vector<Matrix>& dv) const {
    double a = kInf;
    for (std::size_t k = 0; k < nb_; ++k) a = std::min(a, detail::max_step(chol[k], dv[k]));
    return a;
  }

  SdpSolution finish(const detail::Iterate& it, SdpSolution sol, int iter) const {
    using detail::inner;
    RealVector rp = b_ - apply_a(it.x);
    std::vector<Matrix> rd = dual_residual(it);
    sol.iterations = iter;
    sol.primal_value = inner(s_.c, it.x);
    sol.dual_value = b_.dot(it.y);
    sol.gap = sol.primal_value - sol.dual_value;
    sol.relative_gap = std::abs(sol.gap) / (1.0 + std::abs(sol.primal_value) + std::abs(sol.dual_value));
    double norm_c = 0.0;
    for (const auto& c : s_.c) norm_c += c.squaredNorm();
    double rd_norm = 0.0;
    for (const auto& r : rd) rd_norm += r.squaredNorm();
    sol.primal_residual = rp.norm() / (1.0 + b_.norm());
    sol.dual_residual = std::sqrt(rd_norm) / (1.0 + std::sqrt(norm_c));
    for (std::size_t k = 0; k < s_.user_blocks; ++k) {
      sol.primal.push_back(it.x[k]);
      sol.slack.push_back(it.z[k]);
    }
    for (std::size_t u = 0; u < s_.user_row.size(); ++u) {
      std::size_t i = s_.user_row[u];
      sol.dual.push_back(it.y(i) * s_.row_scale[i]);
    }
    return sol;
  }

  Options opt_;
  detail::StandardForm s_;
  std::size_t m_ = 0, nb_ = 0;
  RealVector b_;
  std::vector<Eigen::LLT<Matrix>> chol_x_, chol_z_;
  std::vector<Matrix> g_, ginv_, w_;
  std::vector<RealVector> d_;
  Eigen::LDLT<RealMatrix> ldlt_;
};

inline SdpSolution solve(const SdpProblem& p, const Options& opt = {}) { return Solver(p, opt).run(); }

inline SdpSolution solve(const SdpProblem& p, double tol_gap, int max_iter) {
  Options o;
  o.tol_gap = tol_gap;
  o.max_iter = max_iter;
  return solve(p, o);
}

}  // namespace qrd::sdp

#endif  // QRD_SDP_HPP
