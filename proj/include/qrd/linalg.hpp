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

#ifndef QRD_LINALG_HPP
#define QRD_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qrd {

using cplx = std::complex<double>;
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: wrong shapes, unknown labels, out-of-domain parameters.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation could not be completed to the requested accuracy.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Tolerance policy shared by every module. psd and pinv cutoffs are relative
// to the largest eigenvalue magnitude of the operator being tested.
struct Tolerance {
  double psd = 1e-9;
  double trace = 1e-9;
  double pinv = 1e-12;
  double hermitian = 1e-9;
  double rank = 1e-10;
};

inline const Tolerance& tolerance() {
  static const Tolerance t{};
  return t;
}

inline double log2_safe(double x) { return x > 0 ? std::log2(x) : -kInf; }

// Binary entropy in bits.
inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double asymmetry(const Matrix& m) { return (m - m.adjoint()).norm(); }

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
  return r;
}

// Real part of Tr(A B) without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns
  double asymmetry = 0.0;

  double max_abs() const {
    if (values.size() == 0) return 0.0;
    return std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  }
  double min() const { return values.size() ? values(0) : 0.0; }
  double max() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

// Every spectral computation goes through here. The input is symmetrized
// first and the discarded anti-Hermitian norm is kept for diagnostics.
inline HermitianEig eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("eigh: matrix is not square");
  HermitianEig out;
  out.asymmetry = asymmetry(m);
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success) throw NumericError("eigh: eigensolver did not converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

inline RealVector eigvalsh(const Matrix& m) {
  if (m.rows() == 0) return RealVector();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigvalsh: eigensolver did not converge");
  return es.eigenvalues();
}

inline Matrix reconstruct(const HermitianEig& e, const RealVector& values) {
  return e.vectors * values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
}

// f applied to the spectrum of a Hermitian matrix.
inline Matrix apply_function(const Matrix& m, const std::function<double(double)>& f) {
  HermitianEig e = eigh(m);
  RealVector v = e.values.unaryExpr(f);
  return reconstruct(e, v);
}

inline Matrix sqrtm_psd(const Matrix& m) {
  return apply_function(m, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

// Pseudo-inverse of a Hermitian matrix; eigenvalues with magnitude at or
// below cutoff_rel * max|eigenvalue| are treated as zero.
inline Matrix pinv_hermitian(const Matrix& m, double cutoff_rel = tolerance().pinv) {
  HermitianEig e = eigh(m);
  double cut = cutoff_rel * e.max_abs();
  RealVector v = e.values.unaryExpr([cut](double x) { return std::abs(x) > cut ? 1.0 / x : 0.0; });
  return reconstruct(e, v);
}

// Inverse square root on the support.
inline Matrix pinv_sqrt_psd(const Matrix& m, double cutoff_rel = tolerance().pinv) {
  HermitianEig e = eigh(m);
  double cut = cutoff_rel * e.max_abs();
  RealVector v = e.values.unaryExpr([cut](double x) { return x > cut ? 1.0 / std::sqrt(x) : 0.0; });
  return reconstruct(e, v);
}

// Projector onto the eigenvectors whose eigenvalue satisfies pred.
inline Matrix spectral_projector(const HermitianEig& e, const std::function<bool(double)>& pred) {
  Eigen::Index n = e.vectors.rows();
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    if (pred(e.values(k))) p += e.vectors.col(k) * e.vectors.col(k).adjoint();
  }
  return p;
}

inline Matrix support_projector(const Matrix& m, double cutoff_rel = tolerance().pinv) {
  HermitianEig e = eigh(m);
  double cut = cutoff_rel * e.max_abs();
  return spectral_projector(e, [cut](double x) { return x > cut; });
}

inline double trace_norm(const Matrix& m) {
  if (m.rows() == m.cols() && asymmetry(m) <= 1e-13 * std::max(1.0, m.norm())) {
    return eigvalsh(m).cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

inline double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double lambda_max(const Matrix& m) {
  RealVector v = eigvalsh(m);
  return v.size() ? v(v.size() - 1) : 0.0;
}

inline double lambda_min(const Matrix& m) {
  RealVector v = eigvalsh(m);
  return v.size() ? v(0) : 0.0;
}

// PSD up to the shared relative tolerance.
inline bool is_psd(const Matrix& m, double rel = tolerance().psd) {
  RealVector v = eigvalsh(m);
  if (v.size() == 0) return true;
  double scale = std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
  return v(0) >= -rel * std::max(scale, 1e-300);
}

// Sum of x*log2(x) over positive eigenvalues, with 0 log 0 = 0.
inline double entropy_of_spectrum(const RealVector& v) {
  double h = 0.0;
  for (double x : v) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

inline std::string shape_string(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace qrd

#endif  // QRD_LINALG_HPP
