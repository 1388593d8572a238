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

#ifndef QRD_RANDOM_HPP
#define QRD_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qrd/quantum.hpp"

namespace qrd {

using Rng = std::mt19937_64;

// Independent generator for (seed, stream) pairs.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

inline Vector random_unit_vector(Rng& rng, Eigen::Index d) {
  Matrix g = ginibre(rng, d, 1);
  Vector v = g.col(0);
  return v / v.norm();
}

inline PureState random_pure_state(Rng& rng, const SystemDims& dims) {
  return PureState(random_unit_vector(rng, static_cast<Eigen::Index>(dims.total())), dims);
}

// Induced-measure mixed state of the given rank (rank 0 means full rank).
inline DensityOperator random_density(Rng& rng, const SystemDims& dims, std::size_t rank = 0) {
  auto d = static_cast<Eigen::Index>(dims.total());
  Eigen::Index k = rank == 0 ? d : static_cast<Eigen::Index>(rank);
  Matrix g = ginibre(rng, d, k);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(hermitian_part(m), dims);
}

inline DensityOperator random_density(Rng& rng, std::size_t d, std::size_t rank = 0, const std::string& label = "A") {
  return random_density(rng, SystemDims::single(label, d), rank);
}

inline Matrix random_unitary(Rng& rng, Eigen::Index d) {
  Matrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    cplx ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

// Channel from a random Stinespring isometry with the given Kraus rank.
inline QuantumChannel random_channel(Rng& rng, const SystemDims& in, const SystemDims& out, std::size_t kraus_rank) {
  auto din = static_cast<Eigen::Index>(in.total());
  auto dout = static_cast<Eigen::Index>(out.total());
  auto k = static_cast<Eigen::Index>(kraus_rank);
  Matrix g = ginibre(rng, dout * k, din);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = Matrix(qr.householderQ()).leftCols(din);
  std::vector<Matrix> kraus;
  for (Eigen::Index j = 0; j < k; ++j) kraus.push_back(v.middleRows(j * dout, dout));
  return QuantumChannel::from_kraus(kraus, in, out);
}

// Random positive semidefinite operator with unit operator norm.
inline Matrix random_psd(Rng& rng, Eigen::Index d) {
  Matrix g = ginibre(rng, d, d);
  Matrix m = hermitian_part(g * g.adjoint());
  return m / lambda_max(m);
}

}  // namespace qrd

#endif  // QRD_RANDOM_HPP
