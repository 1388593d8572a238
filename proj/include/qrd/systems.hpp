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

#ifndef QRD_SYSTEMS_HPP
#define QRD_SYSTEMS_HPP

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qrd/linalg.hpp"

namespace qrd {

// Ordered list of named tensor factors. Index convention is big-endian: the
// first label is the most significant digit of the composite index.
class SystemDims {
 public:
  SystemDims() = default;

  SystemDims(std::vector<std::string> labels, std::vector<std::size_t> dims)
      : labels_(std::move(labels)), dims_(std::move(dims)) {
    if (labels_.size() != dims_.size()) throw DomainError("SystemDims: labels and dims differ in length");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (dims_[i] == 0) throw DomainError("SystemDims: zero dimension for label '" + labels_[i] + "'");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) throw DomainError("SystemDims: duplicate label '" + labels_[i] + "'");
      }
    }
  }

  // Single unnamed-looking factor, convenient for scalar-system states.
  static SystemDims single(const std::string& label, std::size_t dim) { return SystemDims({label}, {dim}); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return labels_.size(); }

  std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  }

  bool has(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DomainError("unknown subsystem label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  SystemDims concat(const SystemDims& other) const {
    std::vector<std::string> l = labels_;
    std::vector<std::size_t> d = dims_;
    l.insert(l.end(), other.labels_.begin(), other.labels_.end());
    d.insert(d.end(), other.dims_.begin(), other.dims_.end());
    return SystemDims(std::move(l), std::move(d));
  }

  // Factors whose labels appear in keep, in this object's order.
  SystemDims restrict_to(const std::vector<std::string>& keep) const {
    for (const auto& k : keep) (void)index_of(k);
    std::vector<std::string> l;
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (std::find(keep.begin(), keep.end(), labels_[i]) != keep.end()) {
        l.push_back(labels_[i]);
        d.push_back(dims_[i]);
      }
    }
    return SystemDims(std::move(l), std::move(d));
  }

  std::vector<std::string> complement(const std::vector<std::string>& subset) const {
    for (const auto& k : subset) (void)index_of(k);
    std::vector<std::string> out;
    for (const auto& l : labels_) {
      if (std::find(subset.begin(), subset.end(), l) == subset.end()) out.push_back(l);
    }
    return out;
  }

  SystemDims reordered(const std::vector<std::string>& order) const {
    if (order.size() != labels_.size()) throw DomainError("reorder: label count mismatch");
    std::vector<std::size_t> d;
    for (const auto& l : order) d.push_back(dims_[index_of(l)]);
    return SystemDims(order, d);
  }

  // Copy with one label renamed.
  SystemDims relabeled(const std::string& from, const std::string& to) const {
    std::vector<std::string> l = labels_;
    l[index_of(from)] = to;
    return SystemDims(std::move(l), dims_);
  }

  bool operator==(const SystemDims& o) const { return labels_ == o.labels_ && dims_ == o.dims_; }
  bool operator!=(const SystemDims& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (i) s += ", ";
      s += labels_[i] + ":" + std::to_string(dims_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> dims_;
};

namespace detail {

inline std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// For a permutation that lists, for each output position, the input factor
// it comes from, returns map[new_index] = old_index.
inline std::vector<std::size_t> permutation_index_map(const std::vector<std::size_t>& dims,
                                                      const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> new_dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = dims[perm[i]];
  auto old_strides = strides(dims);
  std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(perm.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) old += digit[k] * old_strides[perm[k]];
    map[idx] = old;
    for (std::size_t k = perm.size(); k-- > 0;) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

}  // namespace detail

// Reorders tensor factors of an operator. perm[i] names the old factor that
// lands at position i.
inline Matrix permute_systems(const Matrix& m, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& perm) {
  auto map = detail::permutation_index_map(dims, perm);
  Eigen::Index n = static_cast<Eigen::Index>(map.size());
  if (m.rows() != n || m.cols() != n) throw DomainError("permute_systems: shape mismatch");
  Matrix r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = m(map[i], map[j]);
  return r;
}

inline Vector permute_systems(const Vector& v, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& perm) {
  auto map = detail::permutation_index_map(dims, perm);
  Vector r(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) r(i) = v(map[i]);
  return r;
}

// Permutation taking `from` label order to `to` label order.
inline std::vector<std::size_t> label_permutation(const SystemDims& from, const std::vector<std::string>& to) {
  if (to.size() != from.size()) throw DomainError("label permutation: label count mismatch");
  std::vector<std::size_t> perm;
  for (const auto& l : to) perm.push_back(from.index_of(l));
  return perm;
}

inline Matrix reorder(const Matrix& m, const SystemDims& dims, const std::vector<std::string>& order) {
  return permute_systems(m, dims.dims(), label_permutation(dims, order));
}

inline Vector reorder(const Vector& v, const SystemDims& dims, const std::vector<std::string>& order) {
  return permute_systems(v, dims.dims(), label_permutation(dims, order));
}

// Partial trace keeping the factors flagged true, in their original order.
inline Matrix partial_trace(const Matrix& m, const std::vector<std::size_t>& dims, const std::vector<bool>& keep) {
  auto st = detail::strides(dims);
  std::size_t total = st.empty() ? 1 : st[0] * dims[0];
  if (static_cast<std::size_t>(m.rows()) != total) throw DomainError("partial_trace: shape mismatch");
  std::vector<std::size_t> kept_dims;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (keep[i]) kept_dims.push_back(dims[i]);
  auto kst = detail::strides(kept_dims);
  std::size_t kt = kst.empty() ? 1 : kst[0] * kept_dims[0];
  std::size_t tt = total / kt;

  // Decompose each composite index into (kept index, traced index).
  std::vector<std::size_t> kidx(total), tidx(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, k = 0, t = 0, kpos = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      std::size_t d = rem / st[f];
      rem %= st[f];
      if (keep[f]) {
        k += d * kst[kpos++];
      } else {
        t = t * dims[f] + d;
      }
    }
    kidx[idx] = k;
    tidx[idx] = t;
  }
  std::vector<std::vector<std::size_t>> by_t(tt);
  for (std::size_t idx = 0; idx < total; ++idx) by_t[tidx[idx]].push_back(idx);

  Matrix r = Matrix::Zero(static_cast<Eigen::Index>(kt), static_cast<Eigen::Index>(kt));
  for (const auto& group : by_t) {
    for (std::size_t a : group)
      for (std::size_t b : group) r(kidx[a], kidx[b]) += m(a, b);
  }
  return r;
}

inline Matrix partial_trace(const Matrix& m, const SystemDims& dims, const std::vector<std::string>& keep) {
  std::vector<bool> flags(dims.size(), false);
  for (const auto& k : keep) flags[dims.index_of(k)] = true;
  return partial_trace(m, dims.dims(), flags);
}

// op acting on the listed labels (in the listed order), identity elsewhere,
// expressed in the factor order of dims.
inline Matrix embed_operator(const Matrix& op, const SystemDims& dims, const std::vector<std::string>& on) {
  SystemDims sub = dims.reordered([&] {
    std::vector<std::string> order = on;
    auto rest = dims.complement(on);
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
  }());
  std::size_t d_on = 1;
  for (const auto& l : on) d_on *= dims.dim_of(l);
  if (static_cast<std::size_t>(op.rows()) != d_on || op.rows() != op.cols())
    throw DomainError("embed_operator: operator shape " + shape_string(op) + " does not match subsystems");
  Matrix full = kron(op, identity(static_cast<Eigen::Index>(dims.total() / d_on)));
  return reorder(full, sub, dims.labels());
}

}  // namespace qrd

#endif  // QRD_SYSTEMS_HPP
