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

// JSON files for states, channels and distortion observables, and fixed
// 17-digit number formatting for CSV/JSON output.
//
// Matrix:     {"labels": [...], "dims": [...], "re": [[...]], "im": [[...]]}
// Channel:    {"in": {"labels", "dims"}, "out": {"labels", "dims"},
//              "kraus": [matrix, ...]}   ("im" optional everywhere)
// Observable: {"kind": "dense", "labels", "dims", "re", "im"}
//             {"kind": "ent_fid", "state": matrix-or-path}
//             {"kind": "classical", "d": [[...]]}

#ifndef QRD_IO_HPP
#define QRD_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrd/distortion.hpp"
#include "qrd/quantum.hpp"

namespace qrd::io {

using Json = nlohmann::json;

class FileError : public std::runtime_error {
 public:
  FileError(const std::string& path, const std::string& field, const std::string& what)
      : std::runtime_error(path + ": field '" + field + "': " + what), path_(path), field_(field) {}
  const std::string& path() const { return path_; }
  const std::string& field() const { return field_; }

 private:
  std::string path_, field_;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// JSON numbers cannot hold infinities; they are written as strings.
inline Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

// Serializes with every double printed at 17 significant digits.
inline std::string dump(const Json& j, int indent = 2) {
  std::function<void(const Json&, std::ostringstream&, int)> emit = [&](const Json& v, std::ostringstream& os,
                                                                        int depth) {
    std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' '), close(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    if (v.is_object()) {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(it.value(), os, depth + 1);
      }
      os << nl << close << "}";
    } else if (v.is_array()) {
      if (v.empty()) {
        os << "[]";
        return;
      }
      bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << (flat ? ", " : ",");
        if (!flat) os << nl << pad;
        emit(v[i], os, depth + 1);
      }
      if (!flat) os << nl << close;
      os << "]";
    } else if (v.is_number_float()) {
      os << format_double(v.get<double>());
    } else {
      os << v.dump();
    }
  };
  std::ostringstream os;
  emit(j, os, 0);
  return os.str();
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "<file>", "cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FileError(path, "<file>", std::string("invalid JSON: ") + e.what());
  }
}

namespace detail {

inline const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw FileError(path, key, "missing");
  return j.at(key);
}

inline RealMatrix real_rows(const Json& j, const std::string& path, const std::string& field) {
  if (!j.is_array() || j.empty()) throw FileError(path, field, "expected a non-empty array of rows");
  auto rows = static_cast<Eigen::Index>(j.size());
  auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  if (cols == 0) throw FileError(path, field, "rows must be non-empty arrays");
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw FileError(path, field, "row " + std::to_string(r) + " has the wrong length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw FileError(path, field, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not a number");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

inline SystemDims dims_from(const Json& j, const std::string& path, const std::string& prefix, Eigen::Index total) {
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  if (j.contains("dims")) {
    try {
      dims = j.at("dims").get<std::vector<std::size_t>>();
    } catch (const Json::exception&) {
      throw FileError(path, prefix + "dims", "expected an array of positive integers");
    }
  } else {
    dims = {static_cast<std::size_t>(total)};
  }
  if (j.contains("labels")) {
    try {
      labels = j.at("labels").get<std::vector<std::string>>();
    } catch (const Json::exception&) {
      throw FileError(path, prefix + "labels", "expected an array of strings");
    }
  } else {
    for (std::size_t k = 0; k < dims.size(); ++k) labels.push_back(dims.size() == 1 ? "A" : "A" + std::to_string(k + 1));
  }
  if (labels.size() != dims.size()) throw FileError(path, prefix + "labels", "length differs from dims");
  try {
    SystemDims sd(labels, dims);
    if (static_cast<Eigen::Index>(sd.total()) != total)
      throw FileError(path, prefix + "dims", "product " + std::to_string(sd.total()) + " differs from matrix size " +
                                                 std::to_string(total));
    return sd;
  } catch (const DomainError& e) {
    throw FileError(path, prefix + "dims", e.what());
  }
}

}  // namespace detail

struct LabeledMatrix {
  Matrix m;
  SystemDims dims;
};

inline LabeledMatrix matrix_from_json(const Json& j, const std::string& path, const std::string& prefix = "") {
  RealMatrix re = detail::real_rows(detail::need(j, "re", path), path, prefix + "re");
  Matrix m = re.cast<cplx>();
  if (j.contains("im")) {
    RealMatrix im = detail::real_rows(j.at("im"), path, prefix + "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw FileError(path, prefix + "im", "shape differs from re");
    m += cplx(0, 1) * im.cast<cplx>();
  }
  if (m.rows() != m.cols()) throw FileError(path, prefix + "re", "matrix must be square");
  return {m, detail::dims_from(j, path, prefix, m.rows())};
}

inline Json matrix_to_json(const Matrix& m, const SystemDims& dims) {
  Json j;
  j["labels"] = dims.labels();
  j["dims"] = dims.dims();
  Json re = Json::array(), im = Json::array();
  bool complex = false;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
      complex = complex || m(r, c).imag() != 0.0;
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  j["re"] = re;
  if (complex) j["im"] = im;
  return j;
}

inline DensityOperator load_density(const std::string& path) {
  Json j = read_json(path);
  LabeledMatrix lm = matrix_from_json(j, path);
  try {
    return DensityOperator(lm.m, lm.dims);
  } catch (const DomainError& e) {
    throw FileError(path, "re", e.what());
  }
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FileError(path, "<file>", "cannot write");
  out << dump(j) << "\n";
}

inline QuantumChannel channel_from_json(const Json& j, const std::string& path) {
  auto io_dims = [&](const char* key) {
    const Json& s = detail::need(j, key, path);
    try {
      return SystemDims(s.at("labels").get<std::vector<std::string>>(), s.at("dims").get<std::vector<std::size_t>>());
    } catch (const std::exception& e) {
      throw FileError(path, std::string(key), e.what());
    }
  };
  SystemDims in = io_dims("in"), out = io_dims("out");
  const Json& kr = detail::need(j, "kraus", path);
  if (!kr.is_array() || kr.empty()) throw FileError(path, "kraus", "expected a non-empty array");
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < kr.size(); ++k) {
    std::string f = "kraus[" + std::to_string(k) + "].";
    RealMatrix re = detail::real_rows(detail::need(kr[k], "re", path), path, f + "re");
    Matrix m = re.cast<cplx>();
    if (kr[k].contains("im")) {
      RealMatrix im = detail::real_rows(kr[k].at("im"), path, f + "im");
      if (im.rows() != re.rows() || im.cols() != re.cols()) throw FileError(path, f + "im", "shape differs from re");
      m += cplx(0, 1) * im.cast<cplx>();
    }
    ops.push_back(m);
  }
  try {
    return QuantumChannel::from_kraus(ops, in, out);
  } catch (const DomainError& e) {
    throw FileError(path, "kraus", e.what());
  }
}

inline QuantumChannel load_channel(const std::string& path) { return channel_from_json(read_json(path), path); }

inline Json channel_to_json(const QuantumChannel& ch) {
  Json j;
  j["in"] = {{"labels", ch.input_dims().labels()}, {"dims", ch.input_dims().dims()}};
  j["out"] = {{"labels", ch.output_dims().labels()}, {"dims", ch.output_dims().dims()}};
  Json ks = Json::array();
  for (const auto& k : ch.kraus()) {
    Json m = matrix_to_json(k, SystemDims::single("K", static_cast<std::size_t>(k.rows())));
    m.erase("labels");
    m.erase("dims");
    ks.push_back(m);
  }
  j["kraus"] = ks;
  return j;
}

// Observables act on reference (x) output. ent_fid takes the purification's
// state (or a path to it) and renames `source` to `output`.
inline DistortionObservable load_observable(const std::string& path) {
  Json j = read_json(path);
  const Json& kind = detail::need(j, "kind", path);
  if (!kind.is_string()) throw FileError(path, "kind", "expected a string");
  std::string k = kind.get<std::string>();
  try {
    if (k == "dense") {
      LabeledMatrix lm = matrix_from_json(j, path);
      return DistortionObservable(lm.m, lm.dims);
    }
    if (k == "classical") {
      RealMatrix d = detail::real_rows(detail::need(j, "d", path), path, "d");
      return classical_cc_observable(d);
    }
    if (k == "ent_fid") {
      const Json& s = detail::need(j, "state", path);
      LabeledMatrix lm = s.is_string() ? matrix_from_json(read_json(s.get<std::string>()), s.get<std::string>())
                                       : matrix_from_json(s, path, "state.");
      DensityOperator rho(lm.m, lm.dims);
      PureState phi = purify(rho, j.value("reference", std::string("R")));
      return entanglement_fidelity_observable(phi, j.value("source", std::string("A")), j.value("output", std::string("B")));
    }
  } catch (const DomainError& e) {
    throw FileError(path, "kind", e.what());
  }
  throw FileError(path, "kind", "unknown kind '" + k + "' (dense, ent_fid, classical)");
}

// ------------------------------------------------------------------- CSV

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& cols) { row(cols); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << csv_escape(cells[i]);
    os_ << "\n";
  }

 private:
  std::ostream& os_;
};

}  // namespace qrd::io

#endif  // QRD_IO_HPP
