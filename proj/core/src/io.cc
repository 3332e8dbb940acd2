// Copyright 2026 The SkewSharp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skewsharp/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace skewsharp {

namespace {

using nlohmann::json;

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

// Entries may be [re, im] pairs or bare reals.
CMatrix matrix_from_json(const json& j, Eigen::Index dim, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw Error(ErrorCode::kParseError, where + ": expected " + std::to_string(dim) + " rows");
  }
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw Error(ErrorCode::kParseError,
                  where + ": row " + std::to_string(r) + " needs " + std::to_string(dim) + " entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& e = row[c];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorCode::kParseError, where + ": entry (" + std::to_string(r) + ", " +
                                                std::to_string(c) + ") is not [re, im]");
      }
    }
  }
  return m;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

Eigen::Index read_dim(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer() ||
      doc["dim"].get<long long>() < 1) {
    throw Error(ErrorCode::kParseError, "missing or invalid \"dim\"");
  }
  return doc["dim"].get<Eigen::Index>();
}

std::string dump(const json& j) {
  // nlohmann writes doubles with max_digits10 (17) already.
  return j.dump(1) + "\n";
}

}  // namespace

StateFile parse_state(const std::string& json_text) {
  const json doc = parse_json(json_text);
  const Eigen::Index dim = read_dim(doc);
  if (!doc.contains("matrix")) throw Error(ErrorCode::kParseError, "missing \"matrix\"");
  StateFile out;
  out.matrix = matrix_from_json(doc["matrix"], dim, "matrix");
  if (doc.contains("label") && doc["label"].is_string()) out.label = doc["label"].get<std::string>();
  return out;
}

ObservablesFile parse_observables(const std::string& json_text) {
  const json doc = parse_json(json_text);
  const Eigen::Index dim = read_dim(doc);
  if (!doc.contains("observables") || !doc["observables"].is_array() || doc["observables"].empty()) {
    throw Error(ErrorCode::kParseError, "missing or empty \"observables\"");
  }
  ObservablesFile out;
  std::size_t k = 0;
  for (const json& m : doc["observables"]) {
    out.observables.push_back(matrix_from_json(m, dim, "observables[" + std::to_string(k++) + "]"));
  }
  if (doc.contains("labels")) {
    const json& labels = doc["labels"];
    if (!labels.is_array() || labels.size() != out.observables.size()) {
      throw Error(ErrorCode::kParseError, "\"labels\" must match the number of observables");
    }
    for (const json& l : labels) {
      if (!l.is_string()) throw Error(ErrorCode::kParseError, "labels must be strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  return out;
}

std::string serialize_state(const StateFile& s) {
  json doc;
  doc["dim"] = s.matrix.rows();
  doc["matrix"] = matrix_json(s.matrix);
  if (!s.label.empty()) doc["label"] = s.label;
  return dump(doc);
}

std::string serialize_observables(const ObservablesFile& o) {
  json doc;
  doc["dim"] = o.observables.empty() ? 0 : o.observables.front().rows();
  doc["observables"] = json::array();
  for (const CMatrix& m : o.observables) doc["observables"].push_back(matrix_json(m));
  if (!o.labels.empty()) doc["labels"] = o.labels;
  return dump(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StateFile load_state(const std::string& path) { return parse_state(read_file(path)); }

ObservablesFile load_observables(const std::string& path) {
  return parse_observables(read_file(path));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string matrix_to_json(const CMatrix& m) { return matrix_json(m).dump(); }

std::string matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace skewsharp
