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

// JSON interchange for states and observables.
//
//   state:       {"dim": d, "matrix": [[[re, im], ...], ...], "label": "..."}
//   observables: {"dim": d, "observables": [<matrix>, ...], "labels": [...]}
//
// Numbers are written with 17 significant digits so a round trip is exact.

#ifndef SKEWSHARP_IO_H_
#define SKEWSHARP_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "skewsharp/skew.h"

namespace skewsharp {

struct StateFile {
  CMatrix matrix;
  std::string label;
};

struct ObservablesFile {
  std::vector<CMatrix> observables;
  std::vector<std::string> labels;
};

/// Throws kParseError on malformed JSON or a shape that disagrees with "dim".
StateFile parse_state(const std::string& json_text);
ObservablesFile parse_observables(const std::string& json_text);

std::string serialize_state(const StateFile& s);
std::string serialize_observables(const ObservablesFile& o);

StateFile load_state(const std::string& path);
ObservablesFile load_observables(const std::string& path);

/// Whole file as a string; kParseError if it cannot be opened.
std::string read_file(const std::string& path);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Compact "[[re, im], ...]" rows at full precision; used in reports.
std::string matrix_to_json(const CMatrix& m);
std::string matrix_to_json(const RMatrix& m);

}  // namespace skewsharp

#endif  // SKEWSHARP_IO_H_
