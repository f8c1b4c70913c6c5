// Copyright 2026 The strandtol Authors
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

#ifndef STRANDTOL_JSON_IO_HPP
#define STRANDTOL_JSON_IO_HPP

#include <json.hpp>
#include <stdexcept>
#include <vector>

#include "strandtol/channel.hpp"
#include "strandtol/strand.hpp"
#include "strandtol/symbolic.hpp"

namespace strandtol {

using json = nlohmann::ordered_json;

/// Structurally invalid JSON document for one of the schemas below.
struct JsonFormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// {"monomial": "num/den"} with monomials written as sorted names joined by "*"
/// and "1" for the constant term.
json poly_to_json(const Poly &p);
Poly poly_from_json(const json &j, int maxdegree = kDefaultMaxDegree);

/// A leaf is {"poly": {...}}; inner nodes are {"max": [...]}, {"min": [...]}
/// or {"sum": [...]}.
json expr_to_json(const Expr &e);
Expr expr_from_json(const json &j, int maxdegree = kDefaultMaxDegree);

/// Location list with a "type" tag per entry: "gate1", "cx", "ancilla",
/// "measure" or "output". Error entries are polynomial strings such as
/// "p2XZ + p2XI".
json circuit_to_json(const StrandCircuit &c);
StrandCircuit circuit_from_json(const json &j, int maxdegree = kDefaultMaxDegree);

/// A channel is a list of 2x2 matrices, each a list of rows of [re, im] pairs.
json channel_to_json(const KrausChannel &c);
KrausChannel channel_from_json(const json &j);
/// Accepts one channel, or {"channels": [channel, ...]}.
std::vector<KrausChannel> channels_from_json(const json &j);

}  // namespace strandtol

#endif
