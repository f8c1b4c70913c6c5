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

#ifndef STRANDTOL_PROCEDURES_HPP
#define STRANDTOL_PROCEDURES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "strandtol/strand.hpp"
#include "strandtol/symbolic.hpp"

namespace strandtol {

enum class ProcedureId { SteaneSingle, SteaneDouble, Knill };
enum class EncodedGate { Idle, H, CX, P, T };
enum class Combinator { Max, Min };

const std::vector<ProcedureId> &all_procedures();
const std::vector<EncodedGate> &all_gates();
/// "steane-single", "steane-double", "knill".
std::string procedure_name(ProcedureId p);
/// "idle", "h", "cx", "p", "t".
std::string gate_name(EncodedGate g);
/// Accepts the names above, case-insensitively. Throws std::invalid_argument.
ProcedureId parse_procedure(std::string_view s);
EncodedGate parse_gate(std::string_view s);

/// Default single-qubit distribution of an A-type (kind 'A') or B-type ('B')
/// ancilla in terms of the two-qubit gate parameters.
OneQubitErrors ancilla_defaults(char kind, int maxdegree = kDefaultMaxDegree);

struct BuildOptions {
    /// Replace the pA/pB parameters with ancilla_defaults.
    bool default_ancillae = false;
    /// Multiplies the error distribution of Knill's Bell-pair ancilla halves.
    Rational knill_ancilla_scale = 1;
    int maxdegree = kDefaultMaxDegree;
};

/// Strand circuit of one encoded gate.
///
/// Faults follow the ideal operation they belong to. Pure waiting carries no
/// error. Steane extraction reads every ancilla through a Z-basis measurement
/// that checks the X component, with a noisy H in front for Z-error extraction.
/// Double extraction stores the first bit and applies the correction only when
/// both extractions fire. T and P use the teleported gadget with a fresh B-type
/// logical ancilla and end after its first correction.
StrandCircuit build(ProcedureId proc, EncodedGate gate, const BuildOptions &options = {});

/// How checkpoint polynomials combine into the gadget's expression.
Combinator combinator(ProcedureId proc, EncodedGate gate);

struct GadgetAnalysis {
    ProcedureId procedure;
    EncodedGate gate;
    Combinator combinator;
    /// Combination of the counted measurement checkpoints.
    Expr expr;
    /// Every measurement, counted or not, in circuit order.
    std::vector<CheckpointRecord> records;
    /// Data outputs in circuit order.
    std::vector<CheckpointRecord> outputs;

    std::vector<CheckpointRecord> counted() const;
    /// First-order expression in the common + max(...) layout of the tables.
    Expr table_entry() const;
};

GadgetAnalysis analyze(ProcedureId proc, EncodedGate gate, const BuildOptions &options = {});
/// Same as analyze with default options, memoized per (proc, gate, maxdegree).
const GadgetAnalysis &analyze_cached(ProcedureId proc, EncodedGate gate, int maxdegree = kDefaultMaxDegree);

}  // namespace strandtol

#endif
