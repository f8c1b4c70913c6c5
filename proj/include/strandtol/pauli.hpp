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

#ifndef STRANDTOL_PAULI_HPP
#define STRANDTOL_PAULI_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace strandtol {

using QubitId = uint32_t;

/// Single-qubit Pauli with phase discarded. Bit 0 is the X part, bit 1 the Z part,
/// so the product of two operators is the XOR of their codes.
enum class PauliOp : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline PauliOp operator*(PauliOp a, PauliOp b) {
    return static_cast<PauliOp>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}
inline bool has_x(PauliOp p) { return static_cast<uint8_t>(p) & 1; }
inline bool has_z(PauliOp p) { return static_cast<uint8_t>(p) & 2; }
inline PauliOp make_pauli(bool x, bool z) { return static_cast<PauliOp>((x ? 1 : 0) | (z ? 2 : 0)); }

char pauli_char(PauliOp p);
/// Parses one of "IXYZ". Throws std::invalid_argument otherwise.
PauliOp pauli_from_char(char c);

/// Sparse Pauli string. Identity entries are never stored.
class PauliString {
   public:
    PauliString() = default;
    PauliString(std::initializer_list<std::pair<const QubitId, PauliOp>> init);

    PauliOp get(QubitId q) const;
    void set(QubitId q, PauliOp p);
    /// Multiplies p into the entry for q.
    void apply(QubitId q, PauliOp p);
    bool is_identity() const { return ops_.empty(); }
    size_t weight() const { return ops_.size(); }
    const std::map<QubitId, PauliOp> &ops() const { return ops_; }

    bool operator==(const PauliString &other) const { return ops_ == other.ops_; }
    bool operator!=(const PauliString &other) const { return ops_ != other.ops_; }
    bool operator<(const PauliString &other) const { return ops_ < other.ops_; }

    /// Renders as e.g. "X0*Z3", or "I" for the identity.
    std::string str() const;

   private:
    std::map<QubitId, PauliOp> ops_;
};

PauliString multiply(const PauliString &a, const PauliString &b);

struct GateH {
    QubitId q;
};
struct GateP {
    QubitId q;
};
struct GateCX {
    QubitId control;
    QubitId target;
};
struct GatePauli {
    PauliString s;
};
using CliffordGate = std::variant<GateH, GateP, GateCX, GatePauli>;

/// Throws std::invalid_argument for a CX whose control equals its target.
void validate_gate(const CliffordGate &g);
/// The gate's inverse. Every gate here is self-inverse modulo phase except P,
/// whose inverse acts identically on phase-free Pauli strings.
CliffordGate inverse(const CliffordGate &g);

/// g s g^dagger with the phase discarded.
PauliString conjugate(const CliffordGate &g, const PauliString &s);
PauliString conjugate_circuit(const std::vector<CliffordGate> &gates, const PauliString &s);

}  // namespace strandtol

#endif
