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

#ifndef STRANDTOL_STRAND_HPP
#define STRANDTOL_STRAND_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "strandtol/pauli.hpp"
#include "strandtol/symbolic.hpp"

namespace strandtol {

/// Raised for malformed circuits: inactive qubits, collisions, bad error maps.
struct StrandError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class CheckType { X, Z };
char check_char(CheckType t);
/// True if p has a component of the checked type. Y counts for both types.
bool has_component(PauliOp p, CheckType t);

using RegisterId = uint32_t;
using OneQubitErrors = std::map<PauliOp, Poly>;
using TwoQubitErrors = std::map<std::pair<PauliOp, PauliOp>, Poly>;

enum class SingleGate { H, P, Identity };

/// Ideal gate followed by a fresh error drawn from the error map.
struct OneQubitGate {
    SingleGate gate;
    QubitId qubit;
    OneQubitErrors error;
};

/// Ideal CX followed by a fresh two-qubit error keyed by (control, target) Paulis.
struct TwoQubitGate {
    QubitId control;
    QubitId target;
    TwoQubitErrors error;
};

struct AncillaIntro {
    QubitId qubit;
    OneQubitErrors dist;
};

/// Reads the checked-type component of a qubit through a noisy classical bit,
/// applies the frame correction when the bit fires, and discards the qubit.
///
/// A measurement can store its bit in a classical register, and can require a
/// set of registers to be 1 before its frame correction applies. Registers are
/// consumed by the measurement that conditions on them.
struct MeasureReveal {
    QubitId qubit;
    CheckType checked;
    Poly meas_error;
    std::vector<std::pair<QubitId, PauliOp>> frame;
    std::string label;
    /// False for measurements belonging to state initialization.
    bool counted = true;
    std::optional<RegisterId> store;
    std::vector<RegisterId> condition;
};

struct DataOutput {
    QubitId qubit;
    CheckType checked;
    std::string label;
};

using Location = std::variant<OneQubitGate, TwoQubitGate, AncillaIntro, MeasureReveal, DataOutput>;

struct StrandCircuit {
    std::string name;
    /// Qubits that are active and error free before the first location.
    std::vector<QubitId> inputs;
    std::vector<Location> locations;
};

struct CheckpointRecord {
    std::string label;
    Poly p_L;
    bool counted = true;
};

/// Joint distribution of Pauli errors on the active qubits and the stored
/// classical register bits. The identity entry is implicit.
class ErrorState {
   public:
    explicit ErrorState(int maxdegree = kDefaultMaxDegree);

    int maxdegree() const { return maxdegree_; }
    bool is_active(QubitId q) const { return qubit_slot_.count(q) != 0; }
    void activate(QubitId q);

    void apply_gate(const OneQubitGate &loc);
    void apply_gate(const TwoQubitGate &loc);
    void introduce_ancilla(const AncillaIntro &loc);
    CheckpointRecord measure_reveal(const MeasureReveal &loc);
    CheckpointRecord data_output(const DataOutput &loc) const;

    /// Probability that q carries a component of the checked type.
    Poly probability(QubitId q, CheckType t) const;
    Poly identity_probability() const;
    /// Distribution over Pauli strings on the active qubits with registers
    /// marginalized out. The identity string is omitted.
    std::map<PauliString, Poly> distribution() const;
    size_t num_terms() const { return terms_.size(); }

   private:
    struct Key {
        uint64_t x = 0;
        uint64_t z = 0;
        bool operator==(const Key &o) const { return x == o.x && z == o.z; }
        bool empty() const { return !x && !z; }
    };
    struct KeyHash {
        size_t operator()(const Key &k) const { return std::hash<uint64_t>()(k.x * 0x9E3779B97F4A7C15ULL ^ k.z); }
    };
    using Terms = std::unordered_map<Key, Poly, KeyHash>;

    int slot_of(QubitId q) const;
    int allocate_slot();
    void release_slot(int s);
    void mix(const std::vector<std::pair<Key, Poly>> &fresh);
    static void accumulate(Terms &t, const Key &k, const Poly &v);

    int maxdegree_;
    Terms terms_;
    std::map<QubitId, int> qubit_slot_;
    std::map<RegisterId, int> register_slot_;
    uint64_t used_slots_ = 0;
};

struct RunResult {
    std::vector<CheckpointRecord> records;
    std::vector<CheckpointRecord> outputs;
};

/// Folds an error state through every location. Lifecycle violations are
/// reported as StrandError with the offending location index.
RunResult run(const StrandCircuit &circuit, int maxdegree = kDefaultMaxDegree);

struct SimulatedCheckpoint {
    std::string label;
    bool counted = true;
    bool is_output = false;
    uint64_t hits = 0;
    uint64_t trials = 0;
    double rate() const { return trials ? static_cast<double>(hits) / trials : 0.0; }
    double standard_error() const;
};

struct SimulationResult {
    std::vector<SimulatedCheckpoint> records;
    std::vector<SimulatedCheckpoint> outputs;
};

/// Monte-Carlo sampling of concrete faults with the same revelation rules as
/// the symbolic engine. Trials are split into fixed-size chunks with their own
/// seeds, so the result depends only on (circuit, values, trials, seed).
/// Parallelism is capped by threads, or STRANDTOL_THREADS when threads is 0.
SimulationResult simulate(const StrandCircuit &circuit, const ParamValues &values, uint64_t trials, uint64_t seed,
                          unsigned threads = 0);

/// Worker count from STRANDTOL_THREADS, falling back to the hardware count.
unsigned default_thread_count();

}  // namespace strandtol

#endif
