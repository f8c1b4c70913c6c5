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

#include "strandtol/pauli.hpp"

#include <stdexcept>

namespace strandtol {

char pauli_char(PauliOp p) {
    return "IXZY"[static_cast<uint8_t>(p)];
}

PauliOp pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return PauliOp::I;
        case 'X':
            return PauliOp::X;
        case 'Y':
            return PauliOp::Y;
        case 'Z':
            return PauliOp::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli: '") + c + "'");
    }
}

PauliString::PauliString(std::initializer_list<std::pair<const QubitId, PauliOp>> init) {
    for (const auto &[q, p] : init) {
        apply(q, p);
    }
}

PauliOp PauliString::get(QubitId q) const {
    auto it = ops_.find(q);
    return it == ops_.end() ? PauliOp::I : it->second;
}

void PauliString::set(QubitId q, PauliOp p) {
    if (p == PauliOp::I) {
        ops_.erase(q);
    } else {
        ops_[q] = p;
    }
}

void PauliString::apply(QubitId q, PauliOp p) {
    set(q, get(q) * p);
}

std::string PauliString::str() const {
    if (ops_.empty()) {
        return "I";
    }
    std::string out;
    for (const auto &[q, p] : ops_) {
        if (!out.empty()) {
            out += '*';
        }
        out += pauli_char(p);
        out += std::to_string(q);
    }
    return out;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    PauliString r = a;
    for (const auto &[q, p] : b.ops()) {
        r.apply(q, p);
    }
    return r;
}

void validate_gate(const CliffordGate &g) {
    if (auto cx = std::get_if<GateCX>(&g)) {
        if (cx->control == cx->target) {
            throw std::invalid_argument("CX control equals target (qubit " + std::to_string(cx->control) + ")");
        }
    }
}

CliffordGate inverse(const CliffordGate &g) {
    return g;
}

PauliString conjugate(const CliffordGate &g, const PauliString &s) {
    PauliString r = s;
    if (auto h = std::get_if<GateH>(&g)) {
        PauliOp p = s.get(h->q);
        r.set(h->q, make_pauli(has_z(p), has_x(p)));
    } else if (auto ph = std::get_if<GateP>(&g)) {
        PauliOp p = s.get(ph->q);
        r.set(ph->q, make_pauli(has_x(p), has_z(p) != has_x(p)));
    } else if (auto cx = std::get_if<GateCX>(&g)) {
        validate_gate(g);
        PauliOp c = s.get(cx->control);
        PauliOp t = s.get(cx->target);
        r.set(cx->control, make_pauli(has_x(c), has_z(c) != has_z(t)));
        r.set(cx->target, make_pauli(has_x(t) != has_x(c), has_z(t)));
    }
    return r;
}

PauliString conjugate_circuit(const std::vector<CliffordGate> &gates, const PauliString &s) {
    PauliString r = s;
    for (const auto &g : gates) {
        r = conjugate(g, r);
    }
    return r;
}

}  // namespace strandtol
