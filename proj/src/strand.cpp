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

#include "strandtol/strand.hpp"

#include <bit>

namespace strandtol {

char check_char(CheckType t) {
    return t == CheckType::X ? 'X' : 'Z';
}

bool has_component(PauliOp p, CheckType t) {
    return t == CheckType::X ? has_x(p) : has_z(p);
}

ErrorState::ErrorState(int maxdegree) : maxdegree_(maxdegree) {
    (void)Poly(maxdegree);
}

int ErrorState::slot_of(QubitId q) const {
    auto it = qubit_slot_.find(q);
    if (it == qubit_slot_.end()) {
        throw StrandError("qubit " + std::to_string(q) + " is not active");
    }
    return it->second;
}

int ErrorState::allocate_slot() {
    if (used_slots_ == ~0ULL) {
        throw StrandError("more than 64 simultaneously active qubits and registers");
    }
    int s = std::countr_one(used_slots_);
    used_slots_ |= 1ULL << s;
    return s;
}

void ErrorState::release_slot(int s) {
    used_slots_ &= ~(1ULL << s);
}

void ErrorState::activate(QubitId q) {
    if (is_active(q)) {
        throw StrandError("qubit " + std::to_string(q) + " is already active");
    }
    qubit_slot_[q] = allocate_slot();
}

void ErrorState::accumulate(Terms &t, const Key &k, const Poly &v) {
    if (k.empty() || v.is_zero()) {
        return;
    }
    auto [it, inserted] = t.try_emplace(k, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) {
            t.erase(it);
        }
    }
}

Poly ErrorState::identity_probability() const {
    Poly r = Poly::constant(1, maxdegree_);
    for (const auto &[k, v] : terms_) {
        r -= v;
    }
    return r;
}

void ErrorState::mix(const std::vector<std::pair<Key, Poly>> &fresh) {
    Poly fresh_id = Poly::constant(1, maxdegree_);
    for (const auto &[k, v] : fresh) {
        fresh_id -= v;
    }
    Poly old_id = identity_probability();
    Terms next;
    next.reserve(terms_.size() * (fresh.size() + 1));
    auto fold = [&](const Key &k, const Poly &v) {
        if (v.is_zero()) {
            return;
        }
        accumulate(next, k, v * fresh_id);
        for (const auto &[f, w] : fresh) {
            accumulate(next, Key{k.x ^ f.x, k.z ^ f.z}, v * w);
        }
    };
    for (const auto &[k, v] : terms_) {
        fold(k, v);
    }
    fold(Key{}, old_id);
    terms_ = std::move(next);
}

namespace {

uint64_t bit(int s) {
    return 1ULL << s;
}

bool has_bit(uint64_t m, int s) {
    return (m >> s) & 1;
}

}  // namespace

void ErrorState::apply_gate(const OneQubitGate &loc) {
    int s = slot_of(loc.qubit);
    if (loc.gate != SingleGate::Identity) {
        Terms next;
        next.reserve(terms_.size());
        for (auto &[k, v] : terms_) {
            Key n = k;
            bool x = has_bit(k.x, s), z = has_bit(k.z, s);
            if (loc.gate == SingleGate::H) {
                n.x = (k.x & ~bit(s)) | (z ? bit(s) : 0);
                n.z = (k.z & ~bit(s)) | (x ? bit(s) : 0);
            } else {
                n.z = k.z ^ (x ? bit(s) : 0);
            }
            next.emplace(n, std::move(v));
        }
        terms_ = std::move(next);
    }
    std::vector<std::pair<Key, Poly>> fresh;
    for (const auto &[g, p] : loc.error) {
        if (g == PauliOp::I) {
            throw StrandError("one-qubit error map has an identity key");
        }
        Key k;
        k.x = has_x(g) ? bit(s) : 0;
        k.z = has_z(g) ? bit(s) : 0;
        fresh.emplace_back(k, p.with_maxdegree(maxdegree_));
    }
    if (!fresh.empty()) {
        mix(fresh);
    }
}

void ErrorState::apply_gate(const TwoQubitGate &loc) {
    if (loc.control == loc.target) {
        throw StrandError("CX control equals target");
    }
    int c = slot_of(loc.control);
    int t = slot_of(loc.target);
    Terms next;
    next.reserve(terms_.size());
    for (auto &[k, v] : terms_) {
        Key n = k;
        if (has_bit(k.x, c)) {
            n.x ^= bit(t);
        }
        if (has_bit(k.z, t)) {
            n.z ^= bit(c);
        }
        next.emplace(n, std::move(v));
    }
    terms_ = std::move(next);
    std::vector<std::pair<Key, Poly>> fresh;
    for (const auto &[g, p] : loc.error) {
        if (g.first == PauliOp::I && g.second == PauliOp::I) {
            throw StrandError("two-qubit error map has an identity key");
        }
        Key k;
        k.x = (has_x(g.first) ? bit(c) : 0) | (has_x(g.second) ? bit(t) : 0);
        k.z = (has_z(g.first) ? bit(c) : 0) | (has_z(g.second) ? bit(t) : 0);
        fresh.emplace_back(k, p.with_maxdegree(maxdegree_));
    }
    if (!fresh.empty()) {
        mix(fresh);
    }
}

void ErrorState::introduce_ancilla(const AncillaIntro &loc) {
    if (is_active(loc.qubit)) {
        throw StrandError("ancilla qubit " + std::to_string(loc.qubit) + " collides with an active qubit");
    }
    activate(loc.qubit);
    apply_gate(OneQubitGate{SingleGate::Identity, loc.qubit, loc.dist});
}

CheckpointRecord ErrorState::measure_reveal(const MeasureReveal &loc) {
    int s = slot_of(loc.qubit);
    std::vector<int> cond;
    for (RegisterId r : loc.condition) {
        auto it = register_slot_.find(r);
        if (it == register_slot_.end()) {
            throw StrandError("register " + std::to_string(r) + " holds no bit");
        }
        cond.push_back(it->second);
    }
    Key frame;
    for (const auto &[q, g] : loc.frame) {
        int fs = slot_of(q);
        if (fs == s) {
            throw StrandError("frame target is the measured qubit");
        }
        frame.x |= has_x(g) ? bit(fs) : 0;
        frame.z |= has_z(g) ? bit(fs) : 0;
    }
    int store = -1;
    if (loc.store) {
        if (register_slot_.count(*loc.store)) {
            throw StrandError("register " + std::to_string(*loc.store) + " already holds a bit");
        }
        store = allocate_slot();
    }

    Poly flip = loc.meas_error.with_maxdegree(maxdegree_);
    Poly keep = Poly::constant(1, maxdegree_) - flip;
    Poly p_L(maxdegree_);
    Terms next;
    next.reserve(terms_.size() * 2);
    auto fold = [&](const Key &k, const Poly &v) {
        bool c = has_bit(loc.checked == CheckType::X ? k.x : k.z, s);
        for (int f = 0; f < 2; f++) {
            const Poly &pf = f ? flip : keep;
            if (pf.is_zero()) {
                continue;
            }
            Poly w = v * pf;
            if (w.is_zero()) {
                continue;
            }
            bool b = c != static_cast<bool>(f);
            if (b) {
                p_L += w;
            }
            Key n{k.x & ~bit(s), k.z & ~bit(s)};
            bool fire = b;
            for (int r : cond) {
                fire = fire && has_bit(n.x, r);
                n.x &= ~bit(r);
            }
            if (fire) {
                n.x ^= frame.x;
                n.z ^= frame.z;
            }
            if (store >= 0 && b) {
                n.x |= bit(store);
            }
            accumulate(next, n, w);
        }
    };
    for (const auto &[k, v] : terms_) {
        fold(k, v);
    }
    fold(Key{}, identity_probability());
    terms_ = std::move(next);

    release_slot(s);
    qubit_slot_.erase(loc.qubit);
    for (size_t i = 0; i < cond.size(); i++) {
        release_slot(cond[i]);
        register_slot_.erase(loc.condition[i]);
    }
    if (store >= 0) {
        register_slot_[*loc.store] = store;
    }
    return CheckpointRecord{loc.label, p_L, loc.counted};
}

Poly ErrorState::probability(QubitId q, CheckType t) const {
    int s = slot_of(q);
    Poly r(maxdegree_);
    for (const auto &[k, v] : terms_) {
        if (has_bit(t == CheckType::X ? k.x : k.z, s)) {
            r += v;
        }
    }
    return r;
}

CheckpointRecord ErrorState::data_output(const DataOutput &loc) const {
    return CheckpointRecord{loc.label, probability(loc.qubit, loc.checked), true};
}

std::map<PauliString, Poly> ErrorState::distribution() const {
    std::map<PauliString, Poly> out;
    for (const auto &[k, v] : terms_) {
        PauliString s;
        for (const auto &[q, slot] : qubit_slot_) {
            s.set(q, make_pauli(has_bit(k.x, slot), has_bit(k.z, slot)));
        }
        if (s.is_identity()) {
            continue;
        }
        auto [it, inserted] = out.try_emplace(s, v);
        if (!inserted) {
            it->second += v;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    }
    return out;
}

RunResult run(const StrandCircuit &circuit, int maxdegree) {
    ErrorState state(maxdegree);
    RunResult result;
    size_t index = 0;
    try {
        for (QubitId q : circuit.inputs) {
            state.activate(q);
        }
        for (; index < circuit.locations.size(); index++) {
            const Location &loc = circuit.locations[index];
            if (auto g1 = std::get_if<OneQubitGate>(&loc)) {
                state.apply_gate(*g1);
            } else if (auto g2 = std::get_if<TwoQubitGate>(&loc)) {
                state.apply_gate(*g2);
            } else if (auto a = std::get_if<AncillaIntro>(&loc)) {
                state.introduce_ancilla(*a);
            } else if (auto m = std::get_if<MeasureReveal>(&loc)) {
                result.records.push_back(state.measure_reveal(*m));
            } else if (auto o = std::get_if<DataOutput>(&loc)) {
                result.outputs.push_back(state.data_output(*o));
            }
        }
    } catch (const StrandError &e) {
        throw StrandError((circuit.name.empty() ? "" : circuit.name + ": ") + "location " + std::to_string(index) +
                          ": " + e.what());
    }
    return result;
}

}  // namespace strandtol
