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

#include "strandtol/procedures.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace strandtol {

const std::vector<ProcedureId> &all_procedures() {
    static const std::vector<ProcedureId> v = {ProcedureId::SteaneSingle, ProcedureId::SteaneDouble,
                                               ProcedureId::Knill};
    return v;
}

const std::vector<EncodedGate> &all_gates() {
    static const std::vector<EncodedGate> v = {EncodedGate::Idle, EncodedGate::H, EncodedGate::CX, EncodedGate::P,
                                               EncodedGate::T};
    return v;
}

std::string procedure_name(ProcedureId p) {
    switch (p) {
        case ProcedureId::SteaneSingle:
            return "steane-single";
        case ProcedureId::SteaneDouble:
            return "steane-double";
        case ProcedureId::Knill:
            return "knill";
    }
    return "?";
}

std::string gate_name(EncodedGate g) {
    switch (g) {
        case EncodedGate::Idle:
            return "idle";
        case EncodedGate::H:
            return "h";
        case EncodedGate::CX:
            return "cx";
        case EncodedGate::P:
            return "p";
        case EncodedGate::T:
            return "t";
    }
    return "?";
}

namespace {

std::string lower(std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
    return r;
}

}  // namespace

ProcedureId parse_procedure(std::string_view s) {
    std::string l = lower(s);
    for (auto p : all_procedures()) {
        if (procedure_name(p) == l) {
            return p;
        }
    }
    throw std::invalid_argument("unknown procedure '" + std::string(s) +
                                "' (expected steane-single, steane-double or knill)");
}

EncodedGate parse_gate(std::string_view s) {
    std::string l = lower(s);
    if (l == "none") {
        return EncodedGate::Idle;
    }
    for (auto g : all_gates()) {
        if (gate_name(g) == l) {
            return g;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(s) + "' (expected idle, h, cx, p or t)");
}

OneQubitErrors ancilla_defaults(char kind, int maxdegree) {
    auto sum = [&](std::initializer_list<const char *> pairs) {
        Poly r(maxdegree);
        for (const char *k : pairs) {
            r += Poly::var(two_qubit_parameter(pauli_from_char(k[0]), pauli_from_char(k[1])), maxdegree);
        }
        return r;
    };
    OneQubitErrors d;
    if (kind == 'A') {
        d[PauliOp::X] = sum({"XZ", "XI", "IX", "XX"});
        d[PauliOp::Y] = sum({"IY", "XY"});
        d[PauliOp::Z] = sum({"IZ", "XZ"});
    } else if (kind == 'B') {
        d[PauliOp::X] = sum({"XI", "XZ"});
        d[PauliOp::Y] = sum({"YI", "YZ"});
        d[PauliOp::Z] = sum({"IZ", "XZ", "ZI", "ZZ"});
    } else {
        throw std::invalid_argument("ancilla kind must be A or B");
    }
    return d;
}

namespace {

class Builder {
   public:
    Builder(std::string name, const BuildOptions &opt) : opt_(opt) {
        c_.name = std::move(name);
    }

    QubitId data() {
        QubitId q = next_qubit_++;
        c_.inputs.push_back(q);
        return q;
    }

    QubitId ancilla(char kind, bool bell_half = false) {
        QubitId q = next_qubit_++;
        OneQubitErrors dist;
        if (opt_.default_ancillae) {
            dist = ancilla_defaults(kind, opt_.maxdegree);
        } else {
            for (PauliOp g : {PauliOp::X, PauliOp::Y, PauliOp::Z}) {
                dist[g] = Poly::var(ancilla_parameter(kind, g), opt_.maxdegree);
            }
        }
        if (bell_half && opt_.knill_ancilla_scale != Rational(1)) {
            for (auto &[g, p] : dist) {
                p = p * opt_.knill_ancilla_scale;
            }
        }
        c_.locations.emplace_back(AncillaIntro{q, dist});
        return q;
    }

    void h(QubitId q) {
        OneQubitErrors e;
        for (PauliOp g : {PauliOp::X, PauliOp::Y, PauliOp::Z}) {
            e[g] = Poly::var(one_qubit_parameter(g), opt_.maxdegree);
        }
        c_.locations.emplace_back(OneQubitGate{SingleGate::H, q, e});
    }

    void cx(QubitId control, QubitId target) {
        TwoQubitErrors e;
        for (PauliOp a : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
            for (PauliOp b : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
                if (a != PauliOp::I || b != PauliOp::I) {
                    e[{a, b}] = Poly::var(two_qubit_parameter(a, b), opt_.maxdegree);
                }
            }
        }
        c_.locations.emplace_back(TwoQubitGate{control, target, e});
    }

    void measure(QubitId q, std::string label, bool counted, std::vector<std::pair<QubitId, PauliOp>> frame = {},
                 std::optional<RegisterId> store = std::nullopt, std::vector<RegisterId> condition = {}) {
        MeasureReveal m{q, CheckType::X, Poly::var(Parameter::pM, opt_.maxdegree), std::move(frame),
                        std::move(label), counted, store, std::move(condition)};
        c_.locations.emplace_back(std::move(m));
    }

    void outputs(QubitId q, const std::string &prefix) {
        c_.locations.emplace_back(DataOutput{q, CheckType::X, prefix + "out.X"});
        c_.locations.emplace_back(DataOutput{q, CheckType::Z, prefix + "out.Z"});
    }

    RegisterId reg() { return next_register_++; }

    // Steane X-error extraction: transversal CX from data to an A-type ancilla.
    void fx(QubitId d, const std::string &label, bool counted, bool twice) {
        extract(d, label + ".FX", counted, twice, 'A', PauliOp::X);
    }

    // Steane Z-error extraction: transversal CX from a B-type ancilla into the
    // data, read out after a Hadamard on the ancilla.
    void fz(QubitId d, const std::string &label, bool counted, bool twice) {
        extract(d, label + ".FZ", counted, twice, 'B', PauliOp::Z);
    }

    StrandCircuit finish() { return std::move(c_); }

   private:
    void couple(QubitId d, char kind) {
        if (kind == 'A') {
            QubitId a = last_ = ancilla('A');
            cx(d, a);
        } else {
            QubitId a = last_ = ancilla('B');
            cx(a, d);
            h(a);
        }
    }

    void extract(QubitId d, const std::string &label, bool counted, bool twice, char kind, PauliOp fix) {
        if (!twice) {
            couple(d, kind);
            measure(last_, label, counted, {{d, fix}});
            return;
        }
        RegisterId r = reg();
        couple(d, kind);
        measure(last_, label + "'1", counted, {}, r);
        couple(d, kind);
        measure(last_, label + "'2", counted, {{d, fix}}, std::nullopt, {r});
    }

    StrandCircuit c_;
    BuildOptions opt_;
    QubitId next_qubit_ = 0;
    RegisterId next_register_ = 0;
    QubitId last_ = 0;
};

StrandCircuit build_steane(EncodedGate gate, bool twice, const BuildOptions &opt, std::string name) {
    Builder b(std::move(name), opt);
    switch (gate) {
        case EncodedGate::Idle: {
            QubitId d = b.data();
            b.fz(d, "init1", false, twice);
            b.fx(d, "init2", false, twice);
            b.fx(d, "ec1", true, twice);
            b.fz(d, "ec2", true, twice);
            b.fz(d, "ec3", true, twice);
            b.fx(d, "ec4", true, twice);
            b.outputs(d, "");
            break;
        }
        case EncodedGate::H: {
            QubitId d = b.data();
            b.fz(d, "init1", false, twice);
            b.fx(d, "init2", false, twice);
            b.h(d);
            b.fx(d, "ec1", true, twice);
            b.fz(d, "ec2", true, twice);
            b.outputs(d, "");
            break;
        }
        case EncodedGate::CX: {
            QubitId c = b.data();
            QubitId t = b.data();
            b.fz(c, "ctrl.init1", false, twice);
            b.fx(c, "ctrl.init2", false, twice);
            b.fx(t, "targ.init1", false, twice);
            b.fz(t, "targ.init2", false, twice);
            b.cx(c, t);
            b.fz(c, "ctrl.ec1", true, twice);
            b.fx(c, "ctrl.ec2", true, twice);
            b.fx(t, "targ.ec1", true, twice);
            b.fz(t, "targ.ec2", true, twice);
            b.outputs(c, "ctrl.");
            b.outputs(t, "targ.");
            break;
        }
        case EncodedGate::P:
        case EncodedGate::T: {
            // The data is measured into the teleportation and replaced by the
            // logical ancilla; the propagated frame needs no physical gate.
            QubitId d = b.data();
            b.fx(d, "init1", false, twice);
            b.fz(d, "init2", false, twice);
            b.measure(d, "teleport", true);
            QubitId n = b.ancilla('B');
            b.fz(n, "anc.ec1", true, twice);
            if (twice) {
                b.fx(n, "anc.ec2", true, false);
            }
            b.outputs(n, "anc.");
            break;
        }
    }
    return b.finish();
}

StrandCircuit build_knill(EncodedGate gate, const BuildOptions &opt, std::string name) {
    Builder b(std::move(name), opt);
    // Teleport-decode blocks. The output half of the Bell pair becomes the new
    // data and is not touched again inside the gadget.
    auto ka = [&](QubitId d, const std::string &prefix) {
        QubitId a = b.ancilla('A', true);
        QubitId o = b.ancilla('A', true);
        b.cx(d, a);
        b.h(d);
        b.measure(d, prefix + "KA.data", true);
        b.measure(a, prefix + "KA.anc", true);
        return o;
    };
    auto kb = [&](QubitId d, const std::string &prefix) {
        QubitId a = b.ancilla('B', true);
        QubitId o = b.ancilla('A', true);
        b.cx(a, d);
        b.h(a);
        b.measure(d, prefix + "KB.data", true);
        b.measure(a, prefix + "KB.anc", true);
        return o;
    };
    switch (gate) {
        case EncodedGate::Idle:
        case EncodedGate::P:
        case EncodedGate::T: {
            QubitId d = b.ancilla('B', true);
            b.outputs(ka(d, ""), "");
            break;
        }
        case EncodedGate::H: {
            QubitId d = b.ancilla('B', true);
            b.h(d);
            b.outputs(kb(d, ""), "");
            break;
        }
        case EncodedGate::CX: {
            QubitId c = b.ancilla('B', true);
            QubitId t = b.ancilla('A', true);
            b.cx(c, t);
            QubitId oc = ka(c, "ctrl.");
            QubitId ot = kb(t, "targ.");
            b.outputs(oc, "ctrl.");
            b.outputs(ot, "targ.");
            break;
        }
    }
    return b.finish();
}

}  // namespace

StrandCircuit build(ProcedureId proc, EncodedGate gate, const BuildOptions &options) {
    std::string name = procedure_name(proc) + "/" + gate_name(gate);
    switch (proc) {
        case ProcedureId::SteaneSingle:
            return build_steane(gate, false, options, name);
        case ProcedureId::SteaneDouble:
            return build_steane(gate, true, options, name);
        case ProcedureId::Knill:
            return build_knill(gate, options, name);
    }
    throw std::invalid_argument("unsupported procedure");
}

Combinator combinator(ProcedureId proc, EncodedGate gate) {
    return proc == ProcedureId::Knill && gate == EncodedGate::H ? Combinator::Min : Combinator::Max;
}

std::vector<CheckpointRecord> GadgetAnalysis::counted() const {
    std::vector<CheckpointRecord> r;
    for (const auto &c : records) {
        if (c.counted) {
            r.push_back(c);
        }
    }
    return r;
}

Expr GadgetAnalysis::table_entry() const {
    return factor_common(expr.first_order());
}

GadgetAnalysis analyze(ProcedureId proc, EncodedGate gate, const BuildOptions &options) {
    RunResult r = run(build(proc, gate, options), options.maxdegree);
    GadgetAnalysis a{proc, gate, combinator(proc, gate), Expr(Poly(options.maxdegree)), r.records, r.outputs};
    std::vector<Expr> leaves;
    for (const auto &c : a.counted()) {
        leaves.emplace_back(c.p_L);
    }
    if (!leaves.empty()) {
        a.expr = a.combinator == Combinator::Max ? Expr::max_of(std::move(leaves)) : Expr::min_of(std::move(leaves));
    }
    return a;
}

const GadgetAnalysis &analyze_cached(ProcedureId proc, EncodedGate gate, int maxdegree) {
    static std::mutex mu;
    static std::map<std::tuple<ProcedureId, EncodedGate, int>, std::unique_ptr<GadgetAnalysis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[{proc, gate, maxdegree}];
    if (!slot) {
        BuildOptions opt;
        opt.maxdegree = maxdegree;
        slot = std::make_unique<GadgetAnalysis>(analyze(proc, gate, opt));
    }
    return *slot;
}

}  // namespace strandtol
