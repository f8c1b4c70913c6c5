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

#include "strandtol/json_io.hpp"

#include <algorithm>
#include <stdexcept>

namespace strandtol {

namespace {

std::string monomial_key(const Monomial &m) {
    auto f = m.factors();
    if (f.empty()) {
        return "1";
    }
    std::string out;
    for (auto p : f) {
        if (!out.empty()) {
            out += '*';
        }
        out += parameter_name(p);
    }
    return out;
}

[[noreturn]] void bad(const std::string &why) {
    throw JsonFormatError("malformed JSON: " + why);
}

std::string as_string(const json &j, const char *field) {
    if (!j.contains(field) || !j[field].is_string()) {
        bad(std::string("missing string field '") + field + "'");
    }
    return j[field].get<std::string>();
}

uint32_t as_uint(const json &j, const char *field) {
    if (!j.contains(field) || !j[field].is_number_unsigned()) {
        bad(std::string("missing nonnegative integer field '") + field + "'");
    }
    return j[field].get<uint32_t>();
}

Poly poly_field(const json &v, int maxdegree) {
    if (v.is_string()) {
        return parse_poly(v.get<std::string>(), maxdegree);
    }
    if (v.is_object()) {
        return poly_from_json(v, maxdegree);
    }
    bad("polynomial must be a string or an object");
}

CheckType check_field(const json &j) {
    std::string s = as_string(j, "checked");
    if (s == "X") {
        return CheckType::X;
    }
    if (s == "Z") {
        return CheckType::Z;
    }
    bad("checked must be \"X\" or \"Z\"");
}

json one_qubit_errors(const OneQubitErrors &e) {
    json j = json::object();
    for (const auto &[g, p] : e) {
        j[std::string(1, pauli_char(g))] = canonical_string(p);
    }
    return j;
}

OneQubitErrors one_qubit_errors_from(const json &j, int maxdegree) {
    OneQubitErrors e;
    if (!j.is_object()) {
        bad("error map must be an object");
    }
    for (const auto &[k, v] : j.items()) {
        if (k.size() != 1 || pauli_from_char(k[0]) == PauliOp::I) {
            bad("one-qubit error key '" + k + "'");
        }
        e[pauli_from_char(k[0])] = poly_field(v, maxdegree);
    }
    return e;
}

}  // namespace

json poly_to_json(const Poly &p) {
    json j = json::object();
    auto terms = p.terms();
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return canonical_less(a.first, b.first); });
    for (const auto &[m, c] : terms) {
        j[monomial_key(m)] = std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
    }
    return j;
}

Poly poly_from_json(const json &j, int maxdegree) {
    if (!j.is_object()) {
        bad("polynomial must be an object");
    }
    Poly r(maxdegree);
    for (const auto &[k, v] : j.items()) {
        if (!v.is_string()) {
            bad("coefficient of '" + k + "' must be a string");
        }
        std::vector<Parameter> factors;
        if (k != "1") {
            size_t start = 0;
            while (start <= k.size()) {
                size_t end = k.find('*', start);
                std::string name = k.substr(start, end == std::string::npos ? std::string::npos : end - start);
                auto p = parameter_from_name(name);
                if (!p) {
                    bad("unknown parameter '" + name + "'");
                }
                factors.push_back(*p);
                if (end == std::string::npos) {
                    break;
                }
                start = end + 1;
            }
        }
        r += Poly::term(parse_rational(v.get<std::string>()), Monomial::from_factors(factors), maxdegree);
    }
    return r;
}

json expr_to_json(const Expr &e) {
    switch (e.kind()) {
        case ExprKind::Leaf:
            return json{{"poly", poly_to_json(e.poly())}};
        default: {
            json children = json::array();
            for (const auto &c : e.children()) {
                children.push_back(expr_to_json(c));
            }
            const char *key = e.kind() == ExprKind::Max ? "max" : e.kind() == ExprKind::Min ? "min" : "sum";
            return json{{key, children}};
        }
    }
}

Expr expr_from_json(const json &j, int maxdegree) {
    if (!j.is_object() || j.size() != 1) {
        bad("expression node must be an object with exactly one key");
    }
    if (j.contains("poly")) {
        return Expr(poly_from_json(j["poly"], maxdegree));
    }
    for (const char *key : {"max", "min", "sum"}) {
        if (j.contains(key)) {
            if (!j[key].is_array()) {
                bad(std::string("'") + key + "' must hold an array");
            }
            std::vector<Expr> children;
            for (const auto &c : j[key]) {
                children.push_back(expr_from_json(c, maxdegree));
            }
            std::string k = key;
            return k == "max" ? Expr::max(std::move(children))
                   : k == "min" ? Expr::min(std::move(children))
                                : Expr::sum(std::move(children));
        }
    }
    bad("unknown expression node");
}

json circuit_to_json(const StrandCircuit &c) {
    json locs = json::array();
    for (const auto &loc : c.locations) {
        json j;
        if (auto g1 = std::get_if<OneQubitGate>(&loc)) {
            j["type"] = "gate1";
            j["gate"] = g1->gate == SingleGate::H ? "H" : g1->gate == SingleGate::P ? "P" : "I";
            j["qubit"] = g1->qubit;
            j["error"] = one_qubit_errors(g1->error);
        } else if (auto g2 = std::get_if<TwoQubitGate>(&loc)) {
            j["type"] = "cx";
            j["control"] = g2->control;
            j["target"] = g2->target;
            json e = json::object();
            for (const auto &[k, p] : g2->error) {
                e[std::string{pauli_char(k.first), pauli_char(k.second)}] = canonical_string(p);
            }
            j["error"] = e;
        } else if (auto a = std::get_if<AncillaIntro>(&loc)) {
            j["type"] = "ancilla";
            j["qubit"] = a->qubit;
            j["dist"] = one_qubit_errors(a->dist);
        } else if (auto m = std::get_if<MeasureReveal>(&loc)) {
            j["type"] = "measure";
            j["qubit"] = m->qubit;
            j["checked"] = std::string(1, check_char(m->checked));
            j["meas_error"] = canonical_string(m->meas_error);
            json frame = json::array();
            for (const auto &[q, g] : m->frame) {
                frame.push_back(json{{"qubit", q}, {"pauli", std::string(1, pauli_char(g))}});
            }
            j["frame"] = frame;
            j["label"] = m->label;
            j["counted"] = m->counted;
            if (m->store) {
                j["store"] = *m->store;
            }
            if (!m->condition.empty()) {
                j["condition"] = m->condition;
            }
        } else if (auto o = std::get_if<DataOutput>(&loc)) {
            j["type"] = "output";
            j["qubit"] = o->qubit;
            j["checked"] = std::string(1, check_char(o->checked));
            j["label"] = o->label;
        }
        locs.push_back(j);
    }
    return json{{"name", c.name}, {"inputs", c.inputs}, {"locations", locs}};
}

StrandCircuit circuit_from_json(const json &j, int maxdegree) {
    if (!j.is_object() || !j.contains("locations") || !j["locations"].is_array()) {
        bad("circuit needs a 'locations' array");
    }
    StrandCircuit c;
    if (j.contains("name")) {
        c.name = as_string(j, "name");
    }
    if (j.contains("inputs")) {
        for (const auto &q : j["inputs"]) {
            if (!q.is_number_unsigned()) {
                bad("inputs must be nonnegative integers");
            }
            c.inputs.push_back(q.get<QubitId>());
        }
    }
    size_t index = 0;
    for (const auto &l : j["locations"]) {
        std::string type = as_string(l, "type");
        try {
            if (type == "gate1") {
                std::string g = as_string(l, "gate");
                SingleGate sg = g == "H" ? SingleGate::H : g == "P" ? SingleGate::P : SingleGate::Identity;
                if (g != "H" && g != "P" && g != "I") {
                    bad("gate must be H, P or I");
                }
                c.locations.emplace_back(OneQubitGate{
                    sg, as_uint(l, "qubit"),
                    l.contains("error") ? one_qubit_errors_from(l["error"], maxdegree) : OneQubitErrors{}});
            } else if (type == "cx") {
                TwoQubitErrors e;
                if (l.contains("error")) {
                    for (const auto &[k, v] : l["error"].items()) {
                        if (k.size() != 2 || k == "II") {
                            bad("two-qubit error key '" + k + "'");
                        }
                        e[{pauli_from_char(k[0]), pauli_from_char(k[1])}] = poly_field(v, maxdegree);
                    }
                }
                c.locations.emplace_back(TwoQubitGate{as_uint(l, "control"), as_uint(l, "target"), e});
            } else if (type == "ancilla") {
                c.locations.emplace_back(AncillaIntro{
                    as_uint(l, "qubit"),
                    l.contains("dist") ? one_qubit_errors_from(l["dist"], maxdegree) : OneQubitErrors{}});
            } else if (type == "measure") {
                MeasureReveal m{as_uint(l, "qubit"), check_field(l),
                                l.contains("meas_error") ? poly_field(l["meas_error"], maxdegree)
                                                         : Poly::var(Parameter::pM, maxdegree),
                                {},
                                l.contains("label") ? as_string(l, "label") : "m" + std::to_string(index),
                                l.value("counted", true),
                                std::nullopt,
                                {}};
                if (l.contains("frame")) {
                    for (const auto &f : l["frame"]) {
                        std::string p = as_string(f, "pauli");
                        if (p.size() != 1) {
                            bad("frame pauli must be a single letter");
                        }
                        m.frame.emplace_back(as_uint(f, "qubit"), pauli_from_char(p[0]));
                    }
                }
                if (l.contains("store")) {
                    m.store = as_uint(l, "store");
                }
                if (l.contains("condition")) {
                    for (const auto &r : l["condition"]) {
                        m.condition.push_back(r.get<RegisterId>());
                    }
                }
                c.locations.emplace_back(std::move(m));
            } else if (type == "output") {
                c.locations.emplace_back(DataOutput{as_uint(l, "qubit"), check_field(l),
                                                    l.contains("label") ? as_string(l, "label")
                                                                        : "out" + std::to_string(index)});
            } else {
                bad("unknown location type '" + type + "'");
            }
        } catch (const nlohmann::json::exception &e) {
            bad("location " + std::to_string(index) + ": " + e.what());
        } catch (const std::invalid_argument &e) {
            throw JsonFormatError("location " + std::to_string(index) + ": " + e.what());
        }
        index++;
    }
    return c;
}

json channel_to_json(const KrausChannel &c) {
    json out = json::array();
    for (const auto &m : c.ops) {
        json rows = json::array();
        for (int r = 0; r < 2; r++) {
            json row = json::array();
            for (int k = 0; k < 2; k++) {
                row.push_back(json::array({m[2 * r + k].real(), m[2 * r + k].imag()}));
            }
            rows.push_back(row);
        }
        out.push_back(rows);
    }
    return out;
}

KrausChannel channel_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        bad("channel must be a nonempty list of 2x2 matrices");
    }
    KrausChannel c;
    for (const auto &m : j) {
        if (!m.is_array() || m.size() != 2) {
            bad("each Kraus operator must have two rows");
        }
        Matrix2 e{};
        for (int r = 0; r < 2; r++) {
            if (!m[r].is_array() || m[r].size() != 2) {
                bad("each row must have two entries");
            }
            for (int k = 0; k < 2; k++) {
                const json &v = m[r][k];
                if (v.is_number()) {
                    e[2 * r + k] = v.get<double>();
                } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
                    e[2 * r + k] = Complex(v[0].get<double>(), v[1].get<double>());
                } else {
                    bad("matrix entries must be [re, im] pairs");
                }
            }
        }
        c.ops.push_back(e);
    }
    return c;
}

std::vector<KrausChannel> channels_from_json(const json &j) {
    if (j.is_object() && j.contains("channels")) {
        std::vector<KrausChannel> out;
        for (const auto &c : j["channels"]) {
            out.push_back(channel_from_json(c));
        }
        return out;
    }
    return {channel_from_json(j)};
}

}  // namespace strandtol
