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

#include "strandtol/strandtol.h"

#include <cmath>
#include <cstring>
#include <string>

#include "strandtol/channel.hpp"
#include "strandtol/json_io.hpp"
#include "strandtol/models.hpp"
#include "strandtol/procedures.hpp"
#include "strandtol/threshold.hpp"

struct st_model {
    strandtol::ErrorModel model;
};

struct st_circuit {
    strandtol::StrandCircuit circuit;
};

using namespace strandtol;

namespace {

thread_local std::string last_error;

template <typename F>
st_status guard(F &&f) {
    try {
        f();
        last_error.clear();
        return ST_OK;
    } catch (const StrandError &e) {
        last_error = e.what();
        return ST_ERR_CIRCUIT;
    } catch (const ModelError &e) {
        last_error = e.what();
        return ST_ERR_MODEL;
    } catch (const JsonFormatError &e) {
        last_error = e.what();
        return ST_ERR_PARSE;
    } catch (const nlohmann::json::exception &e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return ST_ERR_PARSE;
    } catch (const std::invalid_argument &e) {
        last_error = e.what();
        return ST_ERR_ARGUMENT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return ST_ERR_COMPUTE;
    } catch (...) {
        last_error = "unknown internal error";
        return ST_ERR_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (!p) {
        throw std::invalid_argument(std::string("null ") + what);
    }
}

char *dup(const std::string &s) {
    char *r = static_cast<char *>(std::malloc(s.size() + 1));
    if (!r) {
        throw std::bad_alloc();
    }
    std::memcpy(r, s.c_str(), s.size() + 1);
    return r;
}

void emit(const json &j, char **out) {
    require(out, "output pointer");
    *out = dup(j.dump(2));
}

json record_json(const CheckpointRecord &c) {
    return json{{"label", c.label},
                {"counted", c.counted},
                {"p_L", canonical_string(c.p_L)},
                {"first_order", canonical_string(c.p_L.first_order())}};
}

json analysis_json(const std::string &proc, const std::string &gate, Combinator comb, int maxdegree,
                   const Expr &expr, const std::vector<CheckpointRecord> &records,
                   const std::vector<CheckpointRecord> &outputs) {
    json recs = json::array(), outs = json::array();
    for (const auto &r : records) {
        recs.push_back(record_json(r));
    }
    for (const auto &r : outputs) {
        outs.push_back(record_json(r));
    }
    Expr entry = factor_common(expr.first_order());
    return json{{"procedure", proc},
                {"gate", gate},
                {"combinator", comb == Combinator::Max ? "max" : "min"},
                {"maxdegree", maxdegree},
                {"first_order", canonical_string(entry)},
                {"expression", canonical_string(expr)},
                {"first_order_json", expr_to_json(entry)},
                {"expression_json", expr_to_json(expr)},
                {"checkpoints", recs},
                {"outputs", outs}};
}

json coefficients_json(const ScaleAssignment &c) {
    json j = json::object();
    for (auto p : generic_parameters()) {
        Rational v = c[static_cast<size_t>(p)];
        if (v != Rational(0)) {
            j[parameter_name(p)] = rational_str(v);
        }
    }
    return j;
}

json stochastic_json(const StochasticPauli &s) {
    return json{{"X", s.pX}, {"Y", s.pY}, {"Z", s.pZ}};
}

json discrepancy_json(const Discrepancy &d) {
    return json{{"exact", stochastic_json(d.exact)},
                {"stochastic", stochastic_json(d.stochastic)},
                {"exact_minus_stochastic", stochastic_json(d.exact_minus_stochastic)},
                {"leading_term", stochastic_json(d.leading_term)}};
}

}  // namespace

extern "C" {

const char *st_version(void) {
    return "1.0.0";
}

const char *st_last_error(void) {
    return last_error.c_str();
}

void st_free_string(char *s) {
    std::free(s);
}

st_status st_model_builtin(int id, st_model **out) {
    return guard([&] {
        require(out, "output pointer");
        *out = new st_model{builtin_model(id)};
    });
}

st_status st_model_load(const char *spec, st_model **out) {
    return guard([&] {
        require(spec, "model spec");
        require(out, "output pointer");
        *out = new st_model{model_from_spec(spec)};
    });
}

st_status st_model_parse(const char *text, st_model **out) {
    return guard([&] {
        require(text, "model text");
        require(out, "output pointer");
        *out = new st_model{parse_model(text)};
    });
}

st_status st_model_depolarizing(const char *one_q, const char *two_q, const char *meas, st_model **out) {
    return guard([&] {
        require(one_q, "rate");
        require(two_q, "rate");
        require(meas, "rate");
        require(out, "output pointer");
        *out = new st_model{depolarizing(parse_rational(one_q), parse_rational(two_q), parse_rational(meas))};
    });
}

st_status st_model_to_text(const st_model *m, char **out) {
    return guard([&] {
        require(m, "model");
        require(out, "output pointer");
        *out = dup(save_model(m->model));
    });
}

st_status st_model_to_json(const st_model *m, char **out) {
    return guard([&] {
        require(m, "model");
        emit(json{{"name", m->model.name}, {"coefficients", coefficients_json(m->model.coefficients)}}, out);
    });
}

void st_model_free(st_model *m) {
    delete m;
}

st_status st_circuit_build(const char *proc, const char *gate, st_circuit **out) {
    return guard([&] {
        require(proc, "procedure");
        require(gate, "gate");
        require(out, "output pointer");
        *out = new st_circuit{build(parse_procedure(proc), parse_gate(gate))};
    });
}

st_status st_circuit_from_json(const char *text, st_circuit **out) {
    return guard([&] {
        require(text, "circuit JSON");
        require(out, "output pointer");
        *out = new st_circuit{circuit_from_json(json::parse(text))};
    });
}

st_status st_circuit_to_json(const st_circuit *c, char **out) {
    return guard([&] {
        require(c, "circuit");
        emit(circuit_to_json(c->circuit), out);
    });
}

st_status st_circuit_analyze(const st_circuit *c, int maxdegree, int use_min, char **out) {
    return guard([&] {
        require(c, "circuit");
        RunResult r = run(c->circuit, maxdegree);
        std::vector<Expr> leaves;
        for (const auto &rec : r.records) {
            if (rec.counted) {
                leaves.emplace_back(rec.p_L);
            }
        }
        Expr e = leaves.empty() ? Expr(Poly(maxdegree))
                 : use_min      ? Expr::min_of(std::move(leaves))
                                : Expr::max_of(std::move(leaves));
        emit(analysis_json(c->circuit.name, "", use_min ? Combinator::Min : Combinator::Max, maxdegree, e, r.records,
                           r.outputs),
             out);
    });
}

st_status st_circuit_mc(const st_circuit *c, const st_model *m, double p, uint64_t trials, uint64_t seed,
                        char **out) {
    return guard([&] {
        require(c, "circuit");
        require(m, "model");
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("scale p must lie in [0, 1]");
        }
        ParamValues v = m->model.values_at(p);
        RunResult sym = run(c->circuit);
        SimulationResult sim = simulate(c->circuit, v, trials, seed);
        json rows = json::array();
        double slack = 10 * p * p * p;
        bool all = true;
        auto add = [&](const CheckpointRecord &s, const SimulatedCheckpoint &e, const char *kind) {
            double sv = s.p_L.evaluate(v);
            double se = e.standard_error();
            double diff = e.rate() - sv;
            bool agree = std::abs(diff) <= 3 * se + slack;
            all = all && agree;
            rows.push_back(json{{"label", s.label},
                                {"kind", kind},
                                {"counted", s.counted},
                                {"symbolic", sv},
                                {"empirical", e.rate()},
                                {"stderr", se},
                                {"z", se > 0 ? diff / se : 0.0},
                                {"agree", agree}});
        };
        for (size_t i = 0; i < sym.records.size(); i++) {
            add(sym.records[i], sim.records[i], "measure");
        }
        for (size_t i = 0; i < sym.outputs.size(); i++) {
            add(sym.outputs[i], sim.outputs[i], "output");
        }
        emit(json{{"circuit", c->circuit.name},
                  {"model", m->model.name},
                  {"p", p},
                  {"trials", trials},
                  {"seed", seed},
                  {"tolerance", "3 stderr + 10 p^3"},
                  {"all_agree", all},
                  {"checkpoints", rows}},
             out);
    });
}

void st_circuit_free(st_circuit *c) {
    delete c;
}

st_status st_list_procedures(char **out) {
    return guard([&] {
        json list = json::array();
        for (auto p : all_procedures()) {
            json gates = json::array();
            for (auto g : all_gates()) {
                gates.push_back(json{{"gate", gate_name(g)},
                                     {"combinator", combinator(p, g) == Combinator::Max ? "max" : "min"},
                                     {"locations", build(p, g).locations.size()}});
            }
            list.push_back(json{{"procedure", procedure_name(p)}, {"gates", gates}});
        }
        emit(list, out);
    });
}

st_status st_analyze(const char *proc, const char *gate, int maxdegree, char **out) {
    return guard([&] {
        require(proc, "procedure");
        require(gate, "gate");
        ProcedureId pid = parse_procedure(proc);
        EncodedGate g = parse_gate(gate);
        const GadgetAnalysis &a = analyze_cached(pid, g, maxdegree);
        emit(analysis_json(procedure_name(pid), gate_name(g), a.combinator, maxdegree, a.expr, a.records, a.outputs),
             out);
    });
}

st_status st_checkpoint_list(const char *proc, const char *gate, const st_model *m, char **out) {
    return guard([&] {
        require(proc, "procedure");
        require(gate, "gate");
        require(m, "model");
        json rows = json::array();
        for (const auto &c : checkpoint_list(parse_procedure(proc), parse_gate(gate), m->model)) {
            rows.push_back(json{{"label", c.label},
                                {"coefficient", rational_str(c.first_order)},
                                {"p_L", canonical_string(c.p_L)}});
        }
        emit(json{{"procedure", procedure_name(parse_procedure(proc))},
                  {"gate", gate_name(parse_gate(gate))},
                  {"model", m->model.name},
                  {"checkpoints", rows}},
             out);
    });
}

st_status st_threshold_infinite(const char *proc, const st_model *m, double tau, int second_order, char **out) {
    return guard([&] {
        require(proc, "procedure");
        require(m, "model");
        ThresholdOptions opt;
        opt.second_order = second_order != 0;
        InfiniteThreshold r = threshold_infinite(parse_procedure(proc), m->model, tau, opt);
        json j{{"procedure", procedure_name(parse_procedure(proc))},
               {"model", m->model.name},
               {"tau", tau},
               {"order", opt.second_order ? 2 : 1},
               {"found", r.found}};
        if (r.found) {
            j["p_th"] = r.p_th;
            j["p_th_over_tau"] = r.p_th / tau;
            j["binding_gate"] = gate_name(r.binding_gate);
            j["binding_checkpoint"] = r.binding_checkpoint;
        }
        if (!r.note.empty()) {
            j["note"] = r.note;
        }
        emit(j, out);
    });
}

st_status st_threshold_finite(const char *proc, const st_model *m, int n, int t, int second_order, char **out) {
    return guard([&] {
        require(proc, "procedure");
        require(m, "model");
        ThresholdOptions opt;
        opt.second_order = second_order != 0;
        FiniteThreshold r = threshold_finite(parse_procedure(proc), m->model, n, t, opt);
        json gates = json::array();
        for (const auto &g : r.gates) {
            json row{{"gate", gate_name(g.gate)}};
            row["lower"] = g.lower_found ? json(g.lower) : json(nullptr);
            row["upper"] = g.upper_found ? json(g.upper) : json(nullptr);
            gates.push_back(row);
        }
        json j{{"procedure", procedure_name(parse_procedure(proc))},
               {"model", m->model.name},
               {"n", n},
               {"t", t},
               {"order", opt.second_order ? 2 : 1},
               {"found", r.found}};
        if (r.found) {
            j["lower"] = r.lower;
            j["upper"] = r.upper;
            j["binding_gate_lower"] = gate_name(r.binding_gate_lower);
            j["binding_gate_upper"] = gate_name(r.binding_gate_upper);
        }
        if (!r.note.empty()) {
            j["note"] = r.note;
        }
        j["gates"] = gates;
        emit(j, out);
    });
}

st_status st_e_pass(double p_L, int n, int t, double *out) {
    return guard([&] {
        require(out, "output pointer");
        *out = e_pass(p_L, n, t);
    });
}

st_status st_e_fail(double p_L, int n, int t, double *out) {
    return guard([&] {
        require(out, "output pointer");
        *out = e_fail(p_L, n, t);
    });
}

st_status st_second_order_bound(int g1, int g2, double p_r, double *first_order, double *bound, double *ratio) {
    return guard([&] {
        SecondOrderBound b = second_order_bound(g1, g2, p_r);
        if (first_order) {
            *first_order = b.first_order;
        }
        if (bound) {
            *bound = b.bound;
        }
        if (ratio) {
            *ratio = b.ratio;
        }
    });
}

st_status st_channel_associate(const char *kraus_json, int raw_trace, char **out) {
    return guard([&] {
        require(kraus_json, "Kraus JSON");
        auto channels = channels_from_json(json::parse(kraus_json));
        json per = json::array();
        for (const auto &c : channels) {
            ChannelValidation v = validate(c);
            per.push_back(json{{"trace_preserving", v.ok},
                               {"max_deviation", v.max_deviation},
                               {"associated", stochastic_json(associated_stochastic(c, raw_trace != 0))}});
        }
        json j{{"normalization", raw_trace ? "raw trace" : "trace / 2"}, {"channels", per}};
        if (channels.size() > 1) {
            j["composed"] = stochastic_json(compose_exact(channels, raw_trace != 0));
        }
        emit(j, out);
    });
}

st_status st_channel_discrepancy_json(const char *kraus_json, char **out) {
    return guard([&] {
        require(kraus_json, "Kraus JSON");
        emit(discrepancy_json(coherent_discrepancy(channels_from_json(json::parse(kraus_json)))), out);
    });
}

st_status st_channel_discrepancy_rotation(double theta, int count, char **out) {
    return guard([&] {
        if (count < 1 || count > 12) {
            throw std::invalid_argument("count must be in [1, 12]");
        }
        std::vector<KrausChannel> seq(static_cast<size_t>(count), rotation(PauliOp::X, theta));
        json j = discrepancy_json(coherent_discrepancy(seq));
        double half = std::sin(theta / 2);
        double whole = std::sin(count * theta / 2);
        j["theta"] = theta;
        j["count"] = count;
        j["closed_form_X"] = whole * whole - count * half * half;
        emit(j, out);
    });
}

st_status st_channel_random_signs(double theta, int count, uint64_t sequences, uint64_t seed, char **out) {
    return guard([&] {
        RandomSignStats s = random_sign_discrepancy(theta, count, sequences, seed);
        emit(json{{"theta", theta},
                  {"count", count},
                  {"sequences", s.sequences},
                  {"seed", seed},
                  {"mean", s.mean},
                  {"variance", s.variance},
                  {"standard_error", s.standard_error},
                  {"z", s.standard_error > 0 ? s.mean / s.standard_error : 0.0}},
             out);
    });
}

}  // extern "C"
