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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "strandtol/models.hpp"
#include "strandtol/procedures.hpp"
#include "strandtol/strand.hpp"

using namespace strandtol;

namespace {

Poly v(Parameter p) {
    return Poly::var(p);
}

PauliString one(QubitId q, PauliOp p) {
    PauliString s;
    s.set(q, p);
    return s;
}

PauliString two(QubitId q, PauliOp p, QubitId r, PauliOp o) {
    PauliString s = one(q, p);
    s.set(r, o);
    return s;
}

size_t idx(Parameter p) {
    return static_cast<size_t>(p);
}

OneQubitErrors xyz(Parameter x, Parameter y, Parameter z) {
    return {{PauliOp::X, v(x)}, {PauliOp::Y, v(y)}, {PauliOp::Z, v(z)}};
}

OneQubitErrors noisy_one_qubit() {
    return xyz(Parameter::p1X, Parameter::p1Y, Parameter::p1Z);
}

ErrorState fold(const StrandCircuit &c) {
    ErrorState s;
    for (auto q : c.inputs) {
        s.activate(q);
    }
    for (const auto &loc : c.locations) {
        std::visit(
            [&](const auto &l) {
                using T = std::decay_t<decltype(l)>;
                if constexpr (std::is_same_v<T, AncillaIntro>) {
                    s.introduce_ancilla(l);
                } else if constexpr (std::is_same_v<T, MeasureReveal>) {
                    s.measure_reveal(l);
                } else if constexpr (std::is_same_v<T, DataOutput>) {
                    s.data_output(l);
                } else {
                    s.apply_gate(l);
                }
            },
            loc);
    }
    return s;
}

std::string oracle_key(const PauliString &s) {
    std::map<QubitId, int> ops;
    for (const auto &[q, p] : s.ops()) {
        ops[q] = static_cast<int>(p);
    }
    return oracle::frame_key(ops);
}

ParamValues random_values(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(0, scale);
    ParamValues vals{};
    for (auto p : generic_parameters()) {
        vals[idx(p)] = u(rng);
    }
    return vals;
}

// Random model in the style of the built-in ones: each fault family carries a
// total weight of at most p, split randomly across its Paulis.
ParamValues random_model(std::mt19937_64 &rng, double p) {
    std::uniform_real_distribution<double> u(0, 1);
    ParamValues vals{};
    auto family = [&](std::vector<Parameter> params) {
        double total = u(rng) * p, norm = 0;
        std::vector<double> w;
        for (size_t i = 0; i < params.size(); i++) {
            w.push_back(u(rng));
            norm += w.back();
        }
        for (size_t i = 0; i < params.size(); i++) {
            vals[idx(params[i])] = total * w[i] / norm;
        }
    };
    family({Parameter::p1X, Parameter::p1Y, Parameter::p1Z});
    std::vector<Parameter> two;
    for (auto q : generic_parameters()) {
        if (parameter_name(q).rfind("p2", 0) == 0) {
            two.push_back(q);
        }
    }
    family(two);
    family({Parameter::pM});
    family({Parameter::pAX, Parameter::pAY, Parameter::pAZ});
    family({Parameter::pBX, Parameter::pBY, Parameter::pBZ});
    return vals;
}

std::vector<std::pair<ProcedureId, EncodedGate>> all_pairs() {
    std::vector<std::pair<ProcedureId, EncodedGate>> out;
    for (auto p : all_procedures()) {
        for (auto g : all_gates()) {
            out.emplace_back(p, g);
        }
    }
    return out;
}

}  // namespace

TEST(ErrorState, OneNoisyHadamard) {
    ErrorState s;
    s.activate(0);
    s.apply_gate(OneQubitGate{SingleGate::H, 0, noisy_one_qubit()});
    auto d = s.distribution();
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(d[one(0, PauliOp::X)], v(Parameter::p1X));
    EXPECT_EQ(d[one(0, PauliOp::Y)], v(Parameter::p1Y));
    EXPECT_EQ(d[one(0, PauliOp::Z)], v(Parameter::p1Z));
}

TEST(ErrorState, DoubleHadamardBookkeeping) {
    ErrorState s;
    s.activate(0);
    OneQubitGate h{SingleGate::H, 0, noisy_one_qubit()};
    s.apply_gate(h);
    s.apply_gate(h);
    auto d = s.distribution();
    Poly pX = v(Parameter::p1X), pY = v(Parameter::p1Y), pZ = v(Parameter::p1Z);
    Poly none = Poly::constant(1) - pX - pY - pZ;
    // Pairs (first fault, second fault) whose propagated product lands on each class.
    Poly y = pY * none * Rational(2) + pX * pX + pZ * pZ;
    Poly x = pZ * none + pX * none + pY * pZ + pX * pY;
    Poly z = pX * none + pZ * none + pY * pX + pZ * pY;
    EXPECT_EQ(d[one(0, PauliOp::Y)], y);
    EXPECT_EQ(d[one(0, PauliOp::X)], x);
    EXPECT_EQ(d[one(0, PauliOp::Z)], z);
    EXPECT_EQ(y.first_order(), pY * Rational(2));
    EXPECT_EQ(x.first_order(), pX + pZ);
}

TEST(ErrorState, IdealGateLeavesStateUnchanged) {
    ErrorState s;
    s.activate(0);
    s.apply_gate(OneQubitGate{SingleGate::H, 0, noisy_one_qubit()});
    auto before = s.distribution();
    s.apply_gate(OneQubitGate{SingleGate::Identity, 0, {}});
    EXPECT_EQ(s.distribution(), before);
}

TEST(ErrorState, AncillaIntroduction) {
    ErrorState s;
    s.introduce_ancilla(AncillaIntro{1, xyz(Parameter::pAX, Parameter::pAY, Parameter::pAZ)});
    auto d = s.distribution();
    EXPECT_EQ(d[one(1, PauliOp::X)], v(Parameter::pAX));
    EXPECT_EQ(d[one(1, PauliOp::Y)], v(Parameter::pAY));
    EXPECT_EQ(d[one(1, PauliOp::Z)], v(Parameter::pAZ));
}

TEST(ErrorState, ZeroErrorAncillaExtendsStrings) {
    ErrorState s;
    s.activate(0);
    s.apply_gate(OneQubitGate{SingleGate::Identity, 0, noisy_one_qubit()});
    auto before = s.distribution();
    s.introduce_ancilla(AncillaIntro{1, {}});
    EXPECT_EQ(s.distribution(), before);
    EXPECT_TRUE(s.is_active(1));
}

TEST(ErrorState, AncillaErrorsAreIndependent) {
    ErrorState s;
    s.activate(0);
    s.apply_gate(OneQubitGate{SingleGate::Identity, 0, noisy_one_qubit()});
    s.introduce_ancilla(AncillaIntro{1, xyz(Parameter::pAX, Parameter::pAY, Parameter::pAZ)});
    auto d = s.distribution();
    EXPECT_EQ(d[two(0, PauliOp::X, 1, PauliOp::X)], v(Parameter::p1X) * v(Parameter::pAX));
}

TEST(ErrorState, MeasurementErrorOnlyMiscorrects) {
    ErrorState s;
    s.activate(0);
    s.introduce_ancilla(AncillaIntro{1, {}});
    s.apply_gate(TwoQubitGate{0, 1, {}});
    auto rec = s.measure_reveal(MeasureReveal{1, CheckType::X, v(Parameter::pM), {{0, PauliOp::X}}, "m"});
    EXPECT_EQ(rec.p_L, v(Parameter::pM));
    EXPECT_EQ(s.probability(0, CheckType::X), v(Parameter::pM));
    EXPECT_FALSE(s.is_active(1));
}

TEST(ErrorState, UncorrelatedAncillaErrorStaysOffData) {
    ErrorState s;
    s.activate(0);
    s.introduce_ancilla(AncillaIntro{1, {{PauliOp::X, v(Parameter::pAX)}}});
    auto rec = s.measure_reveal(MeasureReveal{1, CheckType::X, Poly(), {}, "m"});
    EXPECT_EQ(rec.p_L, v(Parameter::pAX));
    EXPECT_TRUE(s.probability(0, CheckType::X).is_zero());
}

TEST(ErrorState, ConditionedFrameNeedsAgreement) {
    // Two noisy measurements of the same error; the frame fires only when both agree.
    ErrorState s;
    s.activate(0);
    s.apply_gate(OneQubitGate{SingleGate::Identity, 0, {{PauliOp::X, v(Parameter::p1X)}}});
    for (int k = 0; k < 2; k++) {
        QubitId a = 1 + k;
        s.introduce_ancilla(AncillaIntro{a, {}});
        s.apply_gate(TwoQubitGate{0, a, {}});
        MeasureReveal m{a, CheckType::X, v(Parameter::pM), {}, "m" + std::to_string(k)};
        if (k == 0) {
            m.store = 7;
        } else {
            m.frame = {{0, PauliOp::X}};
            m.condition = {7};
        }
        s.measure_reveal(m);
    }
    Poly x = v(Parameter::p1X), m = v(Parameter::pM);
    // A real error survives if either bit flips; a phantom needs both to flip.
    EXPECT_EQ(s.probability(0, CheckType::X), x * m * Rational(2) + m * m);
}

TEST(ErrorState, LifecycleErrors) {
    ErrorState s;
    EXPECT_THROW(s.apply_gate(OneQubitGate{SingleGate::H, 0, {}}), StrandError);
    s.activate(0);
    EXPECT_THROW(s.activate(0), StrandError);
    EXPECT_THROW(s.introduce_ancilla(AncillaIntro{0, {}}), StrandError);
    EXPECT_THROW(s.apply_gate(TwoQubitGate{0, 0, {}}), StrandError);
    EXPECT_THROW(s.measure_reveal(MeasureReveal{3, CheckType::X, Poly(), {}, "m"}), StrandError);
}

TEST(Run, Examples) {
    EXPECT_TRUE(run(StrandCircuit{}).records.empty());
    StrandCircuit c{"one", {}, {AncillaIntro{0, {{PauliOp::X, v(Parameter::pAX)}}},
                                 MeasureReveal{0, CheckType::X, Poly(), {}, "m"}}};
    RunResult r = run(c);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].p_L, v(Parameter::pAX));
}

TEST(Run, ReportsLocationIndex) {
    StrandCircuit c{"bad", {0}, {OneQubitGate{SingleGate::H, 0, {}}, OneQubitGate{SingleGate::H, 5, {}}}};
    try {
        run(c);
        FAIL() << "expected StrandError";
    } catch (const StrandError &e) {
        EXPECT_NE(std::string(e.what()).find("location 1"), std::string::npos) << e.what();
    }
}

TEST(Run, SingleSteaneIdleHasSixCheckpoints) {
    RunResult r = run(build(ProcedureId::SteaneSingle, EncodedGate::Idle));
    EXPECT_EQ(r.records.size(), 6u);
}

TEST(Simulate, ZeroModelNeverFires) {
    ParamValues zero{};
    for (auto [p, g] : all_pairs()) {
        SimulationResult s = simulate(build(p, g), zero, 2000, 1);
        for (const auto &c : s.records) {
            EXPECT_EQ(c.hits, 0u);
        }
        for (const auto &c : s.outputs) {
            EXPECT_EQ(c.hits, 0u);
        }
    }
}

TEST(Simulate, MeasurementOnlyRate) {
    ParamValues vals{};
    vals[idx(Parameter::pM)] = 0.05;
    StrandCircuit c{"m", {0}, {AncillaIntro{1, {}}, TwoQubitGate{0, 1, {}},
                               MeasureReveal{1, CheckType::X, v(Parameter::pM), {{0, PauliOp::X}}, "m"}}};
    SimulationResult s = simulate(c, vals, 200000, 3);
    EXPECT_NEAR(s.records[0].rate(), 0.05, 3 * s.records[0].standard_error());
}

TEST(Simulate, DeterministicForSeed) {
    std::mt19937_64 rng(1);
    ParamValues vals = random_values(rng, 0.01);
    StrandCircuit c = build(ProcedureId::Knill, EncodedGate::CX);
    SimulationResult a = simulate(c, vals, 100000, 42, 1), b = simulate(c, vals, 100000, 42, 3);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (size_t i = 0; i < a.records.size(); i++) {
        EXPECT_EQ(a.records[i].hits, b.records[i].hits);
    }
}

TEST(StrandProperty, ProbabilityConservation) {
    // Scale p on a grid over [0, 0.05] under every built-in model.
    for (auto [p, g] : all_pairs()) {
        ErrorState s = fold(build(p, g));
        Poly stored(s.maxdegree());
        for (const auto &[str, poly] : s.distribution()) {
            stored += poly;
        }
        EXPECT_EQ(stored + s.identity_probability(), Poly::constant(1));
        for (int id = 1; id <= 4; id++) {
            ErrorModel m = builtin_model(id);
            for (int k = 0; k <= 10; k++) {
                double missing = 1 - stored.evaluate(m.values_at(0.005 * k));
                EXPECT_GE(missing, 0.0) << procedure_name(p) << " " << gate_name(g) << " model " << id;
                EXPECT_LE(missing, 1.0);
            }
        }
    }
}

TEST(StrandProperty, MatchesFaultEnumeration) {
    // Independent reference: explicit enumeration of up to two faults.
    std::mt19937_64 rng(2024);
    for (auto [p, g] : all_pairs()) {
        StrandCircuit c = build(p, g);
        ParamValues vals = random_values(rng, 5e-6);
        RunResult sym = run(c);
        oracle::Enumeration en = oracle::enumerate_faults(c, vals, 2);
        // Second-order mistakes would show at weight^2; the truncation leaves weight^3.
        double tol = std::pow(en.total_weight, 3);
        ASSERT_LT(tol, 1e-3 * en.total_weight * en.total_weight);
        ASSERT_EQ(sym.records.size(), en.records.size());
        for (size_t i = 0; i < sym.records.size(); i++) {
            EXPECT_NEAR(sym.records[i].p_L.evaluate(vals), en.records[i], tol) << c.name << " " << sym.records[i].label;
        }
        for (size_t i = 0; i < sym.outputs.size(); i++) {
            EXPECT_NEAR(sym.outputs[i].p_L.evaluate(vals), en.outputs[i], tol) << c.name << " " << sym.outputs[i].label;
        }
    }
}

TEST(StrandProperty, FrameCorrectionSoundness) {
    // One planted fault source at a time: the surviving distribution must match
    // concrete propagation of each fault through the circuit.
    for (auto [p, g] : all_pairs()) {
        StrandCircuit c = build(p, g);
        for (auto param : generic_parameters()) {
            ParamValues vals{};
            vals[idx(param)] = 1e-3;
            auto dist = fold(c).distribution();
            oracle::Enumeration en = oracle::enumerate_faults(c, vals, 2);
            double tol = std::pow(en.total_weight, 3) + 1e-15;
            std::map<std::string, double> sym;
            for (const auto &[s, poly] : dist) {
                double x = poly.evaluate(vals);
                if (x != 0) {
                    sym[oracle_key(s)] = x;
                }
            }
            for (const auto &[k, x] : en.final_state) {
                EXPECT_NEAR(sym[k], x, tol) << c.name << " " << parameter_name(param) << " " << k;
            }
            for (const auto &[k, x] : sym) {
                EXPECT_NEAR(en.final_state[k], x, tol) << c.name << " " << parameter_name(param) << " " << k;
            }
        }
    }
}

TEST(StrandProperty, MonteCarloAgreement) {
    std::mt19937_64 rng(99);
    for (int model = 0; model < 5; model++) {
        double p = 0.002 * (model + 1);
        for (auto [proc, g] : all_pairs()) {
            StrandCircuit c = build(proc, g);
            ParamValues vals = random_model(rng, p);
            RunResult sym = run(c);
            SimulationResult mc = simulate(c, vals, 40000, 1000 + model);
            double slack = 10 * p * p * p;
            for (size_t i = 0; i < sym.records.size(); i++) {
                double se = std::max(mc.records[i].standard_error(), 1.0 / 40000);
                EXPECT_NEAR(mc.records[i].rate(), sym.records[i].p_L.evaluate(vals), 4 * se + slack)
                    << c.name << " " << sym.records[i].label;
            }
        }
    }
}

TEST(StrandProperty, FirstOrderShape) {
    for (auto [p, g] : all_pairs()) {
        RunResult r = run(build(p, g));
        for (const auto &rec : r.records) {
            Poly first = rec.p_L.first_order();
            for (const auto &[m, coef] : first.terms()) {
                EXPECT_EQ(m.degree(), 1) << rec.label;
                EXPECT_GT(coef, Rational(0)) << rec.label;
                EXPECT_LE(coef.denominator(), 8) << rec.label;
                EXPECT_LE(coef, Rational(8)) << rec.label;
            }
        }
    }
}
