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

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <thread>

#include "strandtol/strand.hpp"

namespace strandtol {

double SimulatedCheckpoint::standard_error() const {
    if (!trials) {
        return 0;
    }
    double r = rate();
    return std::sqrt(r * (1 - r) / static_cast<double>(trials));
}

unsigned default_thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("STRANDTOL_THREADS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<unsigned>(std::min<long>(v, 1024));
        }
    }
    return hw;
}

namespace {

constexpr uint64_t kChunkTrials = 1 << 15;

struct Fault {
    double cumulative;
    uint64_t x;
    uint64_t z;
};

enum class OpKind { H, P, CX, Reset, Measure, Output };

struct Op {
    OpKind kind;
    int a = 0;
    int b = 0;
    std::vector<Fault> faults;
    double total = 0;
    double flip = 0;
    bool check_x = true;
    uint64_t frame_x = 0;
    uint64_t frame_z = 0;
    uint64_t cond_mask = 0;
    int store = -1;
    int counter = -1;
};

struct Compiled {
    std::vector<Op> ops;
    size_t num_counters = 0;
};

double probability_value(const Poly &p, const ParamValues &v, const std::string &where) {
    double x = p.evaluate(v);
    if (!(x >= -1e-15 && x <= 1 + 1e-12)) {
        throw StrandError(where + ": fault probability " + std::to_string(x) + " outside [0, 1]");
    }
    return std::max(0.0, x);
}

void add_faults(Op &op, std::vector<std::pair<uint64_t, uint64_t>> masks, std::vector<double> probs,
                const std::string &where) {
    double c = 0;
    for (size_t i = 0; i < masks.size(); i++) {
        if (probs[i] <= 0) {
            continue;
        }
        c += probs[i];
        op.faults.push_back(Fault{c, masks[i].first, masks[i].second});
    }
    if (c > 1 + 1e-12) {
        throw StrandError(where + ": fault probabilities sum to " + std::to_string(c));
    }
    op.total = c;
}

Compiled compile(const StrandCircuit &circuit, const ParamValues &v, SimulationResult &result) {
    Compiled out;
    std::map<QubitId, int> qslot;
    std::map<RegisterId, int> rslot;
    int next = 0;
    auto slot = [&](std::map<uint32_t, int> &m, uint32_t id) {
        auto it = m.find(id);
        if (it != m.end()) {
            return it->second;
        }
        if (next >= 64) {
            throw StrandError("simulation supports at most 64 distinct qubits and registers");
        }
        m[id] = next;
        return next++;
    };
    for (QubitId q : circuit.inputs) {
        slot(qslot, q);
    }
    for (size_t i = 0; i < circuit.locations.size(); i++) {
        const Location &loc = circuit.locations[i];
        std::string where = "location " + std::to_string(i);
        Op op;
        if (auto g1 = std::get_if<OneQubitGate>(&loc)) {
            op.kind = g1->gate == SingleGate::H ? OpKind::H : g1->gate == SingleGate::P ? OpKind::P : OpKind::Reset;
            op.a = slot(qslot, g1->qubit);
            op.b = -1;
            std::vector<std::pair<uint64_t, uint64_t>> masks;
            std::vector<double> probs;
            for (const auto &[g, p] : g1->error) {
                masks.emplace_back(has_x(g) ? 1ULL << op.a : 0, has_z(g) ? 1ULL << op.a : 0);
                probs.push_back(probability_value(p, v, where));
            }
            add_faults(op, masks, probs, where);
        } else if (auto g2 = std::get_if<TwoQubitGate>(&loc)) {
            op.kind = OpKind::CX;
            op.a = slot(qslot, g2->control);
            op.b = slot(qslot, g2->target);
            std::vector<std::pair<uint64_t, uint64_t>> masks;
            std::vector<double> probs;
            for (const auto &[g, p] : g2->error) {
                masks.emplace_back((has_x(g.first) ? 1ULL << op.a : 0) | (has_x(g.second) ? 1ULL << op.b : 0),
                                   (has_z(g.first) ? 1ULL << op.a : 0) | (has_z(g.second) ? 1ULL << op.b : 0));
                probs.push_back(probability_value(p, v, where));
            }
            add_faults(op, masks, probs, where);
        } else if (auto a = std::get_if<AncillaIntro>(&loc)) {
            op.kind = OpKind::Reset;
            op.a = slot(qslot, a->qubit);
            op.b = op.a;
            std::vector<std::pair<uint64_t, uint64_t>> masks;
            std::vector<double> probs;
            for (const auto &[g, p] : a->dist) {
                masks.emplace_back(has_x(g) ? 1ULL << op.a : 0, has_z(g) ? 1ULL << op.a : 0);
                probs.push_back(probability_value(p, v, where));
            }
            add_faults(op, masks, probs, where);
        } else if (auto m = std::get_if<MeasureReveal>(&loc)) {
            op.kind = OpKind::Measure;
            op.a = slot(qslot, m->qubit);
            op.flip = probability_value(m->meas_error, v, where);
            op.check_x = m->checked == CheckType::X;
            for (const auto &[q, g] : m->frame) {
                int s = slot(qslot, q);
                op.frame_x |= has_x(g) ? 1ULL << s : 0;
                op.frame_z |= has_z(g) ? 1ULL << s : 0;
            }
            for (RegisterId r : m->condition) {
                op.cond_mask |= 1ULL << slot(rslot, r);
            }
            if (m->store) {
                op.store = slot(rslot, *m->store);
            }
            op.counter = static_cast<int>(out.num_counters++);
            result.records.push_back(SimulatedCheckpoint{m->label, m->counted, false, 0, 0});
        } else if (auto o = std::get_if<DataOutput>(&loc)) {
            op.kind = OpKind::Output;
            op.a = slot(qslot, o->qubit);
            op.check_x = o->checked == CheckType::X;
            op.counter = static_cast<int>(out.num_counters++);
            result.outputs.push_back(SimulatedCheckpoint{o->label, true, true, 0, 0});
        }
        out.ops.push_back(std::move(op));
    }
    return out;
}

inline double uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void run_chunk(const Compiled &c, uint64_t trials, uint64_t seed, uint64_t chunk, std::vector<uint64_t> &hits) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(chunk),
                      static_cast<uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    for (uint64_t t = 0; t < trials; t++) {
        uint64_t x = 0, z = 0;
        for (const Op &op : c.ops) {
            switch (op.kind) {
                case OpKind::H: {
                    uint64_t m = 1ULL << op.a;
                    uint64_t xa = x & m, za = z & m;
                    x = (x & ~m) | za;
                    z = (z & ~m) | xa;
                    break;
                }
                case OpKind::P:
                    z ^= x & (1ULL << op.a);
                    break;
                case OpKind::CX:
                    if ((x >> op.a) & 1) {
                        x ^= 1ULL << op.b;
                    }
                    if ((z >> op.b) & 1) {
                        z ^= 1ULL << op.a;
                    }
                    break;
                case OpKind::Reset:
                    if (op.b == op.a) {
                        x &= ~(1ULL << op.a);
                        z &= ~(1ULL << op.a);
                    }
                    break;
                case OpKind::Measure: {
                    bool comp = ((op.check_x ? x : z) >> op.a) & 1;
                    bool f = op.flip > 0 && uniform(rng) < op.flip;
                    bool b = comp != f;
                    hits[op.counter] += b;
                    x &= ~(1ULL << op.a);
                    z &= ~(1ULL << op.a);
                    bool fire = b && (x & op.cond_mask) == op.cond_mask;
                    x &= ~op.cond_mask;
                    if (fire) {
                        x ^= op.frame_x;
                        z ^= op.frame_z;
                    }
                    if (op.store >= 0) {
                        x = (x & ~(1ULL << op.store)) | (static_cast<uint64_t>(b) << op.store);
                    }
                    continue;
                }
                case OpKind::Output:
                    hits[op.counter] += ((op.check_x ? x : z) >> op.a) & 1;
                    continue;
            }
            if (op.total > 0) {
                double u = uniform(rng);
                if (u < op.total) {
                    for (const Fault &f : op.faults) {
                        if (u < f.cumulative) {
                            x ^= f.x;
                            z ^= f.z;
                            break;
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

SimulationResult simulate(const StrandCircuit &circuit, const ParamValues &values, uint64_t trials, uint64_t seed,
                          unsigned threads) {
    if (trials < 1) {
        throw std::invalid_argument("simulate needs at least one trial");
    }
    SimulationResult result;
    Compiled c = compile(circuit, values, result);
    uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    unsigned workers = threads ? threads : default_thread_count();
    workers = static_cast<unsigned>(std::min<uint64_t>(workers, chunks));
    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(c.num_counters, 0));
    std::atomic<uint64_t> next_chunk{0};
    auto work = [&](unsigned w) {
        while (true) {
            uint64_t k = next_chunk.fetch_add(1);
            if (k >= chunks) {
                return;
            }
            uint64_t n = std::min(kChunkTrials, trials - k * kChunkTrials);
            run_chunk(c, n, seed, k, partial[w]);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    std::vector<uint64_t> hits(c.num_counters, 0);
    for (const auto &p : partial) {
        for (size_t i = 0; i < hits.size(); i++) {
            hits[i] += p[i];
        }
    }
    size_t ri = 0, oi = 0;
    for (const Op &op : c.ops) {
        if (op.kind == OpKind::Measure) {
            result.records[ri].hits = hits[op.counter];
            result.records[ri++].trials = trials;
        } else if (op.kind == OpKind::Output) {
            result.outputs[oi].hits = hits[op.counter];
            result.outputs[oi++].trials = trials;
        }
    }
    return result;
}

}  // namespace strandtol
