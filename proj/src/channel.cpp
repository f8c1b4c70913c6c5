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

#include "strandtol/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace strandtol {

namespace {

constexpr size_t kMaxComposed = 12;
const PauliOp kPaulis[3] = {PauliOp::X, PauliOp::Y, PauliOp::Z};

Complex trace_with(const Matrix2 &e, PauliOp g) {
    Matrix2 m = matmul(e, pauli_matrix(g));
    return m[0] + m[3];
}

void add_to(StochasticPauli &s, PauliOp g, double v) {
    (g == PauliOp::X ? s.pX : g == PauliOp::Y ? s.pY : s.pZ) += v;
}

StochasticPauli difference(const StochasticPauli &a, const StochasticPauli &b) {
    return {a.pX - b.pX, a.pY - b.pY, a.pZ - b.pZ};
}

}  // namespace

Matrix2 matmul(const Matrix2 &a, const Matrix2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Matrix2 adjoint(const Matrix2 &a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

const Matrix2 &pauli_matrix(PauliOp g) {
    static const Matrix2 I{1, 0, 0, 1};
    static const Matrix2 X{0, 1, 1, 0};
    static const Matrix2 Y{0, Complex(0, -1), Complex(0, 1), 0};
    static const Matrix2 Z{1, 0, 0, -1};
    switch (g) {
        case PauliOp::X:
            return X;
        case PauliOp::Y:
            return Y;
        case PauliOp::Z:
            return Z;
        default:
            return I;
    }
}

double StochasticPauli::get(PauliOp g) const {
    switch (g) {
        case PauliOp::X:
            return pX;
        case PauliOp::Y:
            return pY;
        case PauliOp::Z:
            return pZ;
        default:
            return 1 - pX - pY - pZ;
    }
}

ChannelValidation validate(const KrausChannel &c, double tol) {
    Matrix2 sum{};
    for (const auto &e : c.ops) {
        Matrix2 m = matmul(adjoint(e), e);
        for (int i = 0; i < 4; i++) {
            sum[i] += m[i];
        }
    }
    const Matrix2 &I = pauli_matrix(PauliOp::I);
    double dev = 0;
    for (int i = 0; i < 4; i++) {
        dev = std::max(dev, std::abs(sum[i] - I[i]));
    }
    return {dev <= tol, dev};
}

StochasticPauli associated_stochastic(const KrausChannel &c, bool raw_trace) {
    double scale = raw_trace ? 1.0 : 0.5;
    StochasticPauli s;
    for (const auto &e : c.ops) {
        for (PauliOp g : kPaulis) {
            add_to(s, g, std::norm(trace_with(e, g) * scale));
        }
    }
    return s;
}

StochasticPauli compose_exact(const std::vector<KrausChannel> &channels, bool raw_trace) {
    if (channels.size() > kMaxComposed) {
        throw std::invalid_argument("compose_exact supports at most 12 channels");
    }
    bool unitary = true;
    for (const auto &c : channels) {
        if (c.ops.empty()) {
            throw std::invalid_argument("channel with no Kraus operators");
        }
        unitary = unitary && c.ops.size() == 1;
    }
    if (unitary) {
        Matrix2 u = pauli_matrix(PauliOp::I);
        for (const auto &c : channels) {
            u = matmul(c.ops[0], u);
        }
        return associated_stochastic(KrausChannel{{u}}, raw_trace);
    }
    double scale = raw_trace ? 1.0 : 0.5;
    StochasticPauli s;
    auto expand = [&](auto &&self, size_t k, const Matrix2 &acc) -> void {
        if (k == channels.size()) {
            for (PauliOp g : kPaulis) {
                add_to(s, g, std::norm(trace_with(acc, g) * scale));
            }
            return;
        }
        for (const auto &e : channels[k].ops) {
            self(self, k + 1, matmul(e, acc));
        }
    };
    expand(expand, 0, pauli_matrix(PauliOp::I));
    return s;
}

StochasticPauli stochastic_accumulate(const std::vector<KrausChannel> &channels) {
    StochasticPauli s;
    for (const auto &c : channels) {
        StochasticPauli a = associated_stochastic(c);
        s.pX += a.pX;
        s.pY += a.pY;
        s.pZ += a.pZ;
    }
    return s;
}

Discrepancy coherent_discrepancy(const std::vector<KrausChannel> &channels) {
    Discrepancy d;
    d.exact = compose_exact(channels);
    d.stochastic = stochastic_accumulate(channels);
    d.exact_minus_stochastic = difference(d.exact, d.stochastic);
    for (PauliOp g : kPaulis) {
        Complex total = 0;
        double diag = 0;
        for (const auto &c : channels) {
            Complex a = trace_with(c.ops.at(0), g) * 0.5;
            total += a;
            diag += std::norm(a);
        }
        add_to(d.leading_term, g, std::norm(total) - diag);
    }
    return d;
}

KrausChannel bit_flip(double q) {
    Matrix2 i = pauli_matrix(PauliOp::I), x = pauli_matrix(PauliOp::X);
    for (auto &v : i) {
        v *= std::sqrt(1 - q);
    }
    for (auto &v : x) {
        v *= std::sqrt(q);
    }
    return {{i, x}};
}

KrausChannel phase_flip(double q) {
    Matrix2 i = pauli_matrix(PauliOp::I), z = pauli_matrix(PauliOp::Z);
    for (auto &v : i) {
        v *= std::sqrt(1 - q);
    }
    for (auto &v : z) {
        v *= std::sqrt(q);
    }
    return {{i, z}};
}

KrausChannel depolarizing_channel(double q) {
    KrausChannel c;
    for (PauliOp g : {PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z}) {
        Matrix2 m = pauli_matrix(g);
        double w = std::sqrt(g == PauliOp::I ? 1 - 3 * q : q);
        for (auto &v : m) {
            v *= w;
        }
        c.ops.push_back(m);
    }
    return c;
}

KrausChannel rotation(PauliOp axis, double theta) {
    if (axis == PauliOp::I) {
        throw std::invalid_argument("rotation axis must be X, Y or Z");
    }
    const Matrix2 &g = pauli_matrix(axis);
    Matrix2 u;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (int i = 0; i < 4; i++) {
        u[i] = (i == 0 || i == 3 ? c : 0.0) - Complex(0, s) * g[i];
    }
    return {{u}};
}

RandomSignStats random_sign_discrepancy(double theta, int s, size_t sequences, uint64_t seed) {
    if (s < 1 || static_cast<size_t>(s) > kMaxComposed) {
        throw std::invalid_argument("sequence length must be in [1, 12]");
    }
    std::mt19937_64 rng(seed);
    KrausChannel plus = rotation(PauliOp::X, theta), minus = rotation(PauliOp::X, -theta);
    double sum = 0, sum2 = 0;
    for (size_t k = 0; k < sequences; k++) {
        std::vector<KrausChannel> seq;
        for (int j = 0; j < s; j++) {
            seq.push_back((rng() & 1) ? plus : minus);
        }
        double d = coherent_discrepancy(seq).exact_minus_stochastic.pX;
        sum += d;
        sum2 += d * d;
    }
    RandomSignStats r;
    r.sequences = sequences;
    if (sequences) {
        r.mean = sum / sequences;
        double n = static_cast<double>(sequences);
        r.variance = sequences > 1 ? (sum2 - n * r.mean * r.mean) / (n - 1) : 0;
        r.standard_error = std::sqrt(std::max(0.0, r.variance) / n);
    }
    return r;
}

}  // namespace strandtol
