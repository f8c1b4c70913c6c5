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
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "strandtol/channel.hpp"

using namespace strandtol;

namespace {

KrausChannel identity_channel() { return KrausChannel{{pauli_matrix(PauliOp::I)}}; }

KrausChannel unitary_product(const std::vector<KrausChannel> &seq) {
    Matrix2 u = pauli_matrix(PauliOp::I);
    for (const auto &c : seq) u = matmul(c.ops.at(0), u);
    return KrausChannel{{u}};
}

// Random single-qubit unitary from Euler angles.
KrausChannel random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(-M_PI, M_PI);
    KrausChannel z1 = rotation(PauliOp::Z, a(rng)), y = rotation(PauliOp::Y, a(rng)), z2 = rotation(PauliOp::Z, a(rng));
    return unitary_product({z1, y, z2});
}

}  // namespace

TEST(ChannelValidate, Examples) {
    EXPECT_TRUE(validate(bit_flip(0.1)).ok);
    EXPECT_TRUE(validate(rotation(PauliOp::X, 0.7)).ok);
    EXPECT_TRUE(validate(depolarizing_channel(0.05)).ok);
    ChannelValidation bad = validate(KrausChannel{{pauli_matrix(PauliOp::I), pauli_matrix(PauliOp::I)}});
    EXPECT_FALSE(bad.ok);
    EXPECT_NEAR(bad.max_deviation, 1.0, 1e-15);
}

TEST(ChannelAssociate, Examples) {
    StochasticPauli b = associated_stochastic(bit_flip(0.1));
    EXPECT_EQ(b.pX, 0.1 * 1.0);
    EXPECT_NEAR(b.pX, 0.1, 1e-15);
    EXPECT_EQ(b.pY, 0.0);
    EXPECT_EQ(b.pZ, 0.0);

    StochasticPauli d = associated_stochastic(depolarizing_channel(0.02));
    EXPECT_NEAR(d.pX, 0.02, 1e-15);
    EXPECT_NEAR(d.pY, 0.02, 1e-15);
    EXPECT_NEAR(d.pZ, 0.02, 1e-15);

    for (double theta : {1e-3, 0.1, 1.0, 2.5}) {
        StochasticPauli r = associated_stochastic(rotation(PauliOp::X, theta));
        EXPECT_NEAR(r.pX, oracle::rotation_exact_x(theta, 1), 1e-15);
        EXPECT_NEAR(r.pY, 0.0, 1e-15);
        EXPECT_NEAR(r.pZ, 0.0, 1e-15);
    }
}

TEST(ChannelAssociate, RawTraceDropsNormalization) {
    StochasticPauli r = associated_stochastic(bit_flip(0.1), true);
    EXPECT_NEAR(r.pX, 0.4, 1e-15);
}

TEST(ChannelProperty, PauliDiagonalFixedPoint) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 0.3);
    for (int i = 0; i < 200; i++) {
        double px = u(rng), py = u(rng), pz = u(rng);
        KrausChannel c;
        c.ops.push_back(pauli_matrix(PauliOp::I));
        for (auto &e : c.ops[0]) e *= std::sqrt(1 - px - py - pz);
        for (auto [g, q] : {std::pair{PauliOp::X, px}, {PauliOp::Y, py}, {PauliOp::Z, pz}}) {
            Matrix2 m = pauli_matrix(g);
            for (auto &e : m) e *= std::sqrt(q);
            c.ops.push_back(m);
        }
        ASSERT_TRUE(validate(c).ok);
        StochasticPauli s = associated_stochastic(c);
        EXPECT_NEAR(s.pX, px, 1e-14);
        EXPECT_NEAR(s.pY, py, 1e-14);
        EXPECT_NEAR(s.pZ, pz, 1e-14);
    }
}

TEST(ChannelCompose, SingleChannelMatchesAssociation) {
    for (const KrausChannel &c : {bit_flip(0.2), depolarizing_channel(0.1), rotation(PauliOp::Y, 0.4)}) {
        StochasticPauli a = associated_stochastic(c), e = compose_exact({c});
        EXPECT_NEAR(a.pX, e.pX, 1e-15);
        EXPECT_NEAR(a.pY, e.pY, 1e-15);
        EXPECT_NEAR(a.pZ, e.pZ, 1e-15);
    }
}

TEST(ChannelCompose, AlignedRotations) {
    for (int s = 1; s <= 12; s++) {
        std::vector<KrausChannel> seq(s, rotation(PauliOp::X, 0.3));
        EXPECT_NEAR(compose_exact(seq).pX, oracle::rotation_exact_x(0.3, s), 1e-13);
    }
}

TEST(ChannelCompose, OddFlipCount) {
    double q = 0.07;
    for (int s = 1; s <= 10; s++) {
        std::vector<KrausChannel> seq(s, bit_flip(q));
        StochasticPauli e = compose_exact(seq);
        EXPECT_NEAR(e.pX, (1 - std::pow(1 - 2 * q, s)) / 2, 1e-13);
        EXPECT_NEAR(e.pY, 0.0, 1e-15);
        EXPECT_NEAR(e.pZ, 0.0, 1e-15);
    }
}

TEST(ChannelCompose, LengthCap) {
    std::vector<KrausChannel> seq(13, bit_flip(0.1));
    EXPECT_THROW(compose_exact(seq), std::invalid_argument);
}

TEST(ChannelProperty, IdentityInsertionInvariance) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; i++) {
        std::vector<KrausChannel> seq = {bit_flip(0.05), random_unitary(rng), depolarizing_channel(0.03),
                                         random_unitary(rng)};
        StochasticPauli base = compose_exact(seq);
        std::vector<KrausChannel> padded = seq;
        size_t at = std::uniform_int_distribution<size_t>(0, padded.size())(rng);
        padded.insert(padded.begin() + at, identity_channel());
        padded.insert(padded.begin(), identity_channel());
        StochasticPauli e = compose_exact(padded);
        EXPECT_NEAR(base.pX, e.pX, 1e-13);
        EXPECT_NEAR(base.pY, e.pY, 1e-13);
        EXPECT_NEAR(base.pZ, e.pZ, 1e-13);
    }
}

TEST(ChannelProperty, UnitaryShortcut) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; i++) {
        int s = std::uniform_int_distribution<int>(1, 12)(rng);
        std::vector<KrausChannel> seq;
        for (int k = 0; k < s; k++) seq.push_back(random_unitary(rng));
        StochasticPauli e = compose_exact(seq), a = associated_stochastic(unitary_product(seq));
        EXPECT_NEAR(e.pX, a.pX, 1e-10);
        EXPECT_NEAR(e.pY, a.pY, 1e-10);
        EXPECT_NEAR(e.pZ, a.pZ, 1e-10);
    }
}

TEST(ChannelAccumulate, Additivity) {
    EXPECT_EQ(stochastic_accumulate({}).pX, 0.0);
    std::vector<KrausChannel> seq(5, rotation(PauliOp::X, 0.2));
    EXPECT_NEAR(stochastic_accumulate(seq).pX, 5 * oracle::rotation_exact_x(0.2, 1), 1e-15);
    std::vector<KrausChannel> mix = {bit_flip(0.01), phase_flip(0.02), bit_flip(0.01), phase_flip(0.02),
                                     phase_flip(0.02)};
    StochasticPauli m = stochastic_accumulate(mix);
    EXPECT_NEAR(m.pX, 0.02, 1e-15);
    EXPECT_NEAR(m.pY, 0.0, 1e-15);
    EXPECT_NEAR(m.pZ, 0.06, 1e-15);
}

TEST(ChannelDiscrepancy, AlignedRotations) {
    double theta = 1e-3;
    for (int s : {2, 4, 8, 12}) {
        std::vector<KrausChannel> seq(s, rotation(PauliOp::X, theta));
        Discrepancy d = coherent_discrepancy(seq);
        EXPECT_NEAR(d.exact_minus_stochastic.pX, oracle::rotation_discrepancy_x(theta, s), 1e-16);
        EXPECT_NEAR(d.leading_term.pX, s * (s - 1) * oracle::rotation_exact_x(theta, 1), 1e-18);
        EXPECT_NEAR(d.leading_term.pX, d.exact_minus_stochastic.pX, 1e-8);
    }
}

TEST(ChannelDiscrepancy, StochasticHasNoLeadingTerm) {
    std::vector<KrausChannel> seq = {bit_flip(1e-3), depolarizing_channel(1e-3), phase_flip(2e-3), bit_flip(1e-3)};
    Discrepancy d = coherent_discrepancy(seq);
    EXPECT_EQ(d.leading_term.pX, 0.0);
    EXPECT_EQ(d.leading_term.pY, 0.0);
    EXPECT_EQ(d.leading_term.pZ, 0.0);
    EXPECT_LT(std::abs(d.exact_minus_stochastic.pX), 1e-4);
    EXPECT_LT(std::abs(d.exact_minus_stochastic.pZ), 1e-4);
}

TEST(ChannelDiscrepancy, RandomSignsAverageOut) {
    double theta = 1e-2;
    RandomSignStats prev;
    for (int s : {3, 6, 12}) {
        RandomSignStats r = random_sign_discrepancy(theta, s, 10000, 42 + s);
        EXPECT_EQ(r.sequences, 10000u);
        EXPECT_LT(std::abs(r.mean), 3 * r.standard_error + 1e-12);
        if (prev.sequences) {
            // Standard deviation grows linearly in s.
            double ratio = std::sqrt(r.variance / prev.variance);
            EXPECT_NEAR(ratio, 2.0, 0.3);
        }
        prev = r;
    }
}

TEST(ChannelDiscrepancy, RandomSignsDeterministic) {
    RandomSignStats a = random_sign_discrepancy(1e-2, 8, 500, 3), b = random_sign_discrepancy(1e-2, 8, 500, 3);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.variance, b.variance);
    EXPECT_THROW(random_sign_discrepancy(1e-2, 13, 10, 1), std::invalid_argument);
}

TEST(ChannelProperty, LeadingTermConvergenceOrder) {
    // Residual of the leading-term prediction against the exact discrepancy,
    // as a power of p = sin^2(theta / 2).
    int s = 6;
    std::vector<double> lp, lr;
    for (double theta : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
        std::vector<KrausChannel> seq(s, rotation(PauliOp::X, theta));
        double p = oracle::rotation_exact_x(theta, 1);
        double residual = std::abs(coherent_discrepancy(seq).leading_term.pX - oracle::rotation_discrepancy_x(theta, s));
        lp.push_back(std::log(p));
        lr.push_back(std::log(residual));
    }
    double n = static_cast<double>(lp.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lp.size(); i++) {
        sx += lp[i];
        sy += lr[i];
        sxx += lp[i] * lp[i];
        sxy += lp[i] * lr[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_GT(slope, 1.5);
    for (size_t i = 0; i + 1 < lr.size(); i++) {
        EXPECT_LT(lr[i + 1], lr[i]);
    }
}
