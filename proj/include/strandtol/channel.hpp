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

#ifndef STRANDTOL_CHANNEL_HPP
#define STRANDTOL_CHANNEL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "strandtol/pauli.hpp"

namespace strandtol {

using Complex = std::complex<double>;
/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<Complex, 4>;

Matrix2 matmul(const Matrix2 &a, const Matrix2 &b);
Matrix2 adjoint(const Matrix2 &a);
const Matrix2 &pauli_matrix(PauliOp g);

struct KrausChannel {
    std::vector<Matrix2> ops;
};

struct StochasticPauli {
    double pX = 0;
    double pY = 0;
    double pZ = 0;
    double get(PauliOp g) const;
};

struct ChannelValidation {
    bool ok = false;
    double max_deviation = 0;
};

/// Checks sum_j E_j^dagger E_j = I entrywise within tol.
ChannelValidation validate(const KrausChannel &c, double tol = 1e-10);

/// p_G = sum_j |tr(E_j G) / 2|^2. With raw_trace the 1/2 is dropped.
StochasticPauli associated_stochastic(const KrausChannel &c, bool raw_trace = false);

/// Exact Pauli probabilities of the composed channel, E_s ... E_1 applied in
/// list order. At most 12 channels.
StochasticPauli compose_exact(const std::vector<KrausChannel> &channels, bool raw_trace = false);

/// Sum of the associated probabilities of each channel.
StochasticPauli stochastic_accumulate(const std::vector<KrausChannel> &channels);

struct Discrepancy {
    StochasticPauli exact;
    StochasticPauli stochastic;
    StochasticPauli exact_minus_stochastic;
    /// sum over k != l of c_k conj(c_l), c_k the Pauli coefficient of channel k's
    /// first Kraus operator.
    StochasticPauli leading_term;
};

Discrepancy coherent_discrepancy(const std::vector<KrausChannel> &channels);

KrausChannel bit_flip(double q);
KrausChannel phase_flip(double q);
/// Kraus set {sqrt(1 - 3q) I, sqrt(q) X, sqrt(q) Y, sqrt(q) Z}.
KrausChannel depolarizing_channel(double q);
/// exp(-i theta G / 2) for a non-identity Pauli G.
KrausChannel rotation(PauliOp axis, double theta);

struct RandomSignStats {
    size_t sequences = 0;
    double mean = 0;
    double variance = 0;
    double standard_error = 0;
};

/// X-rotation sequences of length s with independent random signs; statistics
/// of the X discrepancy over the sampled sequences.
RandomSignStats random_sign_discrepancy(double theta, int s, size_t sequences, uint64_t seed);

}  // namespace strandtol

#endif
