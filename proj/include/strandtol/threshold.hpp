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

#ifndef STRANDTOL_THRESHOLD_HPP
#define STRANDTOL_THRESHOLD_HPP

#include <string>
#include <vector>

#include "strandtol/models.hpp"
#include "strandtol/procedures.hpp"

namespace strandtol {

/// Probability that at most t of n qubits fail, each independently with p_L.
double e_pass(double p_L, int n, int t);
/// Probability that more than t of n qubits fail.
double e_fail(double p_L, int n, int t);

struct ThresholdOptions {
    /// Use the full second-order checkpoint polynomials instead of first order.
    bool second_order = false;
    double tolerance = 1e-6;
};

struct InfiniteThreshold {
    bool found = false;
    double p_th = 0;
    EncodedGate binding_gate = EncodedGate::Idle;
    std::string binding_checkpoint;
    std::string note;
};

/// Largest p at which every gate's expression stays at or below tau, by
/// bisection on [0, 1].
InfiniteThreshold threshold_infinite(ProcedureId proc, const ErrorModel &model, double tau,
                                     const ThresholdOptions &options = {});

struct CheckpointCoefficient {
    std::string label;
    /// p_L as a polynomial in the scale p.
    Poly p_L;
    /// Coefficient of p in p_L.
    Rational first_order;
};

/// Counted measurements followed by the data outputs, substituted under model.
std::vector<CheckpointCoefficient> checkpoint_list(ProcedureId proc, EncodedGate gate, const ErrorModel &model,
                                                   int maxdegree = kDefaultMaxDegree);

struct GateBounds {
    EncodedGate gate;
    bool lower_found = false;
    bool upper_found = false;
    double lower = 0;
    double upper = 0;
};

struct FiniteThreshold {
    bool found = false;
    double lower = 0;
    double upper = 0;
    EncodedGate binding_gate_lower = EncodedGate::Idle;
    EncodedGate binding_gate_upper = EncodedGate::Idle;
    std::vector<GateBounds> gates;
    std::string note;
};

/// Per gate, solves max_S E_f(p_L(p)) = p for the upper bound and
/// sum_S E_f(p_L(p)) = p for the lower bound on (0, 0.5), then takes the
/// minimum over gates.
FiniteThreshold threshold_finite(ProcedureId proc, const ErrorModel &model, int n, int t,
                                 const ThresholdOptions &options = {});

/// Root of sum_or_max E_f(c_i p) = p for explicit first-order coefficients.
struct CrossingResult {
    bool found = false;
    double p = 0;
};
CrossingResult solve_crossing(const std::vector<Poly> &p_L, int n, int t, bool use_sum);

struct SecondOrderBound {
    double first_order = 0;
    double bound = 0;
    double ratio = 0;
    /// bound - first_order.
    double second_order_term = 0;
};

/// g1 p_r - g1 (g2 - 1) p_r^2 + (g2 / 2)(g2 - 1) p_r^2 and its relative
/// second-order size.
SecondOrderBound second_order_bound(int g1, int g2, double p_r);

}  // namespace strandtol

#endif
