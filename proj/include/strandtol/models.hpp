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

#ifndef STRANDTOL_MODELS_HPP
#define STRANDTOL_MODELS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "strandtol/symbolic.hpp"

namespace strandtol {

struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Every generic parameter as a nonnegative rational multiple of the scale p.
struct ErrorModel {
    std::string name;
    ScaleAssignment coefficients{};

    Rational get(Parameter p) const { return coefficients[static_cast<size_t>(p)]; }
    void set(Parameter p, Rational c);
    /// Numeric parameter values at scale p. The scale entry itself is set to p.
    ParamValues values_at(double p) const;
    bool operator==(const ErrorModel &o) const { return coefficients == o.coefficients; }
};

/// Rows of the four reduced models, numbered 1 to 4.
ErrorModel builtin_model(int id);

/// Text format: one "parameter: rational" per line, '#' starts a comment.
ErrorModel parse_model(std::string_view text, const std::string &name = "custom");
ErrorModel load_model(const std::string &path);
/// Writes every nonzero coefficient in canonical parameter order.
std::string save_model(const ErrorModel &m);

/// Splits one_q over the three one-qubit Paulis and two_q over the fifteen
/// two-qubit Paulis, and derives the ancilla entries from the gate entries.
ErrorModel depolarizing(Rational one_q, Rational two_q, Rational meas);

/// "1".."4" selects a builtin, anything else is read as a model file.
ErrorModel model_from_spec(const std::string &spec);

}  // namespace strandtol

#endif
