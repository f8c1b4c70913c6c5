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

#include "strandtol/models.hpp"

#include <fstream>
#include <sstream>

#include "strandtol/procedures.hpp"

namespace strandtol {

void ErrorModel::set(Parameter p, Rational c) {
    if (p == Parameter::p) {
        throw ModelError("the scale p cannot be assigned in a model");
    }
    if (c < Rational(0)) {
        throw ModelError("negative coefficient for " + parameter_name(p));
    }
    coefficients[static_cast<size_t>(p)] = c;
}

ParamValues ErrorModel::values_at(double p) const {
    ParamValues v{};
    for (size_t i = 0; i < kNumGenericParameters; i++) {
        v[i] = boost::rational_cast<double>(coefficients[i]) * p;
    }
    v[static_cast<size_t>(Parameter::p)] = p;
    return v;
}

namespace {

void set_all_two_qubit(ErrorModel &m, Rational c) {
    for (size_t i = static_cast<size_t>(Parameter::p2IX); i <= static_cast<size_t>(Parameter::p2ZZ); i++) {
        m.set(static_cast<Parameter>(i), c);
    }
}

void set_one_qubit(ErrorModel &m, Rational c) {
    for (auto p : {Parameter::p1X, Parameter::p1Y, Parameter::p1Z}) {
        m.set(p, c);
    }
}

void set_ancillae(ErrorModel &m, Rational heavy, Rational light) {
    m.set(Parameter::pAX, heavy);
    m.set(Parameter::pBZ, heavy);
    for (auto p : {Parameter::pAY, Parameter::pAZ, Parameter::pBX, Parameter::pBY}) {
        m.set(p, light);
    }
}

}  // namespace

ErrorModel builtin_model(int id) {
    ErrorModel m;
    m.name = "model " + std::to_string(id);
    switch (id) {
        case 1:
            set_one_qubit(m, Rational(1, 4));
            set_all_two_qubit(m, Rational(1, 16));
            m.set(Parameter::pM, Rational(1, 2));
            set_ancillae(m, Rational(1, 4), Rational(1, 8));
            break;
        case 2:
            set_one_qubit(m, Rational(4, 15));
            set_all_two_qubit(m, Rational(1, 15));
            m.set(Parameter::pM, Rational(4));
            set_ancillae(m, Rational(4, 15), Rational(2, 15));
            break;
        case 3:
            set_all_two_qubit(m, Rational(1, 15));
            set_ancillae(m, Rational(4, 15), Rational(2, 15));
            break;
        case 4:
            for (auto p : {Parameter::p2IX, Parameter::p2XI, Parameter::p2IZ, Parameter::p2ZI}) {
                m.set(p, Rational(1, 4));
            }
            m.set(Parameter::pAX, Rational(1, 2));
            m.set(Parameter::pBZ, Rational(1, 2));
            m.set(Parameter::pAZ, Rational(1, 4));
            m.set(Parameter::pBX, Rational(1, 4));
            break;
        default:
            throw ModelError("builtin model id must be 1..4, got " + std::to_string(id));
    }
    return m;
}

ErrorModel parse_model(std::string_view text, const std::string &name) {
    ErrorModel m;
    m.name = name;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        lineno++;
        auto where = [&] { return name + ":" + std::to_string(lineno) + ": "; };
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ModelError(where() + "expected 'parameter: rational'");
        }
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        auto p = parameter_from_name(key);
        if (!p || *p == Parameter::p) {
            throw ModelError(where() + "unknown parameter '" + key + "'");
        }
        Rational c;
        try {
            c = parse_rational(value);
        } catch (const std::invalid_argument &e) {
            throw ModelError(where() + e.what());
        }
        if (c < Rational(0)) {
            throw ModelError(where() + "negative coefficient for " + key);
        }
        m.set(*p, c);
    }
    return m;
}

ErrorModel load_model(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ModelError("cannot open model file '" + path + "'");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_model(ss.str(), path);
}

std::string save_model(const ErrorModel &m) {
    std::string out = "# " + m.name + "\n";
    for (auto p : generic_parameters()) {
        Rational c = m.get(p);
        if (c != Rational(0)) {
            out += parameter_name(p) + ": " + rational_str(c) + "\n";
        }
    }
    return out;
}

ErrorModel depolarizing(Rational one_q, Rational two_q, Rational meas) {
    if (one_q < Rational(0) || two_q < Rational(0) || meas < Rational(0)) {
        throw ModelError("depolarizing rates must be nonnegative");
    }
    ErrorModel m;
    m.name = "depolarizing(" + rational_str(one_q) + ", " + rational_str(two_q) + ", " + rational_str(meas) + ")";
    set_one_qubit(m, one_q / 3);
    set_all_two_qubit(m, two_q / 15);
    m.set(Parameter::pM, meas);
    for (char kind : {'A', 'B'}) {
        for (const auto &[g, poly] : ancilla_defaults(kind, 1)) {
            Rational c = 0;
            for (const auto &[mono, k] : poly.terms()) {
                c += k * m.get(mono.factors().at(0));
            }
            m.set(ancilla_parameter(kind, g), c);
        }
    }
    return m;
}

ErrorModel model_from_spec(const std::string &spec) {
    if (spec.size() == 1 && spec[0] >= '1' && spec[0] <= '4') {
        return builtin_model(spec[0] - '0');
    }
    return load_model(spec);
}

}  // namespace strandtol
