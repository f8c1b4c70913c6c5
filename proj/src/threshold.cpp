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

#include "strandtol/threshold.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace strandtol {

namespace {

void check_code(int n, int t) {
    if (n < 1 || t < 0 || t > n) {
        throw std::invalid_argument("code parameters need n >= 1 and 0 <= t <= n");
    }
}

double log_choose(int n, int i) {
    return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
}

// Sum of binomial terms i in [lo, hi], accumulated in log space.
double binomial_sum(double p, int n, int lo, int hi) {
    if (lo > hi) {
        return 0;
    }
    if (p <= 0) {
        return lo == 0 ? 1 : 0;
    }
    if (p >= 1) {
        return hi == n ? 1 : 0;
    }
    double lp = std::log(p), lq = std::log1p(-p);
    std::vector<double> logs;
    logs.reserve(hi - lo + 1);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = lo; i <= hi; i++) {
        double l = log_choose(n, i) + i * lp + (n - i) * lq;
        logs.push_back(l);
        peak = std::max(peak, l);
    }
    double s = 0;
    for (double l : logs) {
        s += std::exp(l - peak);
    }
    return std::min(1.0, std::exp(peak) * s);
}

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

ParamValues scale_values(double p) {
    ParamValues v{};
    v[static_cast<size_t>(Parameter::p)] = p;
    return v;
}

}  // namespace

double e_pass(double p_L, int n, int t) {
    check_code(n, t);
    if (p_L < 0 || p_L > 1) {
        throw std::invalid_argument("p_L must lie in [0, 1]");
    }
    return binomial_sum(p_L, n, 0, t);
}

double e_fail(double p_L, int n, int t) {
    check_code(n, t);
    if (p_L < 0 || p_L > 1) {
        throw std::invalid_argument("p_L must lie in [0, 1]");
    }
    return binomial_sum(p_L, n, t + 1, n);
}

InfiniteThreshold threshold_infinite(ProcedureId proc, const ErrorModel &model, double tau,
                                     const ThresholdOptions &options) {
    if (!(tau > 0 && tau < 1.0 + 1e-12)) {
        throw std::invalid_argument("tau must lie in (0, 1]");
    }
    struct GateExpr {
        EncodedGate gate;
        Expr expr;
        std::vector<std::pair<std::string, Poly>> checkpoints;
    };
    std::vector<GateExpr> gates;
    bool all_zero = true;
    for (EncodedGate g : all_gates()) {
        const GadgetAnalysis &a = analyze_cached(proc, g);
        GateExpr ge{g, substitute(options.second_order ? a.expr : a.expr.first_order(), model.coefficients), {}};
        for (const auto &c : a.counted()) {
            Poly s = substitute(options.second_order ? c.p_L : c.p_L.first_order(), model.coefficients);
            all_zero = all_zero && s.is_zero();
            ge.checkpoints.emplace_back(c.label, s);
        }
        gates.push_back(std::move(ge));
    }
    InfiniteThreshold r;
    if (all_zero) {
        r.note = "no finite threshold: every expression vanishes under this model";
        return r;
    }
    auto worst = [&](double p) {
        double w = 0;
        for (const auto &g : gates) {
            w = std::max(w, g.expr.evaluate(scale_values(p)));
        }
        return w;
    };
    double lo = 0, hi = 1;
    if (worst(hi) <= tau) {
        lo = hi;
        r.note = "criterion holds on the whole interval [0, 1]";
    } else {
        while (hi - lo > options.tolerance) {
            double mid = 0.5 * (lo + hi);
            (worst(mid) <= tau ? lo : hi) = mid;
        }
    }
    r.found = true;
    r.p_th = lo;
    double best = -1;
    ParamValues at = scale_values(hi);
    for (const auto &g : gates) {
        double v = g.expr.evaluate(at);
        if (v > best) {
            best = v;
            r.binding_gate = g.gate;
        }
    }
    Combinator comb = combinator(proc, r.binding_gate);
    for (const auto &g : gates) {
        if (g.gate != r.binding_gate) {
            continue;
        }
        double pick = comb == Combinator::Max ? -1 : std::numeric_limits<double>::infinity();
        for (const auto &[label, poly] : g.checkpoints) {
            double v = poly.evaluate(at);
            if (comb == Combinator::Max ? v > pick : v < pick) {
                pick = v;
                r.binding_checkpoint = label;
            }
        }
    }
    return r;
}

std::vector<CheckpointCoefficient> checkpoint_list(ProcedureId proc, EncodedGate gate, const ErrorModel &model,
                                                   int maxdegree) {
    const GadgetAnalysis &a = analyze_cached(proc, gate, maxdegree);
    std::vector<CheckpointCoefficient> out;
    auto add = [&](const CheckpointRecord &c) {
        Poly s = substitute(c.p_L, model.coefficients);
        out.push_back({c.label, s, s.coefficient(Monomial(Parameter::p))});
    };
    for (const auto &c : a.counted()) {
        add(c);
    }
    for (const auto &c : a.outputs) {
        add(c);
    }
    return out;
}

CrossingResult solve_crossing(const std::vector<Poly> &p_L, int n, int t, bool use_sum) {
    check_code(n, t);
    auto F = [&](double p) {
        ParamValues v = scale_values(p);
        double acc = 0;
        for (const auto &poly : p_L) {
            double f = e_fail(clamp01(poly.evaluate(v)), n, t);
            acc = use_sum ? acc + f : std::max(acc, f);
        }
        return acc - p;
    };
    // The crossing sits where the failure curve first overtakes the diagonal.
    const double lo_end = 1e-12, hi_end = 0.5;
    const int steps = 400;
    double prev_p = lo_end;
    double prev = F(prev_p);
    if (prev >= 0) {
        return {};
    }
    for (int k = 1; k <= steps; k++) {
        double p = lo_end * std::pow(hi_end / lo_end, static_cast<double>(k) / steps);
        double cur = F(p);
        if (cur >= 0) {
            boost::math::tools::eps_tolerance<double> tol(48);
            boost::uintmax_t iters = 200;
            auto [a, b] = boost::math::tools::toms748_solve(F, prev_p, p, prev, cur, tol, iters);
            return {true, 0.5 * (a + b)};
        }
        prev_p = p;
        prev = cur;
    }
    return {};
}

FiniteThreshold threshold_finite(ProcedureId proc, const ErrorModel &model, int n, int t,
                                 const ThresholdOptions &options) {
    check_code(n, t);
    FiniteThreshold r;
    bool have_lower = false, have_upper = false;
    for (EncodedGate g : all_gates()) {
        std::vector<Poly> polys;
        for (const auto &c : checkpoint_list(proc, g, model)) {
            polys.push_back(options.second_order ? c.p_L : c.p_L.first_order());
        }
        GateBounds gb{g};
        CrossingResult lo = solve_crossing(polys, n, t, true);
        CrossingResult up = solve_crossing(polys, n, t, false);
        gb.lower_found = lo.found;
        gb.lower = lo.p;
        gb.upper_found = up.found;
        gb.upper = up.p;
        if (lo.found && (!have_lower || lo.p < r.lower)) {
            r.lower = lo.p;
            r.binding_gate_lower = g;
            have_lower = true;
        }
        if (up.found && (!have_upper || up.p < r.upper)) {
            r.upper = up.p;
            r.binding_gate_upper = g;
            have_upper = true;
        }
        r.gates.push_back(gb);
    }
    r.found = have_lower && have_upper;
    if (!r.found) {
        r.note = "no crossing in (0, 0.5)";
    }
    return r;
}

SecondOrderBound second_order_bound(int g1, int g2, double p_r) {
    if (g1 < 0 || g2 < g1) {
        throw std::invalid_argument("second_order_bound needs g2 >= g1 >= 0");
    }
    if (p_r < 0 || p_r > 1) {
        throw std::invalid_argument("p_r must lie in [0, 1]");
    }
    SecondOrderBound b;
    b.first_order = g1 * p_r;
    double coef = static_cast<double>(g2 - 1) * (0.5 * g2 - g1);
    b.second_order_term = coef * p_r * p_r;
    b.bound = b.first_order + b.second_order_term;
    b.ratio = b.first_order > 0 ? std::abs(b.second_order_term) / b.first_order : 0;
    return b;
}

}  // namespace strandtol
