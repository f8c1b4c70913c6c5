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

#include "strandtol/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace strandtol {

std::string rational_str(const Rational &r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

int64_t parse_int(std::string_view s, std::string_view whole) {
    int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad rational literal '" + std::string(whole) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(s, text));
    }
    int64_t den = parse_int(trim(s.substr(slash + 1)), text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_int(trim(s.substr(0, slash)), text), den);
}

namespace {

const std::vector<std::string> &names() {
    static const std::vector<std::string> v = [] {
        std::vector<std::string> r = {"p1X", "p1Y", "p1Z"};
        for (const char *k : {"IX", "IY", "IZ", "XI", "XX", "XY", "XZ", "YI", "YX", "YY", "YZ", "ZI", "ZX", "ZY", "ZZ"}) {
            r.push_back(std::string("p2") + k);
        }
        for (const char *k : {"pM", "pAX", "pAY", "pAZ", "pBX", "pBY", "pBZ", "p"}) {
            r.push_back(k);
        }
        return r;
    }();
    return v;
}

int pauli_index(PauliOp g) {
    switch (g) {
        case PauliOp::X:
            return 0;
        case PauliOp::Y:
            return 1;
        case PauliOp::Z:
            return 2;
        default:
            return -1;
    }
}

}  // namespace

const std::string &parameter_name(Parameter p) {
    return names().at(static_cast<size_t>(p));
}

std::optional<Parameter> parameter_from_name(std::string_view name) {
    const auto &n = names();
    for (size_t i = 0; i < n.size(); i++) {
        if (n[i] == name) {
            return static_cast<Parameter>(i);
        }
    }
    return std::nullopt;
}

const std::vector<Parameter> &generic_parameters() {
    static const std::vector<Parameter> v = [] {
        std::vector<Parameter> r;
        for (size_t i = 0; i < kNumGenericParameters; i++) {
            r.push_back(static_cast<Parameter>(i));
        }
        return r;
    }();
    return v;
}

Parameter one_qubit_parameter(PauliOp g) {
    int i = pauli_index(g);
    if (i < 0) {
        throw std::invalid_argument("one-qubit parameter needs a non-identity Pauli");
    }
    return static_cast<Parameter>(static_cast<int>(Parameter::p1X) + i);
}

Parameter two_qubit_parameter(PauliOp lam, PauliOp xi) {
    auto order = [](PauliOp g) { return g == PauliOp::I ? 0 : pauli_index(g) + 1; };
    int k = 4 * order(lam) + order(xi);
    if (k == 0) {
        throw std::invalid_argument("two-qubit parameter needs a non-identity Pauli pair");
    }
    return static_cast<Parameter>(static_cast<int>(Parameter::p2IX) + k - 1);
}

Parameter ancilla_parameter(char kind, PauliOp g) {
    int i = pauli_index(g);
    if (i < 0 || (kind != 'A' && kind != 'B')) {
        throw std::invalid_argument("ancilla parameter needs kind A or B and a non-identity Pauli");
    }
    auto base = kind == 'A' ? Parameter::pAX : Parameter::pBX;
    return static_cast<Parameter>(static_cast<int>(base) + i);
}

Monomial::Monomial(Parameter p) : key_(static_cast<uint64_t>(static_cast<uint8_t>(p) + 1) << 56) {}

Monomial Monomial::from_factors(std::vector<Parameter> factors) {
    if (factors.size() > static_cast<size_t>(kMaxSupportedDegree)) {
        throw std::invalid_argument("monomial degree exceeds supported maximum");
    }
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (size_t i = 0; i < factors.size(); i++) {
        m.key_ |= static_cast<uint64_t>(static_cast<uint8_t>(factors[i]) + 1) << (56 - 8 * i);
    }
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (uint64_t k = key_; k; k <<= 8) {
        d++;
    }
    return d;
}

std::vector<Parameter> Monomial::factors() const {
    std::vector<Parameter> r;
    for (int i = 0; i < kMaxSupportedDegree; i++) {
        uint8_t b = (key_ >> (56 - 8 * i)) & 0xFF;
        if (!b) {
            break;
        }
        r.push_back(static_cast<Parameter>(b - 1));
    }
    return r;
}

std::optional<Monomial> Monomial::times(const Monomial &other) const {
    if (!key_) {
        return other;
    }
    if (!other.key_) {
        return *this;
    }
    auto a = factors();
    auto b = other.factors();
    if (a.size() + b.size() > static_cast<size_t>(kMaxSupportedDegree)) {
        return std::nullopt;
    }
    a.insert(a.end(), b.begin(), b.end());
    return from_factors(std::move(a));
}

double Monomial::evaluate(const ParamValues &v) const {
    double r = 1;
    for (int i = 0; i < kMaxSupportedDegree; i++) {
        uint8_t b = (key_ >> (56 - 8 * i)) & 0xFF;
        if (!b) {
            break;
        }
        r *= v[b - 1];
    }
    return r;
}

std::string Monomial::str() const {
    auto f = factors();
    if (f.empty()) {
        return "1";
    }
    std::string out;
    for (size_t i = 0; i < f.size();) {
        size_t j = i;
        while (j < f.size() && f[j] == f[i]) {
            j++;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += parameter_name(f[i]);
        if (j - i > 1) {
            out += '^' + std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

bool canonical_less(const Monomial &a, const Monomial &b) {
    int da = a.degree(), db = b.degree();
    if (da != db) {
        return da < db;
    }
    return a.key() < b.key();
}

Poly::Poly(int maxdegree) : maxdegree_(maxdegree) {
    if (maxdegree < 1 || maxdegree > kMaxSupportedDegree) {
        throw std::invalid_argument("maxdegree must be in [1, " + std::to_string(kMaxSupportedDegree) + "]");
    }
}

Poly Poly::constant(Rational c, int maxdegree) {
    return term(c, Monomial(), maxdegree);
}

Poly Poly::var(Parameter p, int maxdegree) {
    return term(Rational(1), Monomial(p), maxdegree);
}

Poly Poly::term(Rational c, const Monomial &m, int maxdegree) {
    Poly r(maxdegree);
    if (c != Rational(0) && m.degree() <= maxdegree) {
        r.terms_.emplace_back(m, c);
    }
    return r;
}

Rational Poly::coefficient(const Monomial &m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto &t, const Monomial &k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) {
        return it->second;
    }
    return Rational(0);
}

int Poly::degree() const {
    int d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, t.first.degree());
    }
    return d;
}

bool Poly::has_parameter(Parameter p) const {
    for (const auto &t : terms_) {
        for (auto f : t.first.factors()) {
            if (f == p) {
                return true;
            }
        }
    }
    return false;
}

void Poly::check_same(const Poly &o) const {
    if (maxdegree_ != o.maxdegree_) {
        throw std::invalid_argument("polynomials with different maxdegree (" + std::to_string(maxdegree_) + " vs " +
                                    std::to_string(o.maxdegree_) + ")");
    }
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    size_t w = 0;
    for (size_t r = 0; r < terms_.size();) {
        Monomial m = terms_[r].first;
        Rational c = 0;
        while (r < terms_.size() && terms_[r].first == m) {
            c += terms_[r].second;
            r++;
        }
        if (c != Rational(0) && m.degree() <= maxdegree_) {
            terms_[w++] = {m, c};
        }
    }
    terms_.resize(w);
}

Poly Poly::operator+(const Poly &o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly &Poly::operator+=(const Poly &o) {
    check_same(o);
    if (o.terms_.empty()) {
        return *this;
    }
    std::vector<std::pair<Monomial, Rational>> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != Rational(0)) {
                out.emplace_back(terms_[i].first, c);
            }
            i++;
            j++;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

Poly Poly::operator-(const Poly &o) const {
    return *this + (-o);
}

Poly &Poly::operator-=(const Poly &o) {
    return *this += -o;
}

Poly Poly::operator*(const Rational &c) const {
    if (c == Rational(0)) {
        return Poly(maxdegree_);
    }
    Poly r = *this;
    for (auto &t : r.terms_) {
        t.second *= c;
    }
    return r;
}

Poly Poly::operator*(const Poly &o) const {
    check_same(o);
    Poly r(maxdegree_);
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto &[ma, ca] : terms_) {
        int da = ma.degree();
        for (const auto &[mb, cb] : o.terms_) {
            if (da + mb.degree() > maxdegree_) {
                continue;
            }
            r.terms_.emplace_back(*ma.times(mb), ca * cb);
        }
    }
    r.normalize();
    return r;
}

Poly Poly::truncated(int d) const {
    Poly r(maxdegree_);
    for (const auto &t : terms_) {
        if (t.first.degree() <= d) {
            r.terms_.push_back(t);
        }
    }
    return r;
}

Poly Poly::with_maxdegree(int d) const {
    Poly r(d);
    r.terms_ = terms_;
    r.normalize();
    return r;
}

double Poly::evaluate(const ParamValues &v) const {
    double s = 0;
    for (const auto &[m, c] : terms_) {
        s += boost::rational_cast<double>(c) * m.evaluate(v);
    }
    return s;
}

bool Poly::dominated_by(const Poly &o) const {
    Poly d = o - *this;
    for (const auto &t : d.terms_) {
        if (t.second < Rational(0)) {
            return false;
        }
    }
    return true;
}

Poly add(const Poly &a, const Poly &b) {
    return a + b;
}

Poly mul(const Poly &a, const Poly &b) {
    return a * b;
}

Expr Expr::max(std::vector<Expr> children) {
    if (children.size() < 2) {
        throw std::invalid_argument("max node needs at least two children");
    }
    Expr r;
    r.kind_ = ExprKind::Max;
    r.children_ = std::move(children);
    return r;
}

Expr Expr::min(std::vector<Expr> children) {
    if (children.size() < 2) {
        throw std::invalid_argument("min node needs at least two children");
    }
    Expr r;
    r.kind_ = ExprKind::Min;
    r.children_ = std::move(children);
    return r;
}

Expr Expr::sum(std::vector<Expr> children) {
    if (children.empty()) {
        throw std::invalid_argument("sum node needs at least one child");
    }
    Expr r;
    r.kind_ = ExprKind::Sum;
    r.children_ = std::move(children);
    return r;
}

Expr Expr::max_of(std::vector<Expr> children) {
    if (children.size() == 1) {
        return std::move(children[0]);
    }
    return max(std::move(children));
}

Expr Expr::min_of(std::vector<Expr> children) {
    if (children.size() == 1) {
        return std::move(children[0]);
    }
    return min(std::move(children));
}

int Expr::maxdegree() const {
    if (kind_ == ExprKind::Leaf) {
        return poly_.maxdegree();
    }
    return children_.front().maxdegree();
}

double Expr::evaluate(const ParamValues &v) const {
    switch (kind_) {
        case ExprKind::Leaf:
            return poly_.evaluate(v);
        case ExprKind::Sum: {
            double s = 0;
            for (const auto &c : children_) {
                s += c.evaluate(v);
            }
            return s;
        }
        case ExprKind::Max: {
            double m = -INFINITY;
            for (const auto &c : children_) {
                m = std::max(m, c.evaluate(v));
            }
            return m;
        }
        case ExprKind::Min: {
            double m = INFINITY;
            for (const auto &c : children_) {
                m = std::min(m, c.evaluate(v));
            }
            return m;
        }
    }
    return 0;
}

Expr Expr::first_order() const {
    return map_leaves([](const Poly &p) { return p.first_order(); });
}

bool Expr::operator==(const Expr &o) const {
    return kind_ == o.kind_ && poly_ == o.poly_ && children_ == o.children_;
}

Poly substitute(const Poly &poly, const ScaleAssignment &model) {
    Poly r(poly.maxdegree());
    for (const auto &[m, c] : poly.terms()) {
        Rational k = c;
        auto f = m.factors();
        for (auto x : f) {
            if (x == Parameter::p) {
                continue;
            }
            k *= model[static_cast<size_t>(x)];
        }
        if (k != Rational(0)) {
            r += Poly::term(k, Monomial::from_factors(std::vector<Parameter>(f.size(), Parameter::p)), poly.maxdegree());
        }
    }
    return r;
}

Expr substitute(const Expr &e, const ScaleAssignment &model) {
    return e.map_leaves([&](const Poly &p) { return substitute(p, model); });
}

double evaluate(const Expr &e, const ParamValues &values) {
    return e.evaluate(values);
}

std::string canonical_string(const Poly &p) {
    auto terms = p.terms();
    if (terms.empty()) {
        return "0";
    }
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return canonical_less(a.first, b.first); });
    std::string out;
    for (const auto &[m, c] : terms) {
        bool neg = c < Rational(0);
        Rational a = neg ? -c : c;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        if (m.degree() == 0) {
            out += rational_str(a);
        } else {
            if (a != Rational(1)) {
                out += rational_str(a) + " ";
            }
            out += m.str();
        }
    }
    return out;
}

std::string canonical_string(const Expr &e) {
    if (e.kind() == ExprKind::Leaf) {
        return canonical_string(e.poly());
    }
    std::vector<std::string> parts;
    std::optional<Poly> leaves;
    // Nested sums render as one flat sum.
    std::function<void(const Expr &)> collect = [&](const Expr &node) {
        for (const auto &c : node.children()) {
            if (node.kind() == ExprKind::Sum && c.kind() == ExprKind::Leaf) {
                leaves = leaves ? *leaves + c.poly() : c.poly();
            } else if (node.kind() == ExprKind::Sum && c.kind() == ExprKind::Sum) {
                collect(c);
            } else {
                parts.push_back(canonical_string(c));
            }
        }
    };
    collect(e);
    std::sort(parts.begin(), parts.end());
    std::string out;
    auto join = [&](const std::vector<std::string> &v, const char *sep) {
        for (const auto &s : v) {
            if (!out.empty() && out.back() != '(') {
                out += sep;
            }
            out += s;
        }
    };
    switch (e.kind()) {
        case ExprKind::Sum:
            // Leaf terms merge into one leading polynomial.
            if (leaves && (!leaves->is_zero() || parts.empty())) {
                out = canonical_string(*leaves);
            }
            join(parts, " + ");
            return out;
        case ExprKind::Max:
            out = "max(";
            break;
        case ExprKind::Min:
            out = "min(";
            break;
        default:
            break;
    }
    join(parts, ", ");
    return out + ")";
}

namespace {

class ExprParser {
   public:
    ExprParser(std::string_view s, int maxdegree) : s_(s), maxdegree_(maxdegree) {}

    Expr parse_all() {
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("unexpected character");
        }
        return e;
    }

   private:
    [[noreturn]] void fail(const std::string &why) {
        throw std::invalid_argument("cannot parse expression '" + std::string(s_) + "' at offset " +
                                    std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            pos_++;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_with(std::string_view w) {
        skip_ws();
        return s_.substr(pos_).starts_with(w);
    }

    Expr parse_sum() {
        Poly acc(maxdegree_);
        std::vector<Expr> funcs;
        bool first = true;
        while (true) {
            bool neg = false;
            if (peek('-')) {
                neg = true;
                pos_++;
            } else if (!first) {
                if (!peek('+')) {
                    break;
                }
                pos_++;
            }
            first = false;
            if (starts_with("max(") || starts_with("min(")) {
                if (neg) {
                    fail("negated max/min is not supported");
                }
                funcs.push_back(parse_func());
            } else {
                Poly t = parse_term();
                acc += neg ? -t : t;
            }
        }
        if (funcs.empty()) {
            return Expr(acc);
        }
        if (acc.is_zero() && funcs.size() == 1) {
            return funcs[0];
        }
        std::vector<Expr> children;
        if (!acc.is_zero()) {
            children.emplace_back(acc);
        }
        for (auto &f : funcs) {
            children.push_back(std::move(f));
        }
        return Expr::sum(std::move(children));
    }

    Expr parse_func() {
        bool is_max = s_.substr(pos_, 3) == "max";
        pos_ += 4;
        std::vector<Expr> children;
        children.push_back(parse_sum());
        while (peek(',')) {
            pos_++;
            children.push_back(parse_sum());
        }
        if (!peek(')')) {
            fail("expected ')'");
        }
        pos_++;
        if (children.size() < 2) {
            fail("max/min needs at least two arguments");
        }
        return is_max ? Expr::max(std::move(children)) : Expr::min(std::move(children));
    }

    std::string_view take_while(bool (*pred)(char)) {
        size_t start = pos_;
        while (pos_ < s_.size() && pred(s_[pos_])) {
            pos_++;
        }
        return s_.substr(start, pos_ - start);
    }

    Poly parse_term() {
        skip_ws();
        Rational coef = 1;
        bool have_coef = false;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::string_view num = take_while([](char c) { return static_cast<bool>(std::isdigit(static_cast<unsigned char>(c))); });
            std::string lit(num);
            if (peek('/')) {
                pos_++;
                skip_ws();
                lit += "/" + std::string(take_while([](char c) { return static_cast<bool>(std::isdigit(static_cast<unsigned char>(c))); }));
            }
            coef = parse_rational(lit);
            have_coef = true;
            if (peek('*')) {
                pos_++;
            }
        }
        skip_ws();
        std::vector<Parameter> factors;
        if (pos_ < s_.size() && s_[pos_] == 'p') {
            while (true) {
                skip_ws();
                std::string_view name = take_while([](char c) { return static_cast<bool>(std::isalnum(static_cast<unsigned char>(c))); });
                auto param = parameter_from_name(name);
                if (!param) {
                    fail("unknown parameter '" + std::string(name) + "'");
                }
                int power = 1;
                if (peek('^')) {
                    pos_++;
                    skip_ws();
                    power = static_cast<int>(parse_int(take_while([](char c) { return static_cast<bool>(std::isdigit(static_cast<unsigned char>(c))); }), s_));
                }
                for (int k = 0; k < power; k++) {
                    factors.push_back(*param);
                }
                if (!peek('*')) {
                    break;
                }
                pos_++;
            }
        } else if (!have_coef) {
            fail("expected a term");
        }
        return Poly::term(coef, Monomial::from_factors(std::move(factors)), maxdegree_);
    }

    std::string_view s_;
    int maxdegree_;
    size_t pos_ = 0;
};

Expr add_normalized(const Expr &a, const Expr &b);

bool is_lattice(const Expr &e) {
    return e.kind() == ExprKind::Max || e.kind() == ExprKind::Min;
}

std::vector<Expr> prune(std::vector<Expr> branches, bool is_max) {
    std::vector<Expr> out;
    for (size_t i = 0; i < branches.size(); i++) {
        bool drop = false;
        if (branches[i].kind() == ExprKind::Leaf) {
            for (size_t j = 0; j < branches.size() && !drop; j++) {
                if (j == i || branches[j].kind() != ExprKind::Leaf) {
                    continue;
                }
                const Poly &pi = branches[i].poly();
                const Poly &pj = branches[j].poly();
                bool covered = is_max ? pi.dominated_by(pj) : pj.dominated_by(pi);
                drop = covered && (pi != pj || j < i);
            }
        }
        if (!drop) {
            out.push_back(branches[i]);
        }
    }
    return out;
}

Expr make_lattice(ExprKind kind, std::vector<Expr> children) {
    std::vector<Expr> flat;
    for (auto &c : children) {
        if (c.kind() == kind) {
            for (const auto &g : c.children()) {
                flat.push_back(g);
            }
        } else {
            flat.push_back(std::move(c));
        }
    }
    flat = prune(std::move(flat), kind == ExprKind::Max);
    if (flat.size() == 1) {
        return flat[0];
    }
    return kind == ExprKind::Max ? Expr::max(std::move(flat)) : Expr::min(std::move(flat));
}

Expr add_normalized(const Expr &a, const Expr &b) {
    if (a.kind() == ExprKind::Leaf && b.kind() == ExprKind::Leaf) {
        return Expr(a.poly() + b.poly());
    }
    if (a.kind() == ExprKind::Leaf && is_lattice(b)) {
        std::vector<Expr> out;
        for (const auto &c : b.children()) {
            out.push_back(add_normalized(a, c));
        }
        return make_lattice(b.kind(), std::move(out));
    }
    if (is_lattice(a) && b.kind() == ExprKind::Leaf) {
        return add_normalized(b, a);
    }
    if (is_lattice(a) && a.kind() == b.kind()) {
        std::vector<Expr> out;
        for (const auto &x : a.children()) {
            for (const auto &y : b.children()) {
                out.push_back(add_normalized(x, y));
            }
        }
        return make_lattice(a.kind(), std::move(out));
    }
    std::vector<Expr> parts;
    for (const Expr *e : {&a, &b}) {
        if (e->kind() == ExprKind::Sum) {
            for (const auto &c : e->children()) {
                parts.push_back(c);
            }
        } else {
            parts.push_back(*e);
        }
    }
    return Expr::sum(std::move(parts));
}

}  // namespace

Poly parse_poly(std::string_view s, int maxdegree) {
    Expr e = ExprParser(s, maxdegree).parse_all();
    if (e.kind() != ExprKind::Leaf) {
        throw std::invalid_argument("expected a polynomial, got an expression: '" + std::string(s) + "'");
    }
    return e.poly();
}

Expr parse_expr(std::string_view s, int maxdegree) {
    return ExprParser(s, maxdegree).parse_all();
}

Expr normalize_branches(const Expr &e) {
    switch (e.kind()) {
        case ExprKind::Leaf:
            return e;
        case ExprKind::Max:
        case ExprKind::Min: {
            std::vector<Expr> children;
            for (const auto &c : e.children()) {
                children.push_back(normalize_branches(c));
            }
            return make_lattice(e.kind(), std::move(children));
        }
        case ExprKind::Sum: {
            Expr acc(Poly(e.maxdegree()));
            for (const auto &c : e.children()) {
                acc = add_normalized(acc, normalize_branches(c));
            }
            return acc;
        }
    }
    return e;
}

Expr factor_common(const Expr &e) {
    Expr n = normalize_branches(e);
    if (!is_lattice(n)) {
        return n;
    }
    for (const auto &c : n.children()) {
        if (c.kind() != ExprKind::Leaf) {
            return n;
        }
    }
    std::map<Monomial, Rational> low;
    std::map<Monomial, size_t> seen;
    for (const auto &c : n.children()) {
        for (const auto &[m, k] : c.poly().terms()) {
            auto it = low.find(m);
            low[m] = it == low.end() ? k : std::min(it->second, k);
            seen[m]++;
        }
    }
    Poly common(n.maxdegree());
    for (const auto &[m, k] : low) {
        Rational v = seen[m] == n.children().size() ? k : std::min(k, Rational(0));
        common += Poly::term(v, m, n.maxdegree());
    }
    if (common.is_zero()) {
        return n;
    }
    std::vector<Expr> residuals;
    for (const auto &c : n.children()) {
        residuals.emplace_back(c.poly() - common);
    }
    Expr rest = n.kind() == ExprKind::Max ? Expr::max(std::move(residuals)) : Expr::min(std::move(residuals));
    return Expr::sum({Expr(common), std::move(rest)});
}

}  // namespace strandtol
