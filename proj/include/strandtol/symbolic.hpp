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

#ifndef STRANDTOL_SYMBOLIC_HPP
#define STRANDTOL_SYMBOLIC_HPP

#include <array>
#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strandtol/pauli.hpp"

namespace strandtol {

using Rational = boost::rational<int64_t>;

std::string rational_str(const Rational &r);
/// Parses "a", "-a" or "a/b". Throws std::invalid_argument.
Rational parse_rational(std::string_view s);

/// Error parameters in canonical rendering order. The last entry is the single
/// scale variable that models substitute into.
enum class Parameter : uint8_t {
    p1X, p1Y, p1Z,
    p2IX, p2IY, p2IZ,
    p2XI, p2XX, p2XY, p2XZ,
    p2YI, p2YX, p2YY, p2YZ,
    p2ZI, p2ZX, p2ZY, p2ZZ,
    pM,
    pAX, pAY, pAZ,
    pBX, pBY, pBZ,
    p,
};

constexpr size_t kNumGenericParameters = 25;
constexpr size_t kNumParameters = 26;

const std::string &parameter_name(Parameter p);
std::optional<Parameter> parameter_from_name(std::string_view name);
/// The 25 generic parameters, excluding the scale variable.
const std::vector<Parameter> &generic_parameters();

Parameter one_qubit_parameter(PauliOp g);
/// Two-qubit parameter for control Pauli lam and target Pauli xi; not both I.
Parameter two_qubit_parameter(PauliOp lam, PauliOp xi);
/// kind is 'A' or 'B'.
Parameter ancilla_parameter(char kind, PauliOp g);

/// Numeric value of each parameter, indexed by Parameter.
using ParamValues = std::array<double, kNumParameters>;

constexpr int kDefaultMaxDegree = 2;
constexpr int kMaxSupportedDegree = 8;

/// Multiset of parameters packed one byte per factor (index + 1), sorted ascending.
class Monomial {
   public:
    Monomial() = default;
    explicit Monomial(Parameter p);
    static Monomial from_factors(std::vector<Parameter> factors);

    int degree() const;
    std::vector<Parameter> factors() const;
    uint64_t key() const { return key_; }
    /// Product; empty if the degree would exceed kMaxSupportedDegree.
    std::optional<Monomial> times(const Monomial &other) const;
    double evaluate(const ParamValues &v) const;
    /// "pAX*pBZ", "pM^2", or "1" for the constant monomial.
    std::string str() const;

    bool operator==(const Monomial &o) const { return key_ == o.key_; }
    bool operator<(const Monomial &o) const { return key_ < o.key_; }

   private:
    uint64_t key_ = 0;
};

/// Rendering order: by degree, then lexicographic in parameter order.
bool canonical_less(const Monomial &a, const Monomial &b);

/// Polynomial with exact rational coefficients, truncated at a total degree.
class Poly {
   public:
    explicit Poly(int maxdegree = kDefaultMaxDegree);
    static Poly constant(Rational c, int maxdegree = kDefaultMaxDegree);
    static Poly var(Parameter p, int maxdegree = kDefaultMaxDegree);
    static Poly term(Rational c, const Monomial &m, int maxdegree = kDefaultMaxDegree);

    int maxdegree() const { return maxdegree_; }
    bool is_zero() const { return terms_.empty(); }
    /// Terms sorted by monomial key; no zero coefficients.
    const std::vector<std::pair<Monomial, Rational>> &terms() const { return terms_; }
    Rational coefficient(const Monomial &m) const;
    int degree() const;
    bool has_parameter(Parameter p) const;

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator-() const;
    Poly operator*(const Poly &o) const;
    Poly operator*(const Rational &c) const;
    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    bool operator==(const Poly &o) const { return maxdegree_ == o.maxdegree_ && terms_ == o.terms_; }
    bool operator!=(const Poly &o) const { return !(*this == o); }

    /// Keeps only monomials of degree at most d; maxdegree is unchanged.
    Poly truncated(int d) const;
    Poly first_order() const { return truncated(1); }
    Poly with_maxdegree(int d) const;
    double evaluate(const ParamValues &v) const;
    /// Nonnegative coefficientwise: this <= o holds for all nonnegative parameters.
    bool dominated_by(const Poly &o) const;

   private:
    void check_same(const Poly &o) const;
    void normalize();
    std::vector<std::pair<Monomial, Rational>> terms_;
    int maxdegree_;
};

Poly add(const Poly &a, const Poly &b);
Poly mul(const Poly &a, const Poly &b);

enum class ExprKind { Leaf, Max, Min, Sum };

/// Polynomial leaves combined with max, min and sum nodes.
class Expr {
   public:
    Expr() : kind_(ExprKind::Leaf) {}
    Expr(Poly p) : kind_(ExprKind::Leaf), poly_(std::move(p)) {}
    /// A max/min node needs two or more children. Throws std::invalid_argument.
    static Expr max(std::vector<Expr> children);
    static Expr min(std::vector<Expr> children);
    static Expr sum(std::vector<Expr> children);
    /// Like max/min but a single child is returned unchanged.
    static Expr max_of(std::vector<Expr> children);
    static Expr min_of(std::vector<Expr> children);

    ExprKind kind() const { return kind_; }
    const Poly &poly() const { return poly_; }
    const std::vector<Expr> &children() const { return children_; }
    int maxdegree() const;

    double evaluate(const ParamValues &v) const;
    /// Applies f to every leaf.
    template <typename F>
    Expr map_leaves(F f) const {
        if (kind_ == ExprKind::Leaf) {
            return Expr(f(poly_));
        }
        Expr r;
        r.kind_ = kind_;
        for (const auto &c : children_) {
            r.children_.push_back(c.map_leaves(f));
        }
        return r;
    }
    Expr first_order() const;
    bool operator==(const Expr &o) const;

   private:
    ExprKind kind_;
    Poly poly_;
    std::vector<Expr> children_;
};

/// Coefficient of each parameter as a multiple of the scale p. Absent means 0.
using ScaleAssignment = std::array<Rational, kNumGenericParameters>;

Poly substitute(const Poly &poly, const ScaleAssignment &model);
Expr substitute(const Expr &e, const ScaleAssignment &model);
double evaluate(const Expr &e, const ParamValues &values);

std::string canonical_string(const Poly &p);
std::string canonical_string(const Expr &e);
/// Inverse of canonical_string. Also accepts unsorted input, repeated factors
/// written as "a*a" and "a^k", and integer or a/b coefficients.
Poly parse_poly(std::string_view s, int maxdegree = kDefaultMaxDegree);
Expr parse_expr(std::string_view s, int maxdegree = kDefaultMaxDegree);

/// Rewrites e as a single max or min over polynomials by distributing sums over
/// max/min nodes, then drops branches that cannot be selected because another
/// branch bounds them coefficientwise. Nested max-of-min structure is kept.
Expr normalize_branches(const Expr &e);
/// Writes a max/min over polynomials as common + max(residuals), where common is
/// the coefficientwise minimum of the branches.
Expr factor_common(const Expr &e);

}  // namespace strandtol

#endif
