#pragma once

#include <boost/container/small_vector.hpp>

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coha/rational.hpp"
#include "coha/variable.hpp"

namespace coha {

// Degree of the zero polynomial. "deg <= negative bound" must correctly
// force the zero polynomial in filtration tests, so the sentinel compares
// below every finite degree.
constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 2;

struct VarPow {
    Variable var;
    int exp;  // > 0
    bool operator==(const VarPow& o) const { return var == o.var && exp == o.exp; }
};

// Factor lists are short; keep them inline to avoid per-monomial allocation.
using FactorList = boost::container::small_vector<VarPow, 6>;

// A monomial: factors sorted ascending in the canonical variable order,
// all exponents positive. A 64-bit packed key embeds the graded-lex prefix
// (total degree, leading variable, leading exponent) so most comparisons
// are one integer compare; equal keys fall back to the exact factor walk.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(FactorList factors);  // sorts and validates
    explicit Monomial(const std::vector<VarPow>& factors)
        : Monomial(FactorList(factors.begin(), factors.end())) {}
    static Monomial one() { return Monomial(); }
    static Monomial var(Variable v, int exp = 1);

    bool is_one() const { return factors_.empty(); }
    int total_degree() const { return static_cast<int>(key_ >> 48); }
    int degree_of(const Variable& v) const;
    int degree_where(const std::function<bool(const Variable&)>& pred) const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;        // this | o
    Monomial divide_into(const Monomial& o) const;  // o / this (requires divides)

    // Graded lexicographic order: first by total degree, ties broken by the
    // earliest variable (canonical ascending order) with the larger exponent.
    static int compare(const Monomial& a, const Monomial& b) {
        if (a.key_ != b.key_) return a.key_ < b.key_ ? -1 : 1;
        return compare_slow(a, b);
    }
    bool operator==(const Monomial& o) const { return key_ == o.key_ && factors_ == o.factors_; }
    bool operator<(const Monomial& o) const { return compare(*this, o) < 0; }

    const FactorList& factors() const { return factors_; }
    std::string to_string() const;  // "z[1,1]^2*h" ; "1" for the empty monomial

private:
    static int compare_slow(const Monomial& a, const Monomial& b);
    void update_key();
    FactorList factors_;
    uint64_t key_ = 0;
};

struct MonomialGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

class Polynomial;

// exact_div failure; carries the nonzero remainder as a witness.
class NonExactDivision;

// Exact sparse multivariate polynomial over the rationals. Terms are kept
// in descending graded-lex order, so begin() is the leading term and
// iteration order is the canonical print order.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialGreater>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
    Polynomial(long c);             // NOLINT(google-explicit-constructor)
    static Polynomial var(Variable v, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    Rational constant_value() const;  // requires is_constant()
    size_t term_count() const { return terms_.size(); }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Total degree; kNegInfDegree for 0.
    int total_degree() const;
    // Max over monomials of the summed exponents of variables matching pred.
    int degree_where(const std::function<bool(const Variable&)>& pred) const;
    int degree_of(const Variable& v) const;

    Rational coeff(const Monomial& m) const;
    const TermMap& terms() const { return terms_; }
    void add_term(const Monomial& m, const Rational& c);  // accumulates, drops zeros

    // Simultaneous substitution; variables outside the map are unchanged.
    Polynomial substitute(const std::map<Variable, Polynomial>& sigma) const;
    // Fast path: variable renaming (the map may permute, e.g. a transposition).
    Polynomial rename(const std::map<Variable, Variable>& sigma) const;
    bool contains_where(const std::function<bool(const Variable&)>& pred) const;

    // Division with remainder by a single nonzero divisor, in graded-lex
    // order. The remainder is the unique one none of whose monomials is
    // divisible by the divisor's leading monomial; it is linear in *this.
    std::pair<Polynomial, Polynomial> divide(const Polynomial& divisor) const;
    // Exact division; throws NonExactDivision (with the remainder) otherwise.
    Polynomial exact_div(const Polynomial& divisor) const;

    // Exact division by the binomial (a - b), by synthetic (Horner) division
    // in the variable a. Throws NonExactDivision when not divisible.
    Polynomial exact_div_difference(Variable a, Variable b) const;

    std::string to_string() const;

private:
    TermMap terms_;
};

class NonExactDivision : public Error {
public:
    NonExactDivision(Polynomial remainder, const std::string& msg)
        : Error(msg), remainder_(std::move(remainder)) {}
    const Polynomial& remainder() const { return remainder_; }

private:
    Polynomial remainder_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

}  // namespace coha
