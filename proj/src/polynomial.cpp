#include "coha/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "coha/errors.hpp"

namespace coha {

namespace {

// Order-embedding of a variable into 32 bits, monotone with respect to the
// canonical variable order except among parameters sharing a first letter
// (those tie and defer to the exact compare).
uint32_t variable_order_prefix(const Variable& v) {
    uint32_t kind = static_cast<uint32_t>(v.kind());
    uint32_t detail = 0;
    switch (v.kind()) {
        case VarKind::FormalX:
            detail = 0;
            break;
        case VarKind::Param:
            detail = static_cast<uint32_t>(static_cast<unsigned char>(v.param_name()[0])) << 22;
            break;
        case VarKind::Z:
            detail = (static_cast<uint32_t>(v.vertex()) << 15) | static_cast<uint32_t>(v.slot());
            break;
        case VarKind::Aux:
            detail = static_cast<uint32_t>(v.aux_index());
            break;
    }
    return (kind << 30) | detail;
}

}  // namespace

void Monomial::update_key() {
    uint64_t deg = 0;
    for (const auto& f : factors_) deg += static_cast<uint64_t>(f.exp);
    if (deg > 0xffff) throw InternalError("monomial degree exceeds the packed-key range");
    key_ = deg << 48;
    if (!factors_.empty()) {
        const VarPow& head = factors_.front();
        key_ |= static_cast<uint64_t>(~variable_order_prefix(head.var)) << 16;
        // Parameters order by full name; embedding the exponent would break
        // ties between distinct names sharing a first letter, so leave it out.
        if (head.var.kind() != VarKind::Param)
            key_ |= static_cast<uint64_t>(head.exp > 0xffff ? 0xffff : head.exp);
    }
}

Monomial::Monomial(FactorList factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const VarPow& a, const VarPow& b) { return a.var < b.var; });
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].exp <= 0) throw InternalError("monomial exponent must be positive");
        if (i + 1 < factors_.size() && factors_[i].var == factors_[i + 1].var)
            throw InternalError("duplicate variable in monomial");
    }
    update_key();
}

Monomial Monomial::var(Variable v, int exp) {
    if (exp == 0) return Monomial();
    return Monomial(FactorList{VarPow{v, exp}});
}

int Monomial::degree_of(const Variable& v) const {
    for (const auto& f : factors_)
        if (f.var == v) return f.exp;
    return 0;
}

int Monomial::degree_where(const std::function<bool(const Variable&)>& pred) const {
    int d = 0;
    for (const auto& f : factors_)
        if (pred(f.var)) d += f.exp;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    size_t i = 0, j = 0;
    while (i < factors_.size() && j < o.factors_.size()) {
        int c = Variable::compare(factors_[i].var, o.factors_[j].var);
        if (c < 0)
            r.factors_.push_back(factors_[i++]);
        else if (c > 0)
            r.factors_.push_back(o.factors_[j++]);
        else {
            r.factors_.push_back(VarPow{factors_[i].var, factors_[i].exp + o.factors_[j].exp});
            ++i, ++j;
        }
    }
    while (i < factors_.size()) r.factors_.push_back(factors_[i++]);
    while (j < o.factors_.size()) r.factors_.push_back(o.factors_[j++]);
    r.update_key();
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    size_t j = 0;
    for (const auto& f : factors_) {
        while (j < o.factors_.size() && Variable::compare(o.factors_[j].var, f.var) < 0) ++j;
        if (j >= o.factors_.size() || !(o.factors_[j].var == f.var) || o.factors_[j].exp < f.exp)
            return false;
    }
    return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
    Monomial r;
    size_t i = 0;
    for (const auto& g : o.factors_) {
        if (i < factors_.size() && factors_[i].var == g.var) {
            int e = g.exp - factors_[i].exp;
            if (e < 0) throw InternalError("monomial division not exact");
            if (e > 0) r.factors_.push_back(VarPow{g.var, e});
            ++i;
        } else {
            r.factors_.push_back(g);
        }
    }
    if (i != factors_.size()) throw InternalError("monomial division not exact");
    r.update_key();
    return r;
}

int Monomial::compare_slow(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    // Lexicographic, earliest canonical variable most significant: the
    // monomial with the larger exponent on the first differing variable wins.
    size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
        int c = Variable::compare(a.factors_[i].var, b.factors_[j].var);
        if (c < 0) return 1;   // a has positive exponent on an earlier variable
        if (c > 0) return -1;  // b does
        if (a.factors_[i].exp != b.factors_[j].exp)
            return a.factors_[i].exp > b.factors_[j].exp ? 1 : -1;
        ++i, ++j;
    }
    if (i < a.factors_.size()) return 1;
    if (j < b.factors_.size()) return -1;
    return 0;
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += "*";
        s += factors_[i].var.to_string();
        if (factors_[i].exp != 1) s += "^" + std::to_string(factors_[i].exp);
    }
    return s;
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial::one(), c);
}

Polynomial::Polynomial(long c) {
    if (c != 0) terms_.emplace(Monomial::one(), Rational(c));
}

Polynomial Polynomial::var(Variable v, int exp) {
    Polynomial p;
    p.terms_.emplace(Monomial::var(v, exp), Rational(1));
    return p;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw InternalError("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    if (terms_.empty() || o.terms_.empty()) return r;
    const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Polynomial& large = terms_.size() <= o.terms_.size() ? o : *this;
    if (small.terms_.size() == 1) {
        // Monomial multiple: the map order is preserved, build with end hints.
        const auto& [ms, cs] = *small.terms_.begin();
        for (const auto& [mb, cb] : large.terms_) r.terms_.emplace_hint(r.terms_.end(), ms * mb, cs * cb);
        return r;
    }
    // Collect all pairwise products, sort indices once (cheap 4-byte moves),
    // then build the map with end hints (amortized O(1) in key order).
    std::vector<std::pair<Monomial, Rational>> prods;
    prods.reserve(small.terms_.size() * large.terms_.size());
    for (const auto& [ma, ca] : small.terms_)
        for (const auto& [mb, cb] : large.terms_) prods.emplace_back(ma * mb, ca * cb);
    std::vector<uint32_t> order(prods.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return Monomial::compare(prods[a].first, prods[b].first) > 0;
    });
    for (size_t i = 0; i < order.size();) {
        Rational acc = std::move(prods[order[i]].second);
        size_t j = i + 1;
        while (j < order.size() && prods[order[j]].first == prods[order[i]].first)
            acc += prods[order[j++]].second;
        if (acc != 0)
            r.terms_.emplace_hint(r.terms_.end(), std::move(prods[order[i]].first), std::move(acc));
        i = j;
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r;
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r(1L);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return r;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return kNegInfDegree;
    // Leading term under graded lex has maximal total degree.
    return terms_.begin()->first.total_degree();
}

int Polynomial::degree_where(const std::function<bool(const Variable&)>& pred) const {
    if (terms_.empty()) return kNegInfDegree;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_where(pred));
    return d;
}

int Polynomial::degree_of(const Variable& v) const {
    if (terms_.empty()) return kNegInfDegree;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_of(v));
    return d;
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::contains_where(const std::function<bool(const Variable&)>& pred) const {
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors())
            if (pred(f.var)) return true;
    return false;
}

Polynomial Polynomial::substitute(const std::map<Variable, Polynomial>& sigma) const {
    // Power cache per substituted variable.
    std::map<Variable, std::vector<Polynomial>> powers;
    auto power_of = [&](const Variable& v, int e) -> const Polynomial& {
        auto& vec = powers[v];
        if (vec.empty()) vec.push_back(Polynomial(1L));
        const Polynomial& base = sigma.at(v);
        while (static_cast<int>(vec.size()) <= e) vec.push_back(vec.back() * base);
        return vec[static_cast<size_t>(e)];
    };
    Polynomial result;
    for (const auto& [m, c] : terms_) {
        Polynomial term(c);
        FactorList untouched;
        for (const auto& f : m.factors()) {
            if (sigma.count(f.var))
                term = term * power_of(f.var, f.exp);
            else
                untouched.push_back(f);
        }
        if (!untouched.empty()) {
            Polynomial mono;
            mono.add_term(Monomial(std::move(untouched)), Rational(1));
            term = term * mono;
        }
        result += term;
    }
    return result;
}

Polynomial Polynomial::rename(const std::map<Variable, Variable>& sigma) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
        FactorList factors;
        factors.reserve(m.factors().size());
        for (const auto& f : m.factors()) {
            auto it = sigma.find(f.var);
            factors.push_back(VarPow{it == sigma.end() ? f.var : it->second, f.exp});
        }
        r.add_term(Monomial(std::move(factors)), c);
    }
    return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw PreconditionError("division by the zero polynomial");
    Polynomial q, r, p = *this;
    const auto& lt_d = *divisor.terms_.begin();
    while (!p.is_zero()) {
        const auto& lt_p = *p.terms_.begin();
        if (lt_d.first.divides(lt_p.first)) {
            Monomial m = lt_d.first.divide_into(lt_p.first);
            Rational c = lt_p.second / lt_d.second;
            Polynomial t;
            t.terms_.emplace(m, c);
            q += t;
            p -= t * divisor;
        } else {
            r.add_term(lt_p.first, lt_p.second);
            p.terms_.erase(p.terms_.begin());
        }
    }
    return {q, r};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const {
    auto [q, r] = divide(divisor);
    if (!r.is_zero())
        throw NonExactDivision(r, "non-exact polynomial division, remainder " + r.to_string());
    return q;
}

Polynomial Polynomial::exact_div_difference(Variable a, Variable b) const {
    if (is_zero()) return Polynomial();
    // Write p = sum_k a^k c_k(rest); Horner from the top gives the quotient
    // coefficients and p(a = b) as the remainder.
    int max_k = degree_of(a);
    if (max_k <= 0)  // a nonzero polynomial free of the variable a
        throw NonExactDivision(*this, "non-exact division by a variable difference");
    std::vector<Polynomial> c(static_cast<size_t>(max_k) + 1);
    for (const auto& [m, coeff] : terms_) {
        FactorList rest;
        int k = 0;
        for (const auto& f : m.factors()) {
            if (f.var == a)
                k = f.exp;
            else
                rest.push_back(f);
        }
        c[static_cast<size_t>(k)].terms_.emplace_hint(c[static_cast<size_t>(k)].terms_.end(),
                                                      Monomial(std::move(rest)), coeff);
    }
    Polynomial bvar = Polynomial::var(b);
    Polynomial carry, quotient;
    for (int k = max_k; k >= 1; --k) {
        carry = c[static_cast<size_t>(k)] + bvar * carry;
        // carry is the coefficient of a^{k-1} in the quotient.
        if (!carry.is_zero()) {
            Polynomial apow = Polynomial::var(a, k - 1);
            quotient += carry * apow;
        }
    }
    Polynomial rem = c[0] + bvar * carry;
    if (!rem.is_zero())
        throw NonExactDivision(rem, "non-exact division by a variable difference");
    return quotient;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (m.is_one())
            out << a.get_str();
        else if (a == 1)
            out << m.to_string();
        else
            out << a.get_str() << "*" << m.to_string();
    }
    return out.str();
}

}  // namespace coha
