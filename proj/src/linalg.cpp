#include "coha/linalg.hpp"

#include <algorithm>
#include <set>

#include "coha/errors.hpp"

namespace coha {

void RatMatrix::add_row(RatRow r) {
    if (r.size() != cols) throw InternalError("row width mismatch");
    rows.push_back(std::move(r));
}

int rref(RatMatrix& m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < m.rows.size() && m.rows[pivot][col] == 0) ++pivot;
        if (pivot == m.rows.size()) continue;
        std::swap(m.rows[rank], m.rows[pivot]);
        Rational inv = 1 / m.rows[rank][col];
        for (size_t j = col; j < m.cols; ++j) m.rows[rank][j] *= inv;
        for (size_t r = 0; r < m.rows.size(); ++r) {
            if (r == rank || m.rows[r][col] == 0) continue;
            Rational f = m.rows[r][col];
            for (size_t j = col; j < m.cols; ++j) m.rows[r][j] -= f * m.rows[rank][j];
        }
        ++rank;
    }
    m.rows.resize(rank);
    return static_cast<int>(rank);
}

std::vector<size_t> pivot_columns(const RatMatrix& rref_m) {
    std::vector<size_t> p;
    for (const auto& row : rref_m.rows) {
        for (size_t j = 0; j < rref_m.cols; ++j)
            if (row[j] != 0) {
                p.push_back(j);
                break;
            }
    }
    return p;
}

RatMatrix nullspace(const RatMatrix& m) {
    RatMatrix a = m;
    rref(a);
    std::vector<size_t> piv = pivot_columns(a);
    std::vector<bool> is_pivot(a.cols, false);
    for (size_t p : piv) is_pivot[p] = true;
    RatMatrix basis(a.cols);
    for (size_t free_col = 0; free_col < a.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatRow v(a.cols, Rational(0));
        v[free_col] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a.rows[r][free_col];
        basis.add_row(std::move(v));
    }
    rref(basis);
    return basis;
}

RatRow reduce_against(const RatMatrix& rref_m, RatRow v) {
    std::vector<size_t> piv = pivot_columns(rref_m);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (v[piv[r]] == 0) continue;
        Rational f = v[piv[r]];
        for (size_t j = 0; j < rref_m.cols; ++j) v[j] -= f * rref_m.rows[r][j];
    }
    return v;
}

bool in_row_space(const RatMatrix& rref_m, const RatRow& v) {
    RatRow res = reduce_against(rref_m, v);
    for (const auto& x : res)
        if (x != 0) return false;
    return true;
}

bool SpanBuilder::add(RatRow v) {
    RatRow res = reduce_against(m_, std::move(v));
    size_t lead = m_.cols;
    for (size_t j = 0; j < m_.cols; ++j)
        if (res[j] != 0) {
            lead = j;
            break;
        }
    if (lead == m_.cols) return false;
    Rational inv = 1 / res[lead];
    for (size_t j = lead; j < m_.cols; ++j) res[j] *= inv;
    // Clear the new pivot column in existing rows, then insert keeping rows
    // ordered by pivot column (canonical RREF throughout).
    for (auto& row : m_.rows) {
        if (row[lead] == 0) continue;
        Rational f = row[lead];
        for (size_t j = 0; j < m_.cols; ++j) row[j] -= f * res[j];
    }
    auto piv = pivot_columns(m_);
    size_t at = m_.rows.size();
    for (size_t r = 0; r < piv.size(); ++r)
        if (piv[r] > lead) {
            at = r;
            break;
        }
    m_.rows.insert(m_.rows.begin() + static_cast<long>(at), std::move(res));
    return true;
}

void PolyMatrix::add_row(std::vector<Polynomial> r) {
    if (r.size() != cols) throw InternalError("row width mismatch");
    rows.push_back(std::move(r));
}

bool PolyMatrix::is_constant() const {
    for (const auto& row : rows)
        for (const auto& p : row)
            if (!p.is_constant()) return false;
    return true;
}

RatMatrix PolyMatrix::constant_matrix() const {
    RatMatrix m(cols);
    for (const auto& row : rows) {
        RatRow r;
        r.reserve(cols);
        for (const auto& p : row) r.push_back(p.constant_value());
        m.add_row(std::move(r));
    }
    return m;
}

RatMatrix PolyMatrix::specialized(const std::map<Variable, Rational>& values) const {
    std::map<Variable, Polynomial> sigma;
    for (const auto& [v, r] : values) sigma.emplace(v, Polynomial(r));
    RatMatrix m(cols);
    for (const auto& row : rows) {
        RatRow r;
        r.reserve(cols);
        for (const auto& p : row) {
            Polynomial s = p.substitute(sigma);
            if (!s.is_constant()) throw InternalError("specialization left free variables");
            r.push_back(s.constant_value());
        }
        m.add_row(std::move(r));
    }
    return m;
}

std::vector<Variable> PolyMatrix::variables() const {
    std::set<uint32_t> seen;
    std::vector<Variable> out;
    for (const auto& row : rows)
        for (const auto& p : row)
            for (const auto& [m, c] : p.terms())
                for (const auto& f : m.factors())
                    if (seen.insert(f.var.code()).second) out.push_back(f.var);
    std::sort(out.begin(), out.end());
    return out;
}

int bareiss_rank(PolyMatrix m) {
    size_t rank = 0;
    Polynomial prev(1L);
    for (size_t col = 0; col < m.cols && rank < m.rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < m.rows.size() && m.rows[pivot][col].is_zero()) ++pivot;
        if (pivot == m.rows.size()) continue;
        std::swap(m.rows[rank], m.rows[pivot]);
        const std::vector<Polynomial> pivot_row = m.rows[rank];
        for (size_t r = rank + 1; r < m.rows.size(); ++r) {
            std::vector<Polynomial> next(m.cols);
            for (size_t j = col; j < m.cols; ++j) {
                Polynomial t = m.rows[r][j] * pivot_row[col] - m.rows[r][col] * pivot_row[j];
                next[j] = t.is_zero() ? Polynomial() : t.exact_div(prev);
            }
            m.rows[r] = std::move(next);
        }
        prev = pivot_row[col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::map<Variable, Rational> random_specialization(const std::vector<Variable>& vars,
                                                   std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(2, 1000003);
    std::map<Variable, Rational> values;
    for (const auto& v : vars) {
        long x;
        do {
            x = dist(rng);
        } while (false);
        values.emplace(v, Rational(x));
    }
    return values;
}

namespace {

struct Specialized {
    int rank;
    std::vector<size_t> pivots;
    RatMatrix kernel;
};

Specialized solve_at(const PolyMatrix& a, const std::map<Variable, Rational>& values) {
    RatMatrix m = a.specialized(values);
    RatMatrix r = m;
    int rank = rref(r);
    Specialized s;
    s.rank = rank;
    s.pivots = pivot_columns(r);
    s.kernel = nullspace(m);
    return s;
}

}  // namespace

SolveResult solve_nullspace(const PolyMatrix& a, std::mt19937_64& rng) {
    SolveResult out;
    if (a.is_constant()) {
        RatMatrix m = a.constant_matrix();
        RatMatrix r = m;
        out.rank = rref(r);
        out.pivots = pivot_columns(r);
        out.kernel_basis = nullspace(m);
        return out;
    }
    auto vars = a.variables();
    for (int attempt = 1; attempt <= 3; ++attempt) {
        auto v1 = random_specialization(vars, rng);
        auto v2 = random_specialization(vars, rng);
        Specialized s1 = solve_at(a, v1);
        Specialized s2 = solve_at(a, v2);
        out.specialization_attempts = attempt;
        if (s1.rank == s2.rank && s1.pivots == s2.pivots) {
            out.rank = s1.rank;
            out.pivots = std::move(s1.pivots);
            out.kernel_basis = std::move(s1.kernel);
            return out;
        }
    }
    // Exact fraction-free elimination arbitrates; a specialization matching
    // the exact rank is then generic enough to report.
    out.escalated = true;
    int exact_rank = bareiss_rank(a);
    for (;;) {
        auto v = random_specialization(vars, rng);
        Specialized s = solve_at(a, v);
        ++out.specialization_attempts;
        if (s.rank == exact_rank) {
            out.rank = s.rank;
            out.pivots = std::move(s.pivots);
            out.kernel_basis = std::move(s.kernel);
            return out;
        }
    }
}

RankResult solve_rank(const PolyMatrix& a, std::mt19937_64& rng) {
    RankResult out;
    if (a.is_constant()) {
        RatMatrix m = a.constant_matrix();
        out.rank = rref(m);
        return out;
    }
    auto vars = a.variables();
    for (int attempt = 1; attempt <= 3; ++attempt) {
        auto v1 = random_specialization(vars, rng);
        auto v2 = random_specialization(vars, rng);
        RatMatrix m1 = a.specialized(v1), m2 = a.specialized(v2);
        int r1 = rref(m1), r2 = rref(m2);
        out.specialization_attempts = attempt;
        if (r1 == r2) {
            out.rank = r1;
            return out;
        }
    }
    out.escalated = true;
    out.rank = bareiss_rank(a);
    return out;
}

}  // namespace coha
