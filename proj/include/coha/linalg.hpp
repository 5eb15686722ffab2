#pragma once

#include <random>
#include <vector>

#include "coha/polynomial.hpp"

namespace coha {

using RatRow = std::vector<Rational>;

// Dense matrix over the rationals, row-major.
struct RatMatrix {
    size_t cols = 0;
    std::vector<RatRow> rows;

    RatMatrix() = default;
    explicit RatMatrix(size_t cols_) : cols(cols_) {}
    size_t row_count() const { return rows.size(); }
    void add_row(RatRow r);
};

// In-place reduction to reduced row echelon form (leading ones, zeros above
// and below); returns the rank. Zero rows are removed, so the result is the
// canonical reduced basis of the row space.
int rref(RatMatrix& m);

// Pivot columns of an RREF matrix.
std::vector<size_t> pivot_columns(const RatMatrix& rref_m);

// Canonical basis of { x : m x = 0 }, itself in reduced echelon form.
RatMatrix nullspace(const RatMatrix& m);

// Reduce v against an RREF matrix; returns the residual.
RatRow reduce_against(const RatMatrix& rref_m, RatRow v);
bool in_row_space(const RatMatrix& rref_m, const RatRow& v);

// Incremental row-space builder for rank bookkeeping.
class SpanBuilder {
public:
    explicit SpanBuilder(size_t cols) : m_(cols) {}
    // Returns true when v enlarged the span.
    bool add(RatRow v);
    int rank() const { return static_cast<int>(m_.row_count()); }
    const RatMatrix& matrix() const { return m_; }

private:
    RatMatrix m_;
};

// Dense matrix with polynomial entries (in the equivariant parameters).
struct PolyMatrix {
    size_t cols = 0;
    std::vector<std::vector<Polynomial>> rows;

    PolyMatrix() = default;
    explicit PolyMatrix(size_t cols_) : cols(cols_) {}
    size_t row_count() const { return rows.size(); }
    void add_row(std::vector<Polynomial> r);
    bool is_constant() const;  // no variables anywhere
    RatMatrix constant_matrix() const;
    RatMatrix specialized(const std::map<Variable, Rational>& values) const;
    std::vector<Variable> variables() const;  // sorted canonically
};

// Rank over the fraction field, by fraction-free Bareiss elimination.
int bareiss_rank(PolyMatrix m);

struct SolveResult {
    int rank = 0;
    std::vector<size_t> pivots;       // pivot columns of the constraint matrix
    RatMatrix kernel_basis;           // canonical reduced nullspace basis
    int specialization_attempts = 0;  // 0 when solved exactly over Q
    bool escalated = false;           // Bareiss fallback certified the rank
};

// Solves A x = 0 for the nullspace. Constant systems are solved exactly.
// Parametric systems are solved at two independent random specializations
// drawn from rng; ranks and pivot supports must agree. After three
// disagreements the exact Bareiss rank arbitrates, and specializations are
// retried until one matches it.
SolveResult solve_nullspace(const PolyMatrix& a, std::mt19937_64& rng);

// Rank of the row space, with the same protocol.
struct RankResult {
    int rank = 0;
    int specialization_attempts = 0;
    bool escalated = false;
};
RankResult solve_rank(const PolyMatrix& a, std::mt19937_64& rng);

// A random integer specialization point for the given variables.
std::map<Variable, Rational> random_specialization(const std::vector<Variable>& vars,
                                                   std::mt19937_64& rng);

}  // namespace coha
