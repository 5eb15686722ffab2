#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "coha/shuffle.hpp"

namespace coha {

// All multisets of nonzero dimension vectors summing to n. Each multiset is
// listed with blocks in a fixed descending order; the bound and the shifted
// degree are invariant under block permutations, so multisets suffice.
std::vector<std::vector<DimensionVector>> block_multisets(const DimensionVector& n);

// The integer bound: the membership condition at this partition is
// 2 * deg_y(block_shift(E, blocks)) <= d - k - 2 sum_{a<b} (n^a, n^b).
long partition_bound(const ZetaKernel& k, int d, const std::vector<DimensionVector>& blocks);

// Direct filtration membership per the degree-bound definition. Throws for
// d < 1 (the filtration starts at 1).
bool member_direct(const ShuffleElement& e, int d);

// An echelonized basis of a degree slice of V_n.
struct GradedSubspace {
    std::string kernel_fingerprint;
    DimensionVector n;
    int d = 0;      // filtration index; -1 for wheel-only or plain span slices
    int delta = 0;  // polynomial degree of the slice
    std::vector<SymShape> shapes;          // column labels
    RatMatrix basis;                       // canonical RREF rows over shapes
    std::vector<ShuffleElement> elements;  // realized basis polynomials
    int specialization_attempts = 0;       // generic-mode bookkeeping
    bool escalated = false;

    int dim() const { return static_cast<int>(basis.row_count()); }
};

// Memoized F-slice bases for one kernel. The cache is a write-once map with
// first-writer-wins insertion, safe under concurrent readers.
class FiltrationContext {
public:
    explicit FiltrationContext(KernelPtr kernel);

    const KernelPtr& kernel() const { return kernel_; }

    // Reduced basis of { E homogeneous of degree delta : member_direct(E, d) }.
    std::shared_ptr<const GradedSubspace> subspace(const DimensionVector& n, int d, int delta);

    // The recursive (A1)/(A2) membership oracle.
    bool member_recursive(const ShuffleElement& e, int d);

    // F^1 slices for delta = 0..delta_max.
    std::vector<std::shared_ptr<const GradedSubspace>> bps_basis(const DimensionVector& n,
                                                                 int delta_max);

private:
    KernelPtr kernel_;
    mutable std::shared_mutex mu_;
    std::map<std::tuple<DimensionVector, int, int>, std::shared_ptr<const GradedSubspace>> memo_;
    // Cached block shifts of the shape basis, keyed by (n, delta).
    std::map<std::pair<DimensionVector, int>, std::shared_ptr<const std::vector<std::vector<Polynomial>>>>
        shift_cache_;

    std::shared_ptr<const std::vector<std::vector<Polynomial>>> shifted_shapes(
        const DimensionVector& n, int delta, const std::vector<std::vector<DimensionVector>>& parts,
        const std::vector<SymShape>& shapes);
};

struct PBWCell {
    DimensionVector n;
    int delta = 0;
    int d = 0;
    int dim = 0;    // dim of the F^d slice
    int count = 0;  // PBW monomials of weight <= d in this (n, delta) cell
    int rank = 0;   // rank of their span
    bool pass = false;
};

struct PBWReport {
    std::vector<PBWCell> cells;  // ordered by (n lex, delta, d)
    long product_count = 0;
    bool all_pass = true;
};

// Enumerates canonical PBW monomials (twisted products of u^j-shifted BPS
// basis elements, repetition forbidden for odd-parity generators), evaluates
// them, and compares span ranks against F^d slice dimensions cell by cell.
PBWReport pbw_check(FiltrationContext& ctx, const SignTwist& twist, const DimensionVector& n_max,
                    int delta_max, int d_max);

struct GradedDimCell {
    DimensionVector n;
    int delta = 0;
    int d = 0;
    int dim = 0;
    int full_dim = 0;
};

struct GradedDimsTable {
    std::vector<GradedDimCell> cells;  // ordered by (n lex, delta, d)
};

GradedDimsTable graded_dims(FiltrationContext& ctx, const DimensionVector& n_max, int delta_max,
                            int d_max);

// Exact stabilization threshold: the F^d slice at (n, delta) equals the full
// slice iff d >= 2*delta + max over partitions of (k + 2 sum_{a<b}(n^a,n^b)).
int stabilization_threshold(const ZetaKernel& k, const DimensionVector& n, int delta);

// Enumerate all 0 < n <= n_max in lexicographic order.
std::vector<DimensionVector> dimension_range(const DimensionVector& n_max);

}  // namespace coha
