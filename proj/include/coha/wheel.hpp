#pragma once

#include <random>

#include "coha/filtration.hpp"

namespace coha {

// One wheel condition: after the substitution z(i,a) -> z(i,c) + h, the
// divisor (a product of linear forms grouped with multiplicities) must
// divide the element exactly.
struct WheelInstance {
    int i = 0, j = 0;
    int a = 0, b = 0, c = 0;  // slots; a != c, and a != b != c when i == j
    Polynomial divisor;
};

// All instances with a nonconstant divisor for dimension vector n. Requires
// a tripled kernel (the divisor ranges over the original quiver's arrows).
std::vector<WheelInstance> wheel_instances(const ZetaKernel& k, const DimensionVector& n);

// True iff every instance's divisor exactly divides the substituted element;
// vacuously true when no instance exists.
bool wheel_member(const ShuffleElement& e);

// Basis of the degree-delta slice of S(V_n): every remainder coefficient
// vanishes. Parameter-dependent systems go through the double random
// specialization protocol.
GradedSubspace wheel_subspace(const ZetaKernel& k, const DimensionVector& n, int delta,
                              std::mt19937_64& rng);

// A spherical word: one-variable generators z(vertex,1)^degree, multiplied
// left to right by the shuffle product.
struct SphericalWord {
    std::vector<std::pair<int, int>> letters;  // (vertex index, degree)
};

ShuffleElement spherical_product(const KernelPtr& k, const SphericalWord& word);

// Reduced spans of the listed products, one subspace per (n, delta) slice,
// ordered by (n lex, delta).
std::vector<GradedSubspace> spherical_span(const KernelPtr& k, const std::vector<SphericalWord>& words,
                                           std::mt19937_64& rng);

struct ConjectureSlice {
    int delta = 0;
    int rank = 0;  // dim of (F^1 cap S) at this degree
};

struct ConjectureRow {
    DimensionVector n;
    std::vector<ConjectureSlice> slices;
    int total_rank = 0;
    bool kac_available = false;
    long kac_value = 0;  // A_{Q,n}(1)
    std::string verdict;  // consistent | inconsistent | not-applicable
    int specialization_attempts = 0;
    bool escalated = false;
};

struct ConjectureReport {
    std::vector<ConjectureRow> rows;
};

// Report-only comparison of dim(F^1 cap S) against the Kac prediction
// A_{Q,n}(1) for the original quiver; never a hard failure.
ConjectureReport conjecture_report(const Quiver& original, FiltrationContext& ctx,
                                   const DimensionVector& n_max, int delta_max, std::mt19937_64& rng);

}  // namespace coha
