#pragma once

#include <random>

#include "coha/document.hpp"
#include "coha/filtration.hpp"
#include "coha/shuffle.hpp"

namespace coha::testing {

// The five standing test quivers.
inline CohaContext arrowless() {
    return build_context_from_text("vertices: v\nbuild: as-is\ntorus: trivial\n");
}
inline CohaContext jordan() {
    return build_context_from_text("vertices: v\narrow a: v -> v @ u\nbuild: as-is\ntorus: trivial\n");
}
inline CohaContext two_loop() {
    return build_context_from_text(
        "vertices: v\narrow a: v -> v @ u1\narrow b: v -> v @ u2\nbuild: as-is\ntorus: trivial\n");
}
inline CohaContext sym_a2() {
    return build_context_from_text(
        "vertices: v w\narrow a: v -> w @ u1\narrow b: w -> v @ u2\nbuild: as-is\ntorus: trivial\n");
}
inline CohaContext tripled_jordan() {
    return build_context_from_text("vertices: v\narrow a: v -> v @ u\nbuild: triple\ntorus: generic\n");
}
inline CohaContext tripled_a2() {
    return build_context_from_text("vertices: v w\narrow a: v -> w @ u\nbuild: triple\ntorus: generic\n");
}

inline std::vector<CohaContext> five_test_quivers() {
    return {arrowless(), jordan(), two_loop(), sym_a2(), tripled_jordan()};
}

// Random homogeneous color-symmetric element: rational combination of the
// monomial symmetric basis of the degree slice.
inline ShuffleElement random_slice_element(const CohaContext& ctx, const DimensionVector& n, int delta,
                                           std::mt19937_64& rng) {
    auto shapes = sym_shapes(n, delta);
    std::uniform_int_distribution<int> coeff(-4, 4);
    Polynomial p;
    for (const auto& s : shapes) {
        int c = coeff(rng);
        if (c != 0) p += shape_polynomial(s, n).scaled(Rational(c));
    }
    return ShuffleElement(ctx.kernel, n, std::move(p));
}

// Random (possibly inhomogeneous) element with degree <= deg_max.
inline ShuffleElement random_element(const CohaContext& ctx, const DimensionVector& n, int deg_max,
                                     std::mt19937_64& rng) {
    Polynomial p;
    for (int delta = 0; delta <= deg_max; ++delta)
        p += random_slice_element(ctx, n, delta, rng).poly();
    return ShuffleElement(ctx.kernel, n, std::move(p));
}

// Random general polynomial over mixed variables, for ring-axiom tests.
inline Polynomial random_polynomial(std::mt19937_64& rng, int terms = 5, int deg = 3) {
    std::uniform_int_distribution<int> coeff(-6, 6);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<int> expo(0, deg);
    Polynomial p;
    for (int t = 0; t < terms; ++t) {
        std::vector<VarPow> factors;
        auto add = [&](Variable v) {
            int e = expo(rng);
            if (e > 0) factors.push_back(VarPow{v, e});
        };
        switch (pick(rng)) {
            case 0:
                add(Variable::z(0, 1));
                add(Variable::z(0, 2));
                break;
            case 1:
                add(Variable::z(0, 1));
                add(Variable::param("u"));
                break;
            case 2:
                add(Variable::param("h"));
                add(Variable::z(0, 2));
                break;
            case 3:
                add(Variable::z(1, 1));
                add(Variable::aux(1));
                break;
            default:
                add(Variable::z(0, 1));
                break;
        }
        int c = coeff(rng);
        if (c != 0) p.add_term(Monomial(std::move(factors)), Rational(c));
    }
    return p;
}

// Membership evaluated over an ordered composition (blocks as given), for
// the multiset-sufficiency spot check.
inline bool member_direct_ordered(const ShuffleElement& e, int d,
                                  const std::vector<std::vector<DimensionVector>>& compositions) {
    if (e.is_zero()) return true;
    for (const auto& blocks : compositions) {
        long bound = partition_bound(*e.kernel(), d, blocks);
        Polynomial shifted = block_shift(e, blocks);
        int dy = shifted.degree_where([](const Variable& v) { return v.kind() == VarKind::Aux; });
        if (dy == kNegInfDegree) continue;
        if (2L * dy > bound) return false;
    }
    return true;
}

// All ordered compositions of n into nonzero blocks.
inline std::vector<std::vector<DimensionVector>> ordered_compositions(const DimensionVector& n) {
    std::vector<std::vector<DimensionVector>> out;
    std::vector<DimensionVector> cur;
    std::function<void(DimensionVector)> rec = [&](DimensionVector rest) {
        if (rest.is_zero()) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        for (const auto& v : dimension_range(rest)) {
            cur.push_back(v);
            rec(rest - v);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

}  // namespace coha::testing
