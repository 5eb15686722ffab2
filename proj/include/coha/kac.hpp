#pragma once

#include <cstdint>
#include <vector>

#include "coha/quiver.hpp"

namespace coha {

// A small Galois field F_{p^e}, elements encoded as 0..q-1 (base-p digit
// vectors over a canonical irreducible polynomial). Tables are precomputed;
// instances are interned by (p, e).
class GaloisField {
public:
    static const GaloisField& get(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    int add(int a, int b) const { return add_[static_cast<size_t>(a) * q_ + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_[static_cast<size_t>(a)]; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * q_ + b]; }
    int inv(int a) const;  // a != 0
    // A fixed generator of the multiplicative group.
    int primitive() const { return primitive_; }

    // The image of each element of the subfield F_{p^{e'}} (e' | e) under the
    // canonical embedding (smallest root of the subfield's irreducible).
    std::vector<int> embedding_from(const GaloisField& sub) const;

private:
    GaloisField(int p, int e);
    int p_, e_, q_;
    std::vector<int> irreducible_;  // monic, length e+1, coefficients in F_p
    std::vector<uint16_t> add_, mul_;
    std::vector<uint16_t> neg_;
    std::vector<uint16_t> inv_;
    int primitive_ = 0;
};

// A square or rectangular matrix over a Galois field.
struct GFMatrix {
    const GaloisField* field = nullptr;
    int rows = 0, cols = 0;
    std::vector<int> a;  // row-major

    GFMatrix() = default;
    GFMatrix(const GaloisField& f, int r, int c) : field(&f), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    GFMatrix mul(const GFMatrix& o) const;
    bool is_zero() const;
    bool invertible() const;
    bool nilpotent() const;  // for square matrices of size <= 4
};

// One point of Rep_n(Q, F_q): a matrix per arrow (target-dim x source-dim).
struct FiniteFieldRep {
    const GaloisField* field = nullptr;
    DimensionVector n;
    std::vector<GFMatrix> arrow_matrices;
};

// Solves for the endomorphism algebra End(rep) (one square block per
// vertex); returns a basis.
std::vector<std::vector<GFMatrix>> endomorphism_basis(const Quiver& q, const FiniteFieldRep& rep);

// Indecomposability via exhaustive search of End(rep) for an element that is
// neither nilpotent nor invertible (Fitting). Throws SizeGuardError when
// q^{dim End} exceeds the sweep guard.
bool is_indecomposable(const Quiver& q, const FiniteFieldRep& rep);

// Orbit enumeration of Rep_n(Q, F_q) under the product of general linear
// groups; returns the lexicographically smallest representative per orbit.
// Guards: |n| <= 3, q in {2,3,4,5}, total state count within the sweep cap.
std::vector<FiniteFieldRep> iso_classes(const Quiver& q, const DimensionVector& n, int field_q);

struct KacCount {
    DimensionVector n;
    int q = 0;
    long classes = 0;
    long indecomposable = 0;
    long absolutely_indecomposable = 0;
};

// Counts isomorphism classes / indecomposables / absolutely indecomposables
// (the latter via base change to the degree-2 and degree-3 extensions).
KacCount abs_indec_count(const Quiver& q, const DimensionVector& n, int field_q);

// Lagrange interpolation through (q, value) points, exact over Q.
std::vector<Rational> interpolate_polynomial(const std::vector<std::pair<long, long>>& points);

// Evaluates an interpolated polynomial.
Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& x);

// The Euler form <n,n> of the quiver (counting only Original arrows when the
// quiver is a double/triple output is NOT done here; all arrows count).
long quiver_euler_form(const Quiver& q, const DimensionVector& m, const DimensionVector& n);

// A_{Q,n}(1): brute-force counts at as many q in {2,3,4,5} as the degree
// bound deg A = 1 - <n,n> requires, interpolated and evaluated at 1.
long kac_prediction_at_one(const Quiver& q, const DimensionVector& n);

}  // namespace coha
