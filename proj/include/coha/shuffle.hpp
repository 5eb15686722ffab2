#pragma once

#include <memory>
#include <vector>

#include "coha/linalg.hpp"
#include "coha/quiver.hpp"

namespace coha {

// One element of V_n: a color-symmetric polynomial in z(i,a), a <= n_i,
// with coefficients in the parameter ring.
class ShuffleElement {
public:
    ShuffleElement(KernelPtr kernel, DimensionVector n, Polynomial poly);

    const KernelPtr& kernel() const { return kernel_; }
    const DimensionVector& dim() const { return n_; }
    const Polynomial& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    // z-degree (parameters count as ground-ring scalars).
    int degree() const;

    bool operator==(const ShuffleElement& o) const { return n_ == o.n_ && poly_ == o.poly_; }

private:
    KernelPtr kernel_;
    DimensionVector n_;
    Polynomial poly_;
};

// True iff p is invariant under every adjacent transposition
// z(i,a) <-> z(i,a+1), per vertex. Rejects variables out of range.
bool is_color_symmetric(const Polynomial& p, const DimensionVector& n);

// The shuffle product E * F, symmetrized over per-color shuffle coset
// representatives and finished by one exact division through the full
// per-color Vandermonde; the zero remainder doubles as a correctness check.
ShuffleElement shuffle_product(const ShuffleElement& e, const ShuffleElement& f);

// Sign twist data: a bilinear form psi over (Z/2)^I with
// psi + psi^T = tau, tau(m,n) = (m,m)(n,n) + (m,n) mod 2.
class SignTwist {
public:
    SignTwist(KernelPtr kernel, std::vector<std::vector<uint8_t>> psi);
    // Canonical choice: psi(s_i, s_j) = tau(s_i, s_j) for i < j, else 0.
    static SignTwist canonical(KernelPtr kernel);

    int psi(const DimensionVector& m, const DimensionVector& n) const;  // mod 2
    const std::vector<std::vector<uint8_t>>& matrix() const { return psi_; }

private:
    KernelPtr kernel_;
    std::vector<std::vector<uint8_t>> psi_;
};

int tau(const ZetaKernel& k, const DimensionVector& m, const DimensionVector& n);  // mod 2

// (-1)^{psi(n,n')} * shuffle_product(E,F)
ShuffleElement twisted_product(const ShuffleElement& e, const ShuffleElement& f, const SignTwist& t);

// [E,F]^chi = E*F - (-1)^{(n,n')} F*E
ShuffleElement super_bracket(const ShuffleElement& e, const ShuffleElement& f);

// E |-> E * (sum of all z variables); raises perverse degree by 2.
ShuffleElement u_operator(const ShuffleElement& e);

// act*: substitute z(i,a) |-> y + z(i,a) with the single aux variable y[1].
Polynomial act_shift(const ShuffleElement& e);

// The k-block shift: consecutive slots per color, block a shifted by y[a].
// Blocks must be nonzero and sum to n.
Polynomial block_shift(const ShuffleElement& e, const std::vector<DimensionVector>& blocks);

// E with the first m_i slots per color forming the primed group and the
// remaining slots the double-primed group. Stored as one polynomial over
// the two variable groups (the double-primed variable z''(i,b) is encoded
// as the slot m_i + b).
class SplitTensor {
public:
    SplitTensor(KernelPtr kernel, DimensionVector m, DimensionVector rest, Polynomial poly);
    const DimensionVector& left_dim() const { return m_; }
    const DimensionVector& right_dim() const { return rest_; }
    const Polynomial& poly() const { return poly_; }
    const KernelPtr& kernel() const { return kernel_; }
    std::string to_string() const;  // renders z'[i,a] / z''[i,b]

private:
    KernelPtr kernel_;
    DimensionVector m_;
    DimensionVector rest_;
    Polynomial poly_;
};

// Requires 0 < m < n.
SplitTensor split(const ShuffleElement& e, const DimensionVector& m);

enum class EuClassKind { Omega, OmegaOp, Identity };

// Euler-class polynomials over the primed/double-primed groups, encoded as
// in SplitTensor (primed slot a, double-primed slot n1_i + b).
Polynomial eu_classes(const ZetaKernel& k, const DimensionVector& n1, const DimensionVector& n2,
                      EuClassKind which);

// ---- color-symmetric monomial basis of the degree slices of V_n ----

// One basis shape: a partition (non-increasing exponents) per vertex.
struct SymShape {
    std::vector<std::vector<int>> parts;  // parts[i] has at most n_i entries, descending
    int degree() const;
    bool operator==(const SymShape& o) const { return parts == o.parts; }
    std::string to_string() const;
};

// All shapes of total degree delta, in canonical enumeration order.
std::vector<SymShape> sym_shapes(const DimensionVector& n, int delta);

// The monomial symmetric polynomial attached to a shape.
Polynomial shape_polynomial(const SymShape& s, const DimensionVector& n);

// Coefficient extraction: p (param-free, color-symmetric, degree-delta slice)
// as a vector over sym_shapes(n, delta). Throws when p has monomials outside
// the slice's span.
RatRow shape_vector(const Polynomial& p, const DimensionVector& n, int delta,
                    const std::vector<SymShape>& shapes);

// Decompose p as sum over parameter monomials mu of mu * p_mu with each
// p_mu parameter-free. Keys are the parameter monomials.
std::map<Monomial, Polynomial, MonomialGreater> split_by_params(const Polynomial& p);

}  // namespace coha
