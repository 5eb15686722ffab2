#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "coha/polynomial.hpp"

namespace coha {

// Dimension vector over a fixed ordered vertex set.
class DimensionVector {
public:
    DimensionVector() = default;
    explicit DimensionVector(std::vector<int> v);
    static DimensionVector zero(int vertex_count) { return DimensionVector(std::vector<int>(vertex_count, 0)); }
    static DimensionVector unit(int vertex_count, int vertex);

    int size() const { return static_cast<int>(v_.size()); }
    int operator[](int i) const { return v_.at(static_cast<size_t>(i)); }
    int total() const;
    bool is_zero() const;

    bool operator==(const DimensionVector& o) const { return v_ == o.v_; }
    bool operator!=(const DimensionVector& o) const { return v_ != o.v_; }
    // Lexicographic order, used for canonical report ordering and map keys.
    bool operator<(const DimensionVector& o) const { return v_ < o.v_; }
    // Componentwise partial order.
    bool leq(const DimensionVector& o) const;
    bool lt(const DimensionVector& o) const { return leq(o) && *this != o; }

    DimensionVector operator+(const DimensionVector& o) const;
    DimensionVector operator-(const DimensionVector& o) const;  // requires o.leq(*this)

    std::string to_string() const;  // "2" or "1,0,2"

private:
    std::vector<int> v_;
};

enum class ArrowKind { Original, Reverse, Omega };

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
    ArrowKind kind = ArrowKind::Original;
    // Equivariant parameter label: a linear expression in h and the named
    // parameters (u for originals, h - u for reverses, -h for omega loops).
    Polynomial param;
};

// A finite quiver with ordered vertices. Vertex declaration order is
// canonical for all downstream tie-breaking.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int vertex_index(const std::string& name) const;  // -1 when absent

    int arrow_count(int i, int j) const;  // arrows i -> j
    // A quiver is symmetric when a_ij == a_ji for every vertex pair.
    bool is_symmetric(int* bad_i = nullptr, int* bad_j = nullptr) const;
    bool is_tripled() const { return tripled_; }

    // Copy with the arrow list replaced; keeps vertices and the tripled flag.
    Quiver with_arrows(std::vector<Arrow> arrows) const;

    friend Quiver build_double(const Quiver& q);
    friend Quiver build_triple(const Quiver& q);

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    bool tripled_ = false;
};

// Adds a reverse arrow with parameter h - u for every arrow.
Quiver build_double(const Quiver& q);
// Double plus one omega loop per vertex (parameter -h, consumed by the
// kernel's (x-h)/x factor).
Quiver build_triple(const Quiver& q);

// The reserved equivariant parameter h.
Variable hbar();

enum class KernelMode { ZeroPotential, Tripled };
enum class TorusMode { Trivial, Generic };

// The collection zeta_ij(x) = N_ij(x) / x^{delta_ij} driving the shuffle
// product. Signs are folded into N; the integers #_ij = deg N_ij - delta_ij
// define the symmetric bilinear form (m,n) = -sum m_i n_j #_ij.
class ZetaKernel {
public:
    ZetaKernel(Quiver quiver, KernelMode mode, TorusMode torus,
               std::vector<std::vector<Polynomial>> numer, std::vector<std::vector<int>> delta);

    int vertex_count() const { return quiver_.vertex_count(); }
    const Quiver& quiver() const { return quiver_; }
    KernelMode mode() const { return mode_; }
    TorusMode torus() const { return torus_; }

    const Polynomial& numerator(int i, int j) const { return numer_.at(i).at(j); }
    int delta(int i, int j) const { return delta_.at(i).at(j); }
    int sharp(int i, int j) const { return sharp_.at(i).at(j); }

    // (m,n) = -sum_{i,j} m_i n_j #_ij
    long euler_form(const DimensionVector& m, const DimensionVector& n) const;

    // Every parameter variable occurring in the kernel or arrow labels,
    // sorted by name.
    std::vector<Variable> parameters() const;
    bool has_parameters() const { return !parameters().empty(); }

    // Kernel with every parameter replaced by the given rational value;
    // arrow labels are substituted too. Degrees are unchanged, so #_ij and
    // the leading-coefficient normalization survive specialization.
    ZetaKernel specialized(const std::map<Variable, Rational>& values) const;

    // Stable identity string used as a cache key.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    Quiver quiver_;
    KernelMode mode_;
    TorusMode torus_;
    std::vector<std::vector<Polynomial>> numer_;
    std::vector<std::vector<int>> delta_;
    std::vector<std::vector<int>> sharp_;
    std::string fingerprint_;
};

// Builds the kernel for a symmetric quiver. Throws PreconditionError naming
// the offending pair when the quiver is not symmetric, or when tripled mode
// is requested for a quiver that is not a build_triple output.
ZetaKernel zeta_kernel(const Quiver& q, KernelMode mode, TorusMode torus);

using KernelPtr = std::shared_ptr<const ZetaKernel>;

}  // namespace coha
