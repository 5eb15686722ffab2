#include "coha/kac.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "coha/errors.hpp"

namespace coha {

namespace {

constexpr unsigned long long kSweepCap = 8ull * 1000 * 1000;
constexpr unsigned long long kEndSweepCap = 4ull * 1000 * 1000;

// Polynomial arithmetic over F_p on digit vectors (lowest degree first).
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    while (a.size() >= m.size()) {
        int lead = a.back();
        if (lead != 0) {
            size_t shift = a.size() - m.size();
            for (size_t i = 0; i < m.size(); ++i) {
                a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p * p) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
}

bool poly_divides(const std::vector<int>& d, std::vector<int> a, int p) {
    // Remainder of a by monic-ized d.
    std::vector<int> dm = d;
    int lead = dm.back();
    // Make d monic.
    int inv = 0;
    for (int x = 1; x < p; ++x)
        if (x * lead % p == 1) inv = x;
    for (auto& c : dm) c = c * inv % p;
    a = poly_mod(std::move(a), dm, p);
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

// Lexicographically-first monic irreducible of degree e over F_p.
std::vector<int> find_irreducible(int p, int e) {
    if (e == 1) return {0, 1};  // x
    std::vector<int> f(static_cast<size_t>(e) + 1, 0);
    f[static_cast<size_t>(e)] = 1;
    // Enumerate the lower coefficients in lexicographic order.
    unsigned long long total = 1;
    for (int i = 0; i < e; ++i) total *= static_cast<unsigned long long>(p);
    for (unsigned long long code = 0; code < total; ++code) {
        unsigned long long rest = code;
        for (int i = 0; i < e; ++i) {
            f[static_cast<size_t>(i)] = static_cast<int>(rest % static_cast<unsigned long long>(p));
            rest /= static_cast<unsigned long long>(p);
        }
        // Trial division by all monic polynomials of degree 1..e/2.
        bool irreducible = true;
        for (int dd = 1; irreducible && 2 * dd <= e; ++dd) {
            unsigned long long dt = 1;
            for (int i = 0; i < dd; ++i) dt *= static_cast<unsigned long long>(p);
            for (unsigned long long dc = 0; dc < dt; ++dc) {
                std::vector<int> g(static_cast<size_t>(dd) + 1, 0);
                g[static_cast<size_t>(dd)] = 1;
                unsigned long long r2 = dc;
                for (int i = 0; i < dd; ++i) {
                    g[static_cast<size_t>(i)] = static_cast<int>(r2 % static_cast<unsigned long long>(p));
                    r2 /= static_cast<unsigned long long>(p);
                }
                if (poly_divides(g, f, p)) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return f;
    }
    throw InternalError("no irreducible polynomial found");
}

}  // namespace

GaloisField::GaloisField(int p, int e) : p_(p), e_(e) {
    q_ = 1;
    for (int i = 0; i < e; ++i) q_ *= p;
    if (q_ > (1 << 14)) throw SizeGuardError("Galois field too large", static_cast<unsigned long long>(q_));
    irreducible_ = find_irreducible(p, e);

    auto decode = [&](int a) {
        std::vector<int> d(static_cast<size_t>(e), 0);
        for (int i = 0; i < e; ++i) {
            d[static_cast<size_t>(i)] = a % p;
            a /= p;
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = e - 1; i >= 0; --i) a = a * p + (i < static_cast<int>(d.size()) ? d[static_cast<size_t>(i)] : 0);
        return a;
    };

    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    neg_.resize(static_cast<size_t>(q_));
    inv_.assign(static_cast<size_t>(q_), 0);
    for (int a = 0; a < q_; ++a) {
        auto da = decode(a);
        std::vector<int> dn(static_cast<size_t>(e));
        for (int i = 0; i < e; ++i) dn[static_cast<size_t>(i)] = (p - da[static_cast<size_t>(i)]) % p;
        neg_[static_cast<size_t>(a)] = static_cast<uint16_t>(encode(dn));
        for (int b = 0; b < q_; ++b) {
            auto db = decode(b);
            std::vector<int> ds(static_cast<size_t>(e));
            for (int i = 0; i < e; ++i)
                ds[static_cast<size_t>(i)] = (da[static_cast<size_t>(i)] + db[static_cast<size_t>(i)]) % p;
            add_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(encode(ds));
            auto prod = poly_mod(poly_mul(da, db, p), irreducible_, p);
            mul_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(encode(prod));
        }
    }
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul(a, b) == 1) inv_[static_cast<size_t>(a)] = static_cast<uint16_t>(b);
    // Smallest multiplicative generator.
    for (int g = 1; g < q_; ++g) {
        int x = g, order = 1;
        while (x != 1) {
            x = mul(x, g);
            ++order;
        }
        if (order == q_ - 1) {
            primitive_ = g;
            break;
        }
    }
    if (q_ == 2) primitive_ = 1;
}

const GaloisField& GaloisField::get(int p, int e) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<GaloisField>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<GaloisField>(new GaloisField(p, e))).first;
    return *it->second;
}

int GaloisField::inv(int a) const {
    if (a == 0) throw InternalError("inverse of zero in a Galois field");
    return inv_[static_cast<size_t>(a)];
}

std::vector<int> GaloisField::embedding_from(const GaloisField& sub) const {
    if (sub.p_ != p_ || e_ % sub.e_ != 0)
        throw PreconditionError("not a subfield");
    if (sub.e_ == 1) {
        // Prime field embeds as the scalars 0..p-1 (same digit encoding).
        std::vector<int> img(static_cast<size_t>(sub.q_));
        for (int a = 0; a < sub.q_; ++a) img[static_cast<size_t>(a)] = a;
        return img;
    }
    // Find the smallest root of the subfield's irreducible in this field.
    int root = -1;
    for (int t = 0; t < q_ && root < 0; ++t) {
        int acc = 0;
        for (int i = static_cast<int>(sub.irreducible_.size()) - 1; i >= 0; --i)
            acc = add(mul(acc, t), sub.irreducible_[static_cast<size_t>(i)] % p_);
        if (acc == 0) root = t;
    }
    if (root < 0) throw InternalError("subfield irreducible has no root in extension");
    std::vector<int> img(static_cast<size_t>(sub.q_));
    for (int a = 0; a < sub.q_; ++a) {
        int rest = a, acc = 0, power = 1;
        for (int i = 0; i < sub.e_; ++i) {
            int digit = rest % sub.p_;
            rest /= sub.p_;
            acc = add(acc, mul(digit, power));
            power = mul(power, root);
        }
        img[static_cast<size_t>(a)] = acc;
    }
    return img;
}

GFMatrix GFMatrix::mul(const GFMatrix& o) const {
    GFMatrix r(*field, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            int v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = field->add(r.at(i, j), field->mul(v, o.at(k, j)));
        }
    return r;
}

bool GFMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

bool GFMatrix::invertible() const {
    if (rows != cols) return false;
    GFMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        for (int j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
        int inv = field->inv(m.at(rank, col));
        for (int j = 0; j < cols; ++j) m.at(rank, j) = field->mul(m.at(rank, j), inv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            int f = m.at(r, col);
            for (int j = 0; j < cols; ++j)
                m.at(r, j) = field->sub(m.at(r, j), field->mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank == rows;
}

bool GFMatrix::nilpotent() const {
    GFMatrix m = *this;
    for (int it = 0; it < rows; ++it) {
        if (m.is_zero()) return true;
        m = m.mul(*this);
    }
    return m.is_zero();
}

namespace {

// Gaussian elimination nullspace over a Galois field.
std::vector<std::vector<int>> gf_nullspace(const GaloisField& f, std::vector<std::vector<int>> m,
                                           int cols) {
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(pivot)]);
        int inv = f.inv(m[static_cast<size_t>(rank)][static_cast<size_t>(col)]);
        for (int j = 0; j < cols; ++j)
            m[static_cast<size_t>(rank)][static_cast<size_t>(j)] =
                f.mul(m[static_cast<size_t>(rank)][static_cast<size_t>(j)], inv);
        for (int r = 0; r < static_cast<int>(m.size()); ++r) {
            if (r == rank) continue;
            int fac = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (fac == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<size_t>(r)][static_cast<size_t>(j)] = f.sub(
                    m[static_cast<size_t>(r)][static_cast<size_t>(j)],
                    f.mul(fac, m[static_cast<size_t>(rank)][static_cast<size_t>(j)]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<int>> basis;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[static_cast<size_t>(free_col)]) continue;
        std::vector<int> v(static_cast<size_t>(cols), 0);
        v[static_cast<size_t>(free_col)] = 1;
        for (int r = 0; r < rank; ++r)
            v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
                f.neg(m[static_cast<size_t>(r)][static_cast<size_t>(free_col)]);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct RepCodec {
    const GaloisField* field;
    const Quiver* quiver;
    DimensionVector n;
    int entry_count = 0;
    unsigned long long total_states = 1;

    RepCodec(const GaloisField& f, const Quiver& q, DimensionVector nn)
        : field(&f), quiver(&q), n(std::move(nn)) {
        for (const auto& a : q.arrows()) entry_count += n[a.target] * n[a.source];
        for (int i = 0; i < entry_count; ++i) {
            total_states *= static_cast<unsigned long long>(f.q());
            if (total_states > kSweepCap * 10) break;
        }
    }

    FiniteFieldRep decode(unsigned long long code) const {
        FiniteFieldRep rep;
        rep.field = field;
        rep.n = n;
        for (const auto& a : quiver->arrows()) {
            GFMatrix m(*field, n[a.target], n[a.source]);
            for (auto& x : m.a) {
                x = static_cast<int>(code % static_cast<unsigned long long>(field->q()));
                code /= static_cast<unsigned long long>(field->q());
            }
            rep.arrow_matrices.push_back(std::move(m));
        }
        return rep;
    }

    unsigned long long encode(const FiniteFieldRep& rep) const {
        unsigned long long code = 0;
        for (size_t ai = rep.arrow_matrices.size(); ai-- > 0;) {
            const auto& m = rep.arrow_matrices[ai];
            for (size_t k = m.a.size(); k-- > 0;)
                code = code * static_cast<unsigned long long>(field->q()) +
                       static_cast<unsigned long long>(m.a[k]);
        }
        return code;
    }
};

}  // namespace

std::vector<std::vector<GFMatrix>> endomorphism_basis(const Quiver& q, const FiniteFieldRep& rep) {
    const GaloisField& f = *rep.field;
    const DimensionVector& n = rep.n;
    int nv = q.vertex_count();
    std::vector<int> offset(static_cast<size_t>(nv) + 1, 0);
    for (int i = 0; i < nv; ++i) offset[static_cast<size_t>(i) + 1] = offset[static_cast<size_t>(i)] + n[i] * n[i];
    int unknowns = offset[static_cast<size_t>(nv)];

    std::vector<std::vector<int>> equations;
    for (size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const auto& a = q.arrows()[ai];
        const GFMatrix& m = rep.arrow_matrices[ai];
        // phi_t M - M phi_s = 0, entrywise (r, c).
        for (int r = 0; r < n[a.target]; ++r) {
            for (int c = 0; c < n[a.source]; ++c) {
                std::vector<int> eq(static_cast<size_t>(unknowns), 0);
                // (phi_t M)_{rc} = sum_k phi_t[r,k] M[k,c]
                for (int k = 0; k < n[a.target]; ++k) {
                    int idx = offset[static_cast<size_t>(a.target)] + r * n[a.target] + k;
                    eq[static_cast<size_t>(idx)] = f.add(eq[static_cast<size_t>(idx)], m.at(k, c));
                }
                // -(M phi_s)_{rc} = -sum_k M[r,k] phi_s[k,c]
                for (int k = 0; k < n[a.source]; ++k) {
                    int idx = offset[static_cast<size_t>(a.source)] + k * n[a.source] + c;
                    eq[static_cast<size_t>(idx)] = f.sub(eq[static_cast<size_t>(idx)], m.at(r, k));
                }
                equations.push_back(std::move(eq));
            }
        }
    }
    auto basis_vectors = gf_nullspace(f, std::move(equations), unknowns);
    std::vector<std::vector<GFMatrix>> basis;
    for (const auto& v : basis_vectors) {
        std::vector<GFMatrix> blocks;
        for (int i = 0; i < nv; ++i) {
            GFMatrix b(f, n[i], n[i]);
            for (int r = 0; r < n[i]; ++r)
                for (int c = 0; c < n[i]; ++c)
                    b.at(r, c) = v[static_cast<size_t>(offset[static_cast<size_t>(i)] + r * n[i] + c)];
            blocks.push_back(std::move(b));
        }
        basis.push_back(std::move(blocks));
    }
    return basis;
}

bool is_indecomposable(const Quiver& q, const FiniteFieldRep& rep) {
    if (rep.n.total() == 0) return false;
    const GaloisField& f = *rep.field;
    auto basis = endomorphism_basis(q, rep);
    size_t dim = basis.size();
    if (dim == 1) return true;  // End = scalars
    unsigned long long sweep = 1;
    for (size_t i = 0; i < dim; ++i) {
        sweep *= static_cast<unsigned long long>(f.q());
        if (sweep > kEndSweepCap)
            throw SizeGuardError("endomorphism algebra too large to sweep", sweep);
    }
    int nv = rep.n.size();
    // Fitting: decomposable iff some endomorphism is neither nilpotent nor
    // invertible.
    for (unsigned long long code = 1; code < sweep; ++code) {
        std::vector<GFMatrix> phi;
        for (int i = 0; i < nv; ++i) phi.emplace_back(f, rep.n[i], rep.n[i]);
        unsigned long long rest = code;
        for (size_t bidx = 0; bidx < dim; ++bidx) {
            int c = static_cast<int>(rest % static_cast<unsigned long long>(f.q()));
            rest /= static_cast<unsigned long long>(f.q());
            if (c == 0) continue;
            for (int i = 0; i < nv; ++i)
                for (size_t k = 0; k < phi[static_cast<size_t>(i)].a.size(); ++k)
                    phi[static_cast<size_t>(i)].a[k] =
                        f.add(phi[static_cast<size_t>(i)].a[k],
                              f.mul(c, basis[bidx][static_cast<size_t>(i)].a[k]));
        }
        bool nil = true, inv = true;
        for (int i = 0; i < nv && (nil || inv); ++i) {
            if (rep.n[i] == 0) continue;
            if (nil && !phi[static_cast<size_t>(i)].nilpotent()) nil = false;
            if (inv && !phi[static_cast<size_t>(i)].invertible()) inv = false;
        }
        if (!nil && !inv) return false;
    }
    return true;
}

std::vector<FiniteFieldRep> iso_classes(const Quiver& q, const DimensionVector& n, int field_q) {
    if (n.total() > 3) throw PreconditionError("iso_classes caps |n| at 3");
    if (field_q != 2 && field_q != 3 && field_q != 4 && field_q != 5)
        throw PreconditionError("iso_classes supports q in {2,3,4,5}");
    int p = field_q == 4 ? 2 : field_q;
    int e = field_q == 4 ? 2 : 1;
    const GaloisField& f = GaloisField::get(p, e);
    RepCodec codec(f, q, n);
    if (codec.total_states > kSweepCap)
        throw SizeGuardError("representation sweep too large", codec.total_states);

    // Generators of prod GL_{n_i}(F_q): transvections E_{rc}(1) and one
    // primitive diagonal scalar per vertex, with inverses.
    struct Gen {
        int vertex;
        GFMatrix g, ginv;
    };
    std::vector<Gen> gens;
    for (int i = 0; i < q.vertex_count(); ++i) {
        int d = n[i];
        if (d == 0) continue;
        auto identity = [&] {
            GFMatrix m(f, d, d);
            for (int r = 0; r < d; ++r) m.at(r, r) = 1;
            return m;
        };
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                if (r == c) continue;
                GFMatrix g = identity(), ginv = identity();
                g.at(r, c) = 1;
                ginv.at(r, c) = f.neg(1);
                gens.push_back(Gen{i, g, ginv});
                gens.push_back(Gen{i, ginv, g});
            }
        if (f.q() > 2) {
            GFMatrix g = identity(), ginv = identity();
            g.at(0, 0) = f.primitive();
            ginv.at(0, 0) = f.inv(f.primitive());
            gens.push_back(Gen{i, g, ginv});
            gens.push_back(Gen{i, ginv, g});
        }
    }

    std::vector<bool> visited(codec.total_states, false);
    std::vector<FiniteFieldRep> reps;
    std::vector<unsigned long long> stack;
    for (unsigned long long seed = 0; seed < codec.total_states; ++seed) {
        if (visited[seed]) continue;
        reps.push_back(codec.decode(seed));
        visited[seed] = true;
        stack.assign(1, seed);
        while (!stack.empty()) {
            unsigned long long code = stack.back();
            stack.pop_back();
            FiniteFieldRep rep = codec.decode(code);
            for (const auto& gen : gens) {
                FiniteFieldRep next = rep;
                for (size_t ai = 0; ai < q.arrows().size(); ++ai) {
                    const auto& a = q.arrows()[ai];
                    if (a.target == gen.vertex) next.arrow_matrices[ai] = gen.g.mul(next.arrow_matrices[ai]);
                    if (a.source == gen.vertex)
                        next.arrow_matrices[ai] = next.arrow_matrices[ai].mul(gen.ginv);
                }
                unsigned long long nc = codec.encode(next);
                if (!visited[nc]) {
                    visited[nc] = true;
                    stack.push_back(nc);
                }
            }
        }
    }
    return reps;
}

namespace {

FiniteFieldRep base_change(const FiniteFieldRep& rep, const GaloisField& ext) {
    auto img = ext.embedding_from(*rep.field);
    FiniteFieldRep out;
    out.field = &ext;
    out.n = rep.n;
    for (const auto& m : rep.arrow_matrices) {
        GFMatrix big(ext, m.rows, m.cols);
        for (size_t k = 0; k < m.a.size(); ++k) big.a[k] = img[static_cast<size_t>(m.a[k])];
        out.arrow_matrices.push_back(std::move(big));
    }
    return out;
}

}  // namespace

KacCount abs_indec_count(const Quiver& q, const DimensionVector& n, int field_q) {
    auto reps = iso_classes(q, n, field_q);
    KacCount count;
    count.n = n;
    count.q = field_q;
    count.classes = static_cast<long>(reps.size());
    int p = field_q == 4 ? 2 : field_q;
    int e = field_q == 4 ? 2 : 1;
    for (const auto& rep : reps) {
        if (!is_indecomposable(q, rep)) continue;
        ++count.indecomposable;
        // Absolutely indecomposable: still indecomposable over F_{q^2} and
        // F_{q^3} (sufficient at |n| <= 3).
        bool absolute = true;
        for (int k = 2; k <= 3 && absolute; ++k) {
            const GaloisField& ext = GaloisField::get(p, e * k);
            if (!is_indecomposable(q, base_change(rep, ext))) absolute = false;
        }
        if (absolute) ++count.absolutely_indecomposable;
    }
    return count;
}

std::vector<Rational> interpolate_polynomial(const std::vector<std::pair<long, long>>& points) {
    size_t n = points.size();
    if (n == 0) throw PreconditionError("interpolation needs at least one point");
    std::vector<Rational> coeffs(n, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        // Lagrange basis polynomial for node i, expanded.
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * Rational(points[j].first);
            }
            basis = std::move(next);
            denom *= Rational(points[i].first - points[j].first);
        }
        Rational scale = Rational(points[i].second) / denom;
        for (size_t k = 0; k < basis.size(); ++k) coeffs[k] += basis[k] * scale;
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc(0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

long quiver_euler_form(const Quiver& q, const DimensionVector& m, const DimensionVector& n) {
    long s = 0;
    for (int i = 0; i < q.vertex_count(); ++i) s += static_cast<long>(m[i]) * n[i];
    for (const auto& a : q.arrows()) s -= static_cast<long>(m[a.source]) * n[a.target];
    return s;
}

long kac_prediction_at_one(const Quiver& q, const DimensionVector& n) {
    long euler = quiver_euler_form(q, n, n);
    long degree = 1 - euler;
    if (degree < 0) return 0;  // no absolutely indecomposables in this dimension
    if (degree + 1 > 4)
        throw SizeGuardError("Kac polynomial degree exceeds the interpolation window",
                             static_cast<unsigned long long>(degree));
    static const int qs[4] = {2, 3, 4, 5};
    std::vector<std::pair<long, long>> points;
    for (long i = 0; i <= degree; ++i) {
        KacCount c = abs_indec_count(q, n, qs[i]);
        points.emplace_back(qs[i], c.absolutely_indecomposable);
    }
    auto coeffs = interpolate_polynomial(points);
    Rational at_one = evaluate_polynomial(coeffs, Rational(1));
    if (at_one.get_den() != 1) throw InternalError("Kac value at 1 is not an integer");
    return static_cast<long>(at_one.get_num().get_si());
}

}  // namespace coha
