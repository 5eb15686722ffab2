#include "coha/shuffle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "coha/errors.hpp"
#include "coha/parallel.hpp"

namespace coha {

namespace {

bool is_z(const Variable& v) { return v.kind() == VarKind::Z; }
bool is_aux(const Variable& v) { return v.kind() == VarKind::Aux; }
bool is_param(const Variable& v) { return v.kind() == VarKind::Param; }

int parity(long x) { return static_cast<int>(((x % 2) + 2) % 2); }

// Product of many factors. The running product saturates quickly, so the
// expensive (large) factors are folded in first, while it is still small.
Polynomial product_of(std::vector<Polynomial> factors) {
    if (factors.empty()) return Polynomial(1L);
    std::sort(factors.begin(), factors.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.term_count() > b.term_count();
    });
    Polynomial acc = std::move(factors.front());
    for (size_t i = 1; i < factors.size() && !acc.is_zero(); ++i) acc = acc * factors[i];
    return acc;
}

// All size-k subsets of {1..n}, each ascending, in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        int need = k - static_cast<int>(cur.size());
        for (int v = next; v + need - 1 <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace

bool is_color_symmetric(const Polynomial& p, const DimensionVector& n) {
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors()) {
            if (f.var.kind() == VarKind::Param) continue;
            if (f.var.kind() != VarKind::Z)
                throw PreconditionError("element polynomial may contain only z variables and parameters");
            if (f.var.vertex() >= n.size() || f.var.slot() > n[f.var.vertex()])
                throw PreconditionError("variable " + f.var.to_string() +
                                        " is out of range for dimension vector (" + n.to_string() + ")");
        }
    for (int i = 0; i < n.size(); ++i) {
        for (int a = 1; a < n[i]; ++a) {
            std::map<Variable, Variable> swap_ab{{Variable::z(i, a), Variable::z(i, a + 1)},
                                                 {Variable::z(i, a + 1), Variable::z(i, a)}};
            if (p.rename(swap_ab) != p) return false;
        }
    }
    return true;
}

ShuffleElement::ShuffleElement(KernelPtr kernel, DimensionVector n, Polynomial poly)
    : kernel_(std::move(kernel)), n_(std::move(n)), poly_(std::move(poly)) {
    if (!kernel_) throw PreconditionError("shuffle element needs a kernel");
    if (n_.size() != kernel_->vertex_count())
        throw PreconditionError("dimension vector does not match the kernel's vertex set");
    if (!is_color_symmetric(poly_, n_))
        throw PreconditionError("polynomial is not color-symmetric for dimension vector (" +
                                n_.to_string() + ")");
}

int ShuffleElement::degree() const { return poly_.degree_where(is_z); }

ShuffleElement shuffle_product(const ShuffleElement& e, const ShuffleElement& f) {
    const auto& k = e.kernel();
    if (f.kernel()->fingerprint() != k->fingerprint())
        throw PreconditionError("shuffle product operands use different kernels");
    int nv = k->vertex_count();
    DimensionVector total = e.dim() + f.dim();

    if (e.is_zero() || f.is_zero()) return ShuffleElement(k, total, Polynomial());

    // Kernel numerators evaluated at slot differences, shared across cosets.
    std::map<std::tuple<int, int, int, int>, Polynomial> factor_cache;
    auto kernel_factor = [&](int i, int j, int s, int t) -> const Polynomial& {
        auto key = std::make_tuple(i, j, s, t);
        auto it = factor_cache.find(key);
        if (it != factor_cache.end()) return it->second;
        std::map<Variable, Polynomial> sigma{
            {Variable::formal_x(),
             Polynomial::var(Variable::z(i, s)) - Polynomial::var(Variable::z(j, t))}};
        return factor_cache.emplace(key, k->numerator(i, j).substitute(sigma)).first->second;
    };

    // Per-color coset choices: which slots of 1..N_i belong to the E block.
    std::vector<std::vector<std::vector<int>>> choices(static_cast<size_t>(nv));
    size_t coset_count = 1;
    for (int i = 0; i < nv; ++i) {
        choices[static_cast<size_t>(i)] = subsets(total[i], e.dim()[i]);
        coset_count *= choices[static_cast<size_t>(i)].size();
    }

    // Prebuild all kernel factors sequentially (the cache is not locked).
    std::vector<std::vector<int>> all_slots(static_cast<size_t>(nv));
    for (int i = 0; i < nv; ++i)
        for (int s = 1; s <= total[i]; ++s) all_slots[static_cast<size_t>(i)].push_back(s);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            if (e.dim()[i] > 0 && f.dim()[j] > 0)
                for (int s : all_slots[static_cast<size_t>(i)])
                    for (int t : all_slots[static_cast<size_t>(j)])
                        if (s != t || i != j) kernel_factor(i, j, s, t);

    auto vandermonde_factors = [&](int i, const std::vector<int>& slots,
                                   std::vector<Polynomial>& out) {
        for (size_t a = 0; a < slots.size(); ++a)
            for (size_t b = a + 1; b < slots.size(); ++b)
                out.push_back(Polynomial::var(Variable::z(i, slots[a])) -
                              Polynomial::var(Variable::z(i, slots[b])));
    };

    std::vector<Polynomial> term_of(coset_count);
    parallel::for_range(coset_count, [&](size_t idx) {
        // Decode the per-color subset choice.
        std::vector<const std::vector<int>*> pick(static_cast<size_t>(nv));
        size_t rest = idx;
        for (int i = 0; i < nv; ++i) {
            const auto& ch = choices[static_cast<size_t>(i)];
            pick[static_cast<size_t>(i)] = &ch[rest % ch.size()];
            rest /= ch.size();
        }
        std::map<Variable, Variable> rename_e, rename_f;
        std::vector<std::vector<int>> comp(static_cast<size_t>(nv));
        long inversions = 0;
        for (int i = 0; i < nv; ++i) {
            const auto& sel = *pick[static_cast<size_t>(i)];
            std::vector<bool> in_sel(static_cast<size_t>(total[i]) + 1, false);
            for (size_t a = 0; a < sel.size(); ++a) {
                in_sel[static_cast<size_t>(sel[a])] = true;
                rename_e.emplace(Variable::z(i, static_cast<int>(a) + 1), Variable::z(i, sel[a]));
            }
            auto& cp = comp[static_cast<size_t>(i)];
            for (int s = 1; s <= total[i]; ++s)
                if (!in_sel[static_cast<size_t>(s)]) cp.push_back(s);
            for (size_t b = 0; b < cp.size(); ++b)
                rename_f.emplace(Variable::z(i, static_cast<int>(b) + 1), Variable::z(i, cp[b]));
            for (int s : sel)
                for (int t : cp)
                    if (s > t) ++inversions;
        }
        std::vector<Polynomial> factors{e.poly().rename(rename_e), f.poly().rename(rename_f)};
        for (int i = 0; i < nv; ++i) {
            for (int j = 0; j < nv; ++j) {
                if (e.dim()[i] == 0 || f.dim()[j] == 0) continue;
                for (int s : *pick[static_cast<size_t>(i)])
                    for (int t : comp[static_cast<size_t>(j)]) factors.push_back(kernel_factor(i, j, s, t));
            }
        }
        // Cofactor completing the term's denominator to the full Vandermonde.
        for (int i = 0; i < nv; ++i) {
            vandermonde_factors(i, *pick[static_cast<size_t>(i)], factors);
            vandermonde_factors(i, comp[static_cast<size_t>(i)], factors);
        }
        Polynomial term = product_of(std::move(factors));
        if (parity(inversions)) term = -term;
        term_of[idx] = std::move(term);
    });

    Polynomial numerator;
    for (auto& t : term_of) numerator += t;

    // Divide out the full Vandermonde one linear factor at a time; a nonzero
    // remainder anywhere is an internal fault and throws.
    Polynomial result = std::move(numerator);
    for (int i = 0; i < nv; ++i)
        for (int a = 1; a <= total[i] && !result.is_zero(); ++a)
            for (int b = a + 1; b <= total[i] && !result.is_zero(); ++b)
                result = result.exact_div_difference(Variable::z(i, a), Variable::z(i, b));
    return ShuffleElement(k, total, std::move(result));
}

int tau(const ZetaKernel& k, const DimensionVector& m, const DimensionVector& n) {
    long mm = k.euler_form(m, m), nn = k.euler_form(n, n), mn = k.euler_form(m, n);
    return parity(mm * nn + mn);
}

SignTwist::SignTwist(KernelPtr kernel, std::vector<std::vector<uint8_t>> psi)
    : kernel_(std::move(kernel)), psi_(std::move(psi)) {
    int nv = kernel_->vertex_count();
    if (static_cast<int>(psi_.size()) != nv)
        throw PreconditionError("sign twist matrix has wrong size");
    // psi + psi^T = tau on basis vectors.
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            DimensionVector si = DimensionVector::unit(nv, i), sj = DimensionVector::unit(nv, j);
            if (parity(psi_[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                       psi_[static_cast<size_t>(j)][static_cast<size_t>(i)]) != tau(*kernel_, si, sj))
                throw PreconditionError("sign twist does not satisfy psi + psi^T = tau");
        }
}

SignTwist SignTwist::canonical(KernelPtr kernel) {
    int nv = kernel->vertex_count();
    std::vector<std::vector<uint8_t>> psi(static_cast<size_t>(nv),
                                          std::vector<uint8_t>(static_cast<size_t>(nv), 0));
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j) {
            DimensionVector si = DimensionVector::unit(nv, i), sj = DimensionVector::unit(nv, j);
            psi[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                static_cast<uint8_t>(tau(*kernel, si, sj));
        }
    return SignTwist(std::move(kernel), std::move(psi));
}

int SignTwist::psi(const DimensionVector& m, const DimensionVector& n) const {
    long s = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < n.size(); ++j)
            s += static_cast<long>(m[i]) * n[j] * psi_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return parity(s);
}

ShuffleElement twisted_product(const ShuffleElement& e, const ShuffleElement& f, const SignTwist& t) {
    ShuffleElement p = shuffle_product(e, f);
    if (t.psi(e.dim(), f.dim()))
        return ShuffleElement(p.kernel(), p.dim(), -p.poly());
    return p;
}

ShuffleElement super_bracket(const ShuffleElement& e, const ShuffleElement& f) {
    ShuffleElement ef = shuffle_product(e, f);
    ShuffleElement fe = shuffle_product(f, e);
    long pair = e.kernel()->euler_form(e.dim(), f.dim());
    Polynomial p = parity(pair) ? ef.poly() + fe.poly() : ef.poly() - fe.poly();
    return ShuffleElement(e.kernel(), ef.dim(), std::move(p));
}

ShuffleElement u_operator(const ShuffleElement& e) {
    Polynomial s;
    for (int i = 0; i < e.dim().size(); ++i)
        for (int a = 1; a <= e.dim()[i]; ++a) s += Polynomial::var(Variable::z(i, a));
    return ShuffleElement(e.kernel(), e.dim(), e.poly() * s);
}

Polynomial act_shift(const ShuffleElement& e) {
    std::map<Variable, Polynomial> sigma;
    Polynomial y = Polynomial::var(Variable::aux(1));
    for (int i = 0; i < e.dim().size(); ++i)
        for (int a = 1; a <= e.dim()[i]; ++a) {
            Variable z = Variable::z(i, a);
            sigma.emplace(z, y + Polynomial::var(z));
        }
    return e.poly().substitute(sigma);
}

Polynomial block_shift(const ShuffleElement& e, const std::vector<DimensionVector>& blocks) {
    if (blocks.empty()) throw PreconditionError("block shift needs at least one block");
    DimensionVector sum = DimensionVector::zero(e.dim().size());
    for (const auto& b : blocks) {
        if (b.is_zero()) throw PreconditionError("partition blocks must be nonzero");
        sum = sum + b;
    }
    if (sum != e.dim())
        throw PreconditionError("partition blocks do not sum to the dimension vector");
    std::map<Variable, Polynomial> sigma;
    std::vector<int> offset(static_cast<size_t>(e.dim().size()), 0);
    for (size_t a = 0; a < blocks.size(); ++a) {
        Polynomial y = Polynomial::var(Variable::aux(static_cast<int>(a) + 1));
        for (int i = 0; i < e.dim().size(); ++i) {
            for (int s = 1; s <= blocks[a][i]; ++s) {
                Variable z = Variable::z(i, offset[static_cast<size_t>(i)] + s);
                sigma.emplace(z, y + Polynomial::var(z));
            }
            offset[static_cast<size_t>(i)] += blocks[a][i];
        }
    }
    return e.poly().substitute(sigma);
}

SplitTensor::SplitTensor(KernelPtr kernel, DimensionVector m, DimensionVector rest, Polynomial poly)
    : kernel_(std::move(kernel)), m_(std::move(m)), rest_(std::move(rest)), poly_(std::move(poly)) {}

std::string SplitTensor::to_string() const {
    if (poly_.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : poly_.terms()) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        std::string body;
        for (const auto& f : mono.factors()) {
            if (!body.empty()) body += "*";
            if (f.var.kind() == VarKind::Z) {
                int i = f.var.vertex(), s = f.var.slot();
                if (s <= m_[i])
                    body += "z'[" + std::to_string(i + 1) + "," + std::to_string(s) + "]";
                else
                    body += "z''[" + std::to_string(i + 1) + "," + std::to_string(s - m_[i]) + "]";
            } else {
                body += f.var.to_string();
            }
            if (f.exp != 1) body += "^" + std::to_string(f.exp);
        }
        if (body.empty())
            out << a.get_str();
        else if (a == 1)
            out << body;
        else
            out << a.get_str() << "*" << body;
    }
    return out.str();
}

SplitTensor split(const ShuffleElement& e, const DimensionVector& m) {
    if (m.is_zero() || !m.lt(e.dim()))
        throw PreconditionError("split requires 0 < m < n");
    return SplitTensor(e.kernel(), m, e.dim() - m, e.poly());
}

Polynomial eu_classes(const ZetaKernel& k, const DimensionVector& n1, const DimensionVector& n2,
                      EuClassKind which) {
    if (n1.size() != k.vertex_count() || n2.size() != k.vertex_count())
        throw PreconditionError("dimension vector does not match the kernel's vertex set");
    auto zp = [&](int i, int a) { return Polynomial::var(Variable::z(i, a)); };
    auto zpp = [&](int i, int b) { return Polynomial::var(Variable::z(i, n1[i] + b)); };
    Polynomial out(1L);
    if (which == EuClassKind::Identity) {
        for (int i = 0; i < k.vertex_count(); ++i)
            for (int a = 1; a <= n1[i]; ++a)
                for (int b = 1; b <= n2[i]; ++b) out = out * (zpp(i, b) - zp(i, a));
        return out;
    }
    for (const auto& arrow : k.quiver().arrows()) {
        int s = arrow.source, t = arrow.target;
        Polynomial u = arrow.param;
        if (which == EuClassKind::OmegaOp) {
            std::swap(s, t);
            u = -u;
        }
        for (int a = 1; a <= n1[s]; ++a)
            for (int b = 1; b <= n2[t]; ++b) out = out * (zpp(t, b) - zp(s, a) + u);
    }
    return out;
}

int SymShape::degree() const {
    int d = 0;
    for (const auto& part : parts)
        for (int x : part) d += x;
    return d;
}

std::string SymShape::to_string() const {
    std::string s = "m(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += "|";
        for (size_t j = 0; j < parts[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(parts[i][j]);
        }
    }
    return s + ")";
}

namespace {

// Partitions of d into at most k parts, descending lexicographic.
void partitions_rec(int d, int k, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (d == 0) {
        out.push_back(cur);
        return;
    }
    if (k == 0) return;
    for (int p = std::min(d, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(d - p, k - 1, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions(int d, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (d == 0) {
        out.push_back({});
        return out;
    }
    partitions_rec(d, k, d, cur, out);
    return out;
}

}  // namespace

std::vector<SymShape> sym_shapes(const DimensionVector& n, int delta) {
    std::vector<SymShape> out;
    if (delta < 0) return out;
    std::vector<std::vector<int>> cur(static_cast<size_t>(n.size()));
    std::function<void(int, int)> rec = [&](int vertex, int remaining) {
        if (vertex == n.size()) {
            if (remaining == 0) out.push_back(SymShape{cur});
            return;
        }
        int cap = remaining;
        for (int d = cap; d >= 0; --d) {
            if (n[vertex] == 0 && d > 0) continue;
            for (auto& part : partitions(d, n[vertex])) {
                cur[static_cast<size_t>(vertex)] = part;
                rec(vertex + 1, remaining - d);
            }
            cur[static_cast<size_t>(vertex)].clear();
        }
    };
    rec(0, delta);
    return out;
}

Polynomial shape_polynomial(const SymShape& s, const DimensionVector& n) {
    Polynomial out(1L);
    for (int i = 0; i < n.size(); ++i) {
        std::vector<int> exps(static_cast<size_t>(n[i]), 0);
        const auto& part = s.parts.at(static_cast<size_t>(i));
        for (size_t j = 0; j < part.size(); ++j) exps[j] = part[j];
        std::sort(exps.begin(), exps.end());
        Polynomial msym;
        do {
            FactorList factors;
            for (int a = 0; a < n[i]; ++a)
                if (exps[static_cast<size_t>(a)] > 0)
                    factors.push_back(VarPow{Variable::z(i, a + 1), exps[static_cast<size_t>(a)]});
            msym.add_term(Monomial(std::move(factors)), Rational(1));
        } while (std::next_permutation(exps.begin(), exps.end()));
        if (n[i] > 0 || part.empty()) out = out * msym;
    }
    return out;
}

RatRow shape_vector(const Polynomial& p, const DimensionVector& n, int delta,
                    const std::vector<SymShape>& shapes) {
    std::map<std::vector<std::vector<int>>, size_t> index;
    for (size_t s = 0; s < shapes.size(); ++s) index.emplace(shapes[s].parts, s);
    RatRow v(shapes.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::vector<int>> exps(static_cast<size_t>(n.size()));
        for (int i = 0; i < n.size(); ++i) exps[static_cast<size_t>(i)].assign(static_cast<size_t>(n[i]), 0);
        for (const auto& f : m.factors()) {
            if (f.var.kind() == VarKind::Param)
                throw InternalError("shape_vector requires a parameter-free polynomial");
            if (f.var.kind() != VarKind::Z || f.var.vertex() >= n.size() || f.var.slot() > n[f.var.vertex()])
                throw InternalError("monomial outside V_n in shape_vector");
            exps[static_cast<size_t>(f.var.vertex())][static_cast<size_t>(f.var.slot() - 1)] = f.exp;
        }
        // Only dominant monomials (per-vertex non-increasing exponents) are read.
        bool dominant = true;
        for (const auto& e : exps)
            for (size_t a = 0; a + 1 < e.size(); ++a)
                if (e[a] < e[a + 1]) dominant = false;
        if (!dominant) continue;
        if (m.total_degree() != delta) throw InternalError("monomial outside the degree slice");
        std::vector<std::vector<int>> key(exps.size());
        for (size_t i = 0; i < exps.size(); ++i)
            for (int x : exps[i])
                if (x > 0) key[i].push_back(x);
        auto it = index.find(key);
        if (it == index.end()) throw InternalError("dominant monomial without a shape");
        v[it->second] = c;
    }
    return v;
}

std::map<Monomial, Polynomial, MonomialGreater> split_by_params(const Polynomial& p) {
    std::map<Monomial, Polynomial, MonomialGreater> out;
    for (const auto& [m, c] : p.terms()) {
        FactorList param_part, rest;
        for (const auto& f : m.factors())
            (f.var.kind() == VarKind::Param ? param_part : rest).push_back(f);
        out[Monomial(std::move(param_part))].add_term(Monomial(std::move(rest)), c);
    }
    return out;
}

}  // namespace coha
