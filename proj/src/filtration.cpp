#include "coha/filtration.hpp"

#include <algorithm>
#include <mutex>

#include "coha/errors.hpp"
#include "coha/parallel.hpp"

namespace coha {

namespace {

bool is_aux(const Variable& v) { return v.kind() == VarKind::Aux; }

// Nonzero vectors 0 < v <= n, descending lexicographically.
std::vector<DimensionVector> nonzero_subvectors_desc(const DimensionVector& n) {
    std::vector<DimensionVector> out;
    std::vector<int> cur(static_cast<size_t>(n.size()), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n.size()) {
            DimensionVector v{std::vector<int>(cur)};
            if (!v.is_zero()) out.push_back(std::move(v));
            return;
        }
        for (int x = 0; x <= n[i]; ++x) {
            cur[static_cast<size_t>(i)] = x;
            rec(i + 1);
        }
        cur[static_cast<size_t>(i)] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::vector<DimensionVector>> block_multisets(const DimensionVector& n) {
    std::vector<std::vector<DimensionVector>> out;
    if (n.is_zero()) return out;
    auto candidates = nonzero_subvectors_desc(n);
    std::vector<DimensionVector> cur;
    std::function<void(size_t, DimensionVector)> rec = [&](size_t from, DimensionVector rest) {
        if (rest.is_zero()) {
            out.push_back(cur);
            return;
        }
        for (size_t c = from; c < candidates.size(); ++c) {
            if (!candidates[c].leq(rest)) continue;
            cur.push_back(candidates[c]);
            rec(c, rest - candidates[c]);
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

long partition_bound(const ZetaKernel& k, int d, const std::vector<DimensionVector>& blocks) {
    long pair_sum = 0;
    for (size_t a = 0; a < blocks.size(); ++a)
        for (size_t b = a + 1; b < blocks.size(); ++b) pair_sum += k.euler_form(blocks[a], blocks[b]);
    return static_cast<long>(d) - static_cast<long>(blocks.size()) - 2 * pair_sum;
}

bool member_direct(const ShuffleElement& e, int d) {
    if (d < 1) throw PreconditionError("filtration index d must be >= 1");
    if (e.is_zero()) return true;
    int zdeg = e.degree();
    for (const auto& blocks : block_multisets(e.dim())) {
        long bound = partition_bound(*e.kernel(), d, blocks);
        if (bound >= 2L * zdeg) continue;  // y-degree <= z-degree cannot violate this bound
        Polynomial shifted = block_shift(e, blocks);
        int dy = shifted.degree_where(is_aux);
        if (dy == kNegInfDegree) continue;
        if (2L * dy > bound) return false;
    }
    return true;
}

FiltrationContext::FiltrationContext(KernelPtr kernel) : kernel_(std::move(kernel)) {
    if (!kernel_) throw PreconditionError("filtration context needs a kernel");
}

std::shared_ptr<const std::vector<std::vector<Polynomial>>> FiltrationContext::shifted_shapes(
    const DimensionVector& n, int delta, const std::vector<std::vector<DimensionVector>>& parts,
    const std::vector<SymShape>& shapes) {
    auto key = std::make_pair(n, delta);
    {
        std::shared_lock lock(mu_);
        auto it = shift_cache_.find(key);
        if (it != shift_cache_.end()) return it->second;
    }
    auto table = std::make_shared<std::vector<std::vector<Polynomial>>>(parts.size());
    for (size_t p = 0; p < parts.size(); ++p) {
        (*table)[p].resize(shapes.size());
        for (size_t s = 0; s < shapes.size(); ++s) {
            ShuffleElement elt(kernel_, n, shape_polynomial(shapes[s], n));
            (*table)[p][s] = block_shift(elt, parts[p]);
        }
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] = shift_cache_.emplace(key, table);
    return it->second;  // first writer wins
}

std::shared_ptr<const GradedSubspace> FiltrationContext::subspace(const DimensionVector& n, int d,
                                                                  int delta) {
    if (d < 1) throw PreconditionError("filtration index d must be >= 1");
    if (delta < 0) throw PreconditionError("degree slice must be nonnegative");
    auto key = std::make_tuple(n, d, delta);
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }

    auto result = std::make_shared<GradedSubspace>();
    result->kernel_fingerprint = kernel_->fingerprint();
    result->n = n;
    result->d = d;
    result->delta = delta;
    result->shapes = sym_shapes(n, delta);

    if (!result->shapes.empty()) {
        auto parts = block_multisets(n);
        auto shifts = shifted_shapes(n, delta, parts, result->shapes);
        // Constraints: for each block multiset whose bound bites, every
        // coefficient of a y-monomial of too-high degree must vanish. The
        // shifts carry no parameters, so the system is exact over Q.
        RatMatrix constraints(result->shapes.size());
        std::map<std::pair<size_t, Monomial>, size_t> row_of;  // (partition, monomial) -> row
        for (size_t p = 0; p < parts.size(); ++p) {
            long bound = partition_bound(*kernel_, d, parts[p]);
            if (bound >= 2L * delta) continue;
            for (size_t s = 0; s < result->shapes.size(); ++s) {
                for (const auto& [mono, c] : (*shifts)[p][s].terms()) {
                    if (2L * mono.degree_where(is_aux) <= bound) continue;
                    auto [it, inserted] = row_of.emplace(std::make_pair(p, mono), constraints.row_count());
                    if (inserted) constraints.add_row(RatRow(result->shapes.size(), Rational(0)));
                    constraints.rows[it->second][s] += c;
                }
            }
        }
        result->basis = nullspace(constraints);
        for (const auto& row : result->basis.rows) {
            Polynomial p;
            for (size_t s = 0; s < result->shapes.size(); ++s)
                if (row[s] != 0) p += shape_polynomial(result->shapes[s], n).scaled(row[s]);
            result->elements.emplace_back(kernel_, n, std::move(p));
        }
    } else {
        result->basis = RatMatrix(0);
    }

    std::unique_lock lock(mu_);
    auto [it, inserted] = memo_.emplace(key, result);
    return it->second;  // first writer wins
}

bool FiltrationContext::member_recursive(const ShuffleElement& e, int d) {
    if (d < 1) throw PreconditionError("filtration index d must be >= 1");
    if (e.kernel()->fingerprint() != kernel_->fingerprint())
        throw PreconditionError("element kernel does not match this filtration context");
    if (e.is_zero()) return true;
    // (A1): the single-variable shift must have y-degree at most (d-1)/2.
    Polynomial shifted = act_shift(e);
    if (2L * shifted.degree_where(is_aux) > d - 1) return false;

    // (A2): for each 0 < m < n, the split must lie in the prescribed sum of
    // tensor products of smaller filtration pieces.
    const DimensionVector& n = e.dim();
    for (const auto& m : dimension_range(n)) {
        if (!m.lt(n) || m.is_zero()) continue;
        DimensionVector rest = n - m;
        long dd = static_cast<long>(d) - 2 * kernel_->euler_form(m, rest);
        if (dd < 2) return false;  // a split of a nonzero element is nonzero
        SplitTensor sp = split(e, m);

        // Group the (parameter-decomposed) split by bidegree.
        auto components = split_by_params(sp.poly());
        for (const auto& [pm, comp] : components) {
            std::map<std::pair<int, int>, Polynomial> by_bidegree;
            for (const auto& [mono, c] : comp.terms()) {
                int dl = 0, dr = 0;
                for (const auto& f : mono.factors()) {
                    if (f.var.slot() <= m[f.var.vertex()])
                        dl += f.exp;
                    else
                        dr += f.exp;
                }
                Polynomial& bucket = by_bidegree[{dl, dr}];
                bucket.add_term(mono, c);
            }
            for (const auto& [bideg, poly] : by_bidegree) {
                auto [dl, dr] = bideg;
                auto left_shapes = sym_shapes(m, dl);
                auto right_shapes = sym_shapes(rest, dr);
                size_t cols = left_shapes.size() * right_shapes.size();
                // Coefficient vector of this bidegree slice over shape pairs.
                RatRow v(cols, Rational(0));
                std::map<std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>, size_t>
                    index;
                {
                    size_t at = 0;
                    for (const auto& ls : left_shapes)
                        for (const auto& rs : right_shapes) index.emplace(std::make_pair(ls.parts, rs.parts), at++);
                }
                for (const auto& [mono, c] : poly.terms()) {
                    std::vector<std::vector<int>> le(static_cast<size_t>(n.size())),
                        re(static_cast<size_t>(n.size()));
                    for (int i = 0; i < n.size(); ++i) {
                        le[static_cast<size_t>(i)].assign(static_cast<size_t>(m[i]), 0);
                        re[static_cast<size_t>(i)].assign(static_cast<size_t>(rest[i]), 0);
                    }
                    for (const auto& f : mono.factors()) {
                        int i = f.var.vertex(), s = f.var.slot();
                        if (s <= m[i])
                            le[static_cast<size_t>(i)][static_cast<size_t>(s - 1)] = f.exp;
                        else
                            re[static_cast<size_t>(i)][static_cast<size_t>(s - m[i] - 1)] = f.exp;
                    }
                    auto dominant = [](const std::vector<std::vector<int>>& e2) {
                        for (const auto& row : e2)
                            for (size_t a = 0; a + 1 < row.size(); ++a)
                                if (row[a] < row[a + 1]) return false;
                        return true;
                    };
                    if (!dominant(le) || !dominant(re)) continue;
                    auto strip = [](const std::vector<std::vector<int>>& e2) {
                        std::vector<std::vector<int>> k2(e2.size());
                        for (size_t i = 0; i < e2.size(); ++i)
                            for (int x : e2[i])
                                if (x > 0) k2[i].push_back(x);
                        return k2;
                    };
                    v[index.at(std::make_pair(strip(le), strip(re)))] = c;
                }

                // Span of tensor products of memoized slice bases.
                SpanBuilder span(cols);
                for (long dprime = 1; dprime <= dd - 1; ++dprime) {
                    auto left = subspace(m, static_cast<int>(dprime), dl);
                    auto right = subspace(rest, static_cast<int>(dd - dprime), dr);
                    for (const auto& lrow : left->basis.rows)
                        for (const auto& rrow : right->basis.rows) {
                            RatRow kron(cols, Rational(0));
                            size_t at = 0;
                            for (size_t a = 0; a < lrow.size(); ++a)
                                for (size_t b = 0; b < rrow.size(); ++b) kron[at++] = lrow[a] * rrow[b];
                            span.add(std::move(kron));
                        }
                }
                if (!in_row_space(span.matrix(), v)) return false;
            }
        }
    }
    return true;
}

std::vector<std::shared_ptr<const GradedSubspace>> FiltrationContext::bps_basis(
    const DimensionVector& n, int delta_max) {
    std::vector<std::shared_ptr<const GradedSubspace>> out;
    for (int delta = 0; delta <= delta_max; ++delta) out.push_back(subspace(n, 1, delta));
    return out;
}

std::vector<DimensionVector> dimension_range(const DimensionVector& n_max) {
    std::vector<DimensionVector> out;
    std::vector<int> cur(static_cast<size_t>(n_max.size()), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n_max.size()) {
            DimensionVector v{std::vector<int>(cur)};
            if (!v.is_zero()) out.push_back(std::move(v));
            return;
        }
        for (int x = 0; x <= n_max[i]; ++x) {
            cur[static_cast<size_t>(i)] = x;
            rec(i + 1);
        }
        cur[static_cast<size_t>(i)] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct PBWGenerator {
    DimensionVector n;
    int delta = 0;   // degree of the underlying BPS basis element
    int index = 0;   // position in the BPS slice basis
    int j = 0;       // power of u
    bool odd_parity = false;
    ShuffleElement element;  // u^j * beta

    // Canonical generator order: (|n| asc, n lex, delta asc, j asc, index).
    std::tuple<int, DimensionVector, int, int, int> key() const {
        return {n.total(), n, delta, j, index};
    }
};

}  // namespace

PBWReport pbw_check(FiltrationContext& ctx, const SignTwist& twist, const DimensionVector& n_max,
                    int delta_max, int d_max) {
    const auto& kernel = ctx.kernel();
    PBWReport report;

    // The degree of a PBW monomial is sum(delta_a + j_a) - sum_{a<b}(n^a,n^b);
    // negative pair sums let constituents exceed delta_max, so pad the
    // generator degree window accordingly.
    long max_pairsum = 0;
    for (const auto& n : dimension_range(n_max))
        for (const auto& blocks : block_multisets(n)) {
            long s = 0;
            for (size_t a = 0; a < blocks.size(); ++a)
                for (size_t b = a + 1; b < blocks.size(); ++b) s += kernel->euler_form(blocks[a], blocks[b]);
            max_pairsum = std::max(max_pairsum, s);
        }
    int gen_degree_cap = delta_max + static_cast<int>(std::max(0L, max_pairsum));

    std::vector<PBWGenerator> gens;
    for (const auto& v : dimension_range(n_max)) {
        bool odd = (((kernel->euler_form(v, v) % 2) + 2) % 2) == 1;
        auto bps = ctx.bps_basis(v, gen_degree_cap);
        for (int delta = 0; delta <= gen_degree_cap; ++delta) {
            const auto& slice = bps[static_cast<size_t>(delta)];
            for (int idx = 0; idx < slice->dim(); ++idx) {
                for (int j = 0; 1 + 2 * j <= d_max; ++j) {
                    if (delta + j > gen_degree_cap) break;
                    PBWGenerator g{v,
                                   delta,
                                   idx,
                                   j,
                                   odd,
                                   slice->elements[static_cast<size_t>(idx)]};
                    for (int t = 0; t < j; ++t) g.element = u_operator(g.element);
                    gens.push_back(std::move(g));
                }
            }
        }
    }
    std::sort(gens.begin(), gens.end(),
              [](const PBWGenerator& a, const PBWGenerator& b) { return a.key() < b.key(); });

    // Buckets of evaluated monomials per (n, delta): (weight, coefficient rows).
    std::map<std::pair<DimensionVector, int>, std::vector<std::pair<int, RatRow>>> buckets;
    bool member_ok = true;

    std::vector<size_t> chosen;
    std::function<void(size_t, DimensionVector, long, int)> rec = [&](size_t from, DimensionVector acc,
                                                                      long deg_sum, int weight) {
        if (!acc.is_zero()) {
            long pairsum = 0;
            for (size_t a = 0; a < chosen.size(); ++a)
                for (size_t b = a + 1; b < chosen.size(); ++b)
                    pairsum += kernel->euler_form(gens[chosen[a]].n, gens[chosen[b]].n);
            long delta = deg_sum - pairsum;
            if (acc.leq(n_max) && delta >= 0 && delta <= delta_max) {
                // Evaluate the twisted product in canonical order.
                ShuffleElement prod = gens[chosen[0]].element;
                for (size_t t = 1; t < chosen.size(); ++t)
                    prod = twisted_product(prod, gens[chosen[t]].element, twist);
                ++report.product_count;
                if (prod.degree() != delta && !prod.is_zero())
                    throw InternalError("PBW monomial degree mismatch");
                if (!member_direct(prod, weight)) member_ok = false;
                auto shapes = sym_shapes(acc, static_cast<int>(delta));
                RatRow row = shape_vector(prod.poly(), acc, static_cast<int>(delta), shapes);
                buckets[{acc, static_cast<int>(delta)}].emplace_back(weight, std::move(row));
            }
        }
        for (size_t g = from; g < gens.size(); ++g) {
            if (!chosen.empty() && chosen.back() == g && gens[g].odd_parity) continue;
            DimensionVector next = acc + gens[g].n;
            if (!next.leq(n_max)) continue;
            int w = weight + 1 + 2 * gens[g].j;
            if (w > d_max) continue;
            long ds = deg_sum + gens[g].delta + gens[g].j;
            chosen.push_back(g);
            rec(g, next, ds, w);
            chosen.pop_back();
        }
    };
    rec(0, DimensionVector::zero(n_max.size()), 0, 0);

    for (auto& [key, monos] : buckets)
        std::sort(monos.begin(), monos.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& n : dimension_range(n_max)) {
        for (int delta = 0; delta <= delta_max; ++delta) {
            auto it = buckets.find({n, delta});
            size_t cols = sym_shapes(n, delta).size();
            for (int d = 1; d <= d_max; ++d) {
                PBWCell cell;
                cell.n = n;
                cell.delta = delta;
                cell.d = d;
                cell.dim = ctx.subspace(n, d, delta)->dim();
                SpanBuilder span(cols);
                if (it != buckets.end()) {
                    for (const auto& [w, row] : it->second) {
                        if (w > d) break;
                        ++cell.count;
                        span.add(row);
                    }
                }
                cell.rank = span.rank();
                cell.pass = (cell.count == cell.dim) && (cell.rank == cell.dim);
                if (!cell.pass) report.all_pass = false;
                report.cells.push_back(std::move(cell));
            }
        }
    }
    if (!member_ok) report.all_pass = false;
    return report;
}

GradedDimsTable graded_dims(FiltrationContext& ctx, const DimensionVector& n_max, int delta_max,
                            int d_max) {
    GradedDimsTable table;
    for (const auto& n : dimension_range(n_max))
        for (int delta = 0; delta <= delta_max; ++delta)
            for (int d = 1; d <= d_max; ++d) {
                GradedDimCell cell;
                cell.n = n;
                cell.delta = delta;
                cell.d = d;
                cell.dim = ctx.subspace(n, d, delta)->dim();
                cell.full_dim = static_cast<int>(sym_shapes(n, delta).size());
                table.cells.push_back(std::move(cell));
            }
    return table;
}

int stabilization_threshold(const ZetaKernel& k, const DimensionVector& n, int delta) {
    long best = std::numeric_limits<long>::min();
    for (const auto& blocks : block_multisets(n)) {
        long pair_sum = 0;
        for (size_t a = 0; a < blocks.size(); ++a)
            for (size_t b = a + 1; b < blocks.size(); ++b) pair_sum += k.euler_form(blocks[a], blocks[b]);
        best = std::max(best, static_cast<long>(blocks.size()) + 2 * pair_sum);
    }
    return static_cast<int>(2L * delta + best);
}

}  // namespace coha
