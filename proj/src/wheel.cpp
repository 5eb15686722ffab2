#include "coha/wheel.hpp"

#include <algorithm>

#include "coha/errors.hpp"
#include "coha/kac.hpp"
#include "coha/parallel.hpp"

namespace coha {

namespace {

// Groups p by its z-monomials; values are coefficient polynomials in the
// parameters.
std::map<Monomial, Polynomial, MonomialGreater> group_by_z(const Polynomial& p) {
    std::map<Monomial, Polynomial, MonomialGreater> out;
    for (const auto& [m, c] : p.terms()) {
        FactorList param_part, zpart;
        for (const auto& f : m.factors())
            (f.var.kind() == VarKind::Param ? param_part : zpart).push_back(f);
        out[Monomial(std::move(zpart))].add_term(Monomial(std::move(param_part)), c);
    }
    return out;
}

// Constraint rows over the shape coefficients forcing every remainder
// coefficient of every wheel instance to vanish. Entries may carry
// parameters.
PolyMatrix wheel_constraints(const ZetaKernel& k, const DimensionVector& n,
                             const std::vector<SymShape>& shapes) {
    PolyMatrix constraints(shapes.size());
    auto instances = wheel_instances(k, n);
    std::map<std::pair<size_t, Monomial>, size_t> row_of;
    for (size_t t = 0; t < instances.size(); ++t) {
        const auto& w = instances[t];
        std::map<Variable, Polynomial> sigma{
            {Variable::z(w.i, w.a),
             Polynomial::var(Variable::z(w.i, w.c)) + Polynomial::var(hbar())}};
        for (size_t s = 0; s < shapes.size(); ++s) {
            Polynomial sub = shape_polynomial(shapes[s], n).substitute(sigma);
            Polynomial rem = sub.divide(w.divisor).second;
            for (auto& [zmono, coeff] : group_by_z(rem)) {
                auto [it, inserted] = row_of.emplace(std::make_pair(t, zmono), constraints.row_count());
                if (inserted) constraints.add_row(std::vector<Polynomial>(shapes.size(), Polynomial()));
                constraints.rows[it->second][s] += coeff;
            }
        }
    }
    return constraints;
}

void realize_elements(GradedSubspace& sub, const KernelPtr& k) {
    for (const auto& row : sub.basis.rows) {
        Polynomial p;
        for (size_t s = 0; s < sub.shapes.size(); ++s)
            if (row[s] != 0) p += shape_polynomial(sub.shapes[s], sub.n).scaled(row[s]);
        sub.elements.emplace_back(k, sub.n, std::move(p));
    }
}

}  // namespace

std::vector<WheelInstance> wheel_instances(const ZetaKernel& k, const DimensionVector& n) {
    if (k.mode() != KernelMode::Tripled)
        throw PreconditionError("wheel conditions require a tripled kernel");
    std::vector<WheelInstance> out;
    int nv = k.vertex_count();
    Polynomial h = Polynomial::var(hbar());
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
            for (int a = 1; a <= n[i]; ++a) {
                for (int c = 1; c <= n[i]; ++c) {
                    if (a == c) continue;
                    for (int b = 1; b <= n[j]; ++b) {
                        if (i == j && (b == a || b == c)) continue;
                        Polynomial zjb = Polynomial::var(Variable::z(j, b));
                        Polynomial zic = Polynomial::var(Variable::z(i, c));
                        Polynomial div(1L);
                        for (const auto& arrow : k.quiver().arrows()) {
                            if (arrow.kind != ArrowKind::Original) continue;
                            if (arrow.source == i && arrow.target == j)
                                div = div * (zjb - zic - arrow.param);
                            if (arrow.source == j && arrow.target == i)
                                div = div * (zjb - zic - h + arrow.param);
                        }
                        if (div.is_constant()) continue;  // empty product: vacuous
                        out.push_back(WheelInstance{i, j, a, b, c, std::move(div)});
                    }
                }
            }
        }
    }
    return out;
}

bool wheel_member(const ShuffleElement& e) {
    auto instances = wheel_instances(*e.kernel(), e.dim());
    if (instances.empty()) return true;
    std::vector<uint8_t> ok(instances.size(), 0);
    parallel::for_range(instances.size(), [&](size_t t) {
        const auto& w = instances[t];
        std::map<Variable, Polynomial> sigma{
            {Variable::z(w.i, w.a),
             Polynomial::var(Variable::z(w.i, w.c)) + Polynomial::var(hbar())}};
        Polynomial sub = e.poly().substitute(sigma);
        ok[t] = sub.divide(w.divisor).second.is_zero() ? 1 : 0;
    });
    return std::all_of(ok.begin(), ok.end(), [](uint8_t v) { return v != 0; });
}

GradedSubspace wheel_subspace(const ZetaKernel& k, const DimensionVector& n, int delta,
                              std::mt19937_64& rng) {
    GradedSubspace out;
    out.kernel_fingerprint = k.fingerprint();
    out.n = n;
    out.d = -1;
    out.delta = delta;
    out.shapes = sym_shapes(n, delta);
    if (out.shapes.empty()) {
        out.basis = RatMatrix(0);
        return out;
    }
    PolyMatrix constraints = wheel_constraints(k, n, out.shapes);
    SolveResult solved = solve_nullspace(constraints, rng);
    out.basis = std::move(solved.kernel_basis);
    out.specialization_attempts = solved.specialization_attempts;
    out.escalated = solved.escalated;
    realize_elements(out, std::make_shared<const ZetaKernel>(k));
    return out;
}

ShuffleElement spherical_product(const KernelPtr& k, const SphericalWord& word) {
    if (word.letters.empty()) throw PreconditionError("spherical word must be nonempty");
    int nv = k->vertex_count();
    auto generator = [&](int vertex, int degree) {
        if (vertex < 0 || vertex >= nv) throw PreconditionError("spherical word vertex out of range");
        if (degree < 0) throw PreconditionError("spherical word degree must be nonnegative");
        Polynomial p = degree == 0 ? Polynomial(1L) : Polynomial::var(Variable::z(vertex, 1), degree);
        return ShuffleElement(k, DimensionVector::unit(nv, vertex), std::move(p));
    };
    ShuffleElement acc = generator(word.letters[0].first, word.letters[0].second);
    for (size_t t = 1; t < word.letters.size(); ++t)
        acc = shuffle_product(acc, generator(word.letters[t].first, word.letters[t].second));
    return acc;
}

std::vector<GradedSubspace> spherical_span(const KernelPtr& k, const std::vector<SphericalWord>& words,
                                           std::mt19937_64& rng) {
    std::map<std::pair<DimensionVector, int>, std::vector<Polynomial>> slices;
    for (const auto& w : words) {
        ShuffleElement p = spherical_product(k, w);
        if (p.is_zero()) continue;
        slices[{p.dim(), p.degree()}].push_back(p.poly());
    }
    std::vector<GradedSubspace> out;
    for (auto& [key, polys] : slices) {
        const auto& [n, delta] = key;
        GradedSubspace sub;
        sub.kernel_fingerprint = k->fingerprint();
        sub.n = n;
        sub.d = -1;
        sub.delta = delta;
        sub.shapes = sym_shapes(n, delta);
        // Rows: for each product, the coefficient of each shape's dominant
        // monomial (a polynomial in the parameters).
        PolyMatrix rows(sub.shapes.size());
        for (const auto& p : polys) {
            auto grouped = group_by_z(p);
            std::vector<Polynomial> row(sub.shapes.size());
            for (size_t s = 0; s < sub.shapes.size(); ++s) {
                FactorList factors;
                for (int i = 0; i < n.size(); ++i) {
                    const auto& part = sub.shapes[s].parts[static_cast<size_t>(i)];
                    for (size_t a = 0; a < part.size(); ++a)
                        factors.push_back(VarPow{Variable::z(i, static_cast<int>(a) + 1), part[a]});
                }
                auto it = grouped.find(Monomial(std::move(factors)));
                row[s] = it == grouped.end() ? Polynomial() : it->second;
            }
            rows.add_row(std::move(row));
        }
        // Reduced span with the double-specialization protocol.
        if (rows.is_constant()) {
            RatMatrix m = rows.constant_matrix();
            rref(m);
            sub.basis = std::move(m);
        } else {
            auto vars = rows.variables();
            int attempts = 0;
            bool done = false;
            while (!done && attempts < 3) {
                auto v1 = random_specialization(vars, rng);
                auto v2 = random_specialization(vars, rng);
                RatMatrix m1 = rows.specialized(v1), m2 = rows.specialized(v2);
                int r1 = rref(m1), r2 = rref(m2);
                ++attempts;
                if (r1 == r2) {
                    sub.basis = std::move(m1);
                    done = true;
                }
            }
            if (!done) {
                int exact = bareiss_rank(rows);
                sub.escalated = true;
                for (;;) {
                    auto v = random_specialization(vars, rng);
                    RatMatrix m = rows.specialized(v);
                    ++attempts;
                    if (rref(m) == exact) {
                        sub.basis = std::move(m);
                        break;
                    }
                }
            }
            sub.specialization_attempts = attempts;
        }
        realize_elements(sub, k);
        out.push_back(std::move(sub));
    }
    return out;
}

ConjectureReport conjecture_report(const Quiver& original, FiltrationContext& ctx,
                                   const DimensionVector& n_max, int delta_max, std::mt19937_64& rng) {
    const auto& kernel = ctx.kernel();
    if (kernel->mode() != KernelMode::Tripled)
        throw PreconditionError("conjecture report requires a tripled kernel");
    ConjectureReport report;
    for (const auto& n : dimension_range(n_max)) {
        ConjectureRow row;
        row.n = n;
        for (int delta = 0; delta <= delta_max; ++delta) {
            auto shapes = sym_shapes(n, delta);
            auto f1 = ctx.subspace(n, 1, delta);
            size_t f1_dim = f1->basis.row_count();
            if (f1_dim == 0 || shapes.empty()) {
                row.slices.push_back(ConjectureSlice{delta, 0});
                continue;
            }
            // Intersect: write E = sum_r x_r (F^1 basis row r) and impose the
            // wheel constraints on x; dim(F^1 cap S) = f1_dim - rank.
            PolyMatrix raw = wheel_constraints(*kernel, n, shapes);
            PolyMatrix composed(f1_dim);
            for (const auto& craw : raw.rows) {
                std::vector<Polynomial> crow(f1_dim);
                for (size_t r = 0; r < f1_dim; ++r) {
                    Polynomial acc;
                    for (size_t s = 0; s < shapes.size(); ++s)
                        if (f1->basis.rows[r][s] != 0 && !craw[s].is_zero())
                            acc += craw[s].scaled(f1->basis.rows[r][s]);
                    crow[r] = std::move(acc);
                }
                composed.add_row(std::move(crow));
            }
            RankResult solved = solve_rank(composed, rng);
            row.specialization_attempts += solved.specialization_attempts;
            row.escalated = row.escalated || solved.escalated;
            row.slices.push_back(ConjectureSlice{delta, static_cast<int>(f1_dim) - solved.rank});
        }
        for (const auto& s : row.slices) row.total_rank += s.rank;

        try {
            row.kac_value = kac_prediction_at_one(original, n);
            row.kac_available = true;
            row.verdict = (row.total_rank == row.kac_value) ? "consistent" : "inconsistent";
        } catch (const Error&) {
            row.kac_available = false;
            row.verdict = "not-applicable";
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace coha
