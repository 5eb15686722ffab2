// Acceptance suite: one pass/fail line per criterion, nonzero exit when a
// hard criterion fails. Criterion 9 is report-only by design.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <thread>
#include <sstream>
#include <vector>

#include "coha/document.hpp"
#include "coha/filtration.hpp"
#include "coha/kac.hpp"
#include "coha/parallel.hpp"
#include "coha/wheel.hpp"
#include "helpers.hpp"

using namespace coha;
using namespace coha::testing;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    bool report_only;
    std::string detail;
    double seconds;
};

std::vector<Outcome> g_outcomes;

template <typename Fn>
void criterion(int id, const std::string& name, bool report_only, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        pass = false;
        detail += std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_outcomes.push_back(Outcome{id, name, pass, report_only, detail, secs});
    std::printf("CRITERION %2d: %s — %s (%.1fs)%s\n", id,
                report_only ? (pass ? "REPORT" : "REPORT") : (pass ? "PASS" : "FAIL"), name.c_str(),
                secs, detail.empty() ? "" : ("\n    " + detail).c_str());
    std::fflush(stdout);
}

struct NamedQuiver {
    std::string name;
    CohaContext ctx;
};

std::vector<NamedQuiver> test_quivers() {
    std::vector<NamedQuiver> out;
    out.push_back({"arrowless", arrowless()});
    out.push_back({"jordan", jordan()});
    out.push_back({"two-loop", two_loop()});
    out.push_back({"sym-a2", sym_a2()});
    out.push_back({"tripled-jordan", tripled_jordan()});
    return out;
}

// ---------- criterion bodies ----------

bool c1_rank_one_slices(std::string& detail) {
    int cells = 0;
    for (const auto& [name, ctx] : test_quivers()) {
        int nv = ctx.kernel->vertex_count();
        FiltrationContext fc(ctx.kernel);
        for (int i = 0; i < nv; ++i) {
            DimensionVector unit = DimensionVector::unit(nv, i);
            for (int d = 1; d <= 7; ++d)
                for (int delta = 0; delta <= 4; ++delta) {
                    int expect = delta <= (d - 1) / 2 ? 1 : 0;
                    if (fc.subspace(unit, d, delta)->dim() != expect) {
                        detail = name + " unit slice (d=" + std::to_string(d) +
                                 ", delta=" + std::to_string(delta) + ") has wrong dimension";
                        return false;
                    }
                    ++cells;
                }
        }
    }
    detail = std::to_string(cells) + " unit-vector cells";
    return true;
}

bool c2_oracle_equivalence(std::string& detail) {
    long checked = 0;
    for (const auto& [name, ctx] : test_quivers()) {
        FiltrationContext fc(ctx.kernel);
        int nv = ctx.kernel->vertex_count();
        std::vector<int> cap(static_cast<size_t>(nv), 3);
        for (const auto& n : dimension_range(DimensionVector(cap))) {
            if (n.total() > 3) continue;
            for (int delta = 0; delta <= 4; ++delta)
                for (const auto& shape : sym_shapes(n, delta)) {
                    ShuffleElement e(ctx.kernel, n, shape_polynomial(shape, n));
                    for (int d = 1; d <= 5; ++d) {
                        if (member_direct(e, d) != fc.member_recursive(e, d)) {
                            detail = name + ": oracle mismatch at n=(" + n.to_string() +
                                     "), delta=" + std::to_string(delta) + ", d=" + std::to_string(d);
                            return false;
                        }
                        ++checked;
                    }
                }
        }
    }
    detail = std::to_string(checked) + " (element, d) membership pairs";
    return true;
}

// Pools of computed-basis elements tagged with their filtration index.
std::vector<std::pair<ShuffleElement, int>> basis_pool(FiltrationContext& fc, int total_cap) {
    std::vector<std::pair<ShuffleElement, int>> pool;
    int nv = fc.kernel()->vertex_count();
    std::vector<int> cap(static_cast<size_t>(nv), 2);
    for (const auto& n : dimension_range(DimensionVector(cap))) {
        if (n.total() > total_cap) continue;
        for (int d = 1; d <= 5; ++d)
            for (int delta = 0; delta <= 3; ++delta) {
                auto sub = fc.subspace(n, d, delta);
                for (const auto& e : sub->elements) pool.emplace_back(e, d);
            }
    }
    return pool;
}

bool c3_closure(std::string& detail) {
    std::mt19937_64 rng(20250809);
    long pairs = 0, ushifts = 0;
    for (const auto& [name, ctx] : test_quivers()) {
        FiltrationContext fc(ctx.kernel);
        auto pool = basis_pool(fc, 2);
        if (pool.empty()) continue;
        // Every pool element: u_operator maps F^d to F^{d+2}.
        for (const auto& [e, d] : pool) {
            if (!member_direct(u_operator(e), d + 2)) {
                detail = name + ": u operator left F^{d+2}";
                return false;
            }
            ++ushifts;
        }
        for (int t = 0; t < 24; ++t) {
            const auto& [e, d1] = pool[rng() % pool.size()];
            const auto& [f, d2] = pool[rng() % pool.size()];
            if (e.dim().total() + f.dim().total() > 4) continue;
            if (!member_direct(shuffle_product(e, f), d1 + d2)) {
                detail = name + ": product left F^{d+d'}";
                return false;
            }
            if (!member_direct(super_bracket(e, f), d1 + d2 - 1)) {
                detail = name + ": bracket left F^{d+d'-1}";
                return false;
            }
            ++pairs;
        }
    }
    detail = std::to_string(pairs) + " random pairs, " + std::to_string(ushifts) + " u-shifts";
    return pairs >= 100;
}

bool c4_algebra_sanity(std::string& detail) {
    std::mt19937_64 rng(424242);
    long triples = 0, derivations = 0, products = 0;
    std::string failure;
    for (const auto& [name, ctx] : test_quivers()) {
        int nv = ctx.kernel->vertex_count();
        auto unit_dim = [&](int budget) {
            std::vector<int> v(static_cast<size_t>(nv), 0);
            int total = 1 + static_cast<int>(rng() % static_cast<unsigned long>(budget));
            for (int i = 0; i < total; ++i) v[rng() % static_cast<size_t>(nv)] += 1;
            return DimensionVector(v);
        };
        // Draw all samples sequentially (deterministic), verify in parallel.
        std::vector<std::array<ShuffleElement, 3>> assoc_samples;
        for (int t = 0; t < 50; ++t)
            assoc_samples.push_back({random_element(ctx, unit_dim(2), 2, rng),
                                     random_element(ctx, unit_dim(1), 2, rng),
                                     random_element(ctx, unit_dim(1), 2, rng)});
        std::vector<std::array<ShuffleElement, 2>> deriv_samples;
        for (int t = 0; t < 50; ++t)
            deriv_samples.push_back({random_element(ctx, unit_dim(2), 2, rng),
                                     random_element(ctx, unit_dim(1), 2, rng)});
        std::vector<uint8_t> assoc_ok(assoc_samples.size(), 0), deriv_ok(deriv_samples.size(), 0);
        parallel::for_range(assoc_samples.size(), [&](size_t i) {
            const auto& [e, f, g] = assoc_samples[i];
            auto left = shuffle_product(shuffle_product(e, f), g);
            auto right = shuffle_product(e, shuffle_product(f, g));
            assoc_ok[i] = left.poly() == right.poly() ? 1 : 0;
        });
        parallel::for_range(deriv_samples.size(), [&](size_t i) {
            const auto& [e, f] = deriv_samples[i];
            auto lhs = u_operator(shuffle_product(e, f));
            auto rhs = shuffle_product(u_operator(e), f).poly() +
                       shuffle_product(e, u_operator(f)).poly();
            deriv_ok[i] = lhs.poly() == rhs ? 1 : 0;
        });
        for (uint8_t ok : assoc_ok) {
            if (!ok) failure = name + ": associativity failed";
            ++triples;
            products += 4;
        }
        for (uint8_t ok : deriv_ok) {
            if (!ok) failure = name + ": derivation identity failed";
            ++derivations;
            products += 3;
        }
    }
    if (!failure.empty()) {
        detail = failure;
        return false;
    }
    // Every product above ran exact division with zero remainder (a nonzero
    // remainder throws and fails the criterion).
    detail = std::to_string(triples) + " triples, " + std::to_string(derivations) +
             " derivation pairs, " + std::to_string(products) + " exact divisions";
    return true;
}

bool c5_bps_dimensions(std::string& detail) {
    for (const auto& [name, ctx] : {std::pair<std::string, CohaContext>{"jordan", jordan()},
                                    {"arrowless", arrowless()}}) {
        FiltrationContext fc(ctx.kernel);
        for (int total = 1; total <= 3; ++total) {
            DimensionVector n({std::vector<int>{total}});
            auto bps = fc.bps_basis(n, 6);
            for (int delta = 0; delta <= 6; ++delta) {
                int expect = (total == 1 && delta == 0) ? 1 : 0;
                if (bps[static_cast<size_t>(delta)]->dim() != expect) {
                    detail = name + ": F^1 dimension wrong at n=(" + std::to_string(total) +
                             "), delta=" + std::to_string(delta);
                    return false;
                }
            }
        }
    }
    detail = "F^1 concentrated at (n,delta) = ((1),0) for jordan and arrowless";
    return true;
}

bool c6_pbw(std::string& detail) {
    long cells = 0;
    for (const auto& [name, ctx] : {std::pair<std::string, CohaContext>{"jordan", jordan()},
                                    {"arrowless", arrowless()}}) {
        FiltrationContext fc(ctx.kernel);
        SignTwist twist = SignTwist::canonical(ctx.kernel);
        DimensionVector n_max({std::vector<int>{3}});
        int d_max = 1;
        for (const auto& n : dimension_range(n_max))
            for (int delta = 0; delta <= 4; ++delta)
                d_max = std::max(d_max, stabilization_threshold(*ctx.kernel, n, delta));
        PBWReport report = pbw_check(fc, twist, n_max, 4, d_max);
        for (const auto& cell : report.cells) {
            if (!cell.pass) {
                detail = name + ": PBW cell failed at n=(" + cell.n.to_string() + "), delta=" +
                         std::to_string(cell.delta) + ", d=" + std::to_string(cell.d) + " (dim=" +
                         std::to_string(cell.dim) + ", count=" + std::to_string(cell.count) +
                         ", rank=" + std::to_string(cell.rank) + ")";
                return false;
            }
            ++cells;
        }
    }
    detail = std::to_string(cells) + " (n, delta, d) cells, bijection in each";
    return true;
}

bool c7_wheel(std::string& detail) {
    long products = 0;
    for (const auto& [name, ctx] : {std::pair<std::string, CohaContext>{"tripled-jordan",
                                                                        tripled_jordan()},
                                    {"tripled-a2", tripled_a2()}}) {
        int nv = ctx.kernel->vertex_count();
        std::vector<SphericalWord> words;
        SphericalWord cur;
        std::function<void(int)> extend = [&](int left) {
            if (!cur.letters.empty()) words.push_back(cur);
            if (left == 0) return;
            for (int v = 0; v < nv; ++v)
                for (int deg = 0; deg <= 3; ++deg) {
                    cur.letters.emplace_back(v, deg);
                    extend(left - 1);
                    cur.letters.pop_back();
                }
        };
        extend(3);
        for (const auto& word : words) {
            ShuffleElement p = spherical_product(ctx.kernel, word);
            ++products;
            if (!wheel_member(p)) {
                std::ostringstream w;
                for (auto& [v, d] : word.letters) w << " z(" << v + 1 << ")^" << d;
                detail = name + ": spherical product failed the wheel conditions:" + w.str();
                return false;
            }
        }
    }
    // The constant 1 in V_3 over the tripled Jordan quiver fails.
    auto tj = tripled_jordan();
    ShuffleElement one3(tj.kernel, DimensionVector({std::vector<int>{3}}), Polynomial(1L));
    if (wheel_member(one3)) {
        detail = "constant 1 in V_3 unexpectedly satisfies the wheel conditions";
        return false;
    }
    detail = std::to_string(products) + " spherical products in S; constant excluded";
    return true;
}

bool c8_kac(std::string& detail) {
    // Kac counting needs only the quiver, not a (symmetric) kernel.
    auto loops = [&](int g) {
        std::string doc = "vertices: v\n";
        for (int i = 0; i < g; ++i)
            doc += "arrow a" + std::to_string(i) + ": v -> v\n";
        return parse_quiver_document(doc).base;
    };
    // g-loop vertex at n=1: A(q) = q^g.
    for (int g = 0; g <= 2; ++g)
        for (int q : {2, 3}) {
            KacCount c = abs_indec_count(loops(g), DimensionVector({std::vector<int>{1}}), q);
            long expect = 1;
            for (int i = 0; i < g; ++i) expect *= q;
            if (c.absolutely_indecomposable != expect) {
                detail = "g-loop count wrong at g=" + std::to_string(g) + ", q=" + std::to_string(q);
                return false;
            }
        }
    // Jordan at n=2: counts 2 and 3 over F_2, F_3, i.e. A(q) = q.
    Quiver jd = loops(1);
    if (abs_indec_count(jd, DimensionVector({std::vector<int>{2}}), 2).absolutely_indecomposable != 2 ||
        abs_indec_count(jd, DimensionVector({std::vector<int>{2}}), 3).absolutely_indecomposable != 3) {
        detail = "jordan n=2 counts are not (2, 3) over (F_2, F_3)";
        return false;
    }
    // A2 at (1,1): A(q) = 1 for every q.
    Quiver a2 = parse_quiver_document("vertices: v w\narrow a: v -> w\n").base;
    for (int q : {2, 3, 4, 5})
        if (abs_indec_count(a2, DimensionVector({std::vector<int>{1, 1}}), q)
                .absolutely_indecomposable != 1) {
            detail = "a2 (1,1) count differs from 1 at q=" + std::to_string(q);
            return false;
        }
    detail = "q^g, q and 1 patterns all match";
    return true;
}

bool c9_conjecture_report(std::string& detail) {
    auto tj = tripled_jordan();
    std::ostringstream lines;
    bool consistent = true;
    for (unsigned long long seed : {11ull, 20250809ull}) {
        FiltrationContext fc(tj.kernel);
        std::mt19937_64 rng(seed);
        auto report = conjecture_report(tj.doc.base, fc, DimensionVector({std::vector<int>{2}}), 4, rng);
        for (const auto& row : report.rows) {
            lines << "seed=" << seed << " n=(" << row.n.to_string() << ") total=" << row.total_rank;
            if (row.kac_available) lines << " kac1=" << row.kac_value;
            lines << " verdict=" << row.verdict << "; ";
            if (row.verdict != "consistent") consistent = false;
        }
    }
    detail = lines.str() + (consistent ? "(window delta <= 4)" : "(inconsistency reported, not asserted)");
    // Report-only: always "passes"; the verdict content is in the detail.
    return true;
}

bool c10_gradedness_and_stabilization(std::string& detail) {
    std::mt19937_64 rng(1009);
    // Gradedness on random inhomogeneous elements.
    long graded_checked = 0;
    for (const auto& [name, ctx] : test_quivers()) {
        int nv = ctx.kernel->vertex_count();
        for (int t = 0; t < 10; ++t) {
            std::vector<int> nvec(static_cast<size_t>(nv), 0);
            nvec[rng() % static_cast<size_t>(nv)] = 2;
            DimensionVector n(nvec);
            auto e = random_element(ctx, n, 3, rng);
            if (e.is_zero()) continue;
            int d = 1 + static_cast<int>(rng() % 7);
            bool whole = member_direct(e, d);
            bool parts = true;
            for (int delta = 0; delta <= 3; ++delta) {
                Polynomial comp;
                for (const auto& [m, c] : e.poly().terms())
                    if (m.total_degree() == delta) comp.add_term(m, c);
                if (!member_direct(ShuffleElement(ctx.kernel, n, comp), d)) parts = false;
            }
            if (whole != parts) {
                detail = name + ": gradedness violated";
                return false;
            }
            ++graded_checked;
        }
    }

    // Stabilization. The exact threshold is
    //   d*(n, delta) = 2 delta + max over partitions of (k + 2 sum_{a<b}(n^a,n^b));
    // the all-singleton closed form 2 delta + |n| + 2 sum_{a<b}(s_ia, s_ib)
    // coincides with it exactly when the singleton partition is binding
    // (pairwise Euler values >= 0, e.g. jordan and arrowless). Both are
    // checked; quivers where the closed form is not binding are noted.
    std::ostringstream notes;
    for (const auto& [name, ctx] : test_quivers()) {
        FiltrationContext fc(ctx.kernel);
        int nv = ctx.kernel->vertex_count();
        std::vector<int> cap(static_cast<size_t>(nv), 2);
        for (const auto& n : dimension_range(DimensionVector(cap))) {
            if (n.total() > 2) continue;
            // Closed-form singleton bound for this n.
            std::vector<DimensionVector> singleton;
            for (int i = 0; i < nv; ++i)
                for (int c = 0; c < n[i]; ++c) singleton.push_back(DimensionVector::unit(nv, i));
            long pairsum = 0;
            for (size_t a = 0; a < singleton.size(); ++a)
                for (size_t b = a + 1; b < singleton.size(); ++b)
                    pairsum += ctx.kernel->euler_form(singleton[a], singleton[b]);
            for (int delta = 0; delta <= 3; ++delta) {
                int full = static_cast<int>(sym_shapes(n, delta).size());
                int tight = stabilization_threshold(*ctx.kernel, n, delta);
                long closed_form = 2L * delta + n.total() + 2 * pairsum;
                // Exact threshold: equality holds iff d >= d*.
                for (int d = 1; d <= tight + 2; ++d) {
                    bool is_full = fc.subspace(n, d, delta)->dim() == full;
                    if (is_full != (d >= tight)) {
                        detail = name + ": stabilization threshold wrong at n=(" + n.to_string() +
                                 "), delta=" + std::to_string(delta) + ", d=" + std::to_string(d);
                        return false;
                    }
                }
                if (closed_form == tight) {
                    // The stated closed form is binding; already verified above.
                } else if (name == "jordan" || name == "arrowless") {
                    detail = name + ": singleton closed form expected to be binding but is not";
                    return false;
                } else if (delta == 0 && notes.str().find(name) == std::string::npos) {
                    notes << name << " n=(" << n.to_string() << "): closed-form " << closed_form
                          << " vs exact " << tight << "; ";
                }
            }
        }
    }
    detail = std::to_string(graded_checked) + " inhomogeneous elements; exact thresholds verified";
    if (!notes.str().empty())
        detail += "\n    note: singleton closed form not binding for quivers with negative Euler "
                  "pairs: " +
                  notes.str();
    return graded_checked >= 50;
}

}  // namespace

int main() {
    unsigned hw = std::thread::hardware_concurrency();
    parallel::set_jobs(static_cast<int>(std::min(8u, hw == 0 ? 1u : hw)));
    std::printf("acceptance suite: exact shuffle-algebra checks across the five test quivers\n");
    criterion(1, "rank-one slices of F^d at unit dimension vectors", false, c1_rank_one_slices);
    criterion(2, "direct and recursive membership oracles agree", false, c2_oracle_equivalence);
    criterion(3, "closure: products, brackets and u-shifts stay filtered", false, c3_closure);
    criterion(4, "associativity, derivation identity, exact divisions", false, c4_algebra_sanity);
    criterion(5, "BPS dimension pattern for jordan and arrowless", false, c5_bps_dimensions);
    criterion(6, "PBW monomials biject onto filtration slices", false, c6_pbw);
    criterion(7, "spherical products satisfy the wheel conditions", false, c7_wheel);
    criterion(8, "finite-field Kac counts match closed forms", false, c8_kac);
    criterion(9, "conjecture report: F^1 cap S vs Kac prediction", true, c9_conjecture_report);
    criterion(10, "gradedness and full-slice stabilization", false, c10_gradedness_and_stabilization);

    bool ok = true;
    for (const auto& o : g_outcomes)
        if (!o.pass && !o.report_only) ok = false;
    std::printf("acceptance: %s\n", ok ? "ALL HARD CRITERIA PASS" : "FAILURES PRESENT");
    return ok ? 0 : 1;
}
