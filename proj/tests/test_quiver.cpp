#include <doctest.h>

#include "coha/quiver.hpp"
#include "helpers.hpp"

using namespace coha;

namespace {

Quiver jordan_quiver() {
    Arrow a;
    a.name = "a";
    a.source = a.target = 0;
    a.param = Polynomial::var(Variable::param("u"));
    return Quiver({"v"}, {a});
}

Quiver a2_quiver() {
    Arrow a;
    a.name = "a";
    a.source = 0;
    a.target = 1;
    a.param = Polynomial::var(Variable::param("u"));
    return Quiver({"v", "w"}, {a});
}

}  // namespace

TEST_SUITE_BEGIN("quiver");

TEST_CASE("build_double examples") {
    Quiver dj = build_double(jordan_quiver());
    CHECK(dj.vertex_count() == 1);
    CHECK(dj.arrows().size() == 2);
    Polynomial h = Polynomial::var(hbar()), u = Polynomial::var(Variable::param("u"));
    CHECK(dj.arrows()[1].param == h - u);
    CHECK(dj.arrows()[1].kind == ArrowKind::Reverse);

    Quiver da = build_double(a2_quiver());
    CHECK(da.arrows().size() == 2);
    CHECK(da.arrows()[1].source == 1);
    CHECK(da.arrows()[1].target == 0);

    Quiver empty({"v"}, {});
    CHECK(build_double(empty).arrows().empty());
}

TEST_CASE("build_triple examples") {
    Quiver tj = build_triple(jordan_quiver());
    CHECK(tj.vertex_count() == 1);
    CHECK(tj.arrows().size() == 3);
    CHECK(tj.is_tripled());

    Quiver ta = build_triple(a2_quiver());
    CHECK(ta.arrows().size() == 4);  // 2 cross arrows + 2 loops
    int omega = 0;
    for (const auto& a : ta.arrows())
        if (a.kind == ArrowKind::Omega) ++omega;
    CHECK(omega == 2);

    Quiver pair({"v", "w"}, {});
    Quiver tp = build_triple(pair);
    CHECK(tp.arrows().size() == 2);  // one loop per vertex
}

TEST_CASE("zeta kernel examples") {
    // Arrowless vertex, trivial torus: zeta = -1/x.
    auto ctx = coha::testing::arrowless();
    const ZetaKernel& k = *ctx.kernel;
    CHECK(k.numerator(0, 0) == Polynomial(-1L));
    CHECK(k.delta(0, 0) == 1);
    CHECK(k.sharp(0, 0) == -1);

    // Jordan, trivial torus: zeta = 1 as N = x over x.
    auto jd = coha::testing::jordan();
    CHECK(jd.kernel->sharp(0, 0) == 0);
    CHECK(jd.kernel->numerator(0, 0) == Polynomial::var(Variable::formal_x()));

    // Tripled Jordan, generic: N = (x-h)(-x-u)(-x-h+u), #_11 = 2.
    auto tj = coha::testing::tripled_jordan();
    Polynomial x = Polynomial::var(Variable::formal_x());
    Polynomial h = Polynomial::var(hbar());
    Polynomial u = Polynomial::var(Variable::param("u"));
    CHECK(tj.kernel->numerator(0, 0) == (x - h) * (-x - u) * (-x - h + u));
    CHECK(tj.kernel->delta(0, 0) == 1);
    CHECK(tj.kernel->sharp(0, 0) == 2);
}

TEST_CASE("non-symmetric quiver rejected with the offending pair") {
    Quiver bad = a2_quiver();  // one arrow v->w, none back
    try {
        zeta_kernel(bad, KernelMode::ZeroPotential, TorusMode::Trivial);
        CHECK(false);
    } catch (const PreconditionError& e) {
        std::string msg = e.what();
        CHECK(msg.find("v") != std::string::npos);
        CHECK(msg.find("w") != std::string::npos);
    }
}

TEST_CASE("tripled mode requires a build_triple output") {
    CHECK_THROWS_AS(zeta_kernel(jordan_quiver(), KernelMode::Tripled, TorusMode::Generic),
                    PreconditionError);
}

TEST_CASE("euler form examples") {
    auto jd = coha::testing::jordan();
    DimensionVector one({std::vector<int>{1}}), two({std::vector<int>{2}});
    CHECK(jd.kernel->euler_form(one, one) == 0);

    auto av = coha::testing::arrowless();
    CHECK(av.kernel->euler_form(one, one) == 1);

    auto tj = coha::testing::tripled_jordan();
    CHECK(tj.kernel->euler_form(one, two) == -4);
}

TEST_CASE("euler form symmetry and bilinearity, exhaustive to |n| <= 4") {
    for (const auto& ctx : coha::testing::five_test_quivers()) {
        int nv = ctx.kernel->vertex_count();
        std::vector<DimensionVector> vectors;
        std::vector<int> cur(static_cast<size_t>(nv), 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == nv) {
                DimensionVector v{std::vector<int>(cur)};
                if (v.total() <= 4) vectors.push_back(v);
                return;
            }
            for (int x = 0; x <= 4; ++x) {
                cur[static_cast<size_t>(i)] = x;
                rec(i + 1);
            }
            cur[static_cast<size_t>(i)] = 0;
        };
        rec(0);
        for (const auto& m : vectors)
            for (const auto& n : vectors) {
                CHECK(ctx.kernel->euler_form(m, n) == ctx.kernel->euler_form(n, m));
                for (const auto& m2 : vectors) {
                    if ((m + m2).total() > 4) continue;
                    CHECK(ctx.kernel->euler_form(m + m2, n) ==
                          ctx.kernel->euler_form(m, n) + ctx.kernel->euler_form(m2, n));
                }
            }
    }
}

TEST_CASE("kernel leading coefficient and tripled arrow-count cross-check") {
    for (const auto& ctx :
         {coha::testing::tripled_jordan(), coha::testing::tripled_a2(), coha::testing::jordan(),
          coha::testing::two_loop(), coha::testing::sym_a2()}) {
        const ZetaKernel& k = *ctx.kernel;
        Variable x = Variable::formal_x();
        for (int i = 0; i < k.vertex_count(); ++i)
            for (int j = 0; j < k.vertex_count(); ++j) {
                const Polynomial& n = k.numerator(i, j);
                int deg = std::max(0, n.degree_of(x));
                // Pure x^deg coefficient is (-1)^{#_ij}.
                Rational lead(0);
                for (const auto& [mo, c] : n.terms())
                    if (mo.degree_of(x) == deg && mo.total_degree() == deg) lead = c;
                CHECK(lead == Rational(k.sharp(i, j) % 2 == 0 ? 1 : -1));
                // #_ij = (arrows i->j in the built quiver) - delta_ij.
                if (k.mode() == KernelMode::Tripled)
                    CHECK(k.sharp(i, j) == k.quiver().arrow_count(i, j) - k.delta(i, j));
            }
    }
}

TEST_CASE("trivial torus kernels carry no parameters") {
    for (const auto& ctx : {coha::testing::jordan(), coha::testing::two_loop(), coha::testing::sym_a2()})
        CHECK(!ctx.kernel->has_parameters());
    CHECK(coha::testing::tripled_jordan().kernel->has_parameters());
}

TEST_CASE("kernel specialization keeps degrees") {
    auto tj = coha::testing::tripled_jordan();
    auto params = tj.kernel->parameters();
    std::map<Variable, Rational> values;
    long v = 5;
    for (const auto& p : params) values.emplace(p, Rational(v += 2));
    ZetaKernel s = tj.kernel->specialized(values);
    CHECK(s.sharp(0, 0) == tj.kernel->sharp(0, 0));
    CHECK(!s.has_parameters());
    CHECK(s.fingerprint() != tj.kernel->fingerprint());
}

TEST_SUITE_END();
