#include <doctest.h>

#include "coha/wheel.hpp"
#include "helpers.hpp"

using namespace coha;
using namespace coha::testing;

TEST_SUITE_BEGIN("wheel");

TEST_CASE("wheel instances require a tripled kernel and three slots when i = j") {
    auto jd = jordan();
    DimensionVector n3({std::vector<int>{3}});
    CHECK_THROWS_AS(wheel_instances(*jd.kernel, n3), PreconditionError);

    auto tj = tripled_jordan();
    CHECK(wheel_instances(*tj.kernel, DimensionVector({std::vector<int>{1}})).empty());
    CHECK(wheel_instances(*tj.kernel, DimensionVector({std::vector<int>{2}})).empty());
    CHECK(wheel_instances(*tj.kernel, n3).size() == 6);
}

TEST_CASE("wheel membership examples") {
    auto tj = tripled_jordan();
    // V1: vacuous.
    CHECK(wheel_member(ShuffleElement(tj.kernel, DimensionVector({std::vector<int>{1}}),
                                      Polynomial::var(Variable::z(0, 1), 3))));
    // The constant 1 in V3 fails (a nonzero constant is not divisible by a
    // nonconstant linear form).
    CHECK(!wheel_member(ShuffleElement(tj.kernel, DimensionVector({std::vector<int>{3}}),
                                       Polynomial(1L))));
    // Spherical products land in S.
    SphericalWord w{{{0, 0}, {0, 0}, {0, 1}}};
    ShuffleElement prod = spherical_product(tj.kernel, w);
    CHECK(!prod.is_zero());
    CHECK(wheel_member(prod));
}

TEST_CASE("wheel subspace slices") {
    auto tj = tripled_jordan();
    std::mt19937_64 rng(2024);
    // n = 1: vacuous conditions, full slice.
    auto s1 = wheel_subspace(*tj.kernel, DimensionVector({std::vector<int>{1}}), 2, rng);
    CHECK(s1.dim() == 1);
    // n = 2: still vacuous (three distinct slots needed at i = j).
    auto s2 = wheel_subspace(*tj.kernel, DimensionVector({std::vector<int>{2}}), 1, rng);
    CHECK(s2.dim() == static_cast<int>(sym_shapes(DimensionVector({std::vector<int>{2}}), 1).size()));
    // n = 3, delta = 0: constants fail.
    auto s3 = wheel_subspace(*tj.kernel, DimensionVector({std::vector<int>{3}}), 0, rng);
    CHECK(s3.dim() == 0);
}

TEST_CASE("spherical products with |n| <= 3 and degrees <= 3 satisfy the wheel conditions") {
    for (const auto& qctx : {tripled_jordan(), tripled_a2()}) {
        int nv = qctx.kernel->vertex_count();
        std::vector<SphericalWord> words;
        std::function<void(SphericalWord&, int)> extend = [&](SphericalWord& w, int left) {
            if (!w.letters.empty()) words.push_back(w);
            if (left == 0) return;
            for (int v = 0; v < nv; ++v)
                for (int deg = 0; deg <= 3; ++deg) {
                    w.letters.emplace_back(v, deg);
                    extend(w, left - 1);
                    w.letters.pop_back();
                }
        };
        SphericalWord w;
        extend(w, 3);
        int checked = 0;
        for (const auto& word : words) {
            int total_deg = 0;
            for (auto& [v, d] : word.letters) total_deg += d;
            if (total_deg > 3) continue;
            ShuffleElement p = spherical_product(qctx.kernel, word);
            CHECK(wheel_member(p));
            ++checked;
        }
        CHECK(checked > 20);
    }
}

TEST_CASE("S is closed under the shuffle product on spherical samples") {
    auto tj = tripled_jordan();
    std::vector<ShuffleElement> pool;
    for (int d1 = 0; d1 <= 2; ++d1) {
        pool.push_back(spherical_product(tj.kernel, SphericalWord{{{0, d1}}}));
        pool.push_back(spherical_product(tj.kernel, SphericalWord{{{0, 0}, {0, d1}}}));
    }
    std::mt19937_64 rng(55);
    for (int t = 0; t < 6; ++t) {
        const auto& e = pool[rng() % pool.size()];
        const auto& f = pool[rng() % pool.size()];
        if (e.dim().total() + f.dim().total() > 4) continue;
        auto p = shuffle_product(e, f);
        CHECK(wheel_member(p));
    }
}

TEST_CASE("u operator preserves wheel slices") {
    auto tj = tripled_jordan();
    std::mt19937_64 rng(77);
    DimensionVector n3({std::vector<int>{3}});
    for (int delta = 1; delta <= 3; ++delta) {
        auto sub = wheel_subspace(*tj.kernel, n3, delta, rng);
        for (const auto& e : sub.elements) CHECK(wheel_member(u_operator(e)));
    }
}

TEST_CASE("wheel subspace ranks are stable across independent specializations") {
    auto tj = tripled_jordan();
    DimensionVector n3({std::vector<int>{3}});
    for (int delta = 0; delta <= 3; ++delta) {
        std::mt19937_64 rng_a(1), rng_b(987654321);
        auto sa = wheel_subspace(*tj.kernel, n3, delta, rng_a);
        auto sb = wheel_subspace(*tj.kernel, n3, delta, rng_b);
        CHECK(sa.dim() == sb.dim());
    }
}

TEST_CASE("conjecture report is consistent for the tripled Jordan quiver") {
    auto tj = tripled_jordan();
    FiltrationContext ctx(tj.kernel);
    std::mt19937_64 rng(5);
    auto report = conjecture_report(tj.doc.base, ctx, DimensionVector({std::vector<int>{2}}), 4, rng);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.total_rank == 1);
        CHECK(row.kac_available);
        CHECK(row.kac_value == 1);
        CHECK(row.verdict == "consistent");
    }
}

TEST_CASE("conjecture report on the tripled arrowless vertex") {
    auto ctx = build_context_from_text("vertices: v\nbuild: triple\ntorus: generic\n");
    FiltrationContext fc(ctx.kernel);
    std::mt19937_64 rng(5);
    auto report = conjecture_report(ctx.doc.base, fc, DimensionVector({std::vector<int>{1}}), 4, rng);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].total_rank == 1);
    CHECK(report.rows[0].kac_value == 1);
    CHECK(report.rows[0].verdict == "consistent");
}

TEST_SUITE_END();
