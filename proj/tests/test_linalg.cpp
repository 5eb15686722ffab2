#include <doctest.h>

#include "coha/linalg.hpp"
#include "helpers.hpp"

using namespace coha;

namespace {

RatRow row(std::initializer_list<long> xs) {
    RatRow r;
    for (long x : xs) r.emplace_back(x);
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("rref and rank") {
    RatMatrix m(3);
    m.add_row(row({1, 2, 3}));
    m.add_row(row({2, 4, 6}));
    m.add_row(row({0, 1, 1}));
    CHECK(rref(m) == 2);
    CHECK(m.rows[0] == row({1, 0, 1}));
    CHECK(m.rows[1] == row({0, 1, 1}));
    // RREF is idempotent (canonical reduced form).
    RatMatrix again = m;
    rref(again);
    CHECK(again.rows == m.rows);
}

TEST_CASE("nullspace is canonical and annihilates the matrix") {
    RatMatrix m(4);
    m.add_row(row({1, 1, 0, 0}));
    m.add_row(row({0, 0, 1, -1}));
    RatMatrix ker = nullspace(m);
    CHECK(ker.row_count() == 2);
    for (const auto& v : ker.rows)
        for (const auto& mr : m.rows) {
            Rational dot(0);
            for (size_t j = 0; j < 4; ++j) dot += mr[j] * v[j];
            CHECK(dot == 0);
        }
}

TEST_CASE("span builder tracks rank incrementally") {
    SpanBuilder span(3);
    CHECK(span.add(row({1, 2, 3})));
    CHECK(!span.add(row({2, 4, 6})));
    CHECK(span.add(row({0, 1, 0})));
    CHECK(span.rank() == 2);
    CHECK(in_row_space(span.matrix(), row({1, 3, 3})));
    CHECK(!in_row_space(span.matrix(), row({0, 0, 1})));
}

TEST_CASE("bareiss rank agrees with specialization on parametric matrices") {
    Polynomial h = Polynomial::var(Variable::param("h"));
    Polynomial u = Polynomial::var(Variable::param("u"));
    PolyMatrix m(3);
    m.add_row({h, u, h + u});
    m.add_row({h * h, h * u, h * h + h * u});  // h times the first row
    m.add_row({u, h, h + u});
    CHECK(bareiss_rank(m) == 2);

    std::mt19937_64 rng(42);
    RankResult r = solve_rank(m, rng);
    CHECK(r.rank == 2);

    SolveResult s = solve_nullspace(m, rng);
    CHECK(s.rank == 2);
    CHECK(s.kernel_basis.row_count() == 1);
}

TEST_CASE("constant systems are solved exactly without specialization") {
    PolyMatrix m(2);
    m.add_row({Polynomial(1L), Polynomial(2L)});
    std::mt19937_64 rng(1);
    SolveResult s = solve_nullspace(m, rng);
    CHECK(s.specialization_attempts == 0);
    CHECK(s.rank == 1);
    CHECK(s.kernel_basis.row_count() == 1);
    RatRow expect{Rational(1), Rational(-1, 2)};
    CHECK(s.kernel_basis.rows[0] == expect);
}

TEST_CASE("rank-zero and degenerate shapes") {
    RatMatrix empty(3);
    CHECK(rref(empty) == 0);
    RatMatrix ker = nullspace(empty);
    CHECK(ker.row_count() == 3);

    PolyMatrix none(0);
    none.add_row({});
    std::mt19937_64 rng(3);
    CHECK(solve_nullspace(none, rng).rank == 0);
}

TEST_SUITE_END();
