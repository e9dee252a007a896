#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isowitt/gate.hpp"
#include "testutil.hpp"

using namespace isowitt;
using testutil::int_poly;

namespace {

// degree-22 Salem-type polynomial with S(1) = -1, S(-1) = 1 (frozen from a
// small-coefficient scan; checked below against the numeric root oracle)
IntPoly salem22() {
    return int_poly({1, -1, -1, -1, 1, 0, 0, 1, 0, 0, -1, 1,
                     -1, 0, 0, 1, 0, 0, 1, -1, -1, -1, 1});
}

}  // namespace

TEST_CASE("main gate on the small Salem polynomial") {
    GateReport rep = check_conditions(testutil::lehmer_poly(), 9, 1);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(rep.c3);
    CHECK(rep.congruence_mod8);
    CHECK(rep.degree_match);
    CHECK(rep.m == 1);
    CHECK(rep.verdict);
    CHECK(rep.constructive);
    CHECK(rep.s_at_1 == -1);
    CHECK(rep.s_at_minus_1 == 1);

    GateReport bad = check_conditions(testutil::lehmer_poly(), 10, 0);
    CHECK(!bad.verdict);
    CHECK(!bad.c2);  // parity: m = 1 is odd, 10 and 0 are even
    CHECK(!bad.congruence_mod8);

    for (auto [r, s] : std::vector<std::pair<long, long>>{{1, 9}, {3, 7}, {5, 5}, {7, 3}}) {
        GateReport g = check_conditions(testutil::lehmer_poly(), r, s);
        CHECK(g.verdict == ((r - s) % 8 == 0));
        CHECK(g.c2);
    }
}

TEST_CASE("c3 failure is detected") {
    GateReport rep = check_conditions(int_poly({1, -3, 1}), 1, 1);
    CHECK(rep.c1);
    CHECK(rep.c2);
    CHECK(!rep.c3);  // |S(-1)| = 5 is not a square
    CHECK(!rep.verdict);
    CHECK(rep.s_at_minus_1 == 5);
}

TEST_CASE("cyclotomic inputs") {
    GateReport rep = check_conditions(testutil::phi30(), 8, 0);
    CHECK(rep.m == 0);
    CHECK(rep.c2);
    CHECK(rep.verdict);  // S(1) = S(-1) = 1, 8 == 0 mod 8
    GateReport rep2 = check_conditions(testutil::phi30(), 0, 8);
    CHECK(rep2.verdict);
    GateReport rep3 = check_conditions(testutil::phi30(), 4, 4);
    CHECK(rep3.congruence_mod8);
    CHECK(rep3.verdict);
}

TEST_CASE("identity powers short-circuit") {
    // (t - 1)^16 at signature (8, 8)
    IntPoly p16 = poly_pow(int_poly({-1, 1}), 16);
    GateReport rep = check_conditions(p16, 8, 8);
    CHECK(rep.verdict);
    CHECK(rep.m == 0);
    // (t + 1)^4 at (4, 0): no even unimodular lattice in that signature
    IntPoly q4 = poly_pow(int_poly({1, 1}), 4);
    CHECK(!check_conditions(q4, 4, 0).verdict);
    // (t - 1)^2 at (1, 1): the hyperbolic plane
    CHECK(check_conditions(poly_pow(int_poly({-1, 1}), 2), 1, 1).verdict);
    // reducible input with distinct factors is rejected upstream
    CHECK_THROWS_AS(check_conditions(int_poly({-1, 0, 1}), 1, 1), not_a_power);
}

TEST_CASE("gate symmetry and target membership") {
    auto rng = testutil::make_rng(61);
    std::vector<IntPoly> polys{testutil::lehmer_poly(), testutil::phi30(), testutil::phi12(),
                               int_poly({1, -3, 1})};
    for (const auto& s : polys) {
        auto targets = signature_targets(s);
        for (long r = 0; r <= s.degree(); ++r) {
            long sg = s.degree() - r;
            GateReport a = check_conditions(s, r, sg);
            GateReport b = check_conditions(s, sg, r);
            CHECK(a.verdict == b.verdict);
            if (a.verdict) CHECK(targets.count({r, sg}) == 1);
        }
    }
    (void)rng;
}

TEST_CASE("signature targets pinned") {
    using pairset = std::set<std::pair<long, long>>;
    CHECK(signature_targets(testutil::lehmer_poly()) ==
          pairset{{1, 9}, {3, 7}, {5, 5}, {7, 3}, {9, 1}});
    CHECK(signature_targets(testutil::phi30()) ==
          pairset{{0, 8}, {2, 6}, {4, 4}, {6, 2}, {8, 0}});
    CHECK(signature_targets(int_poly({1, -3, 1})) == pairset{{1, 1}});
    CHECK_THROWS_AS(signature_targets(int_poly({-1, 0, 1})), input_error);
}

TEST_CASE("k3 candidate test") {
    CHECK(!k3_check(testutil::lehmer_poly()));  // degree 10
    // 23rd cyclotomic: degree 22 but no root off the unit circle
    std::vector<Int> phi23(23, Int(1));
    CHECK(!k3_check(IntPoly(std::move(phi23))));
    IntPoly s22 = salem22();
    REQUIRE(s22.degree() == 22);
    CHECK(poly_eval(s22, Int(1)) == -1);
    CHECK(poly_eval(s22, Int(-1)) == 1);
    CHECK(testutil::numeric_count_strictly_outside(s22) == 1);
    CHECK(k3_check(s22));
    // same polynomial times a cyclotomic: reducible, fails
    CHECK(!k3_check(poly_mul(testutil::lehmer_poly(), poly_pow(int_poly({1, 1}), 12))));
}
