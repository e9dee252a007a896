#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "doctest.h"
#include "isowitt/hermitian.hpp"
#include "isowitt/matrix.hpp"
#include "isowitt/modpoly.hpp"
#include "isowitt/qform.hpp"
#include "testutil.hpp"

using namespace isowitt;
using namespace isowitt::testutil;

namespace {

AlgElement elem(const Algebra& e, const std::vector<long>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return e.element(QPoly(std::move(c)));
}

AlgElement random_element(const Algebra& e, std::mt19937_64& rng) {
    std::vector<Rat> c;
    for (long i = 0; i < e.dim(); ++i) c.emplace_back(rand_range(rng, -4, 4));
    return e.element(QPoly(std::move(c)));
}

LocalPlace only_place(const SplittingData& sp) {
    REQUIRE(sp.places.size() == 1);
    return sp.places[0];
}

}  // namespace

TEST_CASE("algebra arithmetic in Q[t]/(S)") {
    Algebra e(int_poly({1, -3, 1}));  // alpha^2 = 3 alpha - 1
    AlgElement a = e.alpha();

    CHECK(e.mul(a, a) == elem(e, {-1, 3}));
    CHECK(e.add(a, e.one()) == elem(e, {1, 1}));
    CHECK(e.trace(e.sub(a, a)) == 0);
    CHECK(e.pow(a, 3) == elem(e, {-3, 8}));  // alpha^3 = 8 alpha - 3

    AlgElement ai = e.inverse(a);
    CHECK(ai == elem(e, {3, -1}));  // alpha (3 - alpha) = 3 alpha - alpha^2 = 1
    CHECK(e.mul(a, ai) == e.one());
    CHECK(e.pow(a, -2) == e.mul(ai, ai));
    CHECK(e.inverse(e.scale(Rat(1, 2), e.one())) == e.scale(Rat(2), e.one()));

    // Zero divisors have no inverse.
    Algebra split(int_poly({-1, 0, 1}));  // t^2 - 1
    CHECK_THROWS_AS((void)split.inverse(split.element(int_poly({-1, 1}))), input_error);
    CHECK_THROWS_AS((void)split.inverse(split.zero()), input_error);

    CHECK_THROWS_AS(Algebra(int_poly({2, 1, 2})), input_error);  // not monic
    CHECK_THROWS_AS(Algebra(int_poly({7})), input_error);        // degree 0
}

TEST_CASE("sigma is the involution alpha -> alpha^{-1}") {
    Algebra e12(phi12());  // t^4 - t^2 + 1
    AlgElement a = e12.alpha();
    AlgElement sa = e12.sigma(a);
    CHECK(sa == elem(e12, {0, 1, 0, -1}));  // alpha^{-1} = alpha - alpha^3
    CHECK(e12.mul(a, sa) == e12.one());
    CHECK(e12.sigma(e12.one()) == e12.one());
    CHECK(e12.sigma(e12.from_rat(Rat(-7, 3))) == e12.from_rat(Rat(-7, 3)));

    Algebra eq(int_poly({1, -3, 1}));
    CHECK(eq.sigma(eq.alpha()) == elem(eq, {3, -1}));  // 3 - alpha
    CHECK(eq.is_sigma_invariant(eq.add(eq.alpha(), eq.sigma(eq.alpha()))));
    CHECK_FALSE(eq.is_sigma_invariant(eq.alpha()));

    auto rng = make_rng(0x51617);
    for (int it = 0; it < 25; ++it) {
        AlgElement x = random_element(e12, rng), y = random_element(e12, rng);
        CHECK(e12.sigma(e12.sigma(x)) == x);
        CHECK(e12.sigma(e12.add(x, y)) == e12.add(e12.sigma(x), e12.sigma(y)));
        CHECK(e12.sigma(e12.mul(x, y)) == e12.mul(e12.sigma(x), e12.sigma(y)));
    }

    Algebra bad(int_poly({-2, 0, 1}));  // t^2 - 2 is not reciprocal
    CHECK_THROWS_AS((void)bad.sigma(bad.alpha()), input_error);

    // Free-function form.
    CHECK(sigma(phi12(), AlgElement{QPoly({Rat(0), Rat(1)})}).rep == QPoly({Rat(0), Rat(1), Rat(0), Rat(-1)}));
}

TEST_CASE("trace agrees with the multiplication-matrix trace") {
    Algebra eq(int_poly({1, -3, 1}));
    CHECK(eq.trace(eq.alpha()) == 3);  // sum of the two roots
    CHECK(eq.trace(eq.one()) == 2);

    Algebra e12(phi12());
    CHECK(e12.trace(e12.one()) == 4);
    CHECK(e12.trace(e12.mul(e12.alpha(), e12.alpha())) == 2);  // p2 = e1^2 - 2 e2

    Algebra el(lehmer_poly());
    CHECK(el.trace(el.one()) == 10);
    CHECK(el.trace(el.alpha()) == -1);

    CHECK(trace(int_poly({1, -3, 1}), AlgElement{QPoly({Rat(0), Rat(1)})}) == 3);

    auto rng = make_rng(0x7247ace);
    for (int it = 0; it < 20; ++it) {
        AlgElement x = random_element(el, rng), y = random_element(el, rng);
        CHECK(el.trace(x) == mat_trace(el.mult_matrix(x)));
        CHECK(el.trace(el.add(x, y)) == el.trace(x) + el.trace(y));
        // mult_matrix is a ring map.
        CHECK(mat_mul(el.mult_matrix(x), el.mult_matrix(y)) == el.mult_matrix(el.mul(x, y)));
    }

    // The multiplication matrix of alpha is a companion matrix of S.
    QPoly cp = mat_charpoly(el.mult_matrix(el.alpha()));
    CHECK(cp == QPoly(lehmer_poly()));
}

TEST_CASE("trace form gram matrices: pinned values and isometry law") {
    // S = t^2 - 3t + 1, lambda = 1: G_{ij} = tr(alpha^{i-j}) and
    // tr(alpha) = tr(alpha^{-1}) = 3 because the roots are swapped by
    // inversion, so the Gram is the Toeplitz [[2,3],[3,2]].
    QuadForm g = trace_form_gram(int_poly({1, -3, 1}), AlgElement{QPoly({Rat(1)})});
    QMat expect(2, 2);
    expect.at(0, 0) = 2;
    expect.at(0, 1) = 3;
    expect.at(1, 0) = 3;
    expect.at(1, 1) = 2;
    CHECK(g.gram == expect);

    // Multiplication by alpha is an isometry of b_lambda: C^T G C = G.
    Algebra eq(int_poly({1, -3, 1}));
    QMat c = eq.mult_matrix(eq.alpha());
    CHECK(mat_mul(mat_mul(mat_transpose(c), g.gram), c) == g.gram);

    // S = t^4 - t^2 + 1, lambda = 1: power sums 4, 0, 2, 0 give a Toeplitz
    // band matrix; all roots lie on the unit circle so b_1(x, x) sums
    // |x|^2 over the four embeddings and the form is positive definite.
    QuadForm g12 = trace_form_gram(phi12(), AlgElement{QPoly({Rat(1)})});
    QMat e12(4, 4);
    for (int i = 0; i < 4; ++i) {
        e12.at(i, i) = 4;
        if (i + 2 < 4) {
            e12.at(i, i + 2) = 2;
            e12.at(i + 2, i) = 2;
        }
    }
    CHECK(g12.gram == e12);
    FormInvariants inv = invariants(g12);
    CHECK(inv.r == 4);
    CHECK(inv.s == 0);

    Algebra a12(phi12());
    QMat c12 = a12.mult_matrix(a12.alpha());
    CHECK(mat_mul(mat_mul(mat_transpose(c12), g12.gram), c12) == g12.gram);

    // Same law on a degree-10 case.
    QuadForm gl = trace_form_gram(lehmer_poly(), AlgElement{QPoly({Rat(1)})});
    Algebra el(lehmer_poly());
    QMat cl = el.mult_matrix(el.alpha());
    CHECK(mat_mul(mat_mul(mat_transpose(cl), gl.gram), cl) == gl.gram);
}

TEST_CASE("trace form properties: involution compatibility and twisting") {
    Algebra e(phi12());
    AlgElement lam = e.add(e.alpha(), e.sigma(e.alpha()));  // alpha + alpha^{-1}, sigma-invariant unit
    REQUIRE(e.is_sigma_invariant(lam));
    QuadForm g = trace_form_gram(phi12(), lam);

    auto rng = make_rng(0xb1a5);
    for (int it = 0; it < 25; ++it) {
        // b(a x, y) = b(x, sigma(a) y) as the matrix law M_a^T G = G M_{sigma(a)}.
        AlgElement a = random_element(e, rng);
        CHECK(mat_mul(mat_transpose(e.mult_matrix(a)), g.gram) == mat_mul(g.gram, e.mult_matrix(e.sigma(a))));
    }

    // Twisting lambda by z sigma(z) rescales the form by the isometry z:
    // the Gram of b_{lambda z sigma(z)} is Z^T G Z exactly.
    AlgElement z = e.add(e.one(), e.alpha());  // 1 + alpha, a unit since S(-1) = 1
    AlgElement twist = e.mul(lam, e.mul(z, e.sigma(z)));
    QuadForm gt = trace_form_gram(phi12(), twist);
    QMat zm = e.mult_matrix(z);
    CHECK(gt.gram == mat_mul(mat_mul(mat_transpose(zm), g.gram), zm));
    CHECK(invariants(gt) == invariants(g));

    // And with lambda = 1: every local invariant of b_{z sigma(z)} matches b_1.
    QuadForm g1 = trace_form_gram(phi12(), e.one());
    QuadForm gz = trace_form_gram(phi12(), e.mul(z, e.sigma(z)));
    CHECK(invariants(gz) == invariants(g1));
}

TEST_CASE("trace form rejections") {
    AlgElement one{QPoly({Rat(1)})};
    // (t^2 - 3t + 1)^2: the radical kills the trace pairing.
    IntPoly p = int_poly({1, -3, 1});
    CHECK_THROWS_AS((void)trace_form_gram(poly_mul(p, p), one), input_error);
    // t^2 - 2 is not reciprocal.
    CHECK_THROWS_AS((void)trace_form_gram(int_poly({-2, 0, 1}), one), input_error);
    // lambda = alpha is not sigma-invariant.
    CHECK_THROWS_AS((void)trace_form_gram(p, AlgElement{QPoly({Rat(0), Rat(1)})}), input_error);
    // lambda = 0 is not a unit.
    CHECK_THROWS_AS((void)trace_form_gram(p, AlgElement{}), input_error);

    // A sigma-invariant zero divisor in the split algebra (t^2-3t+1)(t^2-t+1).
    IntPoly s = poly_mul(p, int_poly({1, -1, 1}));
    Algebra e(s);
    AlgElement z = e.element(p);
    AlgElement lam = e.mul(z, e.sigma(z));
    REQUIRE(!e.is_zero(lam));
    REQUIRE(e.is_sigma_invariant(lam));
    CHECK_THROWS_AS((void)trace_form_gram(s, lam), input_error);
}

TEST_CASE("local splitting: quadratic fields pinned by hand") {
    IntPoly p = int_poly({1, -3, 1});  // E = Q(sqrt 5), E0 = Q, x^2 - 4 evaluates to 5 at x = 3

    // 5 = disc: t^2 - 3t + 1 = (t+1)^2 mod 5, alpha = -1 at the contact.
    LocalPlace w5 = only_place(local_splitting(p, Int(5)));
    CHECK(w5.type == place_type::ramified_minus);
    CHECK(w5.residue_degree == 1);
    CHECK(w5.ram_index == 1);
    CHECK(w5.certified);

    // legendre(5, 7) = -1: inert.
    LocalPlace w7 = only_place(local_splitting(p, Int(7)));
    CHECK(w7.type == place_type::unramified);
    CHECK(w7.certified);

    // legendre(5, 11) = +1 (4^2 = 5 mod 11): split.
    LocalPlace w11 = only_place(local_splitting(p, Int(11)));
    CHECK(w11.type == place_type::split);

    // 5 = 5 mod 8: Q_2(sqrt 5) is the unramified quadratic extension.
    LocalPlace w2 = only_place(local_splitting(p, Int(2)));
    CHECK(w2.type == place_type::unramified);
    CHECK(w2.certified);

    // x^2 - 4 at x = 4 is 12 = 4 * 3, and 3 != 1 mod 4: ramified at 2.
    CHECK(only_place(local_splitting(int_poly({1, -4, 1}), Int(2))).type == place_type::ramified);
    // x = 6: 32 = 2^5, odd valuation: ramified at 2.
    CHECK(only_place(local_splitting(int_poly({1, -6, 1}), Int(2))).type == place_type::ramified);
    // x = 66: 4352 = 2^8 * 17 and 17 = 1 mod 8: split at 2.
    CHECK(only_place(local_splitting(int_poly({1, -66, 1}), Int(2))).type == place_type::split);
}

TEST_CASE("local splitting: quartic and cyclotomic cases") {
    // Phi_12: trace polynomial x^2 - 3.
    // mod 7: x^2 - 3 is irreducible and x^2 - 4 = -1 is a square in F_49.
    LocalPlace c7 = only_place(local_splitting(phi12(), Int(7)));
    CHECK(c7.type == place_type::split);
    CHECK(c7.residue_degree == 2);
    CHECK(c7.ram_index == 1);
    CHECK(c7.certified);

    // mod 3: x^2 - 3 = x^2 with v_3(disc) = v_3(12) = 1: one tame place of
    // E0 = Q(sqrt 3), and x^2 - 4 = -1 is a non-residue mod 3: unramified.
    LocalPlace c3 = only_place(local_splitting(phi12(), Int(3)));
    CHECK(c3.type == place_type::unramified);
    CHECK(c3.residue_degree == 1);
    CHECK(c3.ram_index == 2);
    CHECK(c3.certified);

    // mod 2: x^2 - 3 = (x+1)^2 but v_2(disc) = 2, so the power order is not
    // provably maximal: one uncertified cluster, residue-level type only.
    LocalPlace c2 = only_place(local_splitting(phi12(), Int(2)));
    CHECK_FALSE(c2.certified);
    CHECK(c2.residue_degree == 1);
    CHECK(c2.ram_index == 2);
    CHECK_FALSE(local_splitting(phi12(), Int(2)).all_certified());

    // Phi_5: trace polynomial x^2 + x - 1, disc 5.
    // mod 5: (x - 2)^2, Q(2) = 5, Q(-2) = 1: odd valuation at the contact
    // x = 2, so zeta_5 = +1 at the place: ramified_plus.
    LocalPlace f5 = only_place(local_splitting(int_poly({1, 1, 1, 1, 1}), Int(5)));
    CHECK(f5.type == place_type::ramified_plus);
    CHECK(f5.residue_degree == 1);
    CHECK(f5.ram_index == 2);
    CHECK(f5.certified);

    // mod 2: x^2 + x - 1 is irreducible (F_4 residue field); the unit
    // x^2 - 4 works out to 1 + 4x with Artin-Schreier trace 1: unramified.
    // (2 is inert in Q(sqrt 5) and has order 4 mod 5, so f jumps 2 -> 4.)
    LocalPlace f2 = only_place(local_splitting(int_poly({1, 1, 1, 1, 1}), Int(2)));
    CHECK(f2.type == place_type::unramified);
    CHECK(f2.residue_degree == 2);
    CHECK(f2.ram_index == 1);
    CHECK(f2.certified);

    // t^4 + t^3 - t^2 + t + 1: trace polynomial x^2 + x - 3, disc 13.
    // mod 2: irreducible with residue field F_4, and x^2 - 4 = -x - 1
    // normalizes to 1 + 4x whose Artin-Schreier trace is x + x^2 = 1:
    // unramified.  (Cross-check: P mod 2 is an irreducible quartic, so the
    // place upstairs has local degree 4 = 2f.)
    LocalPlace s2 = only_place(local_splitting(int_poly({1, 1, -1, 1, 1}), Int(2)));
    CHECK(s2.type == place_type::unramified);
    CHECK(s2.residue_degree == 2);
    CHECK(s2.certified);
    // mod 13: double root 6, 6^2 - 4 = 32 = 6 mod 13 is a non-residue.
    LocalPlace s13 = only_place(local_splitting(int_poly({1, 1, -1, 1, 1}), Int(13)));
    CHECK(s13.type == place_type::unramified);
    CHECK(s13.ram_index == 2);
    CHECK(s13.certified);

    // t^4 + t^3 + 4t^2 + t + 1: trace polynomial x^2 + x + 2, disc -7.
    // mod 7: double root 3, 3^2 - 4 = 5 is a non-residue mod 7: unramified.
    LocalPlace t7 = only_place(local_splitting(int_poly({1, 1, 4, 1, 1}), Int(7)));
    CHECK(t7.type == place_type::unramified);
    CHECK(t7.ram_index == 2);
    CHECK(t7.certified);

    // t^4 - 2t^3 - 4t^2 - 2t + 1: trace polynomial x^2 - 2x - 6, disc 28.
    // mod 7: double root 1, 1 - 4 = -3 = 4 = 2^2 mod 7: split.
    LocalPlace u7 = only_place(local_splitting(int_poly({1, -2, -4, -2, 1}), Int(7)));
    CHECK(u7.type == place_type::split);
    CHECK(u7.ram_index == 2);
    CHECK(u7.certified);
}

TEST_CASE("local splitting: powers and error handling") {
    IntPoly p = int_poly({1, -3, 1});
    IntPoly cube = poly_mul(p, poly_mul(p, p));
    SplittingData base = local_splitting(p, Int(5));
    SplittingData cubed = local_splitting(cube, Int(5));
    REQUIRE(cubed.places.size() == base.places.size());
    CHECK(cubed.places[0].type == base.places[0].type);
    CHECK(cubed.places[0].certified == base.places[0].certified);

    CHECK_THROWS_AS((void)local_splitting(int_poly({-1, 0, 1}), Int(5)), not_a_power);   // (t-1)(t+1)
    CHECK_THROWS_AS((void)local_splitting(int_poly({1, 1}), Int(5)), input_error);       // linear
    CHECK_THROWS_AS((void)local_splitting(poly_pow(int_poly({1, 1}), 4), Int(5)), input_error);
    CHECK_THROWS_AS((void)local_splitting(int_poly({-2, 0, 1}), Int(5)), input_error);   // not reciprocal
    CHECK_THROWS_AS((void)local_splitting(p, Int(4)), input_error);
    CHECK_THROWS_AS((void)local_splitting(p, Int(1)), input_error);
}

TEST_CASE("local splitting: factor shape of P mod p cross-check") {
    // At p with P squarefree mod p, Z_p[alpha] is maximal, no place
    // ramifies, and the degrees of the irreducible factors of P mod p are
    // exactly the local degrees upstairs: f twice per split place, 2f per
    // unramified place.  This reads the same answer off an independent
    // factorization of P instead of the trace polynomial.
    std::vector<IntPoly> polys = {
        lehmer_poly(),
        phi30(),
        phi12(),
        int_poly({1, -3, 1}),
        int_poly({1, 1, 1, 1, 1}),
        int_poly({1, 1, 4, 1, 1}),
        int_poly({1, -2, -4, -2, 1}),
        int_poly({1, 1, -1, 1, 1}),
        int_poly({1, -66, 1}),
    };
    std::vector<long> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    for (const IntPoly& poly : polys) {
        long g = poly.degree() / 2;
        for (long pl : primes) {
            Int p(pl);
            CAPTURE(poly.str());
            CAPTURE(pl);
            SplittingData sp = local_splitting(poly, p);
            long total = 0;
            for (const LocalPlace& w : sp.places) total += w.residue_degree * w.ram_index;
            CHECK(total == g);

            ModPoly pbar = ModPoly::from_int_poly(poly, p);
            ModPoly pbar_d = mod_derivative(pbar);
            if (pbar_d.is_zero() || mod_gcd(pbar, pbar_d).degree() != 0) continue;
            CHECK(sp.all_certified());
            std::vector<long> expect;
            for (const LocalPlace& w : sp.places) {
                REQUIRE(w.ram_index == 1);
                REQUIRE((w.type == place_type::split || w.type == place_type::unramified));
                if (w.type == place_type::split) {
                    expect.push_back(w.residue_degree);
                    expect.push_back(w.residue_degree);
                } else {
                    expect.push_back(2 * w.residue_degree);
                }
            }
            std::vector<long> got = mod_factor_degrees(pbar);
            std::sort(expect.begin(), expect.end());
            std::sort(got.begin(), got.end());
            CHECK(expect == got);
        }
    }
}

TEST_CASE("theta formulas") {
    ThetaPlace real{theta_kind::real_place, Int(0), 1, "real"};
    ThetaValue minus2;
    minus2.sign = -1;
    CHECK(theta(real, minus2) == 1);
    ThetaValue plus;
    plus.sign = 1;
    CHECK(theta(real, plus) == 0);

    ThetaPlace unram{theta_kind::unramified, Int(3), 2, "w3"};
    ThetaValue v3;
    v3.valuation = 3;
    CHECK(theta(unram, v3) == 1);
    ThetaValue vm2;
    vm2.valuation = -2;
    CHECK(theta(unram, vm2) == 0);

    ThetaPlace ram5{theta_kind::ramified_odd, Int(5), 1, "w5"};
    ThetaValue sq;
    sq.unit_residue = 4;  // 2^2
    CHECK(theta(ram5, sq) == 0);
    ThetaValue nsq;
    nsq.unit_residue = 2;  // non-residue mod 5
    CHECK(theta(ram5, nsq) == 1);
    // Over an even-degree residue field every prime-field unit is a square.
    ThetaPlace ram5f2{theta_kind::ramified_odd, Int(5), 2, "w5f2"};
    CHECK(theta(ram5f2, nsq) == 0);

    ThetaPlace ram2{theta_kind::ramified_odd, Int(2), 1, "w2"};
    CHECK_THROWS_AS((void)theta(ram2, sq), unsupported);
    ThetaValue zero;
    zero.unit_residue = 10;
    CHECK_THROWS_AS((void)theta(ram5, zero), input_error);  // 10 = 0 mod 5
    ThetaValue badsign;
    badsign.sign = 0;
    CHECK_THROWS_AS((void)theta(real, badsign), input_error);
}

TEST_CASE("theta parity check") {
    CHECK(local_global_check(ThetaVector{}));
    CHECK_FALSE(local_global_check(ThetaVector{{{"w1", 1}}}));
    CHECK(local_global_check(ThetaVector{{{"w1", 1}, {"w2", 1}}}));
    CHECK(local_global_check(ThetaVector{{{"a", 0}, {"b", 1}, {"c", 1}, {"d", 0}}}));
    CHECK_FALSE(local_global_check(ThetaVector{{{"a", 1}, {"b", 1}, {"c", 1}}}));
    CHECK_THROWS_AS((void)local_global_check(ThetaVector{{{"a", 2}}}), input_error);
}
