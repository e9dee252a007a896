#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "isowitt/hermitian.hpp"
#include "isowitt/reduction.hpp"
#include "testutil.hpp"

using namespace isowitt;
using namespace isowitt::testutil;

namespace {

QMat from_longs(long rows, long cols, std::initializer_list<long> vals) {
    QMat m(rows, cols);
    auto it = vals.begin();
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
    return m;
}

QMat diag_longs(std::initializer_list<long> vals) {
    QMat m(static_cast<long>(vals.size()), static_cast<long>(vals.size()));
    long i = 0;
    for (long v : vals) {
        m.at(i, i) = Rat(v);
        ++i;
    }
    return m;
}

QMat hyperbolic_gram() { return from_longs(2, 2, {0, 1, 1, 0}); }
QMat swap2() { return from_longs(2, 2, {0, 1, 1, 0}); }

QMat companion(const IntPoly& s) {
    long n = s.degree();
    QMat c(n, n);
    for (long i = 0; i + 1 < n; ++i) c.at(i + 1, i) = Rat(1);
    for (long i = 0; i < n; ++i) c.at(i, n - 1) = Rat(-s.at(i));
    return c;
}

// A-stable lattice spanned by the Z[A]-closure of random generators.
GLattice random_stable_lattice(std::mt19937_64& rng, const QuadForm& v, const QMat& a) {
    long n = v.dim();
    while (true) {
        QMat r = random_int_matrix(rng, n, n, 4);
        if (mat_det(r) == 0) continue;
        QMat gens = r, power = r;
        for (long i = 1; i < n; ++i) {
            power = mat_mul(a, power);
            gens = mat_hjoin(gens, power);
        }
        return GLattice(v, lattice_basis(gens), a);
    }
}

FqForm boundary_from(const GLattice& l, const Int& p) {
    GLattice au = almost_unimodular(l, p);
    return dagger(p_part(discriminant_form(au), p), p);
}

long exponent_of(const TorsionForm& t, const Int& p) {
    long e = 0;
    for (const Int& d : t.orders) {
        Int cof;
        e = std::max(e, static_cast<long>(remove_factor(d, p, cof)));
    }
    return e;
}

QuadForm random_p_scaled_form(std::mt19937_64& rng, long n, long p) {
    QMat g(n, n);
    for (long i = 0; i < n; ++i) {
        long unit = 0;
        while (unit == 0 || unit % p == 0) unit = rand_range(rng, -4, 4);
        long e = rand_range(rng, 0, 2);
        long scale = 1;
        for (long j = 0; j < e; ++j) scale *= p;
        g.at(i, i) = Rat(unit * scale);
    }
    return QuadForm(g);
}

}  // namespace

TEST_CASE("initial lattice saturates the standard basis under the isometry") {
    // Integer orthogonal matrices keep the standard lattice.
    GLattice swap_lat = initial_lattice(QuadForm(diag_longs({1, 1})), swap2());
    CHECK(same_lattice(swap_lat.basis, QMat::identity(2)));

    // Companion matrices of monic integer polynomials are integral.
    IntPoly s = int_poly({1, -3, 1});
    QuadForm tf = trace_form_gram(s, AlgElement{QPoly({Rat(1)})});
    GLattice power_lat = initial_lattice(tf, companion(s));
    CHECK(same_lattice(power_lat.basis, QMat::identity(2)));

    // A rational isometry with integral characteristic polynomial saturates
    // to a finer stable lattice.
    QMat a = from_longs(2, 2, {0, 1, 2, 0});
    a.at(0, 1) = Rat(1, 2);
    GLattice sat = initial_lattice(QuadForm(hyperbolic_gram()), a);
    QMat expected(2, 2);
    expected.at(0, 0) = Rat(1, 2);
    expected.at(1, 1) = Rat(1);
    CHECK(same_lattice(sat.basis, expected));

    // Eigenvalue 2 makes the span unbounded.
    QMat stretch = diag_longs({2, 1});
    stretch.at(1, 1) = Rat(1, 2);
    CHECK_THROWS_AS(initial_lattice(QuadForm(hyperbolic_gram()), stretch), unbounded);

    // Non-isometries and shape mismatches are rejected.
    CHECK_THROWS_AS(initial_lattice(QuadForm(diag_longs({1})), diag_longs({2})), input_error);
    CHECK_THROWS_AS(initial_lattice(QuadForm(diag_longs({1, 1})), diag_longs({1})), input_error);
}

TEST_CASE("almost unimodular reduction hits exponent one") {
    // Already unimodular: untouched.
    GLattice h{QuadForm(hyperbolic_gram())};
    CHECK(same_lattice(almost_unimodular(h, Int(2)).basis, h.basis));

    // diag(9,1) at 3: the isotropic line e1/3 closes the gap completely.
    GLattice nine = almost_unimodular(GLattice(QuadForm(diag_longs({9, 1}))), Int(3));
    CHECK(p_part(discriminant_form(nine), Int(3)).trivial());
    CHECK(lattice_report(nine).unimodular);

    // diag(3,1) at 3: nothing isotropic, lattice unchanged.
    GLattice three(QuadForm(diag_longs({3, 1})));
    CHECK(same_lattice(almost_unimodular(three, Int(3)).basis, three.basis));

    // diag(27,3) at 3 stabilizes at the anisotropic plane diag(1,1) over F_3.
    FqForm f = boundary_from(GLattice(QuadForm(diag_longs({27, 3}))), Int(3));
    CHECK(f.dim() == 2);
    CHECK(witt_equal(f, FqForm(Int(3), diag_longs({1, 1}))));
    CHECK_FALSE(is_neutral(f).neutral);

    // diag(8,2) at 2 reduces all the way to a unimodular lattice.
    GLattice eight = almost_unimodular(GLattice(QuadForm(diag_longs({8, 2}))), Int(2));
    CHECK(p_part(discriminant_form(eight), Int(2)).trivial());
    CHECK(lattice_report(eight).unimodular);

    // diag(18,5) at 3: the 9 inside 18 unwinds, leaving a unit determinant at 3.
    GLattice mixed = almost_unimodular(GLattice(QuadForm(diag_longs({18, 5}))), Int(3));
    CHECK(p_part(discriminant_form(mixed), Int(3)).trivial());

    // Oversized discriminant group trips the cap.
    CHECK_THROWS_AS(almost_unimodular(GLattice(QuadForm(diag_longs({8192, 1}))), Int(2)), budget_exceeded);
    CHECK_THROWS_AS(almost_unimodular(h, Int(4)), input_error);
}

TEST_CASE("almost unimodular postconditions hold on random stable lattices") {
    auto rng = make_rng(5417);
    for (long p : {2L, 3L, 5L}) {
        for (int iter = 0; iter < 6; ++iter) {
            long n = rand_range(rng, 2, 4);
            QuadForm v = random_p_scaled_form(rng, n, p);
            GLattice l = random_stable_lattice(rng, v, QMat::identity(n));
            GLattice au = almost_unimodular(l, Int(p));
            CHECK(au.gram().is_integral());
            TorsionForm t = p_part(discriminant_form(au), Int(p));
            CHECK(exponent_of(t, Int(p)) <= 1);
            // Maximality: nothing stable and isotropic is left.
            if (!t.trivial()) CHECK(maximal_stable_isotropic(dagger(t, Int(p))).cols == 0);
        }
    }
}

TEST_CASE("boundary classes match hand computations") {
    // diag(3,1): one line with self-pairing exactly 1/3.
    BoundaryClass b = boundary(QuadForm(diag_longs({3, 1})), QMat::identity(2), Int(3));
    CHECK(b.prime == 3);
    CHECK(b.form.dim() == 1);
    CHECK(b.form.gram == diag_longs({1}));
    CHECK(b.form.action == diag_longs({1}));

    // Unimodular forms have zero boundary at every prime.
    for (long p : {2L, 3L, 5L})
        CHECK(boundary(QuadForm(diag_longs({1, -1})), QMat::identity(2), Int(p)).form.dim() == 0);

    // diag(5,1) with the action of -1: the class remembers the operator.
    BoundaryClass neg = boundary(QuadForm(diag_longs({5, 1})), mat_neg(QMat::identity(2)), Int(5));
    CHECK(neg.form.dim() == 1);
    CHECK(neg.form.action == diag_longs({4}));

    // Trace form of t^2 - 3t + 1 at the ramified prime 5: the double root of
    // the reduction drives the induced operator.
    IntPoly s = int_poly({1, -3, 1});
    QuadForm tf = trace_form_gram(s, AlgElement{QPoly({Rat(1)})});
    BoundaryClass ram = boundary(tf, companion(s), Int(5));
    CHECK(ram.form.dim() == 1);
    CHECK(ram.form.action == diag_longs({4}));
    CHECK_FALSE(is_neutral(ram.form).neutral);

    // Cyclotomic quintic at its ramified prime: odd-dimensional class, as the
    // residue degree is one.
    IntPoly phi5 = int_poly({1, 1, 1, 1, 1});
    QuadForm tf5 = trace_form_gram(phi5, AlgElement{QPoly({Rat(1)})});
    BoundaryClass ram5 = boundary(tf5, companion(phi5), Int(5));
    CHECK(ram5.form.dim() % 2 == 1);
}

TEST_CASE("hyperbolic plane with swap action has zero boundary at two") {
    // ... for both scalings, even though no stable lagrangian exists over Q:
    // the swap exchanges the only two isotropic lines.
    QMat h = hyperbolic_gram();
    CHECK(boundary(QuadForm(h), swap2(), Int(2)).form.dim() == 0);
    CHECK(boundary(QuadForm(mat_scale(h, Rat(2))), swap2(), Int(2)).form.dim() == 0);
    // The swap-fixed lines have nonzero square in both scalings.
    for (const QMat& g : {h, mat_scale(h, Rat(2))}) {
        QMat plus = from_longs(2, 1, {1, 1});
        QMat minus = from_longs(2, 1, {1, -1});
        CHECK(mat_mul(mat_mul(mat_transpose(plus), g), plus).at(0, 0) != 0);
        CHECK(mat_mul(mat_mul(mat_transpose(minus), g), minus).at(0, 0) != 0);
    }
    // And the swap moves each isotropic axis to the other.
    CHECK(mat_mul(swap2(), from_longs(2, 1, {1, 0})) == from_longs(2, 1, {0, 1}));
}

TEST_CASE("boundary is additive and lattice-independent") {
    auto rng = make_rng(6067);
    for (long p : {2L, 3L, 5L}) {
        for (int iter = 0; iter < 5; ++iter) {
            long n1 = rand_range(rng, 1, 2), n2 = rand_range(rng, 1, 2);
            QuadForm v1 = random_p_scaled_form(rng, n1, p);
            QuadForm v2 = random_p_scaled_form(rng, n2, p);
            QMat a1 = rand_range(rng, 0, 1) ? QMat::identity(n1) : mat_neg(QMat::identity(n1));
            QMat a2 = rand_range(rng, 0, 1) ? QMat::identity(n2) : mat_neg(QMat::identity(n2));
            BoundaryClass whole =
                boundary(QuadForm(mat_dsum(v1.gram, v2.gram)), mat_dsum(a1, a2), Int(p));
            BoundaryClass b1 = boundary(v1, a1, Int(p));
            BoundaryClass b2 = boundary(v2, a2, Int(p));
            CHECK(witt_equal(whole.form, fq_direct_sum(b1.form, b2.form)));
        }
    }

    // Different stable starting lattices in the same form, same class.
    struct Setup {
        QuadForm v;
        QMat a;
        long p;
    };
    IntPoly s = int_poly({1, -3, 1});
    std::vector<Setup> setups;
    setups.push_back({QuadForm(diag_longs({3, 1})), QMat::identity(2), 3});
    setups.push_back({QuadForm(diag_longs({9, 2})), QMat::identity(2), 3});
    setups.push_back({trace_form_gram(s, AlgElement{QPoly({Rat(1)})}), companion(s), 5});
    setups.push_back({QuadForm(mat_scale(hyperbolic_gram(), Rat(2))), swap2(), 2});
    setups.push_back({QuadForm(diag_longs({5, 1})), mat_neg(QMat::identity(2)), 5});
    for (const Setup& su : setups) {
        FqForm ref = boundary(su.v, su.a, Int(su.p)).form;
        for (int iter = 0; iter < 3; ++iter) {
            GLattice l = random_stable_lattice(rng, su.v, su.a);
            CHECK(witt_equal(boundary_from(l, Int(su.p)), ref));
        }
    }
}

TEST_CASE("forms with a stable rational lagrangian have neutral boundary") {
    auto rng = make_rng(7919);
    for (long p : {2L, 3L, 5L}) {
        for (int iter = 0; iter < 4; ++iter) {
            long n = rand_range(rng, 1, 2);
            QuadForm w = random_p_scaled_form(rng, n, p);
            QuadForm doubled(mat_dsum(w.gram, mat_neg(w.gram)));
            BoundaryClass b = boundary(doubled, QMat::identity(2 * n), Int(p));
            CHECK(is_neutral(b.form).neutral);
        }
    }
}

TEST_CASE("unimodular witnesses exist exactly when the boundary vanishes") {
    // diag(9,1) at 3: witness with unit determinant.
    auto w = unimodular_witness(QuadForm(diag_longs({9, 1})), QMat::identity(2), Int(3));
    REQUIRE(w.has_value());
    CHECK(p_part(discriminant_form(*w), Int(3)).trivial());
    CHECK(lattice_report(*w).unimodular);

    // diag(3,1) at 3: the class <1> blocks everything.
    CHECK_FALSE(unimodular_witness(QuadForm(diag_longs({3, 1})), QMat::identity(2), Int(3)).has_value());

    // diag(3,3) at 3: anisotropic plane, no witness.
    CHECK_FALSE(unimodular_witness(QuadForm(diag_longs({3, 3})), QMat::identity(2), Int(3)).has_value());

    // diag(3,6) at 3: isotropic plane, witness with 3-unit determinant.
    auto mixed = unimodular_witness(QuadForm(diag_longs({3, 6})), QMat::identity(2), Int(3));
    REQUIRE(mixed.has_value());
    CHECK(p_part(discriminant_form(*mixed), Int(3)).trivial());
    Int det = mat_det(mixed->gram()).get_num();
    Int cof;
    CHECK(remove_factor(det, Int(3), cof) == 0);

    // Standard hyperbolic lattice with swap: already good.
    auto hsw = unimodular_witness(QuadForm(hyperbolic_gram()), swap2(), Int(2));
    REQUIRE(hsw.has_value());
    CHECK(same_lattice(hsw->basis, QMat::identity(2)));
}
