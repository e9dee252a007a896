#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isowitt/exact.hpp"
#include "isowitt/matrix.hpp"
#include "testutil.hpp"

using namespace isowitt;

namespace {

QMat from_longs(long rows, long cols, std::initializer_list<long> vals) {
    QMat m(rows, cols);
    auto it = vals.begin();
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
    return m;
}

}  // namespace

TEST_CASE("determinant inverse solve") {
    QMat a = from_longs(2, 2, {2, 1, 1, 2});
    CHECK(mat_det(a) == Rat(3));
    QMat inv = mat_inverse(a);
    CHECK(mat_mul(a, inv) == QMat::identity(2));
    QMat b(2, 1);
    b.at(0, 0) = Rat(5);
    b.at(1, 0) = Rat(4);
    QMat x = mat_solve(a, b);
    CHECK(mat_mul(a, x) == b);
    CHECK(x.at(0, 0) == Rat(2));
    CHECK(x.at(1, 0) == Rat(1));
    CHECK_THROWS_AS(mat_inverse(from_longs(2, 2, {1, 2, 2, 4})), input_error);
}

TEST_CASE("charpoly pinned and property") {
    QMat d = from_longs(3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
    QPoly cp = mat_charpoly(d);
    // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
    CHECK(cp.c == std::vector<Rat>{Rat(-6), Rat(11), Rat(-6), Rat(1)});
    // Cayley-Hamilton on random integer matrices
    auto rng = testutil::make_rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        QMat m = testutil::random_int_matrix(rng, 4, 4, 3);
        QPoly p = mat_charpoly(m);
        QMat acc(4, 4);
        QMat pw = QMat::identity(4);
        for (size_t k = 0; k < p.c.size(); ++k) {
            acc = mat_add(acc, mat_scale(pw, p.c[k]));
            pw = mat_mul(pw, m);
        }
        CHECK(acc == QMat(4, 4));
        CHECK(mat_trace(m) == -p.c[3]);
    }
}

TEST_CASE("rank and kernel") {
    QMat m = from_longs(2, 3, {1, 2, 3, 2, 4, 6});
    CHECK(mat_rank(m) == 1);
    QMat k = mat_kernel(m);
    CHECK(k.cols == 2);
    CHECK(mat_mul(m, k) == QMat(2, 2));
    CHECK(mat_kernel(QMat::identity(3)).cols == 0);
}

TEST_CASE("lattice basis canonical form") {
    // columns (2,0),(0,3),(1,1) generate Z^2
    QMat gen = from_longs(2, 3, {2, 0, 1, 0, 3, 1});
    QMat basis = lattice_basis(gen);
    CHECK(basis == QMat::identity(2));
    // rational generators
    QMat gen2(2, 2);
    gen2.at(0, 0) = Rat(1, 2);
    gen2.at(1, 0) = Rat(0);
    gen2.at(0, 1) = Rat(0);
    gen2.at(1, 1) = Rat(3);
    QMat basis2 = lattice_basis(gen2);
    CHECK(mat_det(basis2) == Rat(3, 2));
    QMat v(2, 1);
    v.at(0, 0) = Rat(1, 2);
    v.at(1, 0) = Rat(3);
    CHECK(in_lattice(basis2, v));
    v.at(0, 0) = Rat(1, 3);
    CHECK(!in_lattice(basis2, v));
    // same lattice under unimodular recombination
    auto rng = testutil::make_rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        QMat b = testutil::random_int_matrix(rng, 3, 3, 4);
        if (mat_det(b) == 0) continue;
        QMat u = testutil::random_unimodular(rng, 3);
        CHECK(same_lattice(lattice_basis(b), lattice_basis(mat_mul(b, u))));
    }
}

TEST_CASE("smith normal form") {
    QMat m = from_longs(2, 2, {2, 4, 6, 8});
    SmithForm sf = snf(m);
    CHECK(sf.s.at(0, 0) == Rat(2));
    CHECK(sf.s.at(1, 1) == Rat(4));
    CHECK(sf.s.at(0, 1) == Rat(0));
    CHECK(mat_mul(mat_mul(sf.u, m), sf.v) == sf.s);
    CHECK(abs_int(mat_det(sf.u).get_num()) == 1);
    CHECK(abs_int(mat_det(sf.v).get_num()) == 1);
    auto rng = testutil::make_rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        long n = testutil::rand_range(rng, 1, 4);
        QMat a = testutil::random_int_matrix(rng, n, n, 6);
        SmithForm s = snf(a);
        CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.s);
        CHECK(abs_int(mat_det(s.u).get_num()) == 1);
        CHECK(abs_int(mat_det(s.v).get_num()) == 1);
        // divisibility chain, nonnegative diagonal
        for (long i = 0; i + 1 < n; ++i) {
            Int di = s.s.at(i, i).get_num();
            Int dj = s.s.at(i + 1, i + 1).get_num();
            CHECK(di >= 0);
            if (di != 0) CHECK(dj % di == 0);
            else CHECK(dj == 0);
        }
    }
}

TEST_CASE("local smith form") {
    QMat m(2, 2);
    m.at(0, 0) = Rat(1, 3);
    m.at(0, 1) = Rat(0);
    m.at(1, 0) = Rat(0);
    m.at(1, 1) = Rat(45);
    LocalSmithForm lf = snf_local(m, Int(3));
    CHECK(lf.exponents == std::vector<long>{-1, 2});
    CHECK(mat_mul(mat_mul(lf.u, m), lf.v) == lf.s);
    // u, v invertible with p-unit determinant
    CHECK(valuation(mat_det(lf.u), Int(3)).value() == 0);
    CHECK(valuation(mat_det(lf.v), Int(3)).value() == 0);
    auto rng = testutil::make_rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        long n = testutil::rand_range(rng, 1, 4);
        QMat a(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) a.at(i, j) = testutil::random_smooth_rat(rng);
        if (mat_det(a) == 0) continue;
        for (Int p : {Int(2), Int(3), Int(5)}) {
            LocalSmithForm f = snf_local(a, p);
            CHECK(mat_mul(mat_mul(f.u, a), f.v) == f.s);
            CHECK(valuation(mat_det(f.u), p).value() == 0);
            CHECK(valuation(mat_det(f.v), p).value() == 0);
            for (size_t i = 0; i + 1 < f.exponents.size(); ++i)
                CHECK(f.exponents[i] <= f.exponents[i + 1]);
            for (long i = 0; i < n; ++i) {
                CHECK(valuation(f.s.at(i, i), p).value() == f.exponents[static_cast<size_t>(i)]);
            }
        }
    }
}

TEST_CASE("integer kernel and integer solve") {
    QMat m = from_longs(1, 2, {2, -4});
    QMat k = integer_kernel(m);
    CHECK(k.cols == 1);
    // primitive kernel vector (2, 1)
    CHECK(abs_int(k.at(0, 0).get_num()) == 2);
    CHECK(abs_int(k.at(1, 0).get_num()) == 1);
    CHECK(mat_mul(m, k) == QMat(1, 1));

    QMat a = from_longs(1, 2, {6, 10});
    QMat b8(1, 1), b7(1, 1);
    b8.at(0, 0) = Rat(8);
    b7.at(0, 0) = Rat(7);
    auto sol = integer_solve(a, b8);
    REQUIRE(sol.has_value());
    CHECK(sol->is_integral());
    CHECK(mat_mul(a, *sol) == b8);
    CHECK(!integer_solve(a, b7).has_value());

    auto rng = testutil::make_rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        QMat mm = testutil::random_int_matrix(rng, 3, 3, 5);
        QMat x(3, 1);
        for (long i = 0; i < 3; ++i) x.at(i, 0) = Rat(testutil::rand_range(rng, -4, 4));
        QMat rhs = mat_mul(mm, x);
        auto s = integer_solve(mm, rhs);
        REQUIRE(s.has_value());
        CHECK(mat_mul(mm, *s) == rhs);
        CHECK(s->is_integral());
    }
}
