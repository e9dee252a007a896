#pragma once

// Dense exact matrices over Q with the lattice toolkit: Gauss, kernels,
// characteristic polynomials, Hermite/Smith normal forms (global and
// p-local), and integer linear solving.  Dimensions here are tiny (<= ~32),
// so clarity beats asymptotics throughout.

#include <vector>

#include "isowitt/errors.hpp"
#include "isowitt/numeric.hpp"
#include "isowitt/poly.hpp"

namespace isowitt {

struct QMat {
    long rows = 0, cols = 0;
    std::vector<Rat> a;  // row-major

    QMat() = default;
    QMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c), Rat(0)) {
        if (r < 0 || c < 0) throw input_error("QMat: negative dimensions");
    }
    static QMat identity(long n);

    Rat& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
    const Rat& at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_square() const { return rows == cols; }
    bool is_integral() const;
    bool is_symmetric() const;
};

QMat mat_mul(const QMat& x, const QMat& y);
QMat mat_add(const QMat& x, const QMat& y);
QMat mat_sub(const QMat& x, const QMat& y);
QMat mat_scale(const QMat& x, const Rat& k);
QMat mat_transpose(const QMat& x);
QMat mat_neg(const QMat& x);
// Columns of x followed by columns of y (same row count).
QMat mat_hjoin(const QMat& x, const QMat& y);
// Block diagonal sum.
QMat mat_dsum(const QMat& x, const QMat& y);
QMat mat_col(const QMat& x, long j);
Rat mat_det(QMat x);
QMat mat_inverse(const QMat& x);
// Solve a X = b; throws when a is singular.
QMat mat_solve(const QMat& a, const QMat& b);
long mat_rank(QMat x);
// Columns spanning the right kernel over Q.
QMat mat_kernel(const QMat& x);
// Monic characteristic polynomial det(tI - x) via Faddeev-LeVerrier.
QPoly mat_charpoly(const QMat& x);
Rat mat_trace(const QMat& x);

// Lattice basis from rational generator columns: canonical column-style
// Hermite form of the spanned Z-module, zero columns dropped.  The module is
// {G z : z integer vector}.
QMat lattice_basis(const QMat& generators);
// Is v (column) in the Z-span of basis columns?  basis must have full column rank.
bool in_lattice(const QMat& basis, const QMat& v);
// Do two column-bases span the same Z-module?
bool same_lattice(const QMat& b1, const QMat& b2);

struct SmithForm {
    QMat u, s, v;  // u * input * v == s, u and v unimodular over Z
};

// Smith normal form of an integer matrix; diagonal nonneg, d1 | d2 | ...
SmithForm snf(const QMat& m);

struct LocalSmithForm {
    QMat u, s, v;  // u * input * v == s over Z_(p); diagonal entries p^{a_i}
    std::vector<long> exponents;  // a_i, ascending, one per diagonal slot
};

// Smith form over Z localized at p for a rational matrix: u, v and their
// inverses are p-integral, and s is diagonal with entries p^{a_i} (a_i may be
// negative).  Diagonal sorted by exponent ascending.
LocalSmithForm snf_local(const QMat& m, const Int& p);

// Basis (columns) of the integer kernel {x : m x = 0} of an integer matrix.
QMat integer_kernel(const QMat& m);
// One integer solution of m x = b, if any.
std::optional<QMat> integer_solve(const QMat& m, const QMat& b);

}  // namespace isowitt
