#include "isowitt/zlattice.hpp"

#include <utility>

#include "isowitt/exact.hpp"

namespace isowitt {

namespace {

Int int_of(const Rat& r) {
    if (r.get_den() != 1) throw internal_error("expected an integer entry");
    return r.get_num();
}

// Scale into an integer matrix with the same kernel.
QMat clear_denominators(const QMat& m) {
    Int d(1);
    for (const Rat& x : m.a) d = lcm_int(d, x.get_den());
    QMat out = m;
    for (Rat& x : out.a) x *= Rat(d);
    return out;
}

void require_compatible(const GLattice& l, const GLattice& m) {
    if (!(l.ambient.gram == m.ambient.gram)) throw input_error("lattices live in different ambient forms");
    if (!(l.action == m.action)) throw input_error("lattices carry different actions");
}

}  // namespace

GLattice::GLattice(QuadForm ambient_, QMat basis_, QMat action_)
    : ambient(std::move(ambient_)), basis(std::move(basis_)), action(std::move(action_)) {
    long n = ambient.dim();
    if (basis.rows != n || basis.cols != n) throw input_error("lattice basis has the wrong shape");
    if (action.rows != n || action.cols != n) throw input_error("lattice action has the wrong shape");
    if (mat_det(basis) == 0) throw input_error("lattice basis is singular");
    if (!(mat_mul(mat_mul(mat_transpose(action), ambient.gram), action) == ambient.gram))
        throw input_error("action is not an isometry of the ambient form");
    QMat c = mat_solve(basis, mat_mul(action, basis));
    if (!c.is_integral()) throw input_error("action does not stabilize the lattice");
    Rat d = mat_det(c);
    if (d != 1 && d != -1) throw internal_error("stable isometry with non-unit determinant");
}

GLattice::GLattice(QuadForm ambient_, QMat basis_)
    : GLattice(std::move(ambient_), basis_, QMat::identity(basis_.rows)) {}

GLattice::GLattice(QuadForm ambient_)
    : GLattice(ambient_, QMat::identity(ambient_.dim())) {}

QMat GLattice::gram() const { return mat_mul(mat_mul(mat_transpose(basis), ambient.gram), basis); }

Int torsion_group_order(const TorsionForm& m) {
    Int n(1);
    for (const Int& d : m.orders) n *= d;
    return n;
}

GLattice dual(const GLattice& l) {
    // { x : b(x, column of B) in Z } = (B^T G)^{-1} Z^n.
    QMat db = mat_inverse(mat_mul(mat_transpose(l.basis), l.ambient.gram));
    return GLattice(l.ambient, db, l.action);
}

LatticeReport lattice_report(const GLattice& l) {
    LatticeReport rep;
    QMat g = l.gram();
    rep.integral = g.is_integral();
    Rat d = mat_det(g);
    rep.unimodular = (d == 1 || d == -1);
    rep.even = rep.integral;
    if (rep.integral)
        for (long i = 0; i < g.rows; ++i)
            if (mod_pos(g.at(i, i).get_num(), Int(2)) != 0) {
                rep.even = false;
                break;
            }
    if (rep.integral && !rep.unimodular) {
        // p L_p^vee is inside L_p exactly when every invariant factor of the
        // Gram has p-valuation at most one; the chain makes the last factor
        // carry the maximum.
        SmithForm sf = snf(g);
        Int last = int_of(sf.s.at(g.rows - 1, g.rows - 1));
        for (const auto& [p, e] : factor(abs_int(last)))
            if (e == 1) rep.almost_unimodular_at.push_back(p);
    }
    return rep;
}

TorsionForm discriminant_form(const GLattice& l) {
    QMat g = l.gram();
    if (!g.is_integral()) throw input_error("discriminant form needs an integral lattice");
    long n = l.dim();
    // The lattice sits inside its dual with inclusion matrix equal to the
    // Gram: Lambda = (B g^{-1}) g Z^n.  Diagonalizing g over Z turns the dual
    // basis into one adapted to the quotient.
    SmithForm sf = snf(g);
    QMat e = mat_mul(l.basis, mat_inverse(mat_mul(sf.u, g)));
    QMat full = mat_mul(mat_mul(mat_transpose(e), l.ambient.gram), e);
    QMat induced = mat_solve(e, mat_mul(l.action, e));
    if (!induced.is_integral()) throw internal_error("induced action is not integral on the dual");

    std::vector<long> keep;
    TorsionForm m;
    Int total(1);
    for (long i = 0; i < n; ++i) {
        Int di = int_of(sf.s.at(i, i));
        if (di < 1) throw internal_error("nondegenerate Gram with a vanishing invariant factor");
        total *= di;
        if (di > 1) {
            keep.push_back(i);
            m.orders.push_back(di);
        }
    }
    if (total != abs_int(int_of(mat_det(g)))) throw internal_error("invariant factors do not multiply to the determinant");

    long k = static_cast<long>(keep.size());
    m.generators = QMat(n, k);
    m.pairing = QMat(k, k);
    m.action = QMat(k, k);
    for (long j = 0; j < k; ++j) {
        for (long i = 0; i < n; ++i) m.generators.at(i, j) = e.at(i, keep[j]);
        for (long i = 0; i < k; ++i) {
            m.pairing.at(i, j) = frac_part(full.at(keep[i], keep[j]));
            if (Rat(Rat(m.orders[i]) * m.pairing.at(i, j)).get_den() != 1)
                throw internal_error("pairing denominator exceeds the generator order");
            m.action.at(i, j) = Rat(mod_pos(int_of(induced.at(keep[i], keep[j])), m.orders[i]));
        }
    }
    return m;
}

TorsionForm p_part(const TorsionForm& m, const Int& p) {
    if (!is_prime(p)) throw input_error("p_part needs a prime");
    std::vector<long> keep;
    std::vector<Int> odd_part, pk;
    for (long i = 0; i < m.size(); ++i) {
        Int cof;
        unsigned long a = remove_factor(m.orders[i], p, cof);
        if (a == 0) continue;
        keep.push_back(i);
        odd_part.push_back(cof);
        pk.push_back(pow_int(p, a));
    }
    long k = static_cast<long>(keep.size());
    TorsionForm out;
    out.orders = pk;
    out.generators = QMat(m.generators.rows, k);
    out.pairing = QMat(k, k);
    out.action = QMat(k, k);
    for (long j = 0; j < k; ++j) {
        // The p-component of g_i is u_i * (cof_i g_i) with u_i cof_i = 1 mod p^{a_i},
        // so the projected generator is g_j' = cof_j g_j and coordinates pick
        // up u_i at the target.
        for (long i = 0; i < m.generators.rows; ++i)
            out.generators.at(i, j) = Rat(odd_part[j]) * m.generators.at(i, keep[j]);
        for (long i = 0; i < k; ++i) {
            out.pairing.at(i, j) = frac_part(Rat(odd_part[i] * odd_part[j]) * m.pairing.at(keep[i], keep[j]));
            Int c = int_of(m.action.at(keep[i], keep[j]));
            out.action.at(i, j) = Rat(mod_pos(c * odd_part[j] * invmod(odd_part[i], pk[i]), pk[i]));
        }
    }
    return out;
}

GLattice lattice_sum(const GLattice& l, const GLattice& m) {
    require_compatible(l, m);
    return GLattice(l.ambient, lattice_basis(mat_hjoin(l.basis, m.basis)), l.action);
}

GLattice lattice_intersect(const GLattice& l, const GLattice& m) {
    require_compatible(l, m);
    long n = l.dim();
    // Integer pairs (a, b) with B_l a = B_m b correspond bijectively to
    // intersection vectors B_l a; the kernel is saturated, so its image is a
    // basis, not just a finite-index sublattice.
    QMat k = integer_kernel(clear_denominators(mat_hjoin(l.basis, mat_neg(m.basis))));
    if (k.cols != n) throw internal_error("intersection of full lattices lost rank");
    QMat top(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) top.at(i, j) = k.at(i, j);
    return GLattice(l.ambient, lattice_basis(mat_mul(l.basis, top)), l.action);
}

bool lattices_equal(const GLattice& l, const GLattice& m) {
    return l.ambient.gram == m.ambient.gram && same_lattice(l.basis, m.basis);
}

}  // namespace isowitt
