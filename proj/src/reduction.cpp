#include "isowitt/reduction.hpp"

#include <algorithm>

namespace isowitt {

namespace {

// Scale the basis by c * p^k — c prime to p clearing the off-p denominators,
// k minimal with the Gram p-integral — so the Gram matrix becomes integral
// while the localization at p is inflated as little as possible.
GLattice integral_rescale(const GLattice& l, const Int& p) {
    QMat g = l.gram();
    long min_vp = 0;
    Int unit_den(1);
    for (const Rat& x : g.a) {
        if (x == 0) continue;
        Int den_cof, num_cof;
        long vp = static_cast<long>(remove_factor(x.get_num(), p, num_cof)) -
                  static_cast<long>(remove_factor(x.get_den(), p, den_cof));
        min_vp = std::min(min_vp, vp);
        unit_den = lcm_int(unit_den, den_cof);
    }
    long k = 0;
    while (2 * k + min_vp < 0) ++k;
    Int s = Int(unit_den * pow_int(p, static_cast<unsigned long>(k)));
    if (s == 1) return l;
    return GLattice(l.ambient, mat_scale(l.basis, Rat(s)), l.action);
}

long max_p_exponent(const TorsionForm& t, const Int& p) {
    long e = 0;
    for (const Int& d : t.orders) {
        Int cof;
        e = std::max(e, static_cast<long>(remove_factor(d, p, cof)));
    }
    return e;
}

GLattice enlarged_by(const GLattice& l, const QMat& cols) {
    return GLattice(l.ambient, lattice_basis(mat_hjoin(l.basis, cols)), l.action);
}

}  // namespace

GLattice initial_lattice(const QuadForm& v, const QMat& a) {
    long n = v.dim();
    if (!a.is_square() || a.rows != n) throw input_error("action shape does not match the form");
    if (!qpoly_to_int(mat_charpoly(a)))
        throw unbounded("isometry has a non-integral characteristic polynomial");
    // Z[A] e_i is spanned by the first n powers: the characteristic
    // polynomial is monic integral, so higher powers fold back in.
    QMat gens = QMat::identity(n);
    QMat power = QMat::identity(n);
    for (long i = 1; i < n; ++i) {
        power = mat_mul(a, power);
        gens = mat_hjoin(gens, power);
    }
    return GLattice(v, lattice_basis(gens), a);
}

GLattice almost_unimodular(const GLattice& start, const Int& p, long cap) {
    if (!is_prime(p)) throw input_error("almost unimodular reduction needs a prime");
    if (cap < 0) throw input_error("negative discriminant cap");
    GLattice l = integral_rescale(start, p);
    for (int round = 0;; ++round) {
        if (round > 200) throw internal_error("discriminant enlargement failed to terminate");
        TorsionForm t = p_part(discriminant_form(l), p);
        if (t.trivial()) return l;
        if (torsion_group_order(t) > pow_int(p, static_cast<unsigned long>(cap)))
            throw budget_exceeded("discriminant p-group exceeds the enumeration cap");
        long texp = max_p_exponent(t, p);
        if (texp >= 2) {
            // p^{t-1} M is stable and totally isotropic as soon as t >= 2:
            // pairings scale by p^{2t-2} against denominators p^t.
            l = enlarged_by(l, mat_scale(t.generators, Rat(pow_int(p, static_cast<unsigned long>(texp - 1)))));
            continue;
        }
        QMat x = maximal_stable_isotropic(dagger(t, p));
        if (x.cols == 0) return l;
        l = enlarged_by(l, mat_mul(t.generators, x));
        // Maximality empties the next round's search, which then exits.
    }
}

BoundaryClass boundary(const QuadForm& v, const QMat& a, const Int& p, long cap) {
    GLattice l = almost_unimodular(initial_lattice(v, a), p, cap);
    TorsionForm t = p_part(discriminant_form(l), p);
    return {p, dagger(t, p)};
}

std::optional<GLattice> unimodular_witness(const QuadForm& v, const QMat& a, const Int& p, long cap,
                                           long budget) {
    GLattice l = almost_unimodular(initial_lattice(v, a), p, cap);
    TorsionForm t = p_part(discriminant_form(l), p);
    if (t.trivial()) return l;
    WittVerdict verdict = is_neutral(dagger(t, p), budget);
    if (!verdict.neutral) return std::nullopt;
    // Exponent one and no basis change in dagger: the lagrangian columns are
    // coordinates in t's generators, ready to lift.
    GLattice out = enlarged_by(l, mat_mul(t.generators, *verdict.lagrangian));
    if (!p_part(discriminant_form(out), p).trivial())
        throw internal_error("lagrangian lift did not produce a p-unimodular lattice");
    return out;
}

}  // namespace isowitt
