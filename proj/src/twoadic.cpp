#include "isowitt/twoadic.hpp"

#include <vector>

#include "isowitt/errors.hpp"

namespace isowitt {

namespace {

void require_special_orthogonal(const QuadForm& f, const QMat& a) {
    if (!a.is_square() || a.rows != f.dim())
        throw input_error("transformation does not match the form dimension");
    if (mat_mul(mat_mul(mat_transpose(a), f.gram), a) != f.gram)
        throw input_error("transformation is not an isometry of the form");
    if (mat_det(a) != 1) throw input_error("isometry has determinant -1");
}

// Coordinates of image in the span of the (independent) columns.
QMat restrict_to(const QMat& cols, const QMat& image) {
    QMat gt = mat_transpose(cols);
    QMat x = mat_solve(mat_mul(gt, cols), mat_mul(gt, image));
    if (mat_mul(cols, x) != image) throw internal_error("subspace is not invariant");
    return x;
}

QMat reference_even_gram(EvenClassType type, long planes) {
    QMat g = type == EvenClassType::n_h_power ? gram_n() : gram_hyperbolic();
    for (long i = 1; i < planes; ++i) g = mat_dsum(g, gram_hyperbolic());
    return g;
}

}  // namespace

SpinorClass spinor_norm(const QuadForm& f, const QMat& alpha) {
    require_special_orthogonal(f, alpha);
    long n = f.dim();
    QMat one_plus = mat_add(QMat::identity(n), alpha);
    QMat nil = QMat::identity(n);
    for (long i = 0; i < n; ++i) nil = mat_mul(nil, one_plus);
    QMat v0 = mat_kernel(nil);

    // b restricted to the generalized (-1)-eigenspace is nondegenerate, so
    // the complement splits off orthogonally.
    Rat det0(1);
    if (v0.cols > 0) det0 = mat_det(mat_mul(mat_mul(mat_transpose(v0), f.gram), v0));
    if (det0 == 0) throw internal_error("degenerate restriction in the spinor norm");

    Rat det1(1);
    if (v0.cols < n) {
        QMat v1 = v0.cols == 0 ? QMat::identity(n) : mat_kernel(mat_mul(mat_transpose(v0), f.gram));
        QMat half = mat_scale(one_plus, Rat(1, 2));
        det1 = mat_det(restrict_to(v1, mat_mul(half, v1)));
        if (det1 == 0) throw internal_error("1 + alpha is singular off its nilpotent part");
    }
    return SpinorClass{square_class(Rat(det0 * det1))};
}

TwoAdicEvenClass two_adic_even_class(const QuadForm& f) {
    if (f.dim() % 2 != 0) throw input_error("even unimodular lattices have even rank");
    if (f.dim() == 0) return {true, EvenClassType::h_power};
    long planes = f.dim() / 2;
    Place two = Place::finite(Int(2));
    for (EvenClassType type : {EvenClassType::h_power, EvenClassType::n_h_power}) {
        QuadForm ref(reference_even_gram(type, planes));
        if (locally_equivalent(f, ref, two)) return {true, type};
    }
    return {false, EvenClassType::none};
}

EvenCriterion even_criterion(const QuadForm& v, const QMat& a, long cap, long budget) {
    require_special_orthogonal(v, a);
    EvenCriterion out;
    try {
        out.stable_unimodular = unimodular_witness(v, a, Int(2), cap, budget).has_value();
    } catch (const unbounded&) {
        // No stable lattice exists at all.
        out.stable_unimodular = false;
    }
    out.even_class = v.dim() % 2 == 0 && two_adic_even_class(v).exists;
    Int rep = spinor_norm(v, a).value.rep;
    out.spinor_parity = rep % 2 != 0;
    out.verdict = out.stable_unimodular && out.even_class && out.spinor_parity;
    return out;
}

std::pair<GLattice, GLattice> even_neighbors(const GLattice& l) {
    QMat g = l.gram();
    long n = g.rows;
    if (!g.is_integral()) throw input_error("lattice is not integral");
    Int det = mat_det(g).get_num();
    if (det % 2 == 0) throw input_error("lattice is not unimodular at 2");

    // The even part is the kernel of the parity functional x -> b(x,x) mod 2.
    long pivot = -1;
    for (long i = 0; i < n; ++i)
        if (g.at(i, i).get_num() % 2 != 0) {
            pivot = i;
            break;
        }
    if (pivot < 0) throw input_error("lattice is already even at 2");
    QMat shrink(n, n);
    for (long i = 0; i < n; ++i) {
        if (i == pivot) {
            shrink.at(i, i) = Rat(2);
            continue;
        }
        shrink.at(i, i) = Rat(1);
        if (g.at(i, i).get_num() % 2 != 0) shrink.at(pivot, i) = Rat(-1);
    }
    GLattice even_part(l.ambient, lattice_basis(mat_mul(l.basis, shrink)), l.action);

    // Unimodular overlattices correspond to isotropic order-2 subgroups of
    // the discriminant group; keep the even ones.
    TorsionForm t = p_part(discriminant_form(even_part), Int(2));
    long k = t.size();
    std::vector<GLattice> found;
    for (long mask = 1; mask < (1L << k); ++mask) {
        QMat c(k, 1);
        for (long i = 0; i < k; ++i) {
            Int half = Int(t.orders[static_cast<size_t>(i)] / 2);
            c.at(i, 0) = (mask >> i) & 1 ? Rat(half) : Rat(0);
        }
        Rat self = mat_mul(mat_mul(mat_transpose(c), t.pairing), c).at(0, 0);
        if (self.get_den() != 1) continue;
        QMat enlarged = lattice_basis(mat_hjoin(even_part.basis, mat_mul(t.generators, c)));
        QMat eg = mat_mul(mat_mul(mat_transpose(enlarged), l.ambient.gram), enlarged);
        if (!eg.is_integral()) continue;
        bool even = true;
        for (long i = 0; i < n; ++i)
            if (eg.at(i, i).get_num() % 2 != 0) even = false;
        if (!even) continue;
        if (mat_det(eg).get_num() % 2 == 0) continue;
        try {
            found.emplace_back(l.ambient, enlarged, l.action);
        } catch (const input_error&) {
            throw uncertified("even neighbor is not stable under the action");
        }
    }
    if (found.size() != 2)
        throw input_error("even part does not have two even unimodular overlattices at 2");
    return {found[0], found[1]};
}

}  // namespace isowitt
