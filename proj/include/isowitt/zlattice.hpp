#pragma once

// Full-rank integer lattices inside a rational quadratic space, carrying a
// designated isometry: duals, integrality/unimodularity/evenness reports,
// discriminant (torsion) forms through Smith normal form, and their
// p-primary parts.

#include <vector>

#include "isowitt/matrix.hpp"
#include "isowitt/qform.hpp"

namespace isowitt {

// Lattice spanned by the columns of basis inside (V, b), together with an
// isometry of (V, b) that maps the lattice onto itself.
struct GLattice {
    QuadForm ambient;
    QMat basis;
    QMat action;

    GLattice(QuadForm ambient_, QMat basis_, QMat action_);
    GLattice(QuadForm ambient_, QMat basis_);
    explicit GLattice(QuadForm ambient_);

    long dim() const { return ambient.dim(); }
    // Gram matrix of the lattice basis, B^T G B.
    QMat gram() const;
};

// Finite symmetric pairing group Lambda^vee / Lambda: generators g_i of
// orders d_1 | d_2 | ... with b(g_i, g_j) taken mod Z, and the induced
// order-preserving action.
struct TorsionForm {
    std::vector<Int> orders;  // each > 1, divisibility chain
    QMat generators;          // ambient coordinates, one column per generator
    QMat pairing;             // entries in [0, 1), symmetric
    QMat action;              // integer entries, row i meaningful mod orders[i]

    long size() const { return static_cast<long>(orders.size()); }
    bool trivial() const { return orders.empty(); }
};

Int torsion_group_order(const TorsionForm& m);

struct LatticeReport {
    bool integral = false;
    bool unimodular = false;
    bool even = false;
    // Primes p at which the lattice is p-integral with p * dual contained in
    // it but is not already p-unimodular.
    std::vector<Int> almost_unimodular_at;
};

// Dual lattice { x : b(x, L) integral } with the same action.
GLattice dual(const GLattice& l);

LatticeReport lattice_report(const GLattice& l);

// Discriminant form of an integral lattice with the induced action.
TorsionForm discriminant_form(const GLattice& l);

// p-primary component; the pairing and action split off by CRT.
TorsionForm p_part(const TorsionForm& m, const Int& p);

// Sum and intersection; both sides must share the ambient form and action.
GLattice lattice_sum(const GLattice& l, const GLattice& m);
GLattice lattice_intersect(const GLattice& l, const GLattice& m);
bool lattices_equal(const GLattice& l, const GLattice& m);

}  // namespace isowitt
