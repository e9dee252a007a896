#pragma once

// From a rational form with an isometry of integral characteristic
// polynomial to its p-local obstruction: build a stable lattice, enlarge it
// until the discriminant p-part has exponent one and no stable isotropic
// elements left, read off the boundary Witt class over F_p, and construct a
// p-unimodular stable lattice exactly when that class vanishes.

#include <optional>

#include "isowitt/equiwitt.hpp"
#include "isowitt/matrix.hpp"
#include "isowitt/qform.hpp"
#include "isowitt/zlattice.hpp"

namespace isowitt {

// Cap on the discriminant p-group, as an exponent: order at most p^cap.
inline constexpr long reduction_default_cap = 12;

// The p-local obstruction class: a symmetric form over F_p with an
// orthogonal operator, trivial exactly when a stable p-unimodular lattice
// exists.
struct BoundaryClass {
    Int prime;
    FqForm form;
};

// The Z[A]-span of the standard basis: the smallest A-stable lattice
// containing Z^n.  Throws unbounded when the characteristic polynomial of A
// is not integral (then no A-stable lattice exists at all).
GLattice initial_lattice(const QuadForm& v, const QMat& a);

// Rescale by an integer (a p-power times a prime-to-p unit that clears the
// remaining denominators) so the Gram matrix is integral, then enlarge by
// stable isotropic discriminant elements until the p-part of the
// discriminant form has exponent one and no stable isotropic vector is
// left.  Away from p the localization is only moved by the unit rescale.
GLattice almost_unimodular(const GLattice& l, const Int& p, long cap = reduction_default_cap);

// The class of the discriminant p-part of an almost unimodular stable
// lattice in V, independent of every choice made along the way.
BoundaryClass boundary(const QuadForm& v, const QMat& a, const Int& p, long cap = reduction_default_cap);

// A p-unimodular A-stable lattice in V, or nullopt when the boundary class
// is nonzero.  budget caps the lagrangian search.
std::optional<GLattice> unimodular_witness(const QuadForm& v, const QMat& a, const Int& p,
                                           long cap = reduction_default_cap,
                                           long budget = witt_default_budget);

}  // namespace isowitt
