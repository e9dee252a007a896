#pragma once

// The prime 2 layer: which even unimodular Z_2-lattices exist inside a
// rational form (H-planes only, or one N-plane and the rest H), the spinor
// norm of a special-orthogonal transformation, the three-part criterion for
// a stable even unimodular lattice over Z_2, and the explicit even-neighbor
// construction that upgrades an odd unimodular lattice.

#include <utility>

#include "isowitt/exact.hpp"
#include "isowitt/matrix.hpp"
#include "isowitt/qform.hpp"
#include "isowitt/reduction.hpp"
#include "isowitt/zlattice.hpp"

namespace isowitt {

// Spinor norm of a special-orthogonal transformation, as a square class of
// the base field.
struct SpinorClass {
    SquareClass value;
};

// Evaluated on the maximal subspace V0 where 1 + alpha is nilpotent and its
// orthogonal complement V1: the class of det(b|V0) * det((1+alpha)/2 | V1).
// Rejects alpha outside SO(f).
SpinorClass spinor_norm(const QuadForm& f, const QMat& alpha);

enum class EvenClassType { none, h_power, n_h_power };

struct TwoAdicEvenClass {
    bool exists = false;
    EvenClassType type = EvenClassType::none;
};

// Does the form contain an even unimodular Z_2-lattice, and of which shape?
// Even unimodular Z_2-lattices are stacks of hyperbolic planes H, possibly
// with one plane replaced by the norm plane N = [[2,-1],[-1,2]]; the two
// families have discriminant 1 and -3.  Requires even dimension.
TwoAdicEvenClass two_adic_even_class(const QuadForm& f);

struct EvenCriterion {
    bool verdict = false;
    bool stable_unimodular = false;  // (i)   stable unimodular lattice at 2
    bool even_class = false;         // (ii)  even unimodular Z_2-lattice in the form
    bool spinor_parity = false;      // (iii) v_2 of the spinor norm is even
};

// A form with special-orthogonal action contains a stable even unimodular
// Z_2-lattice exactly when all three component conditions hold.  An isometry
// with non-integral characteristic polynomial fails (i); enumeration limits
// surface as budget_exceeded.
EvenCriterion even_criterion(const QuadForm& v, const QMat& a,
                             long cap = reduction_default_cap,
                             long budget = witt_default_budget);

// The two even unimodular neighbors of a lattice that is unimodular but odd
// at 2: restrict to the even part { x : b(x,x) even }, then return the two
// even ones among its three unimodular overlattices.  Both neighbors are
// checked to be stable under the action (uncertified otherwise; the spinor
// parity condition rules that out).  Rejects lattices that are even, not
// 2-unimodular, or whose 2-adic discriminant admits no even neighbor.
std::pair<GLattice, GLattice> even_neighbors(const GLattice& l);

}  // namespace isowitt
