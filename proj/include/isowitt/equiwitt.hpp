#pragma once

// Witt classes of symmetric forms over prime fields carrying an isometry:
// isotypic splitting along the minimal polynomial, isotropic sub-quotients,
// neutrality by exhaustive stable-lagrangian search, and the exponent
// reduction of p-primary torsion forms down to F_p.

#include <optional>
#include <vector>

#include "isowitt/matrix.hpp"
#include "isowitt/zlattice.hpp"

namespace isowitt {

inline constexpr long witt_default_budget = 10'000'000;

// Symmetric invertible form over F_p with an orthogonal operator.  Entries
// are kept as canonical residues in [0, p).
struct FqForm {
    Int p;
    QMat gram;
    QMat action;

    FqForm(Int p_, QMat gram_, QMat action_);
    FqForm(Int p_, QMat gram_);  // trivial action

    long dim() const { return gram.rows; }
};

struct WittVerdict {
    bool neutral = false;
    // Columns spanning X = X^perp, stable under the action; present exactly
    // when neutral.
    std::optional<QMat> lagrangian;
};

// Witt-group structure maps: orthogonal sum and sign flip V -> V(-1).
FqForm fq_direct_sum(const FqForm& v, const FqForm& w);
FqForm fq_negate(const FqForm& v);

// Split V along the primary components of its operator.  Components whose
// irreducible polynomial f differs from f*(t) = t^{deg f} f(1/t)/f(0) pair
// off into hyperbolic summands and are dropped; the self-dual components
// come back with the restricted form and operator, and their sum has the
// Witt class of V.
std::vector<FqForm> isotypic_decompose(const FqForm& v);

// Induced form on X^perp / X for an action-stable totally isotropic X
// (columns over F_p); the Witt class is preserved.
FqForm sub_quotient(const FqForm& v, const QMat& x);

// Exhaustive search for a stable lagrangian, exact in both directions.
// budget caps the number of subspace extensions attempted.
WittVerdict is_neutral(const FqForm& v, long budget = witt_default_budget);

// Greedy closure to a maximal action-stable totally isotropic subspace
// (columns; zero columns when no nonzero stable isotropic vector exists).
// One deterministic pass: a vector whose closure clashes with a smaller
// subspace clashes with every larger one, so the result is maximal.
QMat maximal_stable_isotropic(const FqForm& v);

// Same Witt class, decided as: V + W(-1) is neutral.
bool witt_equal(const FqForm& v, const FqForm& w, long budget = witt_default_budget);

// Reduce a p-primary torsion form to an F_p form in the same Witt class by
// repeatedly passing to U^perp / U for U = p^{t-1} M until the exponent is
// one, then scaling the pairing by p.
FqForm dagger(const TorsionForm& m, const Int& p);

}  // namespace isowitt
