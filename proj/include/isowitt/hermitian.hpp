#pragma once

// The algebra E = Q[t]/(S) with the involution sigma: alpha -> alpha^{-1},
// trace forms b_lambda(x, y) = tr(lambda * x * sigma(y)), the splitting of E
// over its sigma-fixed subalgebra E0 above a rational prime, and the theta
// invariants at the places of E0 together with their parity check.

#include <string>
#include <utility>
#include <vector>

#include "isowitt/exact.hpp"
#include "isowitt/matrix.hpp"
#include "isowitt/poly.hpp"
#include "isowitt/qform.hpp"

namespace isowitt {

// Element of E = Q[t]/(S) on the power basis of alpha (the class of t).
struct AlgElement {
    QPoly rep;  // degree < deg S

    bool operator==(const AlgElement& o) const { return rep == o.rep; }
};

// Arithmetic of E = Q[t]/(S), S monic of degree >= 1.
class Algebra {
public:
    explicit Algebra(IntPoly s);

    const IntPoly& modulus() const { return s_; }
    long dim() const { return sq_.degree(); }
    bool reciprocal() const { return reciprocal_; }

    AlgElement element(const QPoly& rep) const;  // reduces mod S
    AlgElement element(const IntPoly& rep) const;
    AlgElement from_rat(const Rat& c) const;
    AlgElement zero() const { return AlgElement{}; }
    AlgElement one() const { return from_rat(Rat(1)); }
    AlgElement alpha() const;

    AlgElement add(const AlgElement& x, const AlgElement& y) const;
    AlgElement sub(const AlgElement& x, const AlgElement& y) const;
    AlgElement neg(const AlgElement& x) const;
    AlgElement mul(const AlgElement& x, const AlgElement& y) const;
    AlgElement scale(const Rat& k, const AlgElement& x) const;
    // Negative exponents invert; x must be a unit for those.
    AlgElement pow(const AlgElement& x, long k) const;
    // Inverse in E; input_error when gcd(rep, S) != 1 (zero divisor or zero).
    AlgElement inverse(const AlgElement& x) const;

    bool is_zero(const AlgElement& x) const { return x.rep.is_zero(); }

    // Ring map alpha -> alpha^{-1}; requires S reciprocal.
    AlgElement sigma(const AlgElement& x) const;
    bool is_sigma_invariant(const AlgElement& x) const;

    // Trace of multiplication by x on E over Q (Newton power sums of S).
    Rat trace(const AlgElement& x) const;

    // Matrix of multiplication by x on the power basis (column j = x*alpha^j).
    QMat mult_matrix(const AlgElement& x) const;

private:
    IntPoly s_;
    QPoly sq_;
    std::vector<Rat> power_traces_;  // trace of alpha^k, k = 0 .. dim-1
    QPoly alpha_inv_;                // rep of alpha^{-1}; empty when S(0) = 0
    bool reciprocal_ = false;
};

AlgElement sigma(const IntPoly& s, const AlgElement& x);
Rat trace(const IntPoly& s, const AlgElement& x);

// Gram matrix of b_lambda(x, y) = tr(lambda x sigma(y)) on 1, alpha, ...,
// alpha^{n-1}.  S must be monic reciprocal and squarefree, lambda a
// sigma-invariant unit; the result is symmetric and non-degenerate.
QuadForm trace_form_gram(const IntPoly& s, const AlgElement& lambda);

// ---- splitting of E over E0 above a rational prime ----------------------

// Type of the quadratic algebra E_w over the completion of E0 at a place w.
// ramified_plus / ramified_minus record the residue of alpha (+1 or -1) at
// an odd ramified place; at p = 2 a ramified place is reported untyped.
enum class place_type { split, unramified, ramified_plus, ramified_minus, ramified };

struct LocalPlace {
    place_type type = place_type::split;
    long residue_degree = 1;  // [k_w : F_p] for the place w of E0
    long ram_index = 1;       // e(w/p); for an uncertified cluster, its multiplicity
    bool certified = false;
};

struct SplittingData {
    Int prime;
    std::vector<LocalPlace> places;

    bool all_certified() const;
};

// Places of E0 above p for S = P^N, P irreducible reciprocal of degree >= 2,
// classified by the type of E_w over E0_w.  A certified entry is an exact
// place of E0.  When the order Z_p[alpha + alpha^{-1}] is not provably
// maximal inside a residue cluster, that whole cluster is reported as one
// uncertified entry whose type is residue-level evidence only (and whose
// ram_index is the cluster multiplicity, not a proven ramification index).
// The entries always satisfy sum(residue_degree * ram_index) = deg(P)/2.
SplittingData local_splitting(const IntPoly& s, const Int& p);

// ---- theta invariants ----------------------------------------------------

enum class theta_kind { real_place, unramified, ramified_odd };

// A place w of E0 at which E_w is a field, in the shape theta needs.
struct ThetaPlace {
    theta_kind kind = theta_kind::real_place;
    Int p = 0;                // residue characteristic for the finite kinds
    long residue_degree = 1;  // [k_w : F_p]; used by ramified_odd
    std::string label;        // free-form descriptor carried into ThetaVector
};

// The local data of lambda at that place; the field read depends on kind.
struct ThetaValue {
    int sign = 1;          // real_place: sign of lambda under the embedding
    long valuation = 0;    // unramified: v_w(lambda)
    Int unit_residue = 1;  // ramified_odd: residue in F_p of the unit part
};

// Z/2 invariant of lambda at one place: real -> sign, unramified ->
// valuation parity, ramified odd -> square class of the unit residue.
// Ramified places of residue characteristic 2 raise unsupported.
int theta(const ThetaPlace& place, const ThetaValue& value);

struct ThetaVector {
    std::vector<std::pair<std::string, int>> entries;  // (place label, Z/2 value)
};

// True iff the entries sum to 0 in Z/2; omitted places contribute 0.
bool local_global_check(const ThetaVector& thetas);

}  // namespace isowitt
