#include "isowitt/gate.hpp"

#include "isowitt/errors.hpp"
#include "isowitt/modpoly.hpp"

namespace isowitt {

namespace {

bool square_in_z(const Int& v) { return v >= 0 && is_perfect_square(v); }

}  // namespace

GateReport check_conditions(const IntPoly& s, long r, long sg) {
    if (r < 0 || sg < 0) throw input_error("check_conditions: signature must be nonnegative");
    if (!s.is_monic()) throw input_error("check_conditions: polynomial must be monic");
    PowerDecomposition pd = power_of_irreducible(s);

    GateReport rep;
    rep.s_at_1 = poly_eval(s, Int(1));
    rep.s_at_minus_1 = poly_eval(s, Int(-1));
    rep.congruence_mod8 = (r - sg) % 8 == 0;
    rep.degree_match = s.degree() == r + sg;

    if (rep.s_at_1 == 0 || rep.s_at_minus_1 == 0) {
        // Only the powers of t -/+ 1 may vanish at +/-1: they correspond to
        // +/-identity and succeed exactly when an even unimodular lattice of
        // signature (r, s) exists at all.
        if (pd.P.degree() != 1) throw input_error("check_conditions: S(1) S(-1) = 0 with nonlinear base");
        rep.c1 = is_reciprocal(s);
        rep.c2 = true;
        rep.c3 = true;
        rep.m = 0;
        rep.verdict = rep.c1 && rep.congruence_mod8 && rep.degree_match;
        return rep;
    }

    rep.c1 = is_reciprocal(s);
    if (rep.c1) {
        rep.m = roots_outside_unit_disk(s);
        rep.c2 = rep.m <= r && rep.m <= sg && (r - rep.m) % 2 == 0 && (sg - rep.m) % 2 == 0;
    }
    Int third = rep.s_at_1 * rep.s_at_minus_1;
    if (((r + sg) / 2) % 2 != 0) third = -third;
    rep.c3 = square_in_z(abs_int(rep.s_at_1)) && square_in_z(abs_int(rep.s_at_minus_1)) && square_in_z(third);
    rep.constructive = abs_int(rep.s_at_1) == 1 && abs_int(rep.s_at_minus_1) == 1;
    rep.verdict = rep.c1 && rep.c2 && rep.c3 && rep.congruence_mod8 && rep.degree_match;
    return rep;
}

bool k3_check(const IntPoly& s) {
    if (s.degree() != 22) return false;
    if (!s.is_monic()) return false;
    if (!is_reciprocal(s)) return false;
    Int v1 = poly_eval(s, Int(1)), vm1 = poly_eval(s, Int(-1));
    if (v1 == 0 || vm1 == 0) return false;  // (t -/+ 1) divides, not irreducible
    if (!irreducible_over_q(s)) return false;
    if (roots_outside_unit_disk(s) != 1) return false;
    return square_in_z(abs_int(v1)) && square_in_z(abs_int(vm1)) && square_in_z(-v1 * vm1);
}

std::set<std::pair<long, long>> signature_targets(const IntPoly& s) {
    if (!s.is_monic() || !is_reciprocal(s)) throw input_error("signature_targets: S must be monic reciprocal");
    if (poly_eval(s, Int(1)) == 0 || poly_eval(s, Int(-1)) == 0)
        throw input_error("signature_targets: S(1) S(-1) must be nonzero");
    long m = roots_outside_unit_disk(s);
    long half = (s.degree() - 2 * m) / 2;
    std::set<std::pair<long, long>> out;
    for (long a = 0; a <= half; ++a) out.insert({m + 2 * a, m + 2 * (half - a)});
    return out;
}

}  // namespace isowitt
