#include "isowitt/realize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "isowitt/errors.hpp"
#include "isowitt/exact.hpp"
#include "isowitt/modpoly.hpp"
#include "isowitt/qform.hpp"
#include "isowitt/zlattice.hpp"

namespace isowitt {

namespace {

void require_constructive_poly(const IntPoly& s) {
    if (!s.is_monic() || s.degree() < 1) throw input_error("polynomial must be monic");
    Int s1 = poly_eval(s, Int(1)), sm1 = poly_eval(s, Int(-1));
    if (Int(abs(s1)) != 1 || Int(abs(sm1)) != 1)
        throw input_error("constructive case needs |S(1)| = |S(-1)| = 1");
    if (poly_reverse(s) != s) throw input_error("polynomial is not reciprocal");
    // power_of_irreducible copes with repeated factors, which
    // irreducible_over_q cannot (no prime of good reduction exists there)
    try {
        if (power_of_irreducible(s).N != 1)
            throw input_error("polynomial is not irreducible");
    } catch (const not_a_power&) {
        throw input_error("polynomial is not irreducible");
    }
}

bool height_within(const AlgElement& x, const Int& bound) {
    for (const Rat& c : x.rep.c) {
        if (Int(abs(c.get_num())) > bound) return false;
        if (Int(abs(c.get_den())) > bound) return false;
    }
    return true;
}

bool is_order_unit(const Algebra& e, const AlgElement& x) {
    for (const Rat& c : x.rep.c)
        if (c.get_den() != 1) return false;
    Rat n = mat_det(e.mult_matrix(x));
    return n == 1 || n == -1;
}

// +-1 and bounded products of alpha^j + alpha^{-j}, filtered to units of
// Z[alpha] with small coefficients.  Deterministic order, +-1 first.
std::vector<AlgElement> sigma_invariant_units(const Algebra& e, const Int& height) {
    long g = e.dim() / 2;
    std::vector<AlgElement> gens;
    for (long j = 1; j <= g; ++j)
        gens.push_back(e.add(e.pow(e.alpha(), j), e.pow(e.alpha(), -j)));
    std::vector<AlgElement> pool{e.one()};
    for (long i = 0; i < g; ++i) pool.push_back(gens[static_cast<size_t>(i)]);
    for (long i = 0; i < g; ++i)
        for (long j = i; j < g; ++j)
            pool.push_back(e.mul(gens[static_cast<size_t>(i)], gens[static_cast<size_t>(j)]));

    std::vector<AlgElement> out;
    std::set<std::vector<Rat>> seen;
    for (const AlgElement& u : pool) {
        if (!height_within(u, height) || !is_order_unit(e, u)) continue;
        if (!e.is_sigma_invariant(u)) throw internal_error("unit candidate lost sigma-invariance");
        if (!seen.insert(u.rep.c).second) continue;
        out.push_back(u);
        AlgElement m = e.neg(u);
        seen.insert(m.rep.c);
        out.push_back(m);
    }
    return out;
}

Certificate certify(const IntPoly& s, const QMat& g, const QMat& a, long r, long sg) {
    Certificate c;
    c.gram = g;
    c.action = a;
    c.claims = {true, true, r, sg, s};
    bool ok = g.is_integral() && g.is_symmetric() && a.is_integral();
    Rat det = mat_det(g);
    ok = ok && (det == 1 || det == -1);
    for (long i = 0; ok && i < g.rows; ++i) ok = g.at(i, i).get_num() % 2 == 0;
    if (ok) {
        FormInvariants inv = invariants(QuadForm(g));
        ok = inv.r == r && inv.s == sg;
    }
    ok = ok && mat_mul(mat_mul(mat_transpose(a), g), a) == g;
    std::optional<IntPoly> cp = qpoly_to_int(mat_charpoly(a));
    ok = ok && cp.has_value() && *cp == s;
    if (!ok) throw internal_error("certificate re-verification failed");
    c.verified = true;
    return c;
}

}  // namespace

AlgElement gm_lambda(const IntPoly& s) {
    require_constructive_poly(s);
    Algebra e(s);
    long g = e.dim() / 2;
    AlgElement alpha = e.alpha();
    AlgElement sprime = e.element(poly_derivative(s));
    AlgElement lambda = e.mul(e.sub(alpha, e.pow(alpha, -1)),
                              e.mul(e.pow(alpha, g - 1), e.inverse(sprime)));
    if (!e.is_sigma_invariant(lambda)) throw internal_error("twist is not sigma-invariant");
    Rat det = mat_det(trace_form_gram(s, lambda).gram);
    if (det != 1 && det != -1)
        throw internal_error("twist does not make the order unimodular");
    return lambda;
}

std::optional<Certificate> construct(const IntPoly& s, long r, long sg, const Int& unit_height) {
    GateReport gate = check_conditions(s, r, sg);
    if (!gate.verdict) throw input_error("gate conditions fail for the requested signature");
    if (!gate.constructive) throw input_error("constructive case needs |S(1)| = |S(-1)| = 1");
    AlgElement lambda = gm_lambda(s);
    Algebra e(s);
    QMat action = e.mult_matrix(e.alpha());
    for (const AlgElement& u : sigma_invariant_units(e, unit_height)) {
        QuadForm cand = trace_form_gram(s, e.mul(lambda, u));
        FormInvariants inv = invariants(cand);
        if (inv.r != r || inv.s != sg) continue;
        LatticeReport rep = lattice_report(GLattice(cand, QMat::identity(cand.dim()), action));
        if (!rep.even || !rep.unimodular) continue;
        return certify(s, cand.gram, action, r, sg);
    }
    return std::nullopt;
}

FeasibilityReport feasibility_report(const IntPoly& s, long r, long sg) {
    FeasibilityReport out;
    out.gate = check_conditions(s, r, sg);
    const Int& s1 = out.gate.s_at_1;
    const Int& sm1 = out.gate.s_at_minus_1;
    if (s1 == 0 || sm1 == 0) {
        // A root at +-1; the local propositions assume otherwise, and the
        // gate has already failed.
        out.local_pass = false;
        return out;
    }
    std::set<Int> primes{Int(2)};
    for (const auto& [p, mult] : factor(Int(abs(s1 * sm1)))) {
        (void)mult;
        primes.insert(p);
    }
    for (const Int& p : primes) {
        LocalCheck lc;
        lc.p = p;
        Int cof;
        long v1 = static_cast<long>(remove_factor(s1, p, cof));
        long vm1 = static_cast<long>(remove_factor(sm1, p, cof));
        if (p == 2) {
            bool parity = (v1 + vm1) % 2 == 0;
            Int prod = Int(((r + sg) / 2) % 2 != 0 ? Int(-s1 * sm1) : Int(s1 * sm1));
            Place two = Place::finite(Int(2));
            bool cls = is_local_square(Rat(prod), two) ||
                       is_local_square(Rat(Rat(prod) / Rat(-3)), two);
            lc.note = "v_2(S(1)) + v_2(S(-1)) = " + std::to_string(v1 + vm1) +
                      ", class of (-1)^{(r+s)/2} S(1) S(-1) is " +
                      (cls ? "1 or -3" : "neither 1 nor -3");
            lc.pass = parity && cls;
        } else {
            lc.pass = v1 % 2 == 0 && vm1 % 2 == 0;
            lc.note = "v_" + p.get_str() + "(S(1)) = " + std::to_string(v1) + ", v_" +
                      p.get_str() + "(S(-1)) = " + std::to_string(vm1);
        }
        out.local.push_back(lc);
    }
    out.local_pass = std::all_of(out.local.begin(), out.local.end(),
                                 [](const LocalCheck& lc) { return lc.pass; });
    out.consistent = !out.gate.c3 || out.local_pass;
    return out;
}

}  // namespace isowitt
