#include "isowitt/hermitian.hpp"

#include <algorithm>
#include <utility>

#include "isowitt/modpoly.hpp"

namespace isowitt {

namespace {

Rat qpoly_coeff(const QPoly& p, long i) {
    return (i >= 0 && i < static_cast<long>(p.c.size())) ? p.c[i] : Rat(0);
}

}  // namespace

Algebra::Algebra(IntPoly s) : s_(std::move(s)) {
    if (s_.degree() < 1) throw input_error("algebra: modulus must have degree >= 1");
    if (!s_.is_monic()) throw input_error("algebra: modulus must be monic");
    sq_ = QPoly(s_);
    reciprocal_ = is_reciprocal(s_);

    // Newton power sums: trace(alpha^k) for k = 0 .. n-1.
    long n = s_.degree();
    power_traces_.assign(static_cast<size_t>(n), Rat(0));
    power_traces_[0] = Rat(n);
    for (long k = 1; k < n; ++k) {
        Rat acc = Rat(-k) * Rat(s_.at(n - k));
        for (long i = 1; i < k; ++i) acc -= Rat(s_.at(n - i)) * power_traces_[static_cast<size_t>(k - i)];
        power_traces_[static_cast<size_t>(k)] = acc;
    }

    // alpha^{-1} = -(a_1 + a_2 alpha + ... + a_n alpha^{n-1}) / a_0 when a_0 != 0.
    if (s_.at(0) != 0) {
        std::vector<Rat> inv(static_cast<size_t>(n));
        for (long i = 0; i < n; ++i) inv[static_cast<size_t>(i)] = Rat(-s_.at(i + 1)) / Rat(s_.at(0));
        alpha_inv_ = QPoly(std::move(inv));
    }
}

AlgElement Algebra::element(const QPoly& rep) const {
    if (rep.degree() < dim()) return AlgElement{rep};
    return AlgElement{qpoly_divmod(rep, sq_).second};
}

AlgElement Algebra::element(const IntPoly& rep) const { return element(QPoly(rep)); }

AlgElement Algebra::from_rat(const Rat& c) const { return AlgElement{QPoly({c})}; }

AlgElement Algebra::alpha() const { return element(QPoly({Rat(0), Rat(1)})); }

AlgElement Algebra::add(const AlgElement& x, const AlgElement& y) const {
    return AlgElement{qpoly_add(x.rep, y.rep)};
}

AlgElement Algebra::sub(const AlgElement& x, const AlgElement& y) const {
    return AlgElement{qpoly_sub(x.rep, y.rep)};
}

AlgElement Algebra::neg(const AlgElement& x) const { return AlgElement{qpoly_scale(x.rep, Rat(-1))}; }

AlgElement Algebra::mul(const AlgElement& x, const AlgElement& y) const {
    return element(qpoly_mul(x.rep, y.rep));
}

AlgElement Algebra::scale(const Rat& k, const AlgElement& x) const {
    return AlgElement{qpoly_scale(x.rep, k)};
}

AlgElement Algebra::pow(const AlgElement& x, long k) const {
    AlgElement base = k < 0 ? inverse(x) : element(x.rep);
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
    AlgElement acc = one();
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

AlgElement Algebra::inverse(const AlgElement& x) const {
    QPoly u, v;
    QPoly g = qpoly_gcdext(x.rep, sq_, u, v);
    if (g.degree() != 0) throw input_error("inverse: element is not a unit");
    return element(u);
}

AlgElement Algebra::sigma(const AlgElement& x) const {
    if (!reciprocal_) throw input_error("sigma: modulus is not reciprocal");
    AlgElement ai{alpha_inv_};  // reciprocal forces S(0) = 1
    AlgElement acc = zero();
    for (long i = x.rep.degree(); i >= 0; --i) acc = add(mul(acc, ai), from_rat(x.rep.c[static_cast<size_t>(i)]));
    return acc;
}

bool Algebra::is_sigma_invariant(const AlgElement& x) const { return sigma(x) == element(x.rep); }

Rat Algebra::trace(const AlgElement& x) const {
    AlgElement r = element(x.rep);
    Rat t(0);
    for (size_t k = 0; k < r.rep.c.size(); ++k) t += r.rep.c[k] * power_traces_[k];
    return t;
}

QMat Algebra::mult_matrix(const AlgElement& x) const {
    long n = dim();
    QMat m(n, n);
    AlgElement y = element(x.rep);
    AlgElement a = alpha();
    for (long j = 0; j < n; ++j) {
        if (j > 0) y = mul(y, a);
        for (long i = 0; i < n; ++i) m.at(i, j) = qpoly_coeff(y.rep, i);
    }
    return m;
}

AlgElement sigma(const IntPoly& s, const AlgElement& x) { return Algebra(s).sigma(x); }

Rat trace(const IntPoly& s, const AlgElement& x) { return Algebra(s).trace(x); }

QuadForm trace_form_gram(const IntPoly& s, const AlgElement& lambda) {
    Algebra e(s);
    if (!e.reciprocal()) throw input_error("trace_form_gram: modulus is not reciprocal");
    if (qpoly_gcd(QPoly(s), qpoly_derivative(QPoly(s))).degree() != 0)
        throw input_error("trace_form_gram: modulus must be squarefree");
    AlgElement lam = e.element(lambda.rep);
    if (e.is_zero(lam) || qpoly_gcd(lam.rep, QPoly(s)).degree() != 0)
        throw input_error("trace_form_gram: lambda is not a unit");
    if (!e.is_sigma_invariant(lam)) throw input_error("trace_form_gram: lambda is not sigma-invariant");

    // G_{ij} = tr(lambda alpha^i sigma(alpha^j)) = tr(lambda alpha^{i-j}): a
    // Toeplitz matrix over the two-sided trace sequence of lambda.
    long n = e.dim();
    std::vector<Rat> pos(static_cast<size_t>(n)), neg(static_cast<size_t>(n));
    AlgElement a = e.alpha(), ai = e.sigma(a);
    AlgElement up = lam, down = lam;
    pos[0] = neg[0] = e.trace(lam);
    for (long k = 1; k < n; ++k) {
        up = e.mul(up, a);
        down = e.mul(down, ai);
        pos[static_cast<size_t>(k)] = e.trace(up);
        neg[static_cast<size_t>(k)] = e.trace(down);
    }
    QMat g(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            g.at(i, j) = i >= j ? pos[static_cast<size_t>(i - j)] : neg[static_cast<size_t>(j - i)];
    return QuadForm(std::move(g));
}

// ---- local splitting ------------------------------------------------------

namespace {

long canonical_val(const Int& a, const Int& p) {
    if (a == 0) throw internal_error("local_splitting: valuation of a vanished residue");
    Int cof;
    return static_cast<long>(remove_factor(a, p, cof));
}

ModPoly mod_poly_power(const ModPoly& b, long e) {
    ModPoly r = ModPoly::one(b.m);
    for (long i = 0; i < e; ++i) r = mod_mul(r, b);
    return r;
}

// Re-canonicalize the coefficients into a smaller modulus.
ModPoly reduce_to(const ModPoly& a, const Int& m) { return ModPoly(m, a.c); }

Int linear_root(const ModPoly& q) {
    if (q.degree() != 1) throw internal_error("local_splitting: expected a linear residue factor");
    return mod_pos(-q.at(0), q.m);
}

place_type ramified_sign(const Int& root, const Int& p) {
    if (p == 2) return place_type::ramified;
    if (root == mod_pos(Int(2), p)) return place_type::ramified_plus;
    if (root == mod_pos(Int(-2), p)) return place_type::ramified_minus;
    throw internal_error("local_splitting: ramified residue root is not +-2");
}

// Square class of a nonzero element of F_{p^f} = F_p[x]/(qbar), p odd.
place_type euler_type(const ModPoly& u, const ModPoly& qbar, const Int& p, long f) {
    ModPoly ubar = mod_rem(u, qbar);
    if (ubar.is_zero()) throw internal_error("local_splitting: euler test on a non-unit");
    Int ex = divexact(pow_int(p, static_cast<unsigned long>(f)) - 1, Int(2));
    ModPoly w = mod_powmod(ubar, ex, qbar);
    if (w == ModPoly::one(p)) return place_type::split;
    if (w == ModPoly(p, {p - 1})) return place_type::unramified;
    throw internal_error("local_splitting: euler criterion failed");
}

// Classify K(sqrt(u)) for a unit u of the unramified 2-adic field K with
// residue field F_{2^f} = F_2[x]/(qbar), K presented as Z_2[x]/(a8 lift).
// Write u = w0^2 u1 with u1 = 1 mod 2: u1 mod 4 != 1 gives a ramified
// extension; otherwise u1 = 1 + 4d and the extension is split or unramified
// per the Artin-Schreier trace of d over F_2.
place_type two_adic_unit_type(const ModPoly& u8_in, const ModPoly& a8, const ModPoly& qbar, long f) {
    const Int two(2), four(4), eight(8);
    ModPoly u8 = mod_rem(u8_in, a8);
    ModPoly ubar = mod_rem(reduce_to(u8, two), qbar);
    if (ubar.is_zero()) throw internal_error("local_splitting: two-adic unit has zero residue");

    // Square root of the residue via Frobenius, lifted as the 0/1 polynomial.
    ModPoly w0bar = mod_powmod(ubar, pow_int(Int(2), static_cast<unsigned long>(f - 1)), qbar);
    ModPoly sq = mod_rem(mod_mul(ModPoly(eight, w0bar.c), ModPoly(eight, w0bar.c)), a8);

    // Invert sq mod (8, a8): Newton from the residue inverse.
    ModPoly inv(eight, mod_invert(mod_rem(reduce_to(sq, two), qbar), qbar).c);
    for (int step = 0; step < 2; ++step) {
        ModPoly prod = mod_rem(mod_mul(sq, inv), a8);
        inv = mod_rem(mod_mul(inv, mod_sub(ModPoly(eight, {two}), prod)), a8);
    }
    if (!(mod_rem(mod_mul(sq, inv), a8) == ModPoly::one(eight)))
        throw internal_error("local_splitting: two-adic inversion failed");

    ModPoly u1 = mod_rem(mod_mul(u8, inv), a8);
    ModPoly t1 = mod_sub(u1, ModPoly::one(eight));
    bool one_mod_four = true;
    std::vector<Int> dcoef(t1.c.size(), Int(0));
    for (size_t i = 0; i < t1.c.size(); ++i) {
        if (mod_pos(t1.c[i], two) != 0) throw internal_error("local_splitting: unit class not 1 mod 2");
        if (mod_pos(t1.c[i], four) != 0) one_mod_four = false;
        else dcoef[i] = mod_pos(divexact(t1.c[i], four), two);
    }
    if (!one_mod_four) {
        // Only possible over residue field F_2: for f >= 2 the residue of x is
        // a unit and u = x^2 - 4 = x^2 (1 - 4 x^{-2}) is 1 mod 4 up to squares.
        if (f != 1) throw internal_error("local_splitting: ramified unit class over an inert residue field");
        return place_type::ramified;
    }
    ModPoly d = mod_rem(ModPoly(two, dcoef), qbar);
    ModPoly tr = d, frob = d;
    for (long i = 1; i < f; ++i) {
        frob = mod_rem(mod_mul(frob, frob), qbar);
        tr = mod_add(tr, frob);
    }
    if (tr.is_zero()) return place_type::split;
    if (tr == ModPoly::one(two)) return place_type::unramified;
    throw internal_error("local_splitting: residue trace escaped F_2");
}

// Simple cluster: c_lift is an irreducible factor of the trace polynomial
// over Z_p to precision p^K, so the place is unramified over p of residue
// degree f with ring Z_p[x]/(c_lift); classify x^2 - 4 there.
LocalPlace classify_simple_cluster(const ModPoly& c_lift, const ModPoly& qbar, const Int& p) {
    long f = qbar.degree();
    LocalPlace place;
    place.residue_degree = f;
    place.ram_index = 1;
    place.certified = true;

    ModPoly h = mod_rem(ModPoly::from_int_poly(IntPoly({Int(-4), Int(0), Int(1)}), c_lift.m), c_lift);
    if (h.is_zero()) throw internal_error("local_splitting: discriminant precision exhausted");
    long v = -1;
    for (const Int& c : h.c)
        if (c != 0) {
            long vc = canonical_val(c, p);
            if (v < 0 || vc < v) v = vc;
        }

    if (v % 2 == 1) {
        // w ramifies in E: x = alpha + alpha^{-1} must reduce to +-2.
        if (p == 2 && !(qbar == ModPoly::x(p)))
            throw internal_error("local_splitting: two-adic ramification away from x = 0");
        place.type = p == 2 ? place_type::ramified : ramified_sign(linear_root(qbar), p);
        return place;
    }

    Int pv = pow_int(p, static_cast<unsigned long>(v));
    std::vector<Int> ucoef;
    ucoef.reserve(h.c.size());
    for (const Int& c : h.c) ucoef.push_back(divexact(c, pv));
    if (p == 2) {
        std::vector<Int> u8c;
        u8c.reserve(ucoef.size());
        for (const Int& c : ucoef) u8c.push_back(mod_pos(c, Int(8)));
        place.type = two_adic_unit_type(ModPoly(Int(8), u8c), reduce_to(c_lift, Int(8)), qbar, f);
    } else {
        place.type = euler_type(ModPoly(p, ucoef), qbar, p, f);
    }
    return place;
}

// Double root cluster with v_p(disc) exactly 1: the order is p-maximal there
// and the cluster is a single tamely ramified place of E0 with e = 2, f = 1.
LocalPlace classify_tame_cluster(const ModPoly& c_lift, const ModPoly& qbar, const Int& p) {
    if (p == 2) throw internal_error("local_splitting: tame double cluster at p = 2");
    LocalPlace place;
    place.residue_degree = 1;
    place.ram_index = 2;
    place.certified = true;

    Int root = linear_root(qbar);
    Int c2 = mod_eval(c_lift, Int(2)), cm2 = mod_eval(c_lift, Int(-2));
    long v = canonical_val(c2, p) + canonical_val(cm2, p);  // = v_w(x^2 - 4), f = 1
    if (root == mod_pos(Int(2), p) || root == mod_pos(Int(-2), p)) {
        if (v % 2 == 0) throw internal_error("local_splitting: tame contact with even valuation");
        place.type = ramified_sign(root, p);
    } else {
        if (v != 0) throw internal_error("local_splitting: tame cluster with positive valuation away from +-2");
        place.type = legendre(mod_pos(root * root - 4, p), p) == 1 ? place_type::split : place_type::unramified;
    }
    return place;
}

// Cluster where p-maximality of the power order is not established: report
// the whole cluster once, with residue-level evidence as the type.
LocalPlace classify_uncertified_cluster(const ModPoly& qbar, long mult, const Int& p) {
    LocalPlace place;
    place.residue_degree = qbar.degree();
    place.ram_index = mult;
    place.certified = false;

    ModPoly hbar = mod_rem(ModPoly::from_int_poly(IntPoly({Int(-4), Int(0), Int(1)}), p), qbar);
    if (hbar.is_zero()) place.type = p == 2 ? place_type::ramified : ramified_sign(linear_root(qbar), p);
    else if (p == 2) place.type = place_type::split;  // residues mod 2 carry no square-class information
    else place.type = euler_type(hbar, qbar, p, qbar.degree());
    return place;
}

}  // namespace

bool SplittingData::all_certified() const {
    return std::all_of(places.begin(), places.end(), [](const LocalPlace& w) { return w.certified; });
}

SplittingData local_splitting(const IntPoly& s, const Int& p) {
    if (p < 2 || !is_prime(p)) throw input_error("local_splitting: p must be prime");
    PowerDecomposition pd = power_of_irreducible(s);
    if (pd.P.degree() < 2)
        throw input_error("local_splitting: irreducible factor is linear, E is not quadratic over E0");
    if (!is_reciprocal(pd.P)) throw input_error("local_splitting: irreducible factor is not reciprocal");

    IntPoly q = trace_polynomial(pd.P);
    long g = q.degree();

    // Working precision: v_w(x^2 - 4) at any place is bounded through the
    // norm by v_p(Q(2) Q(-2)); the disc valuation covers the Hensel
    // separation and the slack covers the mod-8 unit data at p = 2.
    Int q2 = poly_eval(q, Int(2)), qm2 = poly_eval(q, Int(-2));
    if (q2 == 0 || qm2 == 0) throw internal_error("local_splitting: trace polynomial vanishes at +-2");
    Int disc = poly_discriminant(q);
    if (disc == 0) throw internal_error("local_splitting: trace polynomial is not squarefree");
    long dv = canonical_val(disc, p);
    unsigned long prec = static_cast<unsigned long>(canonical_val(q2, p) + canonical_val(qm2, p) + dv + 6);
    Int pk = pow_int(p, prec);

    std::vector<ModFactor> fac = mod_factor(ModPoly::from_int_poly(q, p));
    std::vector<ModPoly> clusters;
    clusters.reserve(fac.size());
    for (const ModFactor& mf : fac) clusters.push_back(mod_poly_power(mf.f, mf.mult));
    std::vector<ModPoly> lifted;
    if (clusters.size() == 1) lifted.push_back(ModPoly::from_int_poly(q, pk));
    else lifted = hensel_lift(q, clusters, p, prec);
    if (lifted.size() != clusters.size()) throw internal_error("local_splitting: lift lost a cluster");

    SplittingData out;
    out.prime = p;
    long total = 0;
    for (size_t j = 0; j < fac.size(); ++j) {
        if (!(reduce_to(lifted[j], p) == clusters[j]))
            throw internal_error("local_splitting: lifted cluster mismatch");
        LocalPlace place;
        if (fac[j].mult == 1) place = classify_simple_cluster(lifted[j], fac[j].f, p);
        else if (fac[j].mult == 2 && fac[j].f.degree() == 1 && dv == 1)
            place = classify_tame_cluster(lifted[j], fac[j].f, p);
        else place = classify_uncertified_cluster(fac[j].f, fac[j].mult, p);
        total += place.residue_degree * place.ram_index;
        out.places.push_back(place);
    }
    if (total != g) throw internal_error("local_splitting: local degrees do not sum to deg E0");
    return out;
}

// ---- theta ---------------------------------------------------------------

int theta(const ThetaPlace& place, const ThetaValue& value) {
    switch (place.kind) {
        case theta_kind::real_place:
            if (value.sign != 1 && value.sign != -1) throw input_error("theta: sign must be +1 or -1");
            return value.sign < 0 ? 1 : 0;
        case theta_kind::unramified:
            return value.valuation % 2 == 0 ? 0 : 1;
        case theta_kind::ramified_odd: {
            if (place.p == 2) throw unsupported("theta: ramified place of residue characteristic 2");
            if (place.p < 2 || !is_prime(place.p)) throw input_error("theta: residue characteristic must be prime");
            if (place.residue_degree < 1) throw input_error("theta: residue degree must be positive");
            if (mod_pos(value.unit_residue, place.p) == 0) throw input_error("theta: residue is not a unit");
            if (place.residue_degree % 2 == 0) return 0;  // prime-field units are squares upstairs
            return legendre(value.unit_residue, place.p) == 1 ? 0 : 1;
        }
    }
    throw internal_error("theta: unknown place kind");
}

bool local_global_check(const ThetaVector& thetas) {
    int sum = 0;
    for (const auto& [label, value] : thetas.entries) {
        (void)label;
        if (value != 0 && value != 1) throw input_error("local_global_check: entries must be 0 or 1");
        sum ^= value;
    }
    return sum == 0;
}

}  // namespace isowitt
