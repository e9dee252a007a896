#include "isowitt/modpoly.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "isowitt/errors.hpp"

namespace isowitt {

ModPoly ModPoly::from_int_poly(const IntPoly& p, const Int& m) {
    std::vector<Int> c;
    c.reserve(p.c.size());
    for (const Int& a : p.c) c.push_back(mod_pos(a, m));
    return ModPoly(m, std::move(c));
}

void ModPoly::normalize() {
    if (m < 2) throw input_error("ModPoly: modulus must be >= 2");
    for (Int& a : c) a = mod_pos(a, m);
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool ModPoly::operator<(const ModPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (long i = degree(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

IntPoly ModPoly::lift_symmetric() const {
    std::vector<Int> out;
    out.reserve(c.size());
    Int half = m / 2;
    for (const Int& a : c) out.push_back(a > half ? Int(a - m) : a);
    return IntPoly(std::move(out));
}

ModPoly mod_add(const ModPoly& a, const ModPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(static_cast<long>(i)) + b.at(static_cast<long>(i));
    return ModPoly(a.m, std::move(c));
}

ModPoly mod_sub(const ModPoly& a, const ModPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(static_cast<long>(i)) - b.at(static_cast<long>(i));
    return ModPoly(a.m, std::move(c));
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly::zero(a.m);
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return ModPoly(a.m, std::move(c));
}

ModPoly mod_scale(const ModPoly& a, const Int& k) {
    std::vector<Int> c = a.c;
    for (Int& x : c) x *= k;
    return ModPoly(a.m, std::move(c));
}

std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw input_error("mod_divmod: division by zero polynomial");
    Int inv = invmod(b.lc(), a.m);
    ModPoly r = a;
    long db = b.degree();
    if (r.degree() < db) return {ModPoly::zero(a.m), r};
    std::vector<Int> q(r.degree() - db + 1, Int(0));
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        Int coef = mod_pos(r.lc() * inv, a.m);
        q[k] = coef;
        for (long i = 0; i <= db; ++i) r.c[k + i] = mod_pos(r.c[k + i] - coef * b.c[i], a.m);
        r.normalize();
    }
    return {ModPoly(a.m, std::move(q)), r};
}

ModPoly mod_rem(const ModPoly& a, const ModPoly& b) { return mod_divmod(a, b).second; }

ModPoly mod_monic(const ModPoly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return mod_scale(a, invmod(a.lc(), a.m));
}

ModPoly mod_derivative(const ModPoly& a) {
    if (a.degree() < 1) return ModPoly::zero(a.m);
    std::vector<Int> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Int(static_cast<long>(i));
    return ModPoly(a.m, std::move(c));
}

Int mod_eval(const ModPoly& a, const Int& x) {
    Int r = 0;
    for (long i = a.degree(); i >= 0; --i) r = mod_pos(r * x + a.c[i], a.m);
    return r;
}

ModPoly mod_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = mod_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mod_monic(a);
}

ModPoly mod_powmod(const ModPoly& base, const Int& e, const ModPoly& f) {
    if (e < 0) throw input_error("mod_powmod: negative exponent");
    ModPoly r = ModPoly::one(base.m);
    ModPoly b = mod_rem(base, f);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mod_rem(mod_mul(r, b), f);
        if (i + 1 < bits) b = mod_rem(mod_mul(b, b), f);
    }
    return e == 0 ? ModPoly::one(base.m) : r;
}

namespace {

// Extended Euclid over F_p: returns monic g = gcd(a,b) with s a + t b = g.
void mod_gcdext(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) {
    const Int& m = a.m;
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::one(m), s1 = ModPoly::zero(m);
    ModPoly t0 = ModPoly::zero(m), t1 = ModPoly::one(m);
    while (!r1.is_zero()) {
        auto [q, r] = mod_divmod(r0, r1);
        ModPoly s2 = mod_sub(s0, mod_mul(q, s1));
        ModPoly t2 = mod_sub(t0, mod_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) throw internal_error("mod_gcdext: both inputs zero");
    Int inv = invmod(r0.lc(), m);
    g = mod_scale(r0, inv);
    s = mod_scale(s0, inv);
    t = mod_scale(t0, inv);
}

}  // namespace

ModPoly mod_invert(const ModPoly& a, const ModPoly& f) {
    ModPoly g, s, t;
    mod_gcdext(a, f, g, s, t);
    if (g.degree() != 0) throw input_error("mod_invert: inputs not coprime");
    return mod_rem(s, f);
}

namespace {

// Coefficient-wise p-th root of f = h(x^p) over F_p (Frobenius is identity on F_p).
ModPoly pth_root(const ModPoly& f) {
    unsigned long p = to_ulong(f.m);
    std::vector<Int> c;
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (i % p == 0)
            c.push_back(f.c[i]);
        else if (f.c[i] != 0)
            throw internal_error("pth_root: polynomial is not a p-th power");
    }
    return ModPoly(f.m, std::move(c));
}

// Squarefree decomposition of monic f over F_p: list of (monic squarefree, multiplicity).
std::vector<std::pair<ModPoly, long>> squarefree_decompose(ModPoly f) {
    std::vector<std::pair<ModPoly, long>> out;
    long e = 1;
    while (f.degree() >= 1) {
        ModPoly d = mod_derivative(f);
        if (!d.is_zero()) {
            ModPoly c = mod_gcd(f, d);
            ModPoly w = mod_divmod(f, c).first;
            long i = 1;
            while (w.degree() >= 1) {
                ModPoly y = mod_gcd(w, c);
                ModPoly piece = mod_divmod(w, y).first;
                if (piece.degree() >= 1) out.emplace_back(piece, i * e);
                w = y;
                c = mod_divmod(c, y).first;
                ++i;
            }
            f = std::move(c);
        }
        if (f.degree() < 1) break;
        f = pth_root(f);
        e *= to_long(f.m);
    }
    return out;
}

struct DDFPart {
    long d;       // degree of the irreducible factors in this part
    ModPoly prod;  // their product
};

// Distinct-degree factorization of monic squarefree f.
std::vector<DDFPart> ddf(ModPoly f) {
    std::vector<DDFPart> parts;
    const Int p = f.m;
    ModPoly h = mod_rem(ModPoly::x(p), f);
    long d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            parts.push_back({f.degree(), f});
            break;
        }
        h = mod_powmod(h, p, f);
        ModPoly g = mod_gcd(mod_sub(h, ModPoly::x(p)), f);
        if (g.degree() > 0) {
            parts.push_back({d, g});
            f = mod_divmod(f, g).first;
            h = mod_rem(h, f);
        }
    }
    return parts;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace method for p = 2).
void edf(const ModPoly& f, long d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (f.degree() == d) {
        out.push_back(mod_monic(f));
        return;
    }
    const Int& p = f.m;
    auto random_poly = [&](long deg_bound) {
        std::vector<Int> c;
        c.reserve(deg_bound);
        for (long i = 0; i < deg_bound; ++i) {
            // p is small in every call path; uniform residue from 64 random bits.
            c.emplace_back(mod_pos(Int(static_cast<unsigned long>(rng())), p));
        }
        return ModPoly(p, std::move(c));
    };
    while (true) {
        ModPoly r = random_poly(f.degree());
        if (r.is_zero()) continue;
        ModPoly g;
        if (p == 2) {
            // Trace map u + u^2 + ... + u^{2^{d-1}} lands in F_2 in each factor field.
            ModPoly u = mod_rem(r, f);
            ModPoly tr = u;
            for (long i = 1; i < d; ++i) {
                u = mod_rem(mod_mul(u, u), f);
                tr = mod_add(tr, u);
            }
            g = mod_gcd(tr, f);
        } else {
            Int e = (pow_int(p, static_cast<unsigned long>(d)) - 1) / 2;
            ModPoly s = mod_powmod(r, e, f);
            g = mod_gcd(mod_sub(s, ModPoly::one(p)), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(mod_divmod(f, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<ModFactor> mod_factor(const ModPoly& f_in, std::uint64_t seed) {
    if (f_in.is_zero()) throw input_error("mod_factor: zero polynomial");
    if (!is_prime(f_in.m)) throw input_error("mod_factor: modulus must be prime");
    std::mt19937_64 rng(seed);
    ModPoly f = mod_monic(f_in);
    std::map<ModPoly, long> found;
    for (auto& [sqf, mult] : squarefree_decompose(f)) {
        for (auto& part : ddf(sqf)) {
            std::vector<ModPoly> irr;
            edf(part.prod, part.d, rng, irr);
            for (auto& g : irr) found[g] += mult;
        }
    }
    std::vector<ModFactor> out;
    out.reserve(found.size());
    for (auto& [g, mult] : found) out.push_back({g, mult});
    return out;
}

std::vector<long> mod_factor_degrees(const ModPoly& f) {
    if (!is_prime(f.m)) throw input_error("mod_factor_degrees: modulus must be prime");
    ModPoly g = mod_monic(f);
    if (mod_gcd(g, mod_derivative(g)).degree() != 0)
        throw input_error("mod_factor_degrees: polynomial must be squarefree");
    std::vector<long> degs;
    for (auto& part : ddf(g))
        for (long i = 0; i < part.prod.degree() / part.d; ++i) degs.push_back(part.d);
    std::sort(degs.begin(), degs.end());
    return degs;
}

namespace {

// One linear Hensel step for a pair: given monic G, H mod p^k with
// G*H == target mod p^k and s*Gbar + t*Hbar == 1 over F_p, produce the pair
// mod p^{k+1}.  All integer polys use canonical nonnegative coefficients.
void hensel_pair_step(const IntPoly& target, ModPoly& G, ModPoly& H, const ModPoly& s, const ModPoly& t,
                      const Int& p, const Int& pk, const Int& pk1) {
    // Work with the canonical nonnegative representatives throughout: the
    // p^k-digit corrections below are added to exactly these coefficients.
    IntPoly prod = poly_mul(IntPoly(std::vector<Int>(G.c)), IntPoly(std::vector<Int>(H.c)));
    IntPoly e = poly_sub(target, prod);
    // e == 0 mod p^k; reduce e/p^k mod p.
    std::vector<Int> ec;
    ec.reserve(e.c.size());
    for (const Int& a : e.c) ec.push_back(mod_pos(divexact(a, pk), p));
    ModPoly ebar(p, std::move(ec));
    ModPoly gbar(p, G.c), hbar(p, H.c);
    ModPoly dg = mod_rem(mod_mul(t, ebar), gbar);
    ModPoly dh = mod_rem(mod_mul(s, ebar), hbar);
    auto bump = [&](ModPoly& f, const ModPoly& delta) {
        std::vector<Int> c(std::max(f.c.size(), delta.c.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = mod_pos(f.at(static_cast<long>(i)) + pk * delta.at(static_cast<long>(i)), pk1);
        f = ModPoly(pk1, std::move(c));
    };
    bump(G, dg);
    bump(H, dh);
}

// Lift the coprime pair (A*B == target mod p) to mod p^k.
void hensel_pair(const IntPoly& target, const ModPoly& a_mod_p, const ModPoly& b_mod_p, const Int& p,
                 unsigned long k, ModPoly& G, ModPoly& H) {
    ModPoly g, s, t;
    mod_gcdext(a_mod_p, b_mod_p, g, s, t);
    if (g.degree() != 0) throw internal_error("hensel_pair: factors not coprime mod p");
    G = a_mod_p;
    H = b_mod_p;
    Int pk = p;
    for (unsigned long i = 1; i < k; ++i) {
        Int pk1 = pk * p;
        hensel_pair_step(target, G, H, s, t, p, pk, pk1);
        pk = pk1;
    }
}

void hensel_list(const IntPoly& target, const std::vector<ModPoly>& factors, size_t lo, size_t hi, const Int& p,
                 unsigned long k, std::vector<ModPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(ModPoly::from_int_poly(target, pow_int(p, k)));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    ModPoly a = ModPoly::one(p), b = ModPoly::one(p);
    for (size_t i = lo; i < mid; ++i) a = mod_mul(a, factors[i]);
    for (size_t i = mid; i < hi; ++i) b = mod_mul(b, factors[i]);
    ModPoly G, H;
    hensel_pair(target, a, b, p, k, G, H);
    hensel_list(G.lift_symmetric(), factors, lo, mid, p, k, out);
    hensel_list(H.lift_symmetric(), factors, mid, hi, p, k, out);
}

}  // namespace

std::vector<ModPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors_mod_p, const Int& p,
                                 unsigned long k) {
    if (!f.is_monic()) throw input_error("hensel_lift: polynomial must be monic");
    if (factors_mod_p.empty()) throw input_error("hensel_lift: empty factor list");
    for (const auto& g : factors_mod_p)
        if (!g.is_monic()) throw input_error("hensel_lift: factors must be monic");
    std::vector<ModPoly> out;
    hensel_list(f, factors_mod_p, 0, factors_mod_p.size(), p, k, out);
    // Verify the lift: product must reproduce f mod p^k.
    Int pk = pow_int(p, k);
    ModPoly prod = ModPoly::one(pk);
    for (const auto& g : out) prod = mod_mul(prod, g);
    if (!(prod == ModPoly::from_int_poly(f, pk))) throw internal_error("hensel_lift: verification failed");
    return out;
}

namespace {

Int coeff_l2_bound(const IntPoly& f) {
    Int s = 0;
    for (const Int& a : f.c) s += a * a;
    return isqrt(s) + 1;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Exhaustive factor recombination against the Hensel lift; true = irreducible.
bool zassenhaus_irreducible(const IntPoly& P, const Int& p, std::vector<ModFactor>& factors) {
    size_t r = factors.size();
    if (r == 1) return true;
    if (r > 24) throw uncertified("irreducibility: too many modular factors for recombination");
    unsigned long n = static_cast<unsigned long>(P.degree());
    // Landau-Mignotte: any monic factor has coefficients bounded by binom(n, n/2) * ||P||_2.
    Int bound = binomial(n, n / 2) * coeff_l2_bound(P);
    unsigned long k = 1;
    Int pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }
    std::vector<ModPoly> base;
    base.reserve(r);
    for (auto& mf : factors) base.push_back(mf.f);
    std::vector<ModPoly> lifted = hensel_lift(P, base, p, k);
    QPoly PQ(P);
    std::uint64_t work = 0;
    const std::uint64_t cap = 1ull << 22;
    // Subsets by cardinality; a proper factor exists iff some subset of
    // cardinality <= r/2 multiplies to one (fix index 0 at the midpoint to
    // avoid testing complements twice).
    for (size_t card = 1; 2 * card <= r; ++card) {
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        while (true) {
            bool admissible = !(2 * card == r && idx[0] != 0);
            if (admissible) {
                if (++work > cap) throw uncertified("irreducibility: recombination budget exceeded");
                ModPoly g = ModPoly::one(pk);
                for (size_t i : idx) g = mod_mul(g, lifted[i]);
                IntPoly cand = g.lift_symmetric();
                bool small = true;
                for (const Int& a : cand.c)
                    if (abs_int(a) > bound) {
                        small = false;
                        break;
                    }
                if (small && qpoly_divmod(PQ, QPoly(cand)).second.is_zero()) return false;
            }
            // next combination
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 && idx[pos] == r - card + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return true;
}

}  // namespace

bool irreducible_over_q(const IntPoly& P) {
    long n = P.degree();
    if (n < 1) throw input_error("irreducible_over_q: degree must be >= 1");
    if (!P.is_monic()) throw input_error("irreducible_over_q: polynomial must be monic");
    if (n == 1) return true;
    if (P.c[0] == 0) return false;  // divisible by t
    if (n > 63) throw uncertified("irreducibility: degree beyond supported range");
    // Degree-set sieve: possible proper factor degrees must be consistent mod
    // every prime of good reduction.
    std::uint64_t possible = 0;
    for (long d = 1; d < n; ++d) possible |= (1ull << d);
    Int p = 1;
    int good = 0;
    Int best_p = 0;
    size_t best_count = SIZE_MAX;
    std::vector<long> best_degrees;
    while (good < 25 && p < 300) {
        p = next_prime(p);
        ModPoly pb = ModPoly::from_int_poly(P, p);
        if (pb.degree() != n) continue;  // cannot happen for monic, kept for safety
        if (mod_gcd(pb, mod_derivative(pb)).degree() != 0) continue;
        std::vector<long> degs = mod_factor_degrees(pb);
        ++good;
        if (degs.size() < best_count) {
            best_count = degs.size();
            best_p = p;
            best_degrees = degs;
        }
        std::uint64_t sums = 1;  // sum 0 achievable
        for (long d : degs) sums |= (sums << d);
        std::uint64_t proper = 0;
        for (long d = 1; d < n; ++d)
            if (sums & (1ull << d)) proper |= (1ull << d);
        possible &= proper;
        if (possible == 0) return true;
        if (best_count == 1) return true;
    }
    if (best_p == 0) throw uncertified("irreducibility: no prime of good reduction found");
    auto factors = mod_factor(ModPoly::from_int_poly(P, best_p));
    return zassenhaus_irreducible(P, best_p, factors);
}

}  // namespace isowitt
