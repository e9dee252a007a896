#pragma once

// Arbitrary-precision integer/rational substrate and small number-theory
// helpers shared by every module.  All arithmetic in this library is exact;
// nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isowitt {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from_string(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not an integer literal: '" + s + "'");
    }
}

// Accepts "p/q" or a plain integer literal.
inline Rat rat_from_string(const std::string& s) {
    try {
        Rat q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
}

// Canonical serialization: "n" when integral, "p/q" otherwise.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign(const Int& a) { return sgn(a); }
inline int sign(const Rat& a) { return sgn(a); }

inline Int abs_int(const Int& a) { return a >= 0 ? a : Int(-a); }

inline bool is_perfect_square(const Int& a) {
    if (a < 0) return false;
    return mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& a) {
    if (a < 0) throw std::domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// 2 = definitely prime, 1 = probably prime, 0 = composite.
inline int probab_prime(const Int& n, int reps = 40) {
    return mpz_probab_prime_p(n.get_mpz_t(), reps);
}

inline bool is_prime(const Int& n) { return probab_prime(n) != 0; }

// Legendre symbol (a|p) for odd prime p.
inline int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a,b) = s*a + t*b
inline Int gcd_ext(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Inverse of a modulo m; throws if not coprime.
inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: element not invertible");
    return r;
}

// Nonnegative representative of a mod m (m > 0).
inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Representative of x + Z in [0, 1).
inline Rat frac_part(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return x - Rat(q);
}

inline Int powmod(Int base, Int exp, const Int& m) {
    if (exp < 0) throw std::domain_error("powmod: negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Exact quotient; throws when b does not divide a.
inline Int divexact(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("divexact by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::domain_error("divexact: not divisible");
    return q;
}

// Largest e with p^e | a (a != 0), also returns a / p^e.
inline unsigned long remove_factor(const Int& a, const Int& p, Int& cofactor) {
    return mpz_remove(cofactor.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
}

// Iterate over primes 2, 3, 5, ... (GMP nextprime; exact for this range).
inline Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline long to_long(const Int& a) {
    if (!a.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return a.get_si();
}

inline unsigned long to_ulong(const Int& a) {
    if (a < 0 || !a.fits_ulong_p()) throw std::overflow_error("integer does not fit in unsigned long");
    return a.get_ui();
}

}  // namespace isowitt
