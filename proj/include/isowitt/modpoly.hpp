#pragma once

// Polynomials over Z/m: field arithmetic and factorization when m is prime,
// plus Hensel lifting of coprime factorizations to prime powers.  Used for
// irreducibility certification and for classifying local splitting data.

#include <cstdint>
#include <vector>

#include "isowitt/numeric.hpp"
#include "isowitt/poly.hpp"

namespace isowitt {

// Coefficients canonical in [0, m); constant term first; no trailing zeros.
struct ModPoly {
    Int m;
    std::vector<Int> c;

    ModPoly() : m(0) {}
    ModPoly(Int modulus, std::vector<Int> coeffs) : m(std::move(modulus)), c(std::move(coeffs)) { normalize(); }
    static ModPoly from_int_poly(const IntPoly& p, const Int& m);
    static ModPoly zero(const Int& m) { return ModPoly(m, {}); }
    static ModPoly one(const Int& m) { return ModPoly(m, {Int(1)}); }
    static ModPoly x(const Int& m) { return ModPoly(m, {Int(0), Int(1)}); }

    void normalize();
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Int at(long i) const { return (i >= 0 && i < static_cast<long>(c.size())) ? c[i] : Int(0); }
    const Int& lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool operator==(const ModPoly& o) const { return c == o.c; }
    bool operator<(const ModPoly& o) const;  // canonical order: degree, then coeffs

    IntPoly lift_symmetric() const;  // coefficients in (-m/2, m/2]
};

ModPoly mod_add(const ModPoly& a, const ModPoly& b);
ModPoly mod_sub(const ModPoly& a, const ModPoly& b);
ModPoly mod_mul(const ModPoly& a, const ModPoly& b);
ModPoly mod_scale(const ModPoly& a, const Int& k);
// Requires lc(b) invertible mod m.
std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b);
ModPoly mod_rem(const ModPoly& a, const ModPoly& b);
ModPoly mod_monic(const ModPoly& a);
ModPoly mod_derivative(const ModPoly& a);
Int mod_eval(const ModPoly& a, const Int& x);
// Monic gcd; m must be prime.
ModPoly mod_gcd(ModPoly a, ModPoly b);
// base^e mod f (f nonconstant).
ModPoly mod_powmod(const ModPoly& base, const Int& e, const ModPoly& f);
// Inverse of a modulo f where the shared modulus is prime; input_error if not coprime.
ModPoly mod_invert(const ModPoly& a, const ModPoly& f);

struct ModFactor {
    ModPoly f;  // monic irreducible
    long mult = 1;
};

// Full factorization over F_p (m prime), deterministic output order.
std::vector<ModFactor> mod_factor(const ModPoly& f, std::uint64_t seed = 0x5eed);

// Multiset of irreducible-factor degrees of squarefree f over F_p, cheaper
// than full factorization (distinct-degree only).
std::vector<long> mod_factor_degrees(const ModPoly& f);

// Lift a pairwise-coprime monic factorization of monic f from mod p to mod
// p^k (k >= 1): returns monic polys mod p^k whose product is f mod p^k.
std::vector<ModPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors_mod_p, const Int& p,
                                 unsigned long k);

// Certified irreducibility over Q of a monic integer polynomial.
// Returns true/false; throws uncertified when the degree-set sieve is
// inconclusive and the recombination fallback exceeds its caps.
bool irreducible_over_q(const IntPoly& P);

}  // namespace isowitt
