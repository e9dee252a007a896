#pragma once

// Exact univariate polynomials over Z and Q: arithmetic, resultants, Sturm
// root counting, reciprocal/trace-polynomial transforms, and the P^N radical
// decomposition with certified irreducibility.

#include <optional>
#include <string>
#include <vector>

#include "isowitt/errors.hpp"
#include "isowitt/numeric.hpp"

namespace isowitt {

// Coefficients constant-term first; no trailing zeros; zero polynomial = {}.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Int& lc() const {
        if (c.empty()) throw internal_error("lc of zero polynomial");
        return c.back();
    }
    Int at(long i) const { return (i >= 0 && i < static_cast<long>(c.size())) ? c[i] : Int(0); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    bool operator==(const IntPoly& o) const { return c == o.c; }
    std::string str() const;
};

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_neg(const IntPoly& a);
IntPoly poly_scale(const IntPoly& a, const Int& k);
IntPoly poly_pow(const IntPoly& a, unsigned long n);
IntPoly poly_derivative(const IntPoly& a);
Int poly_eval(const IntPoly& a, const Int& x);
Rat poly_eval(const IntPoly& a, const Rat& x);
// Exact division; throws when remainder nonzero.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);
// Reverse coefficients: t^deg * a(1/t).
IntPoly poly_reverse(const IntPoly& a);

// Rational-coefficient polynomials (internal work horse for gcd/Sturm).
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    explicit QPoly(const IntPoly& p) {
        c.reserve(p.c.size());
        for (const Int& a : p.c) c.emplace_back(a);
    }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& lc() const {
        if (c.empty()) throw internal_error("lc of zero polynomial");
        return c.back();
    }
    bool operator==(const QPoly& o) const { return c == o.c; }
};

QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_scale(const QPoly& a, const Rat& k);
QPoly qpoly_derivative(const QPoly& a);
Rat qpoly_eval(const QPoly& a, const Rat& x);
// Quotient and remainder; divisor nonzero.
std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b);
// Monic gcd over Q.
QPoly qpoly_gcd(QPoly a, QPoly b);
// Monic g = gcd(a, b) with s a + t b = g.
QPoly qpoly_gcdext(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
QPoly qpoly_monic(const QPoly& a);
QPoly qpoly_pow(const QPoly& a, unsigned long n);
// Largest k with b^k | a (b nonconstant).
long qpoly_multiplicity(QPoly a, const QPoly& b);
// Is every coefficient an integer?
std::optional<IntPoly> qpoly_to_int(const QPoly& a);

// Resultant of a and b over Z (exact, via fraction-free elimination).
Int resultant(const IntPoly& a, const IntPoly& b);
// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
Int poly_discriminant(const IntPoly& f);

// t^{deg} a(1/t) == a(t)?
bool is_reciprocal(const IntPoly& a);

// Q with S(t) = t^g Q(t + 1/t); requires S reciprocal of even degree 2g.
IntPoly trace_polynomial(const IntPoly& S);

// One end of a root-counting interval.
struct SturmBound {
    enum Kind { NEG_INF, FINITE, POS_INF } kind = FINITE;
    Rat value;

    static SturmBound neg_inf() { return {NEG_INF, Rat(0)}; }
    static SturmBound pos_inf() { return {POS_INF, Rat(0)}; }
    static SturmBound at(Rat v) { return {FINITE, std::move(v)}; }
};

// Number of distinct real roots of f in (a, b]; f nonzero.  Multiple roots
// are counted once (the computation squarefree-reduces f first).
long sturm_count(const IntPoly& f, const SturmBound& a, const SturmBound& b);

// Result of the S = P^N decomposition.
struct PowerDecomposition {
    IntPoly P;  // monic irreducible radical
    long N = 1;
};

// Decompose monic S as P^N with P certified irreducible.  Throws not_a_power
// when S has two distinct irreducible factors or unequal multiplicities, and
// uncertified when irreducibility cannot be decided within the configured
// work caps.
PowerDecomposition power_of_irreducible(const IntPoly& S);

// m(S): number of roots of S outside the closed unit disk, with multiplicity.
// Requires monic reciprocal S = P^N with S(1)S(-1) != 0.
long roots_outside_unit_disk(const IntPoly& S);

}  // namespace isowitt
