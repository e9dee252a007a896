#pragma once

// Places of Q, p-adic valuations, square classes, local square tests and
// Hilbert symbols.  Everything is decided by exact integer arithmetic.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isowitt/errors.hpp"
#include "isowitt/numeric.hpp"

namespace isowitt {

// A place of Q: the real place or a finite prime.
struct Place {
    bool is_real = false;
    Int p = 0;  // the prime when finite

    static Place real() { return Place{true, 0}; }
    static Place finite(Int prime) { return Place{false, std::move(prime)}; }

    bool operator==(const Place& o) const { return is_real == o.is_real && p == o.p; }
    bool operator<(const Place& o) const {
        if (is_real != o.is_real) return is_real;  // real place sorts first
        return p < o.p;
    }
    std::string str() const { return is_real ? "real" : p.get_str(); }
};

// A class in Q^x / (Q^x)^2, held as its signed squarefree representative.
struct SquareClass {
    Int rep = 1;

    bool is_trivial() const { return rep == 1; }
    bool operator==(const SquareClass& o) const { return rep == o.rep; }
    SquareClass operator*(const SquareClass& o) const {
        Int g = gcd_int(rep, o.rep);
        return SquareClass{divexact(rep, g) * divexact(o.rep, g)};
    }
};

// v_p(x); empty = +infinity (x = 0).  p must be prime.
std::optional<long> valuation(const Rat& x, const Int& p);

// Unit part u with x = p^{v_p(x)} * u (x != 0).
Rat unit_part(const Rat& x, const Int& p);

// Prime factorization by trial division up to trial_bound, then probabilistic
// primality on the cofactor.  Throws uncertified when the cofactor is neither
// provably prime nor a perfect power of a certified smaller factorization.
std::map<Int, long> factor(Int n, long trial_bound = 1'000'000);

// Signed squarefree representative of x modulo squares (x != 0).
SquareClass square_class(const Rat& x, long trial_bound = 1'000'000);

// Is x a square in the completion Q_v?  (x != 0.)
bool is_local_square(const Rat& x, const Place& v);

// Hilbert symbol (a, b)_v in {+1, -1}; a, b != 0.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// All places where a or b could have a nontrivial symbol: real, 2, and odd
// primes dividing the squarefree parts.  Superset guarantee only.
std::vector<Place> relevant_places(const std::vector<Rat>& values, long trial_bound = 1'000'000);

}  // namespace isowitt
