#include "isowitt/exact.hpp"

#include <algorithm>
#include <set>

namespace isowitt {

std::optional<long> valuation(const Rat& x, const Int& p) {
    if (p < 2 || !is_prime(p)) throw input_error("valuation: p must be prime");
    if (x == 0) return std::nullopt;
    Int c;
    long vnum = static_cast<long>(remove_factor(x.get_num(), p, c));
    long vden = static_cast<long>(remove_factor(x.get_den(), p, c));
    return vnum - vden;
}

Rat unit_part(const Rat& x, const Int& p) {
    if (x == 0) throw input_error("unit_part: x must be nonzero");
    Int nu, du;
    remove_factor(x.get_num(), p, nu);
    remove_factor(x.get_den(), p, du);
    Rat u(nu, du);
    u.canonicalize();
    return u;
}

namespace {

// Brent's cycle variant of Pollard rho; returns a nontrivial factor of the
// odd composite n, or 0 when the iteration budget runs out.
Int pollard_brent(const Int& n, uint64_t& budget) {
    gmp_randclass rnd(gmp_randinit_default);
    rnd.seed(0xb500d1eUL);
    for (int attempt = 0; attempt < 24 && budget > 0; ++attempt) {
        Int y = rnd.get_z_range(n - 3) + 2;
        Int c = rnd.get_z_range(n - 3) + 1;
        Int g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long block = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long steps = std::min(block, r - k);
                if (budget < steps) steps = static_cast<unsigned long>(budget);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs_int(x - y) % n;
                }
                budget -= steps;
                g = gcd_int(q, n);
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                g = gcd_int(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

}  // namespace

std::map<Int, long> factor(Int n, long trial_bound) {
    if (n == 0) throw input_error("factor: n must be nonzero");
    std::map<Int, long> f;
    n = abs_int(n);
    if (n == 1) return f;
    for (Int p = 2; p * p <= n && p <= trial_bound; p = next_prime(p)) {
        if (n % p == 0) {
            Int cof;
            long e = static_cast<long>(remove_factor(n, p, cof));
            f[p] = e;
            n = cof;
        }
    }
    if (n == 1) return f;
    // Split the remaining cofactor with rho; primality is probabilistic
    // (Miller-Rabin), square detection exact.
    uint64_t budget = 1ull << 24;
    std::vector<Int> stack{n};
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            f[m] += 1;
            continue;
        }
        bool split = false;
        for (unsigned long k = 2; pow_int(Int(2), k) <= m; ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
                split = true;
                break;
            }
        }
        if (split) continue;
        Int d = pollard_brent(m, budget);
        if (d == 0)
            throw uncertified("factor: cofactor " + m.get_str() + " not factored within budget");
        stack.push_back(d);
        stack.push_back(divexact(m, d));
    }
    return f;
}

SquareClass square_class(const Rat& x, long trial_bound) {
    if (x == 0) throw input_error("square_class: x must be nonzero");
    // x ~ num * den modulo squares.
    Int n = x.get_num() * x.get_den();
    int s = sign(n);
    auto f = factor(n, trial_bound);
    Int rep = s;
    for (const auto& [p, e] : f)
        if (e % 2 != 0) rep *= p;
    return SquareClass{rep};
}

bool is_local_square(const Rat& x, const Place& v) {
    if (x == 0) throw input_error("is_local_square: x must be nonzero");
    if (v.is_real) return x > 0;
    const Int& p = v.p;
    long val = *valuation(x, p);
    if (val % 2 != 0) return false;
    Rat u = unit_part(x, p);
    // u is a p-adic unit; reduce to an integer residue.
    if (p == 2) {
        Int r = mod_pos(u.get_num() * invmod(u.get_den(), 8), 8);
        return r == 1;
    }
    Int r = mod_pos(u.get_num() * invmod(u.get_den(), p), p);
    return legendre(r, p) == 1;
}

namespace {

// (a, b)_p for odd p via valuations and Legendre symbols.
int hilbert_odd(const Rat& a, const Rat& b, const Int& p) {
    long alpha = *valuation(a, p), beta = *valuation(b, p);
    Rat u = unit_part(a, p), w = unit_part(b, p);
    Int ur = mod_pos(u.get_num() * invmod(u.get_den(), p), p);
    Int wr = mod_pos(w.get_num() * invmod(w.get_den(), p), p);
    int eps = ((p - 1) / 2) % 2 == 0 ? 1 : -1;  // (-1|p)
    int r = 1;
    if ((alpha % 2) && (beta % 2) && eps == -1) r = -r;
    if (beta % 2 && legendre(ur, p) == -1) r = -r;
    if (alpha % 2 && legendre(wr, p) == -1) r = -r;
    return r;
}

// (a, b)_2 via the classical mod-8 formula.
int hilbert_two(const Rat& a, const Rat& b) {
    long alpha = *valuation(a, Int(2)), beta = *valuation(b, Int(2));
    Rat u = unit_part(a, Int(2)), w = unit_part(b, Int(2));
    Int ur = mod_pos(u.get_num() * invmod(u.get_den(), 16), 16);
    Int wr = mod_pos(w.get_num() * invmod(w.get_den(), 16), 16);
    auto eps = [](const Int& t) { return to_long(mod_pos((t - 1) / 2, 2)); };
    auto omega = [](const Int& t) { return to_long(mod_pos((t * t - 1) / 8, 2)); };
    long e = eps(ur) * eps(wr) + (alpha % 2 ? omega(wr) : 0) + (beta % 2 ? omega(ur) : 0);
    return e % 2 == 0 ? 1 : -1;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (a == 0 || b == 0) throw input_error("hilbert_symbol: arguments must be nonzero");
    if (v.is_real) return (a < 0 && b < 0) ? -1 : 1;
    if (v.p == 2) return hilbert_two(a, b);
    return hilbert_odd(a, b, v.p);
}

std::vector<Place> relevant_places(const std::vector<Rat>& values, long trial_bound) {
    std::set<Int> primes{Int(2)};
    for (const Rat& x : values) {
        if (x == 0) continue;
        for (const auto& [p, e] : factor(x.get_num() * x.get_den(), trial_bound)) {
            (void)e;
            primes.insert(p);
        }
    }
    std::vector<Place> out{Place::real()};
    for (const Int& p : primes) out.push_back(Place::finite(p));
    return out;
}

}  // namespace isowitt
