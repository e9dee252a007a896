#include "isowitt/poly.hpp"

#include <algorithm>
#include <sstream>

#include "isowitt/modpoly.hpp"

namespace isowitt {

std::string IntPoly::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const Int& a = c[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Int m = abs_int(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i >= 1) {
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) + b.at(i);
    return IntPoly(std::move(c));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) - b.at(i);
    return IntPoly(std::move(c));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(c));
}

IntPoly poly_neg(const IntPoly& a) {
    std::vector<Int> c = a.c;
    for (Int& x : c) x = -x;
    return IntPoly(std::move(c));
}

IntPoly poly_scale(const IntPoly& a, const Int& k) {
    std::vector<Int> c = a.c;
    for (Int& x : c) x *= k;
    return IntPoly(std::move(c));
}

IntPoly poly_pow(const IntPoly& a, unsigned long n) {
    IntPoly r(std::vector<Int>{Int(1)});
    IntPoly base = a;
    while (n) {
        if (n & 1) r = poly_mul(r, base);
        n >>= 1;
        if (n) base = poly_mul(base, base);
    }
    return r;
}

IntPoly poly_derivative(const IntPoly& a) {
    if (a.degree() < 1) return IntPoly();
    std::vector<Int> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Int(static_cast<long>(i));
    return IntPoly(std::move(c));
}

Int poly_eval(const IntPoly& a, const Int& x) {
    Int r = 0;
    for (long i = a.degree(); i >= 0; --i) r = r * x + a.c[i];
    return r;
}

Rat poly_eval(const IntPoly& a, const Rat& x) {
    Rat r = 0;
    for (long i = a.degree(); i >= 0; --i) r = r * x + Rat(a.c[i]);
    return r;
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = qpoly_divmod(QPoly(a), QPoly(b));
    if (!r.is_zero()) throw internal_error("poly_divexact: nonzero remainder");
    auto qi = qpoly_to_int(q);
    if (!qi) throw internal_error("poly_divexact: non-integral quotient");
    return *qi;
}

IntPoly poly_reverse(const IntPoly& a) {
    std::vector<Int> c(a.c.rbegin(), a.c.rend());
    return IntPoly(std::move(c));
}

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
        Rat x = i < a.c.size() ? a.c[i] : Rat(0);
        Rat y = i < b.c.size() ? b.c[i] : Rat(0);
        c[i] = x + y;
    }
    return QPoly(std::move(c));
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
    std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) {
        Rat x = i < a.c.size() ? a.c[i] : Rat(0);
        Rat y = i < b.c.size() ? b.c[i] : Rat(0);
        c[i] = x - y;
    }
    return QPoly(std::move(c));
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return QPoly(std::move(c));
}

QPoly qpoly_scale(const QPoly& a, const Rat& k) {
    std::vector<Rat> c = a.c;
    for (Rat& x : c) x *= k;
    return QPoly(std::move(c));
}

QPoly qpoly_derivative(const QPoly& a) {
    if (a.degree() < 1) return QPoly();
    std::vector<Rat> c(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(c));
}

Rat qpoly_eval(const QPoly& a, const Rat& x) {
    Rat r = 0;
    for (long i = a.degree(); i >= 0; --i) r = r * x + a.c[i];
    return r;
}

std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw input_error("qpoly_divmod: division by zero polynomial");
    QPoly r = a;
    long db = b.degree();
    if (r.degree() < db) return {QPoly(), r};
    std::vector<Rat> q(r.degree() - db + 1, Rat(0));
    Rat inv_lc = Rat(1) / b.lc();
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        Rat coef = r.lc() * inv_lc;
        q[k] = coef;
        for (long i = 0; i <= db; ++i) r.c[k + i] -= coef * b.c[i];
        r.trim();
    }
    return {QPoly(std::move(q)), r};
}

QPoly qpoly_monic(const QPoly& a) {
    if (a.is_zero()) return a;
    return qpoly_scale(a, Rat(1) / a.lc());
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = qpoly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return qpoly_monic(a);
}

QPoly qpoly_gcdext(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b;
    QPoly s0(std::vector<Rat>{Rat(1)}), s1;
    QPoly t0, t1(std::vector<Rat>{Rat(1)});
    while (!r1.is_zero()) {
        auto [q, r] = qpoly_divmod(r0, r1);
        QPoly s2 = qpoly_sub(s0, qpoly_mul(q, s1));
        QPoly t2 = qpoly_sub(t0, qpoly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) throw input_error("qpoly_gcdext: both inputs zero");
    Rat inv = Rat(1) / r0.lc();
    s = qpoly_scale(s0, inv);
    t = qpoly_scale(t0, inv);
    return qpoly_scale(r0, inv);
}

QPoly qpoly_pow(const QPoly& a, unsigned long n) {
    QPoly r(std::vector<Rat>{Rat(1)});
    QPoly base = a;
    while (n) {
        if (n & 1) r = qpoly_mul(r, base);
        n >>= 1;
        if (n) base = qpoly_mul(base, base);
    }
    return r;
}

long qpoly_multiplicity(QPoly a, const QPoly& b) {
    if (b.degree() < 1) throw input_error("qpoly_multiplicity: divisor must be nonconstant");
    long k = 0;
    while (!a.is_zero()) {
        auto [q, r] = qpoly_divmod(a, b);
        if (!r.is_zero()) break;
        ++k;
        a = std::move(q);
    }
    return k;
}

std::optional<IntPoly> qpoly_to_int(const QPoly& a) {
    std::vector<Int> c;
    c.reserve(a.c.size());
    for (const Rat& x : a.c) {
        if (x.get_den() != 1) return std::nullopt;
        c.push_back(x.get_num());
    }
    return IntPoly(std::move(c));
}

namespace {

// Fraction-free Bareiss determinant of an integer matrix (destructive).
Int bareiss_det(std::vector<std::vector<Int>>& m) {
    long n = static_cast<long>(m.size());
    if (n == 0) return Int(1);
    Int denom = 1;
    int sgn_acc = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Int(0);
            std::swap(m[k], m[piv]);
            sgn_acc = -sgn_acc;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = divexact(m[i][j], denom);
            }
            m[i][k] = 0;
        }
        denom = m[k][k];
    }
    return sgn_acc > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return Int(0);
    long m = a.degree(), n = b.degree();
    if (m == 0) return pow_int(a.c[0], static_cast<unsigned long>(n));
    if (n == 0) return pow_int(b.c[0], static_cast<unsigned long>(m));
    // Sylvester matrix, (m+n) x (m+n).
    long d = m + n;
    std::vector<std::vector<Int>> s(d, std::vector<Int>(d, Int(0)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) s[i][i + j] = a.c[m - j];
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) s[n + i][i + j] = b.c[n - j];
    return bareiss_det(s);
}

Int poly_discriminant(const IntPoly& f) {
    long n = f.degree();
    if (n < 1) throw input_error("poly_discriminant: degree must be >= 1");
    Int r = resultant(f, poly_derivative(f));
    Int d = divexact(r, f.lc());
    long e = (n * (n - 1)) / 2;
    return e % 2 == 0 ? d : Int(-d);
}

bool is_reciprocal(const IntPoly& a) {
    if (a.is_zero()) return false;
    return poly_reverse(a) == a;
}

IntPoly trace_polynomial(const IntPoly& S) {
    long d = S.degree();
    if (d < 2 || d % 2 != 0) throw input_error("trace_polynomial: degree must be even and >= 2");
    if (!is_reciprocal(S)) throw input_error("trace_polynomial: polynomial is not reciprocal");
    long g = d / 2;
    // S(t) = sum_j q_j t^{g-j} (t^2+1)^j; extract q_g..q_0 downward.
    IntPoly r = S;
    std::vector<Int> q(g + 1, Int(0));
    IntPoly t2p1(std::vector<Int>{Int(1), Int(0), Int(1)});
    for (long j = g; j >= 0; --j) {
        q[j] = r.at(g + j);
        if (q[j] != 0) {
            IntPoly term = poly_pow(t2p1, static_cast<unsigned long>(j));
            // multiply by t^{g-j}
            std::vector<Int> shifted(static_cast<size_t>(g - j), Int(0));
            shifted.insert(shifted.end(), term.c.begin(), term.c.end());
            r = poly_sub(r, poly_scale(IntPoly(std::move(shifted)), q[j]));
        }
    }
    if (!r.is_zero()) throw internal_error("trace_polynomial: residue after extraction");
    return IntPoly(std::move(q));
}

namespace {

int sign_at(const QPoly& f, const SturmBound& x) {
    if (f.is_zero()) return 0;
    switch (x.kind) {
        case SturmBound::POS_INF:
            return sign(f.lc());
        case SturmBound::NEG_INF:
            return f.degree() % 2 == 0 ? sign(f.lc()) : -sign(f.lc());
        default:
            return sign(qpoly_eval(f, x.value));
    }
}

// Sign-variation count just right of x for the Sturm chain of squarefree f.
long variations_right(const std::vector<QPoly>& chain, const SturmBound& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const QPoly& f : chain) signs.push_back(sign_at(f, x));
    // At a root of chain[0], the sign just to the right equals sign of chain[1].
    if (signs[0] == 0) {
        if (chain.size() < 2) throw internal_error("sturm: constant chain with zero value");
        signs[0] = signs[1];
    }
    long v = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

long sturm_count(const IntPoly& f, const SturmBound& a, const SturmBound& b) {
    if (f.is_zero()) throw input_error("sturm_count: zero polynomial");
    QPoly f0(f);
    QPoly g = qpoly_gcd(f0, qpoly_derivative(f0));
    if (g.degree() >= 1) f0 = qpoly_divmod(f0, g).first;  // squarefree part
    if (f0.degree() < 1) return 0;
    std::vector<QPoly> chain{f0, qpoly_derivative(f0)};
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const QPoly& p2 = chain[chain.size() - 2];
        const QPoly& p1 = chain.back();
        if (p1.is_zero()) break;
        QPoly r = qpoly_divmod(p2, p1).second;
        if (r.is_zero()) break;
        chain.push_back(qpoly_scale(r, Rat(-1)));
    }
    return variations_right(chain, a) - variations_right(chain, b);
}

PowerDecomposition power_of_irreducible(const IntPoly& S) {
    if (S.degree() < 1) throw input_error("power_of_irreducible: degree must be >= 1");
    if (!S.is_monic()) throw input_error("power_of_irreducible: polynomial must be monic");
    QPoly s(S);
    QPoly g = qpoly_gcd(s, qpoly_derivative(s));
    QPoly rad = g.degree() >= 1 ? qpoly_divmod(s, g).first : s;  // radical if S is a pure power
    long dp = rad.degree();
    if (S.degree() % dp != 0)
        throw not_a_power("power_of_irreducible: radical degree does not divide total degree");
    unsigned long N = static_cast<unsigned long>(S.degree() / dp);
    if (!(qpoly_pow(rad, N) == s))
        throw not_a_power("power_of_irreducible: distinct irreducible factors or unequal multiplicities");
    auto Pint = qpoly_to_int(rad);
    if (!Pint) throw internal_error("power_of_irreducible: non-integral radical of a monic power");
    if (!irreducible_over_q(*Pint)) throw not_a_power("power_of_irreducible: radical is reducible");
    return PowerDecomposition{*Pint, static_cast<long>(N)};
}

long roots_outside_unit_disk(const IntPoly& S) {
    if (!is_reciprocal(S)) throw input_error("roots_outside_unit_disk: polynomial is not reciprocal");
    if (poly_eval(S, Int(1)) == 0 || poly_eval(S, Int(-1)) == 0)
        throw input_error("roots_outside_unit_disk: S(1) and S(-1) must be nonzero");
    PowerDecomposition pd = power_of_irreducible(S);
    long dp = pd.P.degree();
    if (dp % 2 != 0) throw internal_error("roots_outside_unit_disk: odd-degree reciprocal radical");
    long g = dp / 2;
    IntPoly q = trace_polynomial(pd.P);
    // Roots of P on the unit circle pair up with real roots of its trace
    // polynomial in [-2, 2]; everything else contributes to m in z <-> 1/z pairs.
    long on_interval = sturm_count(q, SturmBound::at(Rat(-2)), SturmBound::at(Rat(2)));
    return pd.N * (g - on_interval);
}

}  // namespace isowitt
