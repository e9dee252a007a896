#include "isowitt/equiwitt.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "isowitt/modpoly.hpp"

namespace isowitt {

namespace {

// ---- dense linear algebra over F_p on machine words ----
// p < 2^31, so a product of two residues fits a 64-bit long and a running
// sum of products stays below 2^63 when reduced after every addition.

struct FM {
    long rows = 0, cols = 0;
    std::vector<long> a;
    FM() = default;
    FM(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c), 0) {}
    long& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
    long at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }
};

long fp_inv(long x, long p) {
    long r = 1, b = x % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

FM fm_from(const QMat& m, long p) {
    if (!m.is_integral()) throw input_error("matrix over F_p must have integer entries");
    FM f(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) f.at(i, j) = to_long(mod_pos(m.at(i, j).get_num(), Int(p)));
    return f;
}

QMat fm_to(const FM& m) {
    QMat q(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) q.at(i, j) = Rat(m.at(i, j));
    return q;
}

FM fm_mul(const FM& x, const FM& y, long p) {
    if (x.cols != y.rows) throw internal_error("fm_mul: shape mismatch");
    FM z(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < y.cols; ++j) {
            long s = 0;
            for (long k = 0; k < x.cols; ++k) s = (s + x.at(i, k) * y.at(k, j)) % p;
            z.at(i, j) = s;
        }
    return z;
}

FM fm_transpose(const FM& x) {
    FM z(x.cols, x.rows);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

// Reduced row echelon form in place; returns the pivot columns.
std::vector<long> fm_rref(FM& m, long p) {
    std::vector<long> pivots;
    long r = 0;
    for (long c = 0; c < m.cols && r < m.rows; ++c) {
        long pr = -1;
        for (long i = r; i < m.rows; ++i)
            if (m.at(i, c)) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        long inv = fp_inv(m.at(r, c), p);
        for (long j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv % p;
        for (long i = 0; i < m.rows; ++i) {
            if (i == r || !m.at(i, c)) continue;
            long f = m.at(i, c);
            for (long j = 0; j < m.cols; ++j) m.at(i, j) = (m.at(i, j) + (p - f) * m.at(r, j)) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

long fm_rank(FM m, long p) { return static_cast<long>(fm_rref(m, p).size()); }

// Columns spanning { x : m x = 0 }.
FM fm_kernel(FM m, long p) {
    std::vector<long> pivots = fm_rref(m, p);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (long c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    FM k(m.cols, m.cols - static_cast<long>(pivots.size()));
    long col = 0;
    for (long free = 0; free < m.cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        k.at(free, col) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            k.at(pivots[r], col) = (p - m.at(static_cast<long>(r), free)) % p;
        ++col;
    }
    return k;
}

// Solve b x = y for full-column-rank b; throws when inconsistent.
FM fm_solve_cols(const FM& b, const FM& y, long p) {
    FM aug(b.rows, b.cols + y.cols);
    for (long i = 0; i < b.rows; ++i) {
        for (long j = 0; j < b.cols; ++j) aug.at(i, j) = b.at(i, j);
        for (long j = 0; j < y.cols; ++j) aug.at(i, b.cols + j) = y.at(i, j);
    }
    std::vector<long> pivots = fm_rref(aug, p);
    FM x(b.cols, y.cols);
    long rank_b = 0;
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < b.cols) {
            if (pivots[r] != static_cast<long>(r)) throw internal_error("fm_solve_cols: basis not full rank");
            ++rank_b;
            for (long j = 0; j < y.cols; ++j) x.at(pivots[r], j) = aug.at(static_cast<long>(r), b.cols + j);
        } else {
            throw internal_error("fm_solve_cols: inconsistent system");
        }
    }
    if (rank_b != b.cols) throw internal_error("fm_solve_cols: basis not full rank");
    return x;
}

long fm_dot(const FM& g, const std::vector<long>& u, const std::vector<long>& v, long p) {
    long s = 0;
    for (long i = 0; i < g.rows; ++i) {
        if (!u[static_cast<size_t>(i)]) continue;
        long row = 0;
        for (long j = 0; j < g.cols; ++j) row = (row + g.at(i, j) * v[static_cast<size_t>(j)]) % p;
        s = (s + u[static_cast<size_t>(i)] * row) % p;
    }
    return s;
}

std::vector<long> fm_apply(const FM& m, const std::vector<long>& v, long p) {
    std::vector<long> out(static_cast<size_t>(m.rows), 0);
    for (long i = 0; i < m.rows; ++i) {
        long s = 0;
        for (long j = 0; j < m.cols; ++j) s = (s + m.at(i, j) * v[static_cast<size_t>(j)]) % p;
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

// Row space in reduced echelon form with incremental insertion; the flat
// form of the reduced rows is a canonical key for the subspace.
struct Echelon {
    long n = 0;
    long p = 2;
    std::vector<std::vector<long>> rows;  // sorted by pivot, fully reduced
    std::vector<long> pivs;

    Echelon(long n_, long p_) : n(n_), p(p_) {}
    long dim() const { return static_cast<long>(rows.size()); }

    std::vector<long> reduce(std::vector<long> v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            long c = v[static_cast<size_t>(pivs[r])];
            if (!c) continue;
            for (long j = 0; j < n; ++j)
                v[static_cast<size_t>(j)] = (v[static_cast<size_t>(j)] + (p - c) * rows[r][static_cast<size_t>(j)]) % p;
        }
        return v;
    }

    static bool is_zero(const std::vector<long>& v) {
        return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
    }

    // v must already be reduced and nonzero.
    void insert_reduced(std::vector<long> v) {
        long piv = 0;
        while (!v[static_cast<size_t>(piv)]) ++piv;
        long inv = fp_inv(v[static_cast<size_t>(piv)], p);
        for (long j = 0; j < n; ++j) v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] * inv % p;
        for (size_t r = 0; r < rows.size(); ++r) {
            long c = rows[r][static_cast<size_t>(piv)];
            if (!c) continue;
            for (long j = 0; j < n; ++j)
                rows[r][static_cast<size_t>(j)] =
                    (rows[r][static_cast<size_t>(j)] + (p - c) * v[static_cast<size_t>(j)]) % p;
        }
        size_t pos = 0;
        while (pos < pivs.size() && pivs[pos] < piv) ++pos;
        rows.insert(rows.begin() + static_cast<long>(pos), std::move(v));
        pivs.insert(pivs.begin() + static_cast<long>(pos), piv);
    }

    std::vector<long> key() const {
        std::vector<long> k{dim()};
        for (const auto& r : rows) k.insert(k.end(), r.begin(), r.end());
        return k;
    }
};

// Close span(base + v) under the operator while keeping every pair of basis
// vectors orthogonal and isotropic; nullopt when that fails or the closure
// outgrows half the dimension.
std::optional<Echelon> close_isotropic(Echelon e, std::vector<long> v, const FM& act, const FM& g, long half) {
    long p = e.p;
    std::vector<std::vector<long>> queue;
    queue.push_back(std::move(v));
    while (!queue.empty()) {
        std::vector<long> w = e.reduce(std::move(queue.back()));
        queue.pop_back();
        if (Echelon::is_zero(w)) continue;
        if (fm_dot(g, w, w, p)) return std::nullopt;
        for (const auto& row : e.rows)
            if (fm_dot(g, w, row, p)) return std::nullopt;
        e.insert_reduced(w);
        if (e.dim() > half) return std::nullopt;
        queue.push_back(fm_apply(act, w, p));
    }
    return e;
}

struct SearchCtx {
    const FM& g;
    const FM& act;
    long p, n, half;
    std::vector<std::vector<long>> lines;
    std::set<std::vector<long>> memo;
    long budget;
};

bool lagrangian_dfs(SearchCtx& c, const Echelon& cur, Echelon& out) {
    if (cur.dim() == c.half) {
        out = cur;
        return true;
    }
    for (const auto& v : c.lines) {
        std::vector<long> rem = cur.reduce(v);
        if (Echelon::is_zero(rem)) continue;
        bool orth = true;
        for (const auto& row : cur.rows)
            if (fm_dot(c.g, v, row, c.p)) {
                orth = false;
                break;
            }
        if (!orth) continue;
        std::optional<Echelon> next = close_isotropic(cur, v, c.act, c.g, c.half);
        if (!next) continue;
        if (!c.memo.insert(next->key()).second) continue;
        if (--c.budget < 0) throw budget_exceeded("stable lagrangian search budget exhausted");
        if (lagrangian_dfs(c, *next, out)) return true;
    }
    return false;
}

// All vectors with leading coordinate 1, one per projective line.
std::vector<std::vector<long>> normalized_vectors(long n, long p) {
    std::vector<std::vector<long>> out;
    for (long lead = 0; lead < n; ++lead) {
        std::vector<long> v(static_cast<size_t>(n), 0);
        v[static_cast<size_t>(lead)] = 1;
        long tail = n - lead - 1;
        std::vector<long> ctr(static_cast<size_t>(tail), 0);
        while (true) {
            for (long j = 0; j < tail; ++j) v[static_cast<size_t>(lead + 1 + j)] = ctr[static_cast<size_t>(j)];
            out.push_back(v);
            long j = tail - 1;
            while (j >= 0 && ctr[static_cast<size_t>(j)] == p - 1) ctr[static_cast<size_t>(j--)] = 0;
            if (j < 0) break;
            ++ctr[static_cast<size_t>(j)];
        }
    }
    return out;
}

long cyclic_dim(const std::vector<long>& v, const FM& act, long n, long p) {
    Echelon e(n, p);
    std::vector<long> w = v;
    while (true) {
        std::vector<long> r = e.reduce(w);
        if (Echelon::is_zero(r)) return e.dim();
        e.insert_reduced(r);
        w = fm_apply(act, w, p);
    }
}

ModPoly star_poly(const ModPoly& f) {
    if (f.at(0) == 0) throw internal_error("operator polynomial vanishes at zero");
    std::vector<Int> rev(f.c.rbegin(), f.c.rend());
    return mod_monic(ModPoly(f.m, rev));
}

FM fm_poly_eval(const ModPoly& f, const FM& m, long p) {
    long n = m.rows;
    FM acc(n, n);
    for (long d = f.degree(); d >= 0; --d) {
        acc = fm_mul(acc, m, p);
        long c = to_long(f.at(d));
        for (long i = 0; i < n; ++i) acc.at(i, i) = (acc.at(i, i) + c) % p;
    }
    return acc;
}

FM fm_pow(FM base, long e, long p) {
    FM r(base.rows, base.cols);
    for (long i = 0; i < r.rows; ++i) r.at(i, i) = 1;
    while (e) {
        if (e & 1) r = fm_mul(r, base, p);
        base = fm_mul(base, base, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

FqForm::FqForm(Int p_, QMat gram_, QMat action_)
    : p(std::move(p_)), gram(std::move(gram_)), action(std::move(action_)) {
    if (!is_prime(p)) throw input_error("coefficient field order must be prime");
    if (p > Int(2147483647)) throw input_error("coefficient field characteristic does not fit a machine word");
    long n = gram.rows;
    if (!gram.is_square() || !action.is_square() || action.rows != n)
        throw input_error("form and action matrices must be square of equal size");
    if (!gram.is_integral() || !action.is_integral()) throw input_error("entries over F_p must be integers");
    for (Rat& x : gram.a) x = Rat(mod_pos(x.get_num(), p));
    for (Rat& x : action.a) x = Rat(mod_pos(x.get_num(), p));
    if (!gram.is_symmetric()) throw input_error("gram matrix is not symmetric");
    long pl = to_long(p);
    if (fm_rank(fm_from(gram, pl), pl) != n) throw input_error("gram matrix is degenerate over F_p");
    FM a = fm_from(action, pl), g = fm_from(gram, pl);
    if (!(fm_mul(fm_mul(fm_transpose(a), g, pl), a, pl).a == g.a))
        throw input_error("action is not orthogonal for the form");
}

FqForm::FqForm(Int p_, QMat gram_) : FqForm(std::move(p_), gram_, QMat::identity(gram_.rows)) {}

FqForm fq_direct_sum(const FqForm& v, const FqForm& w) {
    if (v.p != w.p) throw input_error("direct sum needs a common field");
    return FqForm(v.p, mat_dsum(v.gram, w.gram), mat_dsum(v.action, w.action));
}

FqForm fq_negate(const FqForm& v) {
    QMat g = v.gram;
    for (Rat& x : g.a) x = Rat(mod_pos(-x.get_num(), v.p));
    return FqForm(v.p, g, v.action);
}

std::vector<FqForm> isotypic_decompose(const FqForm& v) {
    std::vector<FqForm> out;
    long n = v.dim();
    if (n == 0) return out;
    long p = to_long(v.p);
    std::optional<IntPoly> cp = qpoly_to_int(mat_charpoly(v.action));
    if (!cp) throw internal_error("integral operator with non-integral characteristic polynomial");
    std::vector<ModFactor> factors = mod_factor(ModPoly::from_int_poly(*cp, v.p));
    FM act = fm_from(v.action, p), g = fm_from(v.gram, p);

    std::set<ModPoly> done;
    for (const ModFactor& mf : factors) {
        if (done.count(mf.f)) continue;
        ModPoly fs = star_poly(mf.f);
        done.insert(mf.f);
        if (!(fs == mf.f)) {
            // Paired component: V_f + V_{f*} is hyperbolic, drop both.
            bool partner = false;
            for (const ModFactor& other : factors)
                if (other.f == fs && other.mult == mf.mult) partner = true;
            if (!partner) throw internal_error("orthogonal operator with unpaired primary component");
            done.insert(fs);
            continue;
        }
        FM basis = fm_kernel(fm_pow(fm_poly_eval(mf.f, act, p), mf.mult, p), p);
        if (basis.cols != mf.f.degree() * mf.mult) throw internal_error("primary component of unexpected dimension");
        FM sub_gram = fm_mul(fm_mul(fm_transpose(basis), g, p), basis, p);
        FM sub_act = fm_solve_cols(basis, fm_mul(act, basis, p), p);
        out.emplace_back(v.p, fm_to(sub_gram), fm_to(sub_act));
    }
    return out;
}

FqForm sub_quotient(const FqForm& v, const QMat& x) {
    long n = v.dim();
    long p = to_long(v.p);
    if (x.rows != n) throw input_error("subspace basis has the wrong row count");
    FM xf = fm_from(x, p);
    FM g = fm_from(v.gram, p), act = fm_from(v.action, p);
    {
        FM probe = xf;
        if (static_cast<long>(fm_rref(probe, p).size()) != xf.cols)
            throw input_error("subspace basis has dependent columns");
    }
    long k = xf.cols;
    if (k == 0) return v;
    // Stability and total isotropy.
    try {
        (void)fm_solve_cols(xf, fm_mul(act, xf, p), p);
    } catch (const internal_error&) {
        throw input_error("subspace is not stable under the action");
    }
    FM xtg = fm_mul(fm_transpose(xf), g, p);
    FM iso = fm_mul(xtg, xf, p);
    for (long c : iso.a)
        if (c) throw input_error("subspace is not totally isotropic");

    FM perp = fm_kernel(xtg, p);  // n x (n-k), contains the columns of x
    // Complete x to a basis of the orthogonal by greedy column selection.
    FM sel(n, n - 2 * k);
    {
        Echelon span(n, p);
        for (long j = 0; j < k; ++j) {
            std::vector<long> col(static_cast<size_t>(n));
            for (long i = 0; i < n; ++i) col[static_cast<size_t>(i)] = xf.at(i, j);
            span.insert_reduced(span.reduce(col));
        }
        long kept = 0;
        for (long j = 0; j < perp.cols && kept < n - 2 * k; ++j) {
            std::vector<long> col(static_cast<size_t>(n));
            for (long i = 0; i < n; ++i) col[static_cast<size_t>(i)] = perp.at(i, j);
            std::vector<long> r = span.reduce(col);
            if (Echelon::is_zero(r)) continue;
            span.insert_reduced(r);
            for (long i = 0; i < n; ++i) sel.at(i, kept) = col[static_cast<size_t>(i)];
            ++kept;
        }
        if (kept != n - 2 * k) throw internal_error("orthogonal complement is short");
    }
    FM qgram = fm_mul(fm_mul(fm_transpose(sel), g, p), sel, p);
    // A maps x^perp to itself; read the action modulo x from coordinates in
    // the basis [x | sel].
    FM joint(n, n - k);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < k; ++j) joint.at(i, j) = xf.at(i, j);
        for (long j = 0; j < n - 2 * k; ++j) joint.at(i, k + j) = sel.at(i, j);
    }
    FM coords = fm_solve_cols(joint, fm_mul(act, sel, p), p);
    FM qact(n - 2 * k, n - 2 * k);
    for (long i = 0; i < n - 2 * k; ++i)
        for (long j = 0; j < n - 2 * k; ++j) qact.at(i, j) = coords.at(k + i, j);
    try {
        return FqForm(v.p, fm_to(qgram), fm_to(qact));
    } catch (const input_error&) {
        throw internal_error("sub-quotient of a nondegenerate form is degenerate");
    }
}

WittVerdict is_neutral(const FqForm& v, long budget) {
    long n = v.dim();
    if (n % 2 != 0) return {false, std::nullopt};
    if (n == 0) return {true, QMat(0, 0)};
    long p = to_long(v.p);
    if (pow_int(v.p, static_cast<unsigned long>(n)) > Int(budget))
        throw budget_exceeded("vector enumeration exceeds the search budget");
    FM g = fm_from(v.gram, p), act = fm_from(v.action, p);

    SearchCtx ctx{g, act, p, n, n / 2, {}, {}, budget};
    for (auto& vec : normalized_vectors(n, p))
        if (fm_dot(g, vec, vec, p) == 0) ctx.lines.push_back(std::move(vec));
    std::stable_sort(ctx.lines.begin(), ctx.lines.end(),
                     [&](const std::vector<long>& a, const std::vector<long>& b) {
                         return cyclic_dim(a, act, n, p) < cyclic_dim(b, act, n, p);
                     });

    Echelon found(n, p);
    if (!lagrangian_dfs(ctx, Echelon(n, p), found)) return {false, std::nullopt};

    // Independent check of the witness before handing it out.
    if (found.dim() != n / 2) throw internal_error("lagrangian witness has the wrong dimension");
    for (const auto& r : found.rows) {
        for (const auto& s : found.rows)
            if (fm_dot(g, r, s, p)) throw internal_error("lagrangian witness is not isotropic");
        if (!Echelon::is_zero(found.reduce(fm_apply(act, r, p))))
            throw internal_error("lagrangian witness is not stable");
    }
    QMat wit(n, n / 2);
    for (long j = 0; j < n / 2; ++j)
        for (long i = 0; i < n; ++i) wit.at(i, j) = Rat(found.rows[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    return {true, wit};
}

bool witt_equal(const FqForm& v, const FqForm& w, long budget) {
    if (v.p != w.p) throw input_error("Witt comparison needs a common field");
    return is_neutral(fq_direct_sum(v, fq_negate(w)), budget).neutral;
}

QMat maximal_stable_isotropic(const FqForm& v) {
    long n = v.dim();
    if (n == 0) return QMat(0, 0);
    long p = to_long(v.p);
    FM g = fm_from(v.gram, p), act = fm_from(v.action, p);
    Echelon e(n, p);
    for (const auto& vec : normalized_vectors(n, p)) {
        if (fm_dot(g, vec, vec, p)) continue;
        if (Echelon::is_zero(e.reduce(vec))) continue;
        // A totally isotropic subspace of a nondegenerate form never exceeds
        // half the dimension, so the cap cannot cut a valid closure short.
        std::optional<Echelon> bigger = close_isotropic(e, vec, act, g, n / 2);
        if (bigger) e = std::move(*bigger);
    }
    QMat out(n, e.dim());
    for (long j = 0; j < e.dim(); ++j)
        for (long i = 0; i < n; ++i) out.at(i, j) = Rat(e.rows[static_cast<size_t>(j)][static_cast<size_t>(i)]);
    return out;
}

namespace {

long order_exponent(const Int& d, const Int& p) {
    Int cof;
    unsigned long e = remove_factor(d, p, cof);
    if (cof != 1) throw input_error("torsion form is not primary at the requested prime");
    return static_cast<long>(e);
}

// One step U = p^{t-1} M, M <- U^perp / U, computed on integer coordinate
// lattices: elements of M are Z^k modulo diag(orders).
TorsionForm exponent_step(const TorsionForm& m, const Int& p, long t) {
    long k = m.size();
    QMat d(k, k);
    for (long i = 0; i < k; ++i) d.at(i, i) = Rat(m.orders[i]);
    QMat scaled = QMat::identity(k);
    Rat pt1 = Rat(pow_int(p, static_cast<unsigned long>(t - 1)));
    for (long i = 0; i < k; ++i) scaled.at(i, i) = pt1;
    QMat lu = lattice_basis(mat_hjoin(scaled, d));

    // U^perp: integer coordinate vectors pairing integrally against p^{t-1} g_j.
    QMat q = mat_scale(m.pairing, pt1);
    Int den(1);
    for (const Rat& x : q.a) den = lcm_int(den, x.get_den());
    QMat qint = mat_scale(q, Rat(den));
    QMat denblock = QMat::identity(k);
    for (long i = 0; i < k; ++i) denblock.at(i, i) = Rat(den);
    QMat kern = integer_kernel(mat_hjoin(qint, denblock));
    QMat proj(k, kern.cols);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < kern.cols; ++j) proj.at(i, j) = kern.at(i, j);
    QMat bperp = lattice_basis(mat_hjoin(proj, d));

    QMat minc = mat_solve(bperp, lu);
    if (!minc.is_integral()) throw internal_error("isotropic subgroup escapes its orthogonal");
    SmithForm sf = snf(minc);
    QMat eprime = mat_mul(bperp, mat_inverse(sf.u));
    QMat fullp = mat_mul(mat_mul(mat_transpose(eprime), m.pairing), eprime);
    QMat ind = mat_solve(eprime, mat_mul(m.action, eprime));
    if (!ind.is_integral()) throw internal_error("induced action escapes the sub-quotient");
    QMat newgens = mat_mul(m.generators, eprime);

    TorsionForm out;
    std::vector<long> keep;
    for (long i = 0; i < k; ++i) {
        Int di = sf.s.at(i, i).get_num();
        if (di == 1) continue;
        if (order_exponent(di, p) > t - 1) throw internal_error("exponent did not drop");
        keep.push_back(i);
        out.orders.push_back(di);
    }
    long kk = static_cast<long>(keep.size());
    out.generators = QMat(m.generators.rows, kk);
    out.pairing = QMat(kk, kk);
    out.action = QMat(kk, kk);
    for (long j = 0; j < kk; ++j) {
        for (long i = 0; i < m.generators.rows; ++i) out.generators.at(i, j) = newgens.at(i, keep[j]);
        for (long i = 0; i < kk; ++i) {
            out.pairing.at(i, j) = frac_part(fullp.at(keep[i], keep[j]));
            if (Rat(Rat(out.orders[i]) * out.pairing.at(i, j)).get_den() != 1)
                throw internal_error("sub-quotient pairing denominator exceeds the order");
            out.action.at(i, j) = Rat(mod_pos(ind.at(keep[i], keep[j]).get_num(), out.orders[i]));
        }
    }
    return out;
}

}  // namespace

FqForm dagger(const TorsionForm& m0, const Int& p) {
    if (!is_prime(p)) throw input_error("dagger needs a prime");
    long k0 = m0.size();
    if (m0.pairing.rows != k0 || m0.pairing.cols != k0 || m0.action.rows != k0 || m0.action.cols != k0)
        throw input_error("torsion form matrices do not match the generator count");
    if (!m0.action.is_integral()) throw input_error("torsion action must be integral");
    // The action must preserve the pairing mod Z.
    {
        QMat lhs = mat_mul(mat_mul(mat_transpose(m0.action), m0.pairing), m0.action);
        for (long i = 0; i < k0; ++i)
            for (long j = 0; j < k0; ++j)
                if (Rat(lhs.at(i, j) - m0.pairing.at(i, j)).get_den() != 1)
                    throw input_error("torsion action does not preserve the pairing");
    }
    TorsionForm m = m0;
    while (true) {
        long t = 0;
        for (const Int& dord : m.orders) t = std::max(t, order_exponent(dord, p));
        if (t <= 1) break;
        m = exponent_step(m, p, t);
    }
    long k = m.size();
    QMat gram(k, k), act(k, k);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            Rat scaled = Rat(p) * m.pairing.at(i, j);
            if (scaled.get_den() != 1) throw internal_error("exponent-one pairing with deep denominator");
            gram.at(i, j) = Rat(mod_pos(scaled.get_num(), p));
            act.at(i, j) = Rat(mod_pos(m.action.at(i, j).get_num(), p));
        }
    return FqForm(p, gram, act);
}

}  // namespace isowitt
