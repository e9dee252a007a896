#include "isowitt/matrix.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "isowitt/exact.hpp"

namespace isowitt {

QMat QMat::identity(long n) {
    QMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMat::is_integral() const {
    for (const Rat& x : a)
        if (x.get_den() != 1) return false;
    return true;
}

bool QMat::is_symmetric() const {
    if (!is_square()) return false;
    for (long i = 0; i < rows; ++i)
        for (long j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

QMat mat_mul(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw internal_error("mat_mul: dimension mismatch");
    QMat r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const Rat& xv = x.at(i, k);
            if (xv == 0) continue;
            for (long j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

QMat mat_add(const QMat& x, const QMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw internal_error("mat_add: dimension mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat mat_sub(const QMat& x, const QMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw internal_error("mat_sub: dimension mismatch");
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMat mat_scale(const QMat& x, const Rat& k) {
    QMat r = x;
    for (Rat& v : r.a) v *= k;
    return r;
}

QMat mat_transpose(const QMat& x) {
    QMat r(x.cols, x.rows);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

QMat mat_neg(const QMat& x) { return mat_scale(x, Rat(-1)); }

QMat mat_hjoin(const QMat& x, const QMat& y) {
    if (x.rows != y.rows) throw internal_error("mat_hjoin: row mismatch");
    QMat r(x.rows, x.cols + y.cols);
    for (long i = 0; i < x.rows; ++i) {
        for (long j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (long j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

QMat mat_dsum(const QMat& x, const QMat& y) {
    QMat r(x.rows + y.rows, x.cols + y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (long i = 0; i < y.rows; ++i)
        for (long j = 0; j < y.cols; ++j) r.at(x.rows + i, x.cols + j) = y.at(i, j);
    return r;
}

QMat mat_col(const QMat& x, long j) {
    QMat r(x.rows, 1);
    for (long i = 0; i < x.rows; ++i) r.at(i, 0) = x.at(i, j);
    return r;
}

Rat mat_det(QMat x) {
    if (!x.is_square()) throw internal_error("mat_det: matrix not square");
    long n = x.rows;
    Rat det = 1;
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (x.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            for (long j = 0; j < n; ++j) std::swap(x.at(k, j), x.at(piv, j));
            det = -det;
        }
        det *= x.at(k, k);
        Rat inv = Rat(1) / x.at(k, k);
        for (long i = k + 1; i < n; ++i) {
            Rat f = x.at(i, k) * inv;
            if (f == 0) continue;
            for (long j = k; j < n; ++j) x.at(i, j) -= f * x.at(k, j);
        }
    }
    return det;
}

QMat mat_solve(const QMat& a, const QMat& b) {
    if (!a.is_square() || a.rows != b.rows) throw input_error("mat_solve: dimension mismatch");
    long n = a.rows;
    QMat m = mat_hjoin(a, b);
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (m.at(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw input_error("mat_solve: singular matrix");
        if (piv != k)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(k, j), m.at(piv, j));
        Rat inv = Rat(1) / m.at(k, k);
        for (long j = k; j < m.cols; ++j) m.at(k, j) *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            Rat f = m.at(i, k);
            for (long j = k; j < m.cols; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    QMat x(n, b.cols);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < b.cols; ++j) x.at(i, j) = m.at(i, n + j);
    return x;
}

QMat mat_inverse(const QMat& x) { return mat_solve(x, QMat::identity(x.rows)); }

namespace {

// Row echelon; returns pivot columns.  Destructive.
std::vector<long> rref(QMat& m) {
    std::vector<long> pivots;
    long r = 0;
    for (long c = 0; c < m.cols && r < m.rows; ++c) {
        long piv = -1;
        for (long i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (long j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (long i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (long j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

long mat_rank(QMat x) { return static_cast<long>(rref(x).size()); }

QMat mat_kernel(const QMat& x) {
    QMat m = x;
    std::vector<long> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (long c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<long> free_cols;
    for (long c = 0; c < m.cols; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    QMat k(m.cols, static_cast<long>(free_cols.size()));
    for (size_t fi = 0; fi < free_cols.size(); ++fi) {
        long fc = free_cols[fi];
        k.at(fc, static_cast<long>(fi)) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi) k.at(pivots[pi], static_cast<long>(fi)) = -m.at(static_cast<long>(pi), fc);
    }
    return k;
}

QPoly mat_charpoly(const QMat& x) {
    if (!x.is_square()) throw internal_error("mat_charpoly: matrix not square");
    long n = x.rows;
    // Faddeev-LeVerrier: exact over Q.
    std::vector<Rat> c(static_cast<size_t>(n + 1), Rat(0));
    c[static_cast<size_t>(n)] = 1;
    QMat m = QMat(n, n);
    for (long k = 1; k <= n; ++k) {
        // M_k = x * (M_{k-1} + c_{n-k+1} I)
        QMat t = m;
        for (long i = 0; i < n; ++i) t.at(i, i) += c[static_cast<size_t>(n - k + 1)];
        m = mat_mul(x, t);
        c[static_cast<size_t>(n - k)] = -mat_trace(m) / Rat(k);
    }
    return QPoly(std::move(c));
}

Rat mat_trace(const QMat& x) {
    Rat t = 0;
    for (long i = 0; i < x.rows; ++i) t += x.at(i, i);
    return t;
}

namespace {

// Column-style Hermite form of an integer matrix (destructive): column ops
// only, pivots positive, entries left of a pivot reduced mod it.
void hnf_int_columns(QMat& m) {
    long r = 0, c = 0;
    while (r < m.rows && c < m.cols) {
        // Euclid across columns c..end on row r.
        while (true) {
            long jmin = -1;
            Int best;
            for (long j = c; j < m.cols; ++j) {
                const Rat& v = m.at(r, j);
                if (v == 0) continue;
                Int av = abs_int(v.get_num());
                if (jmin < 0 || av < best) {
                    jmin = j;
                    best = av;
                }
            }
            if (jmin < 0) break;  // row r all zero from c on
            if (jmin != c)
                for (long i = 0; i < m.rows; ++i) std::swap(m.at(i, c), m.at(i, jmin));
            bool clean = true;
            for (long j = c + 1; j < m.cols; ++j) {
                if (m.at(r, j) == 0) continue;
                Int q;
                // round-to-nearest quotient keeps entries small
                Int num = m.at(r, j).get_num(), den = m.at(r, c).get_num();
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (q != 0)
                    for (long i = 0; i < m.rows; ++i) m.at(i, j) -= Rat(q) * m.at(i, c);
                if (m.at(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(r, c) == 0) {
            ++r;
            continue;
        }
        if (m.at(r, c) < 0)
            for (long i = 0; i < m.rows; ++i) m.at(i, c) = -m.at(i, c);
        // reduce columns to the left of the pivot
        for (long j = 0; j < c; ++j) {
            if (m.at(r, j) == 0) continue;
            Int q;
            Int num = m.at(r, j).get_num(), den = m.at(r, c).get_num();
            mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (q != 0)
                for (long i = 0; i < m.rows; ++i) m.at(i, j) -= Rat(q) * m.at(i, c);
        }
        ++r;
        ++c;
    }
}

}  // namespace

QMat lattice_basis(const QMat& generators) {
    if (generators.cols == 0) return QMat(generators.rows, 0);
    Int den = 1;
    for (const Rat& v : generators.a) den = lcm_int(den, v.get_den());
    QMat m = mat_scale(generators, Rat(den));
    hnf_int_columns(m);
    std::vector<long> keep;
    for (long j = 0; j < m.cols; ++j) {
        bool nz = false;
        for (long i = 0; i < m.rows; ++i)
            if (m.at(i, j) != 0) nz = true;
        if (nz) keep.push_back(j);
    }
    QMat out(m.rows, static_cast<long>(keep.size()));
    Rat inv(Int(1), den);
    for (size_t jj = 0; jj < keep.size(); ++jj)
        for (long i = 0; i < m.rows; ++i) out.at(i, static_cast<long>(jj)) = m.at(i, keep[jj]) * inv;
    return out;
}

bool in_lattice(const QMat& basis, const QMat& v) {
    if (basis.rows != v.rows || v.cols != 1) throw internal_error("in_lattice: dimension mismatch");
    // Solve basis * x = v by least-structure: row reduce [basis | v].
    QMat m = mat_hjoin(basis, v);
    std::vector<long> pivots = rref(m);
    // Inconsistent iff a pivot lands in the last column.
    for (long c : pivots)
        if (c == basis.cols) return false;
    // Read off solution for pivot columns; free columns take 0.
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
        const Rat& x = m.at(static_cast<long>(pi), basis.cols);
        if (x.get_den() != 1) return false;
    }
    return true;
}

bool same_lattice(const QMat& b1, const QMat& b2) {
    return lattice_basis(b1) == lattice_basis(b2);
}

SmithForm snf(const QMat& input) {
    if (!input.is_integral()) throw input_error("snf: matrix must be integral");
    QMat s = input;
    QMat u = QMat::identity(s.rows), v = QMat::identity(s.cols);
    long n = std::min(s.rows, s.cols);
    auto swap_rows = [&](long i, long j) {
        for (long k = 0; k < s.cols; ++k) std::swap(s.at(i, k), s.at(j, k));
        for (long k = 0; k < u.cols; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto swap_cols = [&](long i, long j) {
        for (long k = 0; k < s.rows; ++k) std::swap(s.at(k, i), s.at(k, j));
        for (long k = 0; k < v.rows; ++k) std::swap(v.at(k, i), v.at(k, j));
    };
    auto addmul_row = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < s.cols; ++k) s.at(dst, k) += Rat(f) * s.at(src, k);
        for (long k = 0; k < u.cols; ++k) u.at(dst, k) += Rat(f) * u.at(src, k);
    };
    auto addmul_col = [&](long dst, long src, const Int& f) {
        for (long k = 0; k < s.rows; ++k) s.at(k, dst) += Rat(f) * s.at(k, src);
        for (long k = 0; k < v.rows; ++k) v.at(k, dst) += Rat(f) * v.at(k, src);
    };
    for (long t = 0; t < n; ++t) {
        // find minimal nonzero entry in s[t.., t..]
        while (true) {
            long bi = -1, bj = -1;
            Int best;
            for (long i = t; i < s.rows; ++i)
                for (long j = t; j < s.cols; ++j) {
                    if (s.at(i, j) == 0) continue;
                    Int av = abs_int(s.at(i, j).get_num());
                    if (bi < 0 || av < best) {
                        bi = i;
                        bj = j;
                        best = av;
                    }
                }
            if (bi < 0) goto done;  // all remaining zero
            if (bi != t) swap_rows(t, bi);
            if (bj != t) swap_cols(t, bj);
            bool again = false;
            for (long i = t + 1; i < s.rows; ++i) {
                if (s.at(i, t) == 0) continue;
                Int q;
                Int num = s.at(i, t).get_num(), den = s.at(t, t).get_num();
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                addmul_row(i, t, -q);
                if (s.at(i, t) != 0) again = true;
            }
            for (long j = t + 1; j < s.cols; ++j) {
                if (s.at(t, j) == 0) continue;
                Int q;
                Int num = s.at(t, j).get_num(), den = s.at(t, t).get_num();
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                addmul_col(j, t, -q);
                if (s.at(t, j) != 0) again = true;
            }
            if (again) continue;
            // pivot clean; enforce divisibility of the remaining block
            bool fixed = true;
            for (long i = t + 1; i < s.rows && fixed; ++i)
                for (long j = t + 1; j < s.cols && fixed; ++j) {
                    if (s.at(i, j) == 0) continue;
                    Int r = mod_pos(s.at(i, j).get_num(), abs_int(s.at(t, t).get_num()));
                    if (r != 0) {
                        addmul_row(t, i, Int(1));
                        fixed = false;
                    }
                }
            if (fixed) break;
        }
        if (s.at(t, t) < 0) {
            for (long k = 0; k < s.cols; ++k) s.at(t, k) = -s.at(t, k);
            for (long k = 0; k < u.cols; ++k) u.at(t, k) = -u.at(t, k);
        }
    }
done:
    return SmithForm{u, s, v};
}

LocalSmithForm snf_local(const QMat& input, const Int& p) {
    QMat s = input;
    QMat u = QMat::identity(s.rows), v = QMat::identity(s.cols);
    long n = std::min(s.rows, s.cols);
    auto vp = [&](const Rat& x) -> long {
        auto val = valuation(x, p);
        return val ? *val : LONG_MAX;
    };
    long t = 0;
    for (; t < n; ++t) {
        long bi = -1, bj = -1, best = LONG_MAX;
        for (long i = t; i < s.rows; ++i)
            for (long j = t; j < s.cols; ++j) {
                if (s.at(i, j) == 0) continue;
                long w = vp(s.at(i, j));
                if (w < best) {
                    best = w;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;
        if (bi != t) {
            for (long k = 0; k < s.cols; ++k) std::swap(s.at(t, k), s.at(bi, k));
            for (long k = 0; k < u.cols; ++k) std::swap(u.at(t, k), u.at(bi, k));
        }
        if (bj != t) {
            for (long k = 0; k < s.rows; ++k) std::swap(s.at(k, t), s.at(k, bj));
            for (long k = 0; k < v.rows; ++k) std::swap(v.at(k, t), v.at(k, bj));
        }
        // scale row t by the unit part inverse so the pivot becomes exactly p^best
        Rat pivot = s.at(t, t);
        Rat ppow = best >= 0 ? Rat(pow_int(p, static_cast<unsigned long>(best)))
                             : Rat(Int(1), pow_int(p, static_cast<unsigned long>(-best)));
        Rat uinv = ppow / pivot;
        for (long k = 0; k < s.cols; ++k) s.at(t, k) *= uinv;
        for (long k = 0; k < u.cols; ++k) u.at(t, k) *= uinv;
        // eliminate: all other entries have valuation >= best, so factors are p-integral
        for (long i = t + 1; i < s.rows; ++i) {
            if (s.at(i, t) == 0) continue;
            Rat f = s.at(i, t) / s.at(t, t);
            for (long k = 0; k < s.cols; ++k) s.at(i, k) -= f * s.at(t, k);
            for (long k = 0; k < u.cols; ++k) u.at(i, k) -= f * u.at(t, k);
        }
        for (long j = t + 1; j < s.cols; ++j) {
            if (s.at(t, j) == 0) continue;
            Rat f = s.at(t, j) / s.at(t, t);
            for (long k = 0; k < s.rows; ++k) s.at(k, j) -= f * s.at(k, t);
            for (long k = 0; k < v.rows; ++k) v.at(k, j) -= f * v.at(k, t);
        }
    }
    // sort diagonal ascending by exponent via simultaneous permutations
    long filled = t;
    std::vector<long> order(static_cast<size_t>(filled));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](long x, long y) {
        return vp(s.at(x, x)) < vp(s.at(y, y));
    });
    // apply permutation by a sequence of swaps
    std::vector<long> pos(order.size());
    for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i])] = static_cast<long>(i);
    for (long i = 0; i < filled; ++i) {
        while (pos[static_cast<size_t>(i)] != i) {
            long j = pos[static_cast<size_t>(i)];
            for (long k = 0; k < s.cols; ++k) std::swap(s.at(i, k), s.at(j, k));
            for (long k = 0; k < u.cols; ++k) std::swap(u.at(i, k), u.at(j, k));
            for (long k = 0; k < s.rows; ++k) std::swap(s.at(k, i), s.at(k, j));
            for (long k = 0; k < v.rows; ++k) std::swap(v.at(k, i), v.at(k, j));
            std::swap(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]);
        }
    }
    LocalSmithForm out;
    out.u = std::move(u);
    out.s = std::move(s);
    out.v = std::move(v);
    for (long i = 0; i < filled; ++i) {
        auto val = valuation(out.s.at(i, i), p);
        out.exponents.push_back(*val);
    }
    return out;
}

QMat integer_kernel(const QMat& m) {
    SmithForm f = snf(m);
    long n = m.cols;
    long r = std::min(m.rows, m.cols);
    std::vector<long> zero_idx;
    for (long i = 0; i < r; ++i)
        if (f.s.at(i, i) == 0) zero_idx.push_back(i);
    for (long i = r; i < n; ++i) zero_idx.push_back(i);
    QMat k(n, static_cast<long>(zero_idx.size()));
    for (size_t jj = 0; jj < zero_idx.size(); ++jj)
        for (long i = 0; i < n; ++i) k.at(i, static_cast<long>(jj)) = f.v.at(i, zero_idx[jj]);
    return k;
}

std::optional<QMat> integer_solve(const QMat& m, const QMat& b) {
    if (b.cols != 1 || b.rows != m.rows) throw internal_error("integer_solve: shape mismatch");
    if (!b.is_integral()) throw input_error("integer_solve: rhs must be integral");
    SmithForm f = snf(m);
    QMat c = mat_mul(f.u, b);
    long r = std::min(m.rows, m.cols);
    QMat y(m.cols, 1);
    for (long i = 0; i < m.rows; ++i) {
        Rat ci = c.at(i, 0);
        if (i < r && f.s.at(i, i) != 0) {
            Rat q = ci / f.s.at(i, i);
            if (q.get_den() != 1) return std::nullopt;
            y.at(i, 0) = q;
        } else if (ci != 0) {
            return std::nullopt;
        }
    }
    return mat_mul(f.v, y);
}

}  // namespace isowitt
