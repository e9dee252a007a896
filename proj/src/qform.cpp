#include "isowitt/qform.hpp"

#include <algorithm>
#include <set>

#include "isowitt/errors.hpp"

namespace isowitt {

QuadForm::QuadForm(QMat g) : gram(std::move(g)) {
    if (!gram.is_square()) throw input_error("QuadForm: gram matrix must be square");
    if (!gram.is_symmetric()) throw input_error("QuadForm: gram matrix must be symmetric");
    if (mat_det(gram) == 0) throw input_error("QuadForm: degenerate form");
}

std::vector<Rat> diagonalize(const QuadForm& f) {
    QMat a = f.gram;
    long n = a.rows;
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        if (a.at(k, k) == 0) {
            // swap in a later nonzero diagonal entry; if the whole trailing
            // diagonal is zero, add row+col j with a_kj != 0 (the new pivot
            // 2*a_kj is then nonzero -- adding against a nonzero a_jj could
            // cancel back to zero when a_jj = -2*a_kj)
            long j = -1;
            for (long t = k + 1; t < n; ++t)
                if (a.at(t, t) != 0) {
                    j = t;
                    break;
                }
            if (j >= 0) {
                for (long c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(j, c));
                for (long r = 0; r < n; ++r) std::swap(a.at(r, k), a.at(r, j));
            } else {
                for (long t = k + 1; t < n; ++t)
                    if (a.at(k, t) != 0) {
                        j = t;
                        break;
                    }
                if (j < 0) throw input_error("diagonalize: degenerate form");
                for (long c = 0; c < n; ++c) a.at(k, c) += a.at(j, c);
                for (long r = 0; r < n; ++r) a.at(r, k) += a.at(r, j);
            }
        }
        Rat piv = a.at(k, k);
        for (long i = k + 1; i < n; ++i) {
            Rat fct = a.at(i, k) / piv;
            if (fct == 0) continue;
            for (long c = 0; c < n; ++c) a.at(i, c) -= fct * a.at(k, c);
            for (long r = 0; r < n; ++r) a.at(r, i) -= fct * a.at(r, k);
        }
        out.push_back(piv);
    }
    return out;
}

int hasse_at(const std::vector<Rat>& diag, const Place& v) {
    // bimultiplicativity: prod_{i<j} (d_i, d_j)_v = prod_j (d_1...d_{j-1}, d_j)_v
    int eps = 1;
    Rat prefix(1);
    for (size_t j = 0; j < diag.size(); ++j) {
        if (j > 0) eps *= hilbert_symbol(prefix, diag[j], v);
        prefix *= diag[j];
    }
    return eps;
}

int FormInvariants::hasse_at(const Place& v) const {
    auto it = hasse.find(v);
    return it == hasse.end() ? 1 : it->second;
}

bool FormInvariants::operator==(const FormInvariants& o) const {
    if (dim != o.dim || r != o.r || s != o.s) return false;
    if (!(det == o.det) || !(disc == o.disc)) return false;
    for (const auto& [v, e] : hasse)
        if (o.hasse_at(v) != e) return false;
    for (const auto& [v, e] : o.hasse)
        if (hasse_at(v) != e) return false;
    return true;
}

FormInvariants invariants(const QuadForm& f) {
    std::vector<Rat> d = diagonalize(f);
    FormInvariants inv;
    inv.dim = f.dim();
    Rat prod(1);
    for (const Rat& x : d) {
        prod *= x;
        if (x > 0)
            ++inv.r;
        else
            ++inv.s;
    }
    inv.det = square_class(prod);
    long n = inv.dim;
    inv.disc = ((n * (n - 1)) / 2) % 2 != 0 ? SquareClass{-inv.det.rep} : inv.det;
    // Candidate places for a nontrivial symbol: the real place, 2, odd p
    // dividing det (any exponent), and odd p in an entry denominator.  At any
    // other odd p the Gram matrix is p-integral with unit determinant, hence
    // unimodular over the p-adic integers, and the invariant is +1.
    std::set<Place> places{Place::real(), Place::finite(2)};
    for (const auto& [p, e] : factor(prod.get_num() * prod.get_den()))
        if (p != 2) places.insert(Place::finite(p));
    Int denl(1);
    for (const Rat& x : f.gram.a) denl = lcm_int(denl, x.get_den());
    for (const auto& [p, e] : factor(denl))
        if (p != 2) places.insert(Place::finite(p));
    for (const Place& v : places) {
        int e = hasse_at(d, v);
        if (e != 1) inv.hasse[v] = e;
    }
    return inv;
}

bool locally_equivalent(const QuadForm& f, const QuadForm& g, const Place& v) {
    if (f.dim() != g.dim()) return false;
    std::vector<Rat> df = diagonalize(f), dg = diagonalize(g);
    Rat detf(1), detg(1);
    long rf = 0, rg = 0;
    for (const Rat& x : df) {
        detf *= x;
        if (x > 0) ++rf;
    }
    for (const Rat& x : dg) {
        detg *= x;
        if (x > 0) ++rg;
    }
    if (v.is_real && rf != rg) return false;
    if (!is_local_square(detf / detg, v)) return false;
    return hasse_at(df, v) == hasse_at(dg, v);
}

QMat gram_hyperbolic() {
    QMat m(2, 2);
    m.at(0, 1) = Rat(1);
    m.at(1, 0) = Rat(1);
    return m;
}

QMat gram_n() {
    QMat m(2, 2);
    m.at(0, 0) = Rat(2);
    m.at(0, 1) = Rat(-1);
    m.at(1, 0) = Rat(-1);
    m.at(1, 1) = Rat(2);
    return m;
}

QMat gram_e8() {
    // Cartan matrix of the E8 diagram: chain 0-1-2-3-4-5-6 with node 7
    // attached to node 4.
    QMat m(8, 8);
    for (long i = 0; i < 8; ++i) m.at(i, i) = Rat(2);
    auto link = [&](long i, long j) {
        m.at(i, j) = Rat(-1);
        m.at(j, i) = Rat(-1);
    };
    for (long i = 0; i + 1 < 7; ++i) link(i, i + 1);
    link(4, 7);
    return m;
}

QMat gram_diag(const std::vector<Rat>& d) {
    long n = static_cast<long>(d.size());
    QMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = d[static_cast<size_t>(i)];
    return m;
}

}  // namespace isowitt
