#pragma once

#include <map>
#include <vector>

#include "isowitt/exact.hpp"
#include "isowitt/matrix.hpp"

namespace isowitt {

// Non-degenerate symmetric bilinear form over Q, held as a Gram matrix.
struct QuadForm {
    QMat gram;

    explicit QuadForm(QMat g);
    long dim() const { return gram.rows; }
};

struct FormInvariants {
    long dim = 0;
    SquareClass det;
    SquareClass disc;
    long r = 0, s = 0;                 // signature
    std::map<Place, int> hasse;        // finitely supported; missing place = +1

    int hasse_at(const Place& v) const;
    bool operator==(const FormInvariants& o) const;
};

// Diagonal entries of a congruent diagonal form.
std::vector<Rat> diagonalize(const QuadForm& f);

FormInvariants invariants(const QuadForm& f);

// Hasse-Witt invariant at one place: prod_{i<j} (d_i, d_j)_v on a diagonalization.
int hasse_at(const std::vector<Rat>& diag, const Place& v);

// Complete local invariant comparison: dim, det class in Q_v, hasse at v,
// and signature when v is real.
bool locally_equivalent(const QuadForm& f, const QuadForm& g, const Place& v);

// Standard Gram matrices.
QMat gram_hyperbolic();                       // [[0,1],[1,0]]
QMat gram_n();                                // [[2,-1],[-1,2]]
QMat gram_e8();                               // even, det 1, positive definite
QMat gram_diag(const std::vector<Rat>& d);

}  // namespace isowitt
