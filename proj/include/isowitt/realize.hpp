#pragma once

// Constructive pipeline for |S(1)| = |S(-1)| = 1: the canonical twist that
// turns the order Z[alpha] into a unimodular lattice for the trace form,
// the signature-steering search over sigma-invariant units, and certified
// output.  For general S, the feasibility report assembles the gate verdict
// together with the local obstructions at each relevant prime.

#include <optional>
#include <string>
#include <vector>

#include "isowitt/gate.hpp"
#include "isowitt/hermitian.hpp"
#include "isowitt/matrix.hpp"
#include "isowitt/poly.hpp"

namespace isowitt {

// The twist lambda = (alpha - alpha^{-1}) * alpha^{g-1} / S'(alpha) for S
// monic irreducible reciprocal of degree 2g with |S(1)| = |S(-1)| = 1.
// Sigma-invariant, and Z[alpha] is unimodular under its trace form; both
// facts are re-verified before returning.
AlgElement gm_lambda(const IntPoly& s);

struct CertificateClaims {
    bool even = false;
    bool unimodular = false;
    long r = 0, s = 0;
    IntPoly charpoly;
};

// Explicit even unimodular lattice with an isometry of characteristic
// polynomial S.  verified is set only after every claim has been re-checked
// from scratch: integral symmetric Gram, determinant of absolute value one,
// even diagonal, signature by diagonalization, isometry and stability of the
// action, and the characteristic polynomial.
struct Certificate {
    QMat gram;
    QMat action;
    CertificateClaims claims;
    bool verified = false;
};

// Search for a certificate of signature (r, s): candidates are the trace
// forms of u * lambda with u running over sigma-invariant units built from
// +-1 and bounded products of alpha^j + alpha^{-j}, keeping representations
// with coefficients at most unit_height.  Empty result means the candidate
// set is exhausted -- a search failure, never a disproof.  Requires the gate
// verdict and the constructive hypothesis.
std::optional<Certificate> construct(const IntPoly& s, long r, long sg,
                                     const Int& unit_height = Int(1000000));

struct LocalCheck {
    Int p;
    bool pass = false;
    std::string note;
};

// Gate verdict plus the local hypothesis checks at 2 and at every prime
// dividing S(1) * S(-1): odd p needs both valuations even; p = 2 needs the
// valuation sum even and (-1)^{(r+s)/2} S(1) S(-1) a 2-adic square times 1
// or -3.  The gate's square condition implies all of them, so consistent is
// false only on a software defect.
struct FeasibilityReport {
    GateReport gate;
    std::vector<LocalCheck> local;
    bool local_pass = false;
    bool consistent = true;
};

FeasibilityReport feasibility_report(const IntPoly& s, long r, long sg);

}  // namespace isowitt
