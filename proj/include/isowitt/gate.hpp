#pragma once

#include <set>
#include <utility>

#include "isowitt/poly.hpp"

namespace isowitt {

// Outcome of the main hypothesis checks for a candidate characteristic
// polynomial S = P^N and a target signature (r, s).
struct GateReport {
    bool c1 = false;               // S reciprocal
    bool c2 = false;               // m <= r, m <= s, m == r == s mod 2
    bool c3 = false;               // |S(1)|, |S(-1)|, (-1)^{(r+s)/2} S(1) S(-1) all squares
    bool congruence_mod8 = false;  // r == s mod 8
    bool degree_match = false;     // deg S == r + s
    long m = 0;                    // roots outside the closed unit disk
    bool verdict = false;          // conjunction of the five flags
    bool constructive = false;     // |S(1)| == |S(-1)| == 1
    Int s_at_1, s_at_minus_1;
};

GateReport check_conditions(const IntPoly& s, long r, long sg);

// Degree-22 test used for K3 automorphism candidates.
bool k3_check(const IntPoly& s);

// All signatures (r, s) attainable by archimedean scaling choices:
// { (m + 2a, m + 2b) : a + b = (deg S - 2m) / 2 }.
std::set<std::pair<long, long>> signature_targets(const IntPoly& s);

}  // namespace isowitt
