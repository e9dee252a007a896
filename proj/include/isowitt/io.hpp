#pragma once

// JSON serialization for every structured payload the CLI emits, with the
// matching parsers so machine output round-trips exactly.  Conventions:
// rationals are strings "p/q" or "n", polynomials are arrays of integer
// strings (constant term first), matrices are arrays of rows of rational
// strings, square classes are signed integers, places are "real" or the
// prime written in decimal.

#include <string>

#include <json.hpp>

#include "isowitt/equiwitt.hpp"
#include "isowitt/gate.hpp"
#include "isowitt/hermitian.hpp"
#include "isowitt/qform.hpp"
#include "isowitt/realize.hpp"
#include "isowitt/reduction.hpp"
#include "isowitt/twoadic.hpp"
#include "isowitt/zlattice.hpp"

namespace isowitt {

// std::map-backed: object keys serialize sorted, so dumps are deterministic.
using Json = nlohmann::json;

std::string rat_string(const Rat& x);
Rat parse_rat(const std::string& text);

Json poly_json(const IntPoly& s);
IntPoly parse_poly(const Json& j);

Json mat_json(const QMat& m);
QMat parse_mat(const Json& j);

Json square_class_json(const SquareClass& c);
SquareClass parse_square_class(const Json& j);

Json gate_json(const GateReport& g);
GateReport parse_gate(const Json& j);

Json invariants_json(const FormInvariants& iv);
FormInvariants parse_invariants(const Json& j);

Json splitting_json(const SplittingData& sd);
SplittingData parse_splitting(const Json& j);

Json lattice_report_json(const LatticeReport& r);
LatticeReport parse_lattice_report(const Json& j);

Json torsion_json(const TorsionForm& t);
TorsionForm parse_torsion(const Json& j);

Json fq_form_json(const FqForm& f);
FqForm parse_fq_form(const Json& j);

Json witt_json(const WittVerdict& w);
WittVerdict parse_witt(const Json& j);

Json boundary_json(const BoundaryClass& b);
BoundaryClass parse_boundary(const Json& j);

Json spinor_json(const SpinorClass& s);
SpinorClass parse_spinor(const Json& j);

Json even_criterion_json(const EvenCriterion& e);
EvenCriterion parse_even_criterion(const Json& j);

Json certificate_json(const Certificate& c);
Certificate parse_certificate(const Json& j);

Json feasibility_json(const FeasibilityReport& f);
FeasibilityReport parse_feasibility(const Json& j);

}  // namespace isowitt
