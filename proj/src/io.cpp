#include "isowitt/io.hpp"

#include "isowitt/errors.hpp"

namespace isowitt {

namespace {

Int parse_int(const std::string& text) {
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw input_error("integer expected, got \"" + text + "\"");
    }
}

std::string int_string(const Int& x) { return x.get_str(); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field \"") + key + "\"");
    return j[key];
}

bool field_bool(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_boolean()) throw input_error(std::string("field \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

long field_long(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw input_error(std::string("field \"") + key + "\" must be an integer");
    return v.get<long>();
}

std::string field_string(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw input_error(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

}  // namespace

std::string rat_string(const Rat& x) { return x.get_str(); }

Rat parse_rat(const std::string& text) {
    Rat x;
    try {
        x = Rat(text);
    } catch (const std::exception&) {
        throw input_error("rational expected, got \"" + text + "\"");
    }
    if (x.get_den() == 0) throw input_error("zero denominator in \"" + text + "\"");
    x.canonicalize();
    return x;
}

Json poly_json(const IntPoly& s) {
    Json out = Json::array();
    for (const Int& c : s.c) out.push_back(int_string(c));
    return out;
}

IntPoly parse_poly(const Json& j) {
    if (!j.is_array()) throw input_error("polynomial must be an array of integer strings");
    std::vector<Int> c;
    c.reserve(j.size());
    for (const Json& e : j) {
        if (e.is_string())
            c.push_back(parse_int(e.get<std::string>()));
        else if (e.is_number_integer())
            c.push_back(Int(static_cast<long>(e.get<long long>())));
        else
            throw input_error("polynomial coefficients must be integer strings");
    }
    return IntPoly(std::move(c));
}

Json mat_json(const QMat& m) {
    Json out = Json::array();
    for (long i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols; ++j) row.push_back(rat_string(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

QMat parse_mat(const Json& j) {
    if (!j.is_array()) throw input_error("matrix must be an array of rows");
    long rows = static_cast<long>(j.size());
    if (rows == 0) return QMat();
    if (!j[0].is_array()) throw input_error("matrix rows must be arrays");
    long cols = static_cast<long>(j[0].size());
    QMat m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != cols)
            throw input_error("matrix rows must all have the same length");
        for (long k = 0; k < cols; ++k) {
            const Json& e = row[static_cast<size_t>(k)];
            if (e.is_string())
                m.at(i, k) = parse_rat(e.get<std::string>());
            else if (e.is_number_integer())
                m.at(i, k) = Rat(static_cast<long>(e.get<long long>()));
            else
                throw input_error("matrix entries must be rational strings");
        }
    }
    return m;
}

Json square_class_json(const SquareClass& c) {
    if (c.rep.fits_slong_p()) return Json(c.rep.get_si());
    return Json(int_string(c.rep));
}

SquareClass parse_square_class(const Json& j) {
    if (j.is_number_integer()) return SquareClass{Int(static_cast<long>(j.get<long long>()))};
    if (j.is_string()) return SquareClass{parse_int(j.get<std::string>())};
    throw input_error("square class must be a signed integer");
}

Json gate_json(const GateReport& g) {
    Json out;
    out["c1_reciprocal"] = g.c1;
    out["c2_root_count"] = g.c2;
    out["c3_squares"] = g.c3;
    out["congruence_mod8"] = g.congruence_mod8;
    out["degree_match"] = g.degree_match;
    out["m"] = g.m;
    out["verdict"] = g.verdict;
    out["constructive"] = g.constructive;
    out["s_at_1"] = int_string(g.s_at_1);
    out["s_at_minus_1"] = int_string(g.s_at_minus_1);
    return out;
}

GateReport parse_gate(const Json& j) {
    GateReport g;
    g.c1 = field_bool(j, "c1_reciprocal");
    g.c2 = field_bool(j, "c2_root_count");
    g.c3 = field_bool(j, "c3_squares");
    g.congruence_mod8 = field_bool(j, "congruence_mod8");
    g.degree_match = field_bool(j, "degree_match");
    g.m = field_long(j, "m");
    g.verdict = field_bool(j, "verdict");
    g.constructive = field_bool(j, "constructive");
    g.s_at_1 = parse_int(field_string(j, "s_at_1"));
    g.s_at_minus_1 = parse_int(field_string(j, "s_at_minus_1"));
    return g;
}

Json invariants_json(const FormInvariants& iv) {
    Json out;
    out["dim"] = iv.dim;
    out["det"] = square_class_json(iv.det);
    out["disc"] = square_class_json(iv.disc);
    out["r"] = iv.r;
    out["s"] = iv.s;
    Json hasse = Json::array();
    for (const auto& [place, eps] : iv.hasse) hasse.push_back(Json::array({place.str(), eps}));
    out["hasse"] = hasse;
    return out;
}

FormInvariants parse_invariants(const Json& j) {
    FormInvariants iv;
    iv.dim = field_long(j, "dim");
    iv.det = parse_square_class(field(j, "det"));
    iv.disc = parse_square_class(field(j, "disc"));
    iv.r = field_long(j, "r");
    iv.s = field_long(j, "s");
    const Json& hasse = field(j, "hasse");
    if (!hasse.is_array()) throw input_error("field \"hasse\" must be an array");
    for (const Json& e : hasse) {
        if (!e.is_array() || e.size() != 2) throw input_error("hasse entries are [place, sign] pairs");
        std::string place = e[0].get<std::string>();
        int eps = e[1].get<int>();
        iv.hasse[place == "real" ? Place::real() : Place::finite(parse_int(place))] = eps;
    }
    return iv;
}

namespace {

const char* place_type_name(place_type t) {
    switch (t) {
        case place_type::split: return "split";
        case place_type::unramified: return "unramified";
        case place_type::ramified_plus: return "ramified_plus";
        case place_type::ramified_minus: return "ramified_minus";
        case place_type::ramified: return "ramified";
    }
    throw internal_error("unknown place type");
}

place_type parse_place_type(const std::string& name) {
    if (name == "split") return place_type::split;
    if (name == "unramified") return place_type::unramified;
    if (name == "ramified_plus") return place_type::ramified_plus;
    if (name == "ramified_minus") return place_type::ramified_minus;
    if (name == "ramified") return place_type::ramified;
    throw input_error("unknown place type \"" + name + "\"");
}

}  // namespace

Json splitting_json(const SplittingData& sd) {
    Json out;
    out["prime"] = int_string(sd.prime);
    Json places = Json::array();
    for (const LocalPlace& w : sd.places) {
        Json e;
        e["type"] = place_type_name(w.type);
        e["residue_degree"] = w.residue_degree;
        e["ram_index"] = w.ram_index;
        e["certified"] = w.certified;
        places.push_back(std::move(e));
    }
    out["places"] = places;
    out["all_certified"] = sd.all_certified();
    return out;
}

SplittingData parse_splitting(const Json& j) {
    SplittingData sd;
    sd.prime = parse_int(field_string(j, "prime"));
    const Json& places = field(j, "places");
    if (!places.is_array()) throw input_error("field \"places\" must be an array");
    for (const Json& e : places) {
        LocalPlace w;
        w.type = parse_place_type(field_string(e, "type"));
        w.residue_degree = field_long(e, "residue_degree");
        w.ram_index = field_long(e, "ram_index");
        w.certified = field_bool(e, "certified");
        sd.places.push_back(w);
    }
    return sd;
}

Json lattice_report_json(const LatticeReport& r) {
    Json out;
    out["integral"] = r.integral;
    out["unimodular"] = r.unimodular;
    out["even"] = r.even;
    Json primes = Json::array();
    for (const Int& p : r.almost_unimodular_at) primes.push_back(int_string(p));
    out["almost_unimodular_at"] = primes;
    return out;
}

LatticeReport parse_lattice_report(const Json& j) {
    LatticeReport r;
    r.integral = field_bool(j, "integral");
    r.unimodular = field_bool(j, "unimodular");
    r.even = field_bool(j, "even");
    const Json& primes = field(j, "almost_unimodular_at");
    if (!primes.is_array()) throw input_error("field \"almost_unimodular_at\" must be an array");
    for (const Json& e : primes) r.almost_unimodular_at.push_back(parse_int(e.get<std::string>()));
    return r;
}

Json torsion_json(const TorsionForm& t) {
    Json out;
    Json orders = Json::array();
    for (const Int& n : t.orders) orders.push_back(int_string(n));
    out["orders"] = orders;
    out["generators"] = mat_json(t.generators);
    out["pairing"] = mat_json(t.pairing);
    out["action"] = mat_json(t.action);
    return out;
}

TorsionForm parse_torsion(const Json& j) {
    TorsionForm t;
    const Json& orders = field(j, "orders");
    if (!orders.is_array()) throw input_error("field \"orders\" must be an array");
    for (const Json& e : orders) t.orders.push_back(parse_int(e.get<std::string>()));
    t.generators = parse_mat(field(j, "generators"));
    t.pairing = parse_mat(field(j, "pairing"));
    t.action = parse_mat(field(j, "action"));
    return t;
}

Json fq_form_json(const FqForm& f) {
    Json out;
    out["p"] = int_string(f.p);
    out["gram"] = mat_json(f.gram);
    out["action"] = mat_json(f.action);
    return out;
}

FqForm parse_fq_form(const Json& j) {
    return FqForm(parse_int(field_string(j, "p")), parse_mat(field(j, "gram")),
                  parse_mat(field(j, "action")));
}

Json witt_json(const WittVerdict& w) {
    Json out;
    out["neutral"] = w.neutral;
    out["lagrangian"] = w.lagrangian ? mat_json(*w.lagrangian) : Json();
    return out;
}

WittVerdict parse_witt(const Json& j) {
    WittVerdict w;
    w.neutral = field_bool(j, "neutral");
    const Json& lag = field(j, "lagrangian");
    if (!lag.is_null()) w.lagrangian = parse_mat(lag);
    return w;
}

Json boundary_json(const BoundaryClass& b) {
    Json out;
    out["prime"] = int_string(b.prime);
    out["form"] = fq_form_json(b.form);
    return out;
}

BoundaryClass parse_boundary(const Json& j) {
    return BoundaryClass{parse_int(field_string(j, "prime")), parse_fq_form(field(j, "form"))};
}

Json spinor_json(const SpinorClass& s) {
    Json out;
    out["value"] = square_class_json(s.value);
    return out;
}

SpinorClass parse_spinor(const Json& j) { return SpinorClass{parse_square_class(field(j, "value"))}; }

Json even_criterion_json(const EvenCriterion& e) {
    Json out;
    out["verdict"] = e.verdict;
    out["stable_unimodular"] = e.stable_unimodular;
    out["even_class"] = e.even_class;
    out["spinor_parity"] = e.spinor_parity;
    return out;
}

EvenCriterion parse_even_criterion(const Json& j) {
    EvenCriterion e;
    e.verdict = field_bool(j, "verdict");
    e.stable_unimodular = field_bool(j, "stable_unimodular");
    e.even_class = field_bool(j, "even_class");
    e.spinor_parity = field_bool(j, "spinor_parity");
    return e;
}

Json certificate_json(const Certificate& c) {
    Json out;
    out["gram"] = mat_json(c.gram);
    out["action"] = mat_json(c.action);
    Json claims;
    claims["even"] = c.claims.even;
    claims["unimodular"] = c.claims.unimodular;
    claims["r"] = c.claims.r;
    claims["s"] = c.claims.s;
    claims["charpoly"] = poly_json(c.claims.charpoly);
    out["claims"] = claims;
    out["verified"] = c.verified;
    return out;
}

Certificate parse_certificate(const Json& j) {
    Certificate c;
    c.gram = parse_mat(field(j, "gram"));
    c.action = parse_mat(field(j, "action"));
    const Json& claims = field(j, "claims");
    c.claims.even = field_bool(claims, "even");
    c.claims.unimodular = field_bool(claims, "unimodular");
    c.claims.r = field_long(claims, "r");
    c.claims.s = field_long(claims, "s");
    c.claims.charpoly = parse_poly(field(claims, "charpoly"));
    c.verified = field_bool(j, "verified");
    return c;
}

Json feasibility_json(const FeasibilityReport& f) {
    Json out;
    out["gate"] = gate_json(f.gate);
    Json local = Json::array();
    for (const LocalCheck& lc : f.local) {
        Json e;
        e["p"] = int_string(lc.p);
        e["pass"] = lc.pass;
        e["note"] = lc.note;
        local.push_back(std::move(e));
    }
    out["local"] = local;
    out["local_pass"] = f.local_pass;
    out["consistent"] = f.consistent;
    return out;
}

FeasibilityReport parse_feasibility(const Json& j) {
    FeasibilityReport f;
    f.gate = parse_gate(field(j, "gate"));
    const Json& local = field(j, "local");
    if (!local.is_array()) throw input_error("field \"local\" must be an array");
    for (const Json& e : local) {
        LocalCheck lc;
        lc.p = parse_int(field_string(e, "p"));
        lc.pass = field_bool(e, "pass");
        lc.note = field_string(e, "note");
        f.local.push_back(lc);
    }
    f.local_pass = field_bool(j, "local_pass");
    f.consistent = field_bool(j, "consistent");
    return f;
}

}  // namespace isowitt
