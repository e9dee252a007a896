// isowitt: subcommand front end over the exact-arithmetic core.  Exit codes:
// 0 = positive verdict / success, 1 = negative verdict (conditions fail, no
// witness, search exhausted), 2 = input or budget error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isowitt/errors.hpp"
#include "isowitt/io.hpp"

namespace {

using namespace isowitt;

const char* pf(bool b) { return b ? "pass" : "fail"; }
const char* yn(bool b) { return b ? "yes" : "no"; }

void print_mat(const std::string& label, const QMat& m) {
    std::cout << label << ":\n";
    for (long i = 0; i < m.rows; ++i) {
        std::cout << " ";
        for (long j = 0; j < m.cols; ++j) std::cout << " " << rat_string(m.at(i, j));
        std::cout << "\n";
    }
}

// Flags shared by every subcommand.  seed and threads are accepted for
// reproducibility bookkeeping; every implemented search is deterministic
// and serial, so they change nothing but the report envelope.
struct CommonOpts {
    std::string json_path;
    long budget = witt_default_budget;
    long seed = 0;
    int threads = 1;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--json", c.json_path, "write the machine-readable report to this file");
    sub->add_option("--budget", c.budget, "cap on search/enumeration work")
        ->envname("ISOWITT_BUDGET")
        ->capture_default_str();
    sub->add_option("--seed", c.seed, "search seed recorded in the report (searches are deterministic)")
        ->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads (current searches are serial)")
        ->capture_default_str();
}

void sink_json(const CommonOpts& c, const std::string& command, const Json& payload) {
    if (c.json_path.empty()) return;
    Json envelope;
    envelope["budget"] = c.budget;
    envelope["command"] = command;
    envelope["payload"] = payload;
    envelope["seed"] = c.seed;
    std::ofstream out(c.json_path);
    if (!out) throw input_error("cannot write \"" + c.json_path + "\"");
    out << envelope.dump(2) << "\n";
}

bool is_inline_list(const std::string& s, bool allow_slash) {
    if (s.empty()) return false;
    bool digit = false;
    for (char ch : s) {
        if (ch >= '0' && ch <= '9') {
            digit = true;
        } else if (ch == '-' || ch == ',' || ch == ' ') {
        } else if (allow_slash && ch == '/') {
        } else {
            return false;
        }
    }
    return digit;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Json load_json_arg(const std::string& arg, const char* what) {
    std::string text;
    if (!arg.empty() && arg[0] == '[') {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw input_error(std::string(what) + ": cannot read \"" + arg + "\"");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw input_error(std::string(what) + ": " + e.what());
    }
}

// --poly accepts a bare comma list "1,1,0,-1", inline JSON, or a file path.
IntPoly load_poly(const std::string& arg) {
    if (is_inline_list(arg, false)) {
        std::vector<Int> c;
        for (const std::string& tok : split_commas(arg)) {
            try {
                c.emplace_back(tok);
            } catch (const std::exception&) {
                throw input_error("polynomial: integer expected, got \"" + tok + "\"");
            }
        }
        return IntPoly(std::move(c));
    }
    return parse_poly(load_json_arg(arg, "polynomial"));
}

AlgElement load_alg_element(const std::string& arg) {
    std::vector<Rat> c;
    if (is_inline_list(arg, true)) {
        for (const std::string& tok : split_commas(arg)) c.push_back(parse_rat(tok));
    } else {
        Json j = load_json_arg(arg, "element");
        if (!j.is_array()) throw input_error("element must be an array of rational strings");
        for (const Json& e : j) {
            if (e.is_string())
                c.push_back(parse_rat(e.get<std::string>()));
            else if (e.is_number_integer())
                c.push_back(Rat(static_cast<long>(e.get<long long>())));
            else
                throw input_error("element coefficients must be rational strings");
        }
    }
    return AlgElement{QPoly(std::move(c))};
}

QMat load_mat(const std::string& arg, const char* what) { return parse_mat(load_json_arg(arg, what)); }

Int parse_prime_arg(const std::string& arg) {
    try {
        return Int(arg);
    } catch (const std::exception&) {
        throw input_error("prime expected, got \"" + arg + "\"");
    }
}

std::pair<long, long> parse_signature(const std::string& arg) {
    std::vector<std::string> parts = split_commas(arg);
    if (parts.size() != 2) throw input_error("signature must be \"r,s\"");
    try {
        size_t used = 0;
        long r = std::stol(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
        long s = std::stol(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        return {r, s};
    } catch (const std::exception&) {
        throw input_error("signature must be \"r,s\" with integer entries");
    }
}

// ---- subcommand runners --------------------------------------------------

int run_gate(const CommonOpts& c, const std::string& poly_arg, const std::string& sig_arg) {
    IntPoly s = load_poly(poly_arg);
    auto [r, sg] = parse_signature(sig_arg);
    GateReport g = check_conditions(s, r, sg);
    std::cout << "S(1) = " << g.s_at_1.get_str() << ", S(-1) = " << g.s_at_minus_1.get_str()
              << ", m = " << g.m << "\n";
    std::cout << "C1 reciprocal: " << pf(g.c1) << "\n";
    std::cout << "C2 root count vs signature: " << pf(g.c2) << "\n";
    std::cout << "C3 square conditions: " << pf(g.c3) << "\n";
    std::cout << "degree matches r+s: " << pf(g.degree_match) << "\n";
    std::cout << "r = s mod 8: " << pf(g.congruence_mod8) << "\n";
    std::cout << "constructive case (|S(1)| = |S(-1)| = 1): " << yn(g.constructive) << "\n";
    std::cout << "verdict: " << pf(g.verdict) << "\n";
    sink_json(c, "gate", gate_json(g));
    return g.verdict ? 0 : 1;
}

int run_traceform(const CommonOpts& c, const std::string& poly_arg, const std::string& lambda_arg) {
    IntPoly s = load_poly(poly_arg);
    AlgElement lam = load_alg_element(lambda_arg);
    QuadForm f = trace_form_gram(s, lam);
    FormInvariants iv = invariants(f);
    std::cout << "dim = " << iv.dim << ", signature (" << iv.r << "," << iv.s << ")\n";
    std::cout << "det class = " << iv.det.rep.get_str() << ", disc class = " << iv.disc.rep.get_str()
              << "\n";
    std::cout << "hasse -1 at:";
    bool any = false;
    for (const auto& [place, eps] : iv.hasse)
        if (eps == -1) {
            std::cout << " " << place.str();
            any = true;
        }
    if (!any) std::cout << " (none)";
    std::cout << "\n";
    print_mat("gram", f.gram);
    Json payload;
    payload["gram"] = mat_json(f.gram);
    payload["invariants"] = invariants_json(iv);
    sink_json(c, "traceform", payload);
    return 0;
}

int run_splitting(const CommonOpts& c, const std::string& poly_arg, const std::string& prime_arg) {
    IntPoly s = load_poly(poly_arg);
    Int p = parse_prime_arg(prime_arg);
    SplittingData sd = local_splitting(s, p);
    std::cout << "p = " << sd.prime.get_str() << ", places above p: " << sd.places.size()
              << ", all certified: " << yn(sd.all_certified()) << "\n";
    for (size_t i = 0; i < sd.places.size(); ++i) {
        const LocalPlace& w = sd.places[i];
        const char* type = "";
        switch (w.type) {
            case place_type::split: type = "split"; break;
            case place_type::unramified: type = "unramified"; break;
            case place_type::ramified_plus: type = "ramified (alpha = +1)"; break;
            case place_type::ramified_minus: type = "ramified (alpha = -1)"; break;
            case place_type::ramified: type = "ramified"; break;
        }
        std::cout << "  place " << i + 1 << ": " << type << ", residue degree " << w.residue_degree
                  << ", ram index " << w.ram_index << ", "
                  << (w.certified ? "certified" : "uncertified") << "\n";
    }
    sink_json(c, "splitting", splitting_json(sd));
    return 0;
}

int run_lattice(const CommonOpts& c, const std::string& gram_arg, const std::string& basis_arg,
                const std::string& action_arg) {
    QuadForm v(load_mat(gram_arg, "gram"));
    QMat basis = basis_arg.empty() ? QMat::identity(v.gram.rows) : load_mat(basis_arg, "basis");
    QMat action = action_arg.empty() ? QMat::identity(v.gram.rows) : load_mat(action_arg, "action");
    GLattice l(v, basis, action);
    LatticeReport rep = lattice_report(l);
    TorsionForm disc = discriminant_form(l);
    std::cout << "integral: " << yn(rep.integral) << "\n";
    std::cout << "unimodular: " << yn(rep.unimodular) << "\n";
    std::cout << "even: " << yn(rep.even) << "\n";
    std::cout << "almost unimodular at:";
    if (rep.almost_unimodular_at.empty()) std::cout << " (none)";
    for (const Int& p : rep.almost_unimodular_at) std::cout << " " << p.get_str();
    std::cout << "\n";
    std::cout << "discriminant group order = " << torsion_group_order(disc).get_str() << "\n";
    std::cout << "discriminant group orders:";
    if (disc.orders.empty()) std::cout << " (trivial)";
    for (const Int& n : disc.orders) std::cout << " " << n.get_str();
    std::cout << "\n";
    if (!disc.orders.empty()) print_mat("discriminant pairing", disc.pairing);
    Json payload;
    payload["report"] = lattice_report_json(rep);
    payload["discriminant"] = torsion_json(disc);
    payload["discriminant_order"] = torsion_group_order(disc).get_str();
    sink_json(c, "lattice", payload);
    return 0;
}

int run_witt(const CommonOpts& c, const std::string& field_arg, const std::string& gram_arg,
             const std::string& action_arg, const std::string& equal_arg,
             const std::string& equal_action_arg) {
    Int p = parse_prime_arg(field_arg);
    QMat g = load_mat(gram_arg, "gram");
    FqForm f = action_arg.empty() ? FqForm(p, g) : FqForm(p, g, load_mat(action_arg, "action"));
    if (!equal_arg.empty()) {
        QMat g2 = load_mat(equal_arg, "second gram");
        FqForm f2 = equal_action_arg.empty() ? FqForm(p, g2)
                                             : FqForm(p, g2, load_mat(equal_action_arg, "second action"));
        bool eq = witt_equal(f, f2, c.budget);
        std::cout << "witt equal: " << yn(eq) << "\n";
        Json payload;
        payload["equal"] = eq;
        sink_json(c, "witt", payload);
        return eq ? 0 : 1;
    }
    WittVerdict w = is_neutral(f, c.budget);
    std::cout << "neutral: " << yn(w.neutral) << "\n";
    if (w.lagrangian) print_mat("stable lagrangian", *w.lagrangian);
    sink_json(c, "witt", witt_json(w));
    return w.neutral ? 0 : 1;
}

int run_boundary(const CommonOpts& c, const std::string& gram_arg, const std::string& action_arg,
                 const std::string& prime_arg, long cap) {
    QuadForm v(load_mat(gram_arg, "gram"));
    QMat a = action_arg.empty() ? QMat::identity(v.gram.rows) : load_mat(action_arg, "action");
    Int p = parse_prime_arg(prime_arg);
    BoundaryClass b = boundary(v, a, p, cap);
    std::cout << "p = " << b.prime.get_str() << ", boundary form dimension = " << b.form.dim()
              << "\n";
    print_mat("residue gram", b.form.gram);
    print_mat("residue action", b.form.action);
    sink_json(c, "boundary", boundary_json(b));
    return 0;
}

int run_unimodular(const CommonOpts& c, const std::string& gram_arg, const std::string& action_arg,
                   const std::string& prime_arg, long cap) {
    QuadForm v(load_mat(gram_arg, "gram"));
    QMat a = action_arg.empty() ? QMat::identity(v.gram.rows) : load_mat(action_arg, "action");
    Int p = parse_prime_arg(prime_arg);
    std::optional<GLattice> w = unimodular_witness(v, a, p, cap, c.budget);
    Json payload;
    payload["found"] = w.has_value();
    payload["basis"] = w ? mat_json(w->basis) : Json();
    payload["gram"] = w ? mat_json(w->gram()) : Json();
    if (w) {
        std::cout << "witness found: yes\n";
        print_mat("basis", w->basis);
        print_mat("lattice gram", w->gram());
    } else {
        std::cout << "witness found: no (the boundary class at p is nonzero)\n";
    }
    sink_json(c, "unimodular", payload);
    return w ? 0 : 1;
}

int run_spinor(const CommonOpts& c, const std::string& gram_arg, const std::string& isometry_arg) {
    QuadForm f(load_mat(gram_arg, "gram"));
    QMat alpha = load_mat(isometry_arg, "isometry");
    SpinorClass sc = spinor_norm(f, alpha);
    std::cout << "spinor norm class = " << sc.value.rep.get_str() << "\n";
    sink_json(c, "spinor", spinor_json(sc));
    return 0;
}

int run_even_criterion(const CommonOpts& c, const std::string& gram_arg,
                       const std::string& action_arg, long cap) {
    QuadForm v(load_mat(gram_arg, "gram"));
    QMat a = action_arg.empty() ? QMat::identity(v.gram.rows) : load_mat(action_arg, "action");
    EvenCriterion e = even_criterion(v, a, cap, c.budget);
    std::cout << "(i) stable unimodular lattice at 2: " << pf(e.stable_unimodular) << "\n";
    std::cout << "(ii) even unimodular class over Z_2: " << pf(e.even_class) << "\n";
    std::cout << "(iii) spinor norm has even valuation at 2: " << pf(e.spinor_parity) << "\n";
    std::cout << "verdict: " << pf(e.verdict) << "\n";
    sink_json(c, "even-criterion", even_criterion_json(e));
    return e.verdict ? 0 : 1;
}

int run_realize(const CommonOpts& c, const std::string& poly_arg, const std::string& sig_arg,
                const std::string& height_arg) {
    IntPoly s = load_poly(poly_arg);
    auto [r, sg] = parse_signature(sig_arg);
    Int height;
    try {
        height = Int(height_arg);
    } catch (const std::exception&) {
        throw input_error("unit height must be an integer");
    }
    std::optional<Certificate> cert = construct(s, r, sg, height);
    Json payload;
    payload["found"] = cert.has_value();
    payload["certificate"] = cert ? certificate_json(*cert) : Json();
    if (cert) {
        std::cout << "certificate found: yes\n";
        std::cout << "signature (" << cert->claims.r << "," << cert->claims.s << "), even: "
                  << yn(cert->claims.even) << ", unimodular: " << yn(cert->claims.unimodular)
                  << ", verified: " << yn(cert->verified) << "\n";
        print_mat("gram", cert->gram);
        print_mat("action", cert->action);
    } else {
        std::cout << "certificate found: no (bounded unit search exhausted; not a disproof)\n";
    }
    sink_json(c, "realize", payload);
    return cert ? 0 : 1;
}

int run_feasibility(const CommonOpts& c, const std::string& poly_arg, const std::string& sig_arg) {
    IntPoly s = load_poly(poly_arg);
    auto [r, sg] = parse_signature(sig_arg);
    FeasibilityReport f = feasibility_report(s, r, sg);
    std::cout << "gate verdict: " << pf(f.gate.verdict) << "\n";
    std::cout << "local checks:\n";
    if (f.local.empty()) std::cout << "  (none apply)\n";
    for (const LocalCheck& lc : f.local)
        std::cout << "  p = " << lc.p.get_str() << ": " << pf(lc.pass) << " (" << lc.note << ")\n";
    std::cout << "local obstructions pass: " << yn(f.local_pass) << "\n";
    std::cout << "gate/local consistency: " << yn(f.consistent) << "\n";
    sink_json(c, "feasibility", feasibility_json(f));
    if (!f.consistent) {
        std::cerr << "internal error (software defect): gate passed but a local check it implies failed\n";
        return 2;
    }
    return (f.gate.verdict && f.local_pass) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decision and construction procedures for isometries of even unimodular lattices"};
    app.require_subcommand(1);

    int code = 2;

    // gate
    CommonOpts gate_c;
    std::string gate_poly, gate_sig;
    CLI::App* gate_cmd = app.add_subcommand("gate", "necessary conditions on a characteristic polynomial and signature");
    gate_cmd->add_option("--poly", gate_poly, "coefficients, constant first: \"1,1,0\" or JSON file/array of integer strings")->required();
    gate_cmd->add_option("--signature", gate_sig, "target signature \"r,s\"")->required();
    add_common(gate_cmd, gate_c);
    gate_cmd->callback([&]() { code = run_gate(gate_c, gate_poly, gate_sig); });

    // traceform
    CommonOpts tf_c;
    std::string tf_poly, tf_lambda = "1";
    CLI::App* tf_cmd = app.add_subcommand("traceform", "Gram matrix and invariants of a twisted trace form on Q[t]/(S)");
    tf_cmd->add_option("--poly", tf_poly, "monic reciprocal squarefree S, constant first")->required();
    tf_cmd->add_option("--lambda", tf_lambda, "twist: sigma-invariant unit as rational coefficients in alpha (default 1)")
        ->capture_default_str();
    add_common(tf_cmd, tf_c);
    tf_cmd->callback([&]() { code = run_traceform(tf_c, tf_poly, tf_lambda); });

    // splitting
    CommonOpts sp_c;
    std::string sp_poly, sp_prime;
    CLI::App* sp_cmd = app.add_subcommand("splitting", "places of the trace field above p and their splitting in Q[t]/(S)");
    sp_cmd->add_option("--poly", sp_poly, "monic reciprocal S = P^N, constant first")->required();
    sp_cmd->add_option("--prime", sp_prime, "rational prime p")->required();
    add_common(sp_cmd, sp_c);
    sp_cmd->callback([&]() { code = run_splitting(sp_c, sp_poly, sp_prime); });

    // lattice
    CommonOpts la_c;
    std::string la_gram, la_basis, la_action;
    CLI::App* la_cmd = app.add_subcommand("lattice", "integrality/unimodularity report and discriminant form of a lattice");
    la_cmd->add_option("--gram", la_gram, "ambient Gram matrix file (arrays of rational strings)")->required();
    la_cmd->add_option("--basis", la_basis, "lattice basis columns (default: standard basis)");
    la_cmd->add_option("--action", la_action, "isometry preserving the lattice (default: identity)");
    add_common(la_cmd, la_c);
    la_cmd->callback([&]() { code = run_lattice(la_c, la_gram, la_basis, la_action); });

    // witt
    CommonOpts wi_c;
    std::string wi_field, wi_gram, wi_action, wi_equal, wi_equal_action;
    bool wi_neutral = false;
    CLI::App* wi_cmd = app.add_subcommand("witt", "equivariant Witt-group questions over F_p");
    wi_cmd->add_option("--field", wi_field, "odd prime p of the coefficient field F_p")->required();
    wi_cmd->add_option("--gram", wi_gram, "Gram matrix file, entries mod p")->required();
    wi_cmd->add_option("--action", wi_action, "isometry of the form (default: identity)");
    wi_cmd->add_flag("--neutral", wi_neutral, "decide neutrality (the default mode)");
    wi_cmd->add_option("--equal", wi_equal, "second Gram matrix: decide Witt equality instead");
    wi_cmd->add_option("--equal-action", wi_equal_action, "action for the second form (default: identity)");
    add_common(wi_cmd, wi_c);
    wi_cmd->callback([&]() { code = run_witt(wi_c, wi_field, wi_gram, wi_action, wi_equal, wi_equal_action); });

    // boundary
    CommonOpts bo_c;
    std::string bo_gram, bo_action, bo_prime;
    long bo_cap = reduction_default_cap;
    CLI::App* bo_cmd = app.add_subcommand("boundary", "residue Witt class of a rational form with isometry at p");
    bo_cmd->add_option("--gram", bo_gram, "Gram matrix file of the rational form")->required();
    bo_cmd->add_option("--action", bo_action, "isometry with integral characteristic polynomial (default: identity)");
    bo_cmd->add_option("--prime", bo_prime, "rational prime p")->required();
    bo_cmd->add_option("--cap", bo_cap, "max exponent reduction rounds")->capture_default_str();
    add_common(bo_cmd, bo_c);
    bo_cmd->callback([&]() { code = run_boundary(bo_c, bo_gram, bo_action, bo_prime, bo_cap); });

    // unimodular
    CommonOpts un_c;
    std::string un_gram, un_action, un_prime;
    long un_cap = reduction_default_cap;
    CLI::App* un_cmd = app.add_subcommand("unimodular", "search for a stable p-unimodular lattice in a rational form");
    un_cmd->add_option("--gram", un_gram, "Gram matrix file of the rational form")->required();
    un_cmd->add_option("--action", un_action, "isometry with integral characteristic polynomial (default: identity)");
    un_cmd->add_option("--prime", un_prime, "rational prime p")->required();
    un_cmd->add_option("--cap", un_cap, "max exponent reduction rounds")->capture_default_str();
    add_common(un_cmd, un_c);
    un_cmd->callback([&]() { code = run_unimodular(un_c, un_gram, un_action, un_prime, un_cap); });

    // spinor
    CommonOpts spn_c;
    std::string spn_gram, spn_iso;
    CLI::App* spn_cmd = app.add_subcommand("spinor", "spinor norm of a special-orthogonal transformation");
    spn_cmd->add_option("--gram", spn_gram, "Gram matrix file")->required();
    spn_cmd->add_option("--isometry", spn_iso, "matrix in SO of the form")->required();
    add_common(spn_cmd, spn_c);
    spn_cmd->callback([&]() { code = run_spinor(spn_c, spn_gram, spn_iso); });

    // even-criterion
    CommonOpts ev_c;
    std::string ev_gram, ev_action;
    long ev_cap = reduction_default_cap;
    CLI::App* ev_cmd = app.add_subcommand("even-criterion", "existence of a stable even unimodular lattice at 2");
    ev_cmd->add_option("--gram", ev_gram, "Gram matrix file of the rational form")->required();
    ev_cmd->add_option("--action", ev_action, "special-orthogonal isometry (default: identity)");
    ev_cmd->add_option("--cap", ev_cap, "max exponent reduction rounds")->capture_default_str();
    add_common(ev_cmd, ev_c);
    ev_cmd->callback([&]() { code = run_even_criterion(ev_c, ev_gram, ev_action, ev_cap); });

    // realize
    CommonOpts re_c;
    std::string re_poly, re_sig, re_height = "1000000";
    CLI::App* re_cmd = app.add_subcommand("realize", "construct a verified even unimodular lattice with prescribed isometry");
    re_cmd->add_option("--poly", re_poly, "monic irreducible reciprocal S with |S(1)| = |S(-1)| = 1")->required();
    re_cmd->add_option("--signature", re_sig, "target signature \"r,s\"")->required();
    re_cmd->add_option("--unit-height", re_height, "coefficient height bound for the unit search")
        ->capture_default_str();
    add_common(re_cmd, re_c);
    re_cmd->callback([&]() { code = run_realize(re_c, re_poly, re_sig, re_height); });

    // feasibility
    CommonOpts fe_c;
    std::string fe_poly, fe_sig;
    CLI::App* fe_cmd = app.add_subcommand("feasibility", "gate verdict plus per-prime local obstructions");
    fe_cmd->add_option("--poly", fe_poly, "monic S, constant first")->required();
    fe_cmd->add_option("--signature", fe_sig, "target signature \"r,s\"")->required();
    add_common(fe_cmd, fe_c);
    fe_cmd->callback([&]() { code = run_feasibility(fe_c, fe_poly, fe_sig); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error (software defect): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
