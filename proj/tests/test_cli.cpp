#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "isowitt/io.hpp"

using namespace isowitt;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary through the shell; stderr is discarded so
// diagnostics don't pollute the test log.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + ISOWITT_BIN + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string out;
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    RunResult r;
    r.out = out;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* kLehmer = "1,1,0,-1,-1,-1,-1,-1,0,1,1";

Json payload_of(const std::string& json_path, const std::string& command) {
    Json envelope = Json::parse(slurp(json_path));
    CHECK(envelope["command"] == command);
    CHECK(envelope.contains("seed"));
    CHECK(envelope.contains("budget"));
    return envelope["payload"];
}

}  // namespace

TEST_CASE("gate exit codes") {
    CHECK(run_cli(std::string("gate --poly ") + kLehmer + " --signature 9,1").exit_code == 0);
    CHECK(run_cli(std::string("gate --poly ") + kLehmer + " --signature 1,9").exit_code == 0);
    CHECK(run_cli(std::string("gate --poly ") + kLehmer + " --signature 5,5").exit_code == 0);
    CHECK(run_cli(std::string("gate --poly ") + kLehmer + " --signature 10,0").exit_code == 1);
    // non-monic input is an error, not a negative verdict
    CHECK(run_cli("gate --poly 2,1,2 --signature 1,1").exit_code == 2);
    CHECK(run_cli("gate --poly 1,x,1 --signature 1,1").exit_code == 2);
    CHECK(run_cli("gate --poly 1,1,1 --signature bogus").exit_code == 2);
}

TEST_CASE("cli parse failures exit 2 and help exits 0") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("gate --help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);                    // missing subcommand
    CHECK(run_cli("gate --signature 1,1").exit_code == 2);  // missing --poly
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("gate --poly 1,1 --signature 1,1 --bogus").exit_code == 2);
}

TEST_CASE("gate json sink round-trips and is deterministic") {
    std::string path1 = "/tmp/isowitt_cli_gate1.json";
    std::string path2 = "/tmp/isowitt_cli_gate2.json";
    RunResult r1 = run_cli(std::string("gate --poly ") + kLehmer + " --signature 9,1 --json " + path1);
    RunResult r2 = run_cli(std::string("gate --poly ") + kLehmer + " --signature 9,1 --json " + path2);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(slurp(path1) == slurp(path2));  // byte-for-byte
    Json payload = payload_of(path1, "gate");
    GateReport g = parse_gate(payload);
    CHECK(gate_json(g) == payload);
    CHECK(g.m == 1);
    CHECK(g.constructive);
    std::remove(path1.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("traceform and splitting round-trip") {
    std::string path = "/tmp/isowitt_cli_tf.json";
    RunResult r = run_cli("traceform --poly 1,0,-1,0,1 --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "traceform");
    FormInvariants iv = parse_invariants(payload["invariants"]);
    CHECK(invariants_json(iv) == payload["invariants"]);
    CHECK(iv.dim == 4);
    CHECK(iv.r == 4);  // plain trace form tr(x sigma(x)) is totally positive
    CHECK(iv.s == 0);
    QMat gram = parse_mat(payload["gram"]);
    CHECK(mat_json(gram) == payload["gram"]);
    CHECK(gram.rows == 4);

    RunResult s = run_cli(std::string("splitting --poly ") + kLehmer + " --prime 2 --json " + path);
    CHECK(s.exit_code == 0);
    Json sp = payload_of(path, "splitting");
    CHECK(splitting_json(parse_splitting(sp)) == sp);
    CHECK(sp["places"].size() == 1);
    // lambda must be sigma-invariant: alpha alone is rejected
    CHECK(run_cli("traceform --poly 1,0,-1,0,1 --lambda 0,1").exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("lattice report round-trips") {
    std::string path = "/tmp/isowitt_cli_lat.json";
    write_file("/tmp/isowitt_cli_n.json", "[[\"2\",\"1\"],[\"1\",\"2\"]]");
    RunResult r = run_cli("lattice --gram /tmp/isowitt_cli_n.json --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "lattice");
    LatticeReport rep = parse_lattice_report(payload["report"]);
    CHECK(lattice_report_json(rep) == payload["report"]);
    CHECK(rep.even);
    CHECK(!rep.unimodular);
    TorsionForm t = parse_torsion(payload["discriminant"]);
    CHECK(torsion_json(t) == payload["discriminant"]);
    CHECK(payload["discriminant_order"] == "3");
    std::remove(path.c_str());
    std::remove("/tmp/isowitt_cli_n.json");
}

TEST_CASE("witt subcommand verdict codes") {
    // inline matrix arguments
    CHECK(run_cli("witt --field 3 --gram [[\"1\",\"0\"],[\"0\",\"-1\"]]").exit_code == 0);
    CHECK(run_cli("witt --field 3 --gram [[\"1\"]]").exit_code == 1);  // anisotropic
    CHECK(run_cli("witt --field 3 --gram [[\"1\",\"0\"],[\"0\",\"-1\"]] "
                  "--equal [[\"2\",\"0\"],[\"0\",\"-2\"]]").exit_code == 0);
    CHECK(run_cli("witt --field 3 --gram [[\"1\"]] --equal [[\"-1\"]]").exit_code == 1);
    std::string path = "/tmp/isowitt_cli_witt.json";
    RunResult r = run_cli("witt --field 3 --gram [[\"1\",\"0\"],[\"0\",\"-1\"]] --neutral --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "witt");
    WittVerdict w = parse_witt(payload);
    CHECK(witt_json(w) == payload);
    CHECK(w.neutral);
    REQUIRE(w.lagrangian.has_value());
    std::remove(path.c_str());
}

TEST_CASE("boundary and unimodular witness") {
    std::string path = "/tmp/isowitt_cli_bd.json";
    // hyperbolic plane with the swap action: trivial boundary at 2
    RunResult r = run_cli("boundary --gram [[\"0\",\"1\"],[\"1\",\"0\"]] "
                          "--action [[\"0\",\"1\"],[\"1\",\"0\"]] --prime 2 --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "boundary");
    BoundaryClass b = parse_boundary(payload);
    CHECK(boundary_json(b) == payload);
    CHECK(b.form.dim() == 0);

    RunResult w = run_cli("unimodular --gram [[\"3\",\"0\"],[\"0\",\"6\"]] --prime 3 --json " + path);
    CHECK(w.exit_code == 0);
    Json wp = payload_of(path, "unimodular");
    CHECK(wp["found"] == true);
    QMat basis = parse_mat(wp["basis"]);
    CHECK(mat_json(basis) == wp["basis"]);
    CHECK(basis.rows == 2);
    // v_3(det) odd: no 3-unimodular stable lattice exists
    CHECK(run_cli("unimodular --gram [[\"3\",\"0\"],[\"0\",\"1\"]] --prime 3").exit_code == 1);
    std::remove(path.c_str());
}

TEST_CASE("spinor and even-criterion") {
    std::string path = "/tmp/isowitt_cli_sp.json";
    RunResult r = run_cli("spinor --gram [[\"1\",\"0\"],[\"0\",\"-1\"]] "
                          "--isometry [[\"-1\",\"0\"],[\"0\",\"-1\"]] --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "spinor");
    SpinorClass sc = parse_spinor(payload);
    CHECK(spinor_json(sc) == payload);
    CHECK(sc.value.rep == -1);

    CHECK(run_cli("even-criterion --gram [[\"1\",\"0\"],[\"0\",\"-1\"]]").exit_code == 0);
    // diag(1,1,1,1) has no even unimodular 2-adic class
    RunResult e = run_cli("even-criterion --gram "
                          "[[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"1\",\"0\",\"0\"],"
                          "[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]] --json " + path);
    CHECK(e.exit_code == 1);
    Json ep = payload_of(path, "even-criterion");
    EvenCriterion ec = parse_even_criterion(ep);
    CHECK(even_criterion_json(ec) == ep);
    CHECK(ec.stable_unimodular);
    CHECK(!ec.even_class);
    std::remove(path.c_str());
}

TEST_CASE("realize and feasibility") {
    std::string path = "/tmp/isowitt_cli_re.json";
    RunResult r = run_cli(std::string("realize --poly ") + kLehmer + " --signature 1,9 --json " + path);
    CHECK(r.exit_code == 0);
    Json payload = payload_of(path, "realize");
    CHECK(payload["found"] == true);
    Certificate cert = parse_certificate(payload["certificate"]);
    CHECK(certificate_json(cert) == payload["certificate"]);
    CHECK(cert.claims.r == 1);
    CHECK(cert.claims.s == 9);
    CHECK(cert.verified);
    // exhausted search is a negative verdict, not an error
    CHECK(run_cli(std::string("realize --poly ") + kLehmer + " --signature 9,1 --unit-height 0")
              .exit_code == 1);
    // precondition violation is an error
    CHECK(run_cli("realize --poly 1,-3,1 --signature 1,1").exit_code == 2);

    CHECK(run_cli(std::string("feasibility --poly ") + kLehmer + " --signature 9,1").exit_code == 0);
    RunResult f = run_cli("feasibility --poly 1,-3,1 --signature 1,1 --json " + path);
    CHECK(f.exit_code == 1);
    Json fp = payload_of(path, "feasibility");
    FeasibilityReport fr = parse_feasibility(fp);
    CHECK(feasibility_json(fr) == fp);
    CHECK(!fr.local_pass);
    std::remove(path.c_str());
}

TEST_CASE("budget flag and environment variable") {
    // non-square determinant: proving non-neutrality exhausts more than 3 nodes
    std::string args = "witt --field 3 --gram "
                       "[[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"1\",\"0\",\"0\"],"
                       "[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"-1\"]]";
    CHECK(run_cli(args).exit_code == 1);
    CHECK(run_cli(args + " --budget 3").exit_code == 2);
    CHECK(run_cli(args, "ISOWITT_BUDGET=3").exit_code == 2);
    // an explicit flag wins over the environment
    CHECK(run_cli(args + " --budget 10000000", "ISOWITT_BUDGET=3").exit_code == 1);
}
