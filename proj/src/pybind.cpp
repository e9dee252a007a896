// Python bindings: the main operations with the same payload schema the CLI
// emits, so the two front ends document each other.

#include <pybind11/pybind11.h>

#include <string>
#include <vector>

#include "isowitt/errors.hpp"
#include "isowitt/io.hpp"

namespace py = pybind11;
using namespace isowitt;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const Json& e : j) out.append(json_to_py(e));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: throw internal_error("unexpected json node");
    }
}

Int int_from_py(py::handle item, const char* what) {
    std::string text = py::str(item);
    try {
        return Int(text);
    } catch (const std::exception&) {
        throw input_error(std::string(what) + ": integer expected, got \"" + text + "\"");
    }
}

IntPoly poly_from_py(const py::sequence& seq) {
    std::vector<Int> c;
    for (py::handle item : seq) c.push_back(int_from_py(item, "polynomial"));
    return IntPoly(std::move(c));
}

QMat mat_from_py(const py::sequence& rows) {
    long n = static_cast<long>(py::len(rows));
    if (n == 0) return QMat();
    py::sequence first = rows[0].cast<py::sequence>();
    long cols = static_cast<long>(py::len(first));
    QMat m(n, cols);
    for (long i = 0; i < n; ++i) {
        py::sequence row = rows[i].cast<py::sequence>();
        if (static_cast<long>(py::len(row)) != cols)
            throw input_error("matrix rows must all have the same length");
        for (long k = 0; k < cols; ++k) m.at(i, k) = parse_rat(py::str(row[k]));
    }
    return m;
}

QMat mat_or_identity(const py::object& obj, long dim) {
    if (obj.is_none()) return QMat::identity(dim);
    return mat_from_py(obj.cast<py::sequence>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact decision and construction procedures for isometries of even unimodular lattices";
    m.attr("__version__") = "0.1.0";

    py::register_exception<budget_exceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def(
        "gate",
        [](const py::sequence& poly, long r, long s) {
            return json_to_py(gate_json(check_conditions(poly_from_py(poly), r, s)));
        },
        py::arg("poly"), py::arg("r"), py::arg("s"),
        "Necessary conditions for a monic S and signature (r, s); coefficients constant first.");

    m.def(
        "trace_form",
        [](const py::sequence& poly, const py::object& lam) {
            IntPoly s = poly_from_py(poly);
            std::vector<Rat> c;
            if (lam.is_none()) {
                c.push_back(Rat(1));
            } else {
                for (py::handle item : lam.cast<py::sequence>()) c.push_back(parse_rat(py::str(item)));
            }
            QuadForm f = trace_form_gram(s, AlgElement{QPoly(std::move(c))});
            Json payload;
            payload["gram"] = mat_json(f.gram);
            payload["invariants"] = invariants_json(invariants(f));
            return json_to_py(payload);
        },
        py::arg("poly"), py::arg("lam") = py::none(),
        "Gram matrix and invariants of the trace form twisted by the sigma-invariant unit lam.");

    m.def(
        "splitting",
        [](const py::sequence& poly, py::handle p) {
            return json_to_py(splitting_json(local_splitting(poly_from_py(poly), int_from_py(p, "prime"))));
        },
        py::arg("poly"), py::arg("p"), "Places of the trace field above p and how they split.");

    m.def(
        "lattice",
        [](const py::sequence& gram, const py::object& basis, const py::object& action) {
            QuadForm v(mat_from_py(gram));
            GLattice l(v, mat_or_identity(basis, v.gram.rows), mat_or_identity(action, v.gram.rows));
            TorsionForm disc = discriminant_form(l);
            Json payload;
            payload["report"] = lattice_report_json(lattice_report(l));
            payload["discriminant"] = torsion_json(disc);
            payload["discriminant_order"] = torsion_group_order(disc).get_str();
            return json_to_py(payload);
        },
        py::arg("gram"), py::arg("basis") = py::none(), py::arg("action") = py::none(),
        "Integrality/unimodularity report and discriminant form of a lattice with isometry.");

    m.def(
        "witt_neutral",
        [](py::handle p, const py::sequence& gram, const py::object& action, long budget) {
            QMat g = mat_from_py(gram);
            FqForm f = action.is_none() ? FqForm(int_from_py(p, "field"), g)
                                        : FqForm(int_from_py(p, "field"), g,
                                                 mat_from_py(action.cast<py::sequence>()));
            return json_to_py(witt_json(is_neutral(f, budget)));
        },
        py::arg("p"), py::arg("gram"), py::arg("action") = py::none(),
        py::arg("budget") = witt_default_budget,
        "Neutrality of an equivariant form over F_p, with the stable lagrangian when one exists.");

    m.def(
        "witt_equal",
        [](py::handle p, const py::sequence& gram1, const py::sequence& gram2,
           const py::object& action1, const py::object& action2, long budget) {
            Int pp = int_from_py(p, "field");
            QMat g1 = mat_from_py(gram1), g2 = mat_from_py(gram2);
            FqForm f1 = action1.is_none() ? FqForm(pp, g1)
                                          : FqForm(pp, g1, mat_from_py(action1.cast<py::sequence>()));
            FqForm f2 = action2.is_none() ? FqForm(pp, g2)
                                          : FqForm(pp, g2, mat_from_py(action2.cast<py::sequence>()));
            return witt_equal(f1, f2, budget);
        },
        py::arg("p"), py::arg("gram1"), py::arg("gram2"), py::arg("action1") = py::none(),
        py::arg("action2") = py::none(), py::arg("budget") = witt_default_budget,
        "Whether two equivariant forms over F_p share a Witt class.");

    m.def(
        "boundary",
        [](const py::sequence& gram, py::handle p, const py::object& action, long cap) {
            QuadForm v(mat_from_py(gram));
            return json_to_py(boundary_json(
                boundary(v, mat_or_identity(action, v.gram.rows), int_from_py(p, "prime"), cap)));
        },
        py::arg("gram"), py::arg("p"), py::arg("action") = py::none(),
        py::arg("cap") = reduction_default_cap,
        "Residue Witt class of a rational form with isometry at p.");

    m.def(
        "unimodular_witness",
        [](const py::sequence& gram, py::handle p, const py::object& action, long cap,
           long budget) -> py::object {
            QuadForm v(mat_from_py(gram));
            std::optional<GLattice> w = unimodular_witness(
                v, mat_or_identity(action, v.gram.rows), int_from_py(p, "prime"), cap, budget);
            if (!w) return py::none();
            Json payload;
            payload["basis"] = mat_json(w->basis);
            payload["gram"] = mat_json(w->gram());
            return json_to_py(payload);
        },
        py::arg("gram"), py::arg("p"), py::arg("action") = py::none(),
        py::arg("cap") = reduction_default_cap, py::arg("budget") = witt_default_budget,
        "A stable p-unimodular lattice, or None when the boundary class obstructs one.");

    m.def(
        "spinor_norm",
        [](const py::sequence& gram, const py::sequence& isometry) {
            QuadForm f(mat_from_py(gram));
            return json_to_py(spinor_json(spinor_norm(f, mat_from_py(isometry))));
        },
        py::arg("gram"), py::arg("isometry"),
        "Spinor norm square class of a special-orthogonal transformation.");

    m.def(
        "even_criterion",
        [](const py::sequence& gram, const py::object& action, long cap, long budget) {
            QuadForm v(mat_from_py(gram));
            return json_to_py(even_criterion_json(
                even_criterion(v, mat_or_identity(action, v.gram.rows), cap, budget)));
        },
        py::arg("gram"), py::arg("action") = py::none(), py::arg("cap") = reduction_default_cap,
        py::arg("budget") = witt_default_budget,
        "The three-part criterion for a stable even unimodular lattice at 2.");

    m.def(
        "realize",
        [](const py::sequence& poly, long r, long s, py::handle unit_height) -> py::object {
            std::optional<Certificate> cert =
                construct(poly_from_py(poly), r, s, int_from_py(unit_height, "unit height"));
            if (!cert) return py::none();
            return json_to_py(certificate_json(*cert));
        },
        py::arg("poly"), py::arg("r"), py::arg("s"), py::arg("unit_height") = py::int_(1000000),
        "A verified even unimodular lattice with prescribed isometry, or None if the bounded "
        "unit search is exhausted.");

    m.def(
        "feasibility",
        [](const py::sequence& poly, long r, long s) {
            return json_to_py(feasibility_json(feasibility_report(poly_from_py(poly), r, s)));
        },
        py::arg("poly"), py::arg("r"), py::arg("s"),
        "Gate verdict plus per-prime local obstruction checks.");
}
