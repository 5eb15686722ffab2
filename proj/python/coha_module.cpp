#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "coha/document.hpp"
#include "coha/errors.hpp"
#include "coha/filtration.hpp"
#include "coha/kac.hpp"
#include "coha/wheel.hpp"

namespace py = pybind11;
using namespace coha;

namespace {

// Python-facing session: one quiver document, its kernel, and the memoized
// filtration cache.
struct Session {
    CohaContext ctx;
    std::shared_ptr<FiltrationContext> filtration;

    explicit Session(const std::string& document)
        : ctx(build_context_from_text(document)),
          filtration(std::make_shared<FiltrationContext>(ctx.kernel)) {}

    ShuffleElement element(const std::string& expr) const { return parse_element(ctx, expr); }
};

DimensionVector to_dim(const Session& s, const std::vector<int>& v) {
    if (static_cast<int>(v.size()) != s.ctx.built.vertex_count())
        throw PreconditionError("dimension vector length does not match the quiver");
    return DimensionVector(v);
}

std::vector<int> from_dim(const DimensionVector& n) {
    std::vector<int> v(static_cast<size_t>(n.size()));
    for (int i = 0; i < n.size(); ++i) v[static_cast<size_t>(i)] = n[i];
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shuffle-algebra model of quiver CoHAs: products, perverse filtration, BPS bases, "
              "wheel conditions, Kac counts";

    py::register_exception<ParseError>(m, "DocumentParseError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<NonExactDivision>(m, "NonExactDivisionError");

    py::class_<ShuffleElement>(m, "Element")
        .def_property_readonly("dim", [](const ShuffleElement& e) { return from_dim(e.dim()); })
        .def_property_readonly("degree",
                               [](const ShuffleElement& e) {
                                   return e.is_zero() ? py::object(py::none())
                                                      : py::object(py::int_(e.degree()));
                               })
        .def("is_zero", &ShuffleElement::is_zero)
        .def("__str__", [](const ShuffleElement& e) { return e.poly().to_string(); })
        .def("__repr__", [](const ShuffleElement& e) {
            return "Element(dim=(" + e.dim().to_string() + "), " + e.poly().to_string() + ")";
        })
        .def("__eq__", [](const ShuffleElement& a, const ShuffleElement& b) { return a == b; });

    py::class_<Session>(m, "Session")
        .def(py::init<const std::string&>(), py::arg("document"))
        .def_property_readonly("vertices",
                               [](const Session& s) { return s.ctx.built.vertices(); })
        .def_property_readonly("document",
                               [](const Session& s) { return print_quiver_document(s.ctx.doc); })
        .def("element", &Session::element, py::arg("expr"))
        .def("product",
             [](const Session&, const ShuffleElement& a, const ShuffleElement& b) {
                 return shuffle_product(a, b);
             })
        .def("bracket",
             [](const Session&, const ShuffleElement& a, const ShuffleElement& b) {
                 return super_bracket(a, b);
             })
        .def("twisted_product",
             [](const Session& s, const ShuffleElement& a, const ShuffleElement& b) {
                 return twisted_product(a, b, SignTwist::canonical(s.ctx.kernel));
             })
        .def("u_op", [](const Session&, const ShuffleElement& e) { return u_operator(e); })
        .def("act_shift", [](const Session&, const ShuffleElement& e) { return act_shift(e).to_string(); })
        .def("euler_form",
             [](const Session& s, const std::vector<int>& m, const std::vector<int>& n) {
                 return s.ctx.kernel->euler_form(to_dim(s, m), to_dim(s, n));
             })
        .def("member", [](const Session&, const ShuffleElement& e, int d) { return member_direct(e, d); },
             py::arg("element"), py::arg("d"))
        .def("member_recursive",
             [](const Session& s, const ShuffleElement& e, int d) {
                 return s.filtration->member_recursive(e, d);
             },
             py::arg("element"), py::arg("d"))
        .def("subspace_dim",
             [](const Session& s, const std::vector<int>& n, int d, int delta) {
                 return s.filtration->subspace(to_dim(s, n), d, delta)->dim();
             },
             py::arg("n"), py::arg("d"), py::arg("delta"))
        .def("subspace_basis",
             [](const Session& s, const std::vector<int>& n, int d, int delta) {
                 auto sub = s.filtration->subspace(to_dim(s, n), d, delta);
                 std::vector<std::string> out;
                 for (const auto& e : sub->elements) out.push_back(e.poly().to_string());
                 return out;
             })
        .def("bps_dims",
             [](const Session& s, const std::vector<int>& n, int deg_max) {
                 std::vector<int> dims;
                 for (const auto& sub : s.filtration->bps_basis(to_dim(s, n), deg_max))
                     dims.push_back(sub->dim());
                 return dims;
             },
             py::arg("n"), py::arg("deg_max"))
        .def("pbw_check",
             [](const Session& s, const std::vector<int>& n_max, int deg_max, int d_max) {
                 auto report = pbw_check(*s.filtration, SignTwist::canonical(s.ctx.kernel),
                                         to_dim(s, n_max), deg_max, d_max);
                 py::list cells;
                 for (const auto& c : report.cells) {
                     py::dict cell;
                     cell["n"] = from_dim(c.n);
                     cell["delta"] = c.delta;
                     cell["d"] = c.d;
                     cell["dim"] = c.dim;
                     cell["monomials"] = c.count;
                     cell["rank"] = c.rank;
                     cell["pass"] = c.pass;
                     cells.append(cell);
                 }
                 py::dict out;
                 out["cells"] = cells;
                 out["all_pass"] = report.all_pass;
                 return out;
             },
             py::arg("n_max"), py::arg("deg_max"), py::arg("d_max"))
        .def("wheel_member", [](const Session&, const ShuffleElement& e) { return wheel_member(e); })
        .def("spherical",
             [](const Session& s, const std::vector<std::pair<int, int>>& letters) {
                 SphericalWord w{letters};
                 return spherical_product(s.ctx.kernel, w);
             },
             py::arg("letters"), "letters: list of (vertex index, degree) pairs")
        .def("conjecture_report",
             [](const Session& s, const std::vector<int>& n_max, int deg_max, unsigned long long seed) {
                 std::mt19937_64 rng(seed);
                 auto report = conjecture_report(s.ctx.doc.base, *s.filtration, to_dim(s, n_max),
                                                 deg_max, rng);
                 py::list rows;
                 for (const auto& r : report.rows) {
                     py::dict row;
                     row["n"] = from_dim(r.n);
                     py::list slices;
                     for (const auto& sl : r.slices) {
                         py::dict d;
                         d["delta"] = sl.delta;
                         d["rank"] = sl.rank;
                         slices.append(d);
                     }
                     row["slices"] = slices;
                     row["total_rank"] = r.total_rank;
                     if (r.kac_available) row["kac_at_one"] = r.kac_value;
                     row["verdict"] = r.verdict;
                     rows.append(row);
                 }
                 return rows;
             },
             py::arg("n_max"), py::arg("deg_max"), py::arg("seed") = 0)
        .def("kac_counts",
             [](const Session& s, const std::vector<int>& n, int q) {
                 KacCount c = abs_indec_count(s.ctx.built, to_dim(s, n), q);
                 py::dict out;
                 out["n"] = from_dim(c.n);
                 out["q"] = c.q;
                 out["classes"] = c.classes;
                 out["indecomposable"] = c.indecomposable;
                 out["absolutely_indecomposable"] = c.absolutely_indecomposable;
                 return out;
             },
             py::arg("n"), py::arg("q"));

    m.def("parse_polynomial_roundtrip", [](const std::string& text) {
        return parse_polynomial(text).to_string();
    });
}
