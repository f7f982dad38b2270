#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "lh/degree.hpp"
#include "lh/io.hpp"
#include "lh/solver.hpp"
#include "lh/tropical.hpp"

namespace py = pybind11;
using namespace lh;

namespace {

using Term = std::pair<Exponent, cplx>;

py::object big(const degree::BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object fraction(const tropical::Rational& q) {
    return py::module_::import("fractions").attr("Fraction")(tropical::to_string(q));
}

LinearObjectiveProblem make_problem(std::vector<double> u, const std::vector<Term>& terms) {
    LinearObjectiveProblem p{std::move(u), SparsePolynomial(0)};
    p.f = SparsePolynomial(p.u.size());
    for (const auto& [alpha, c] : terms) p.f.add_term(alpha, c);
    p.validate();
    return p;
}

std::vector<Term> terms_of(const SparsePolynomial& f) {
    std::vector<Term> out;
    for (const auto& [alpha, c] : f.terms()) out.emplace_back(alpha, c);
    return out;
}

std::vector<cplx> to_list(const CVector& v) { return {v.data(), v.data() + v.size()}; }

py::dict report_dict(const SolveReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["expected_count"] = r.expected_count ? big(*r.expected_count) : py::none();
    d["algebraic_degree_zero"] = r.algebraic_degree_zero;
    d["paths_tracked"] = r.paths_tracked;
    d["converged"] = r.n_converged;
    d["diverged"] = r.n_diverged;
    d["failed"] = r.n_failed;
    d["merges"] = r.merges;
    d["retracked"] = r.retracked;
    d["gamma"] = r.gamma;
    d["wall_time"] = r.wall_time;
    d["global_minimum"] = r.global_minimum ? py::cast(*r.global_minimum) : py::none();
    d["min_gradient_norm"] = r.min_gradient_norm ? py::cast(*r.min_gradient_norm) : py::none();
    d["warnings"] = r.warnings;
    py::list points;
    for (const auto& p : r.found) {
        py::dict pt;
        pt["x"] = to_list(p.x);
        pt["lam"] = p.lambda.size() == 1 ? py::cast(p.lambda[0]) : py::cast(to_list(p.lambda));
        pt["residual"] = p.residual;
        pt["is_real"] = p.is_real;
        pt["objective"] = p.objective_value ? py::cast(*p.objective_value) : py::none();
        points.append(pt);
    }
    d["points"] = points;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Critical points of min u.x subject to f(x) = 0 by homotopy continuation";

    py::register_exception<SupportError>(m, "SupportError", PyExc_ValueError);
    py::register_exception<io::FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<LinearObjectiveProblem>(m, "Problem")
        .def(py::init(&make_problem), py::arg("u"), py::arg("terms"),
             "u: objective coefficients; terms: [(exponents, coefficient), ...] of f")
        .def_property_readonly("n", &LinearObjectiveProblem::dimension)
        .def_readonly("u", &LinearObjectiveProblem::u)
        .def_property_readonly("terms", [](const LinearObjectiveProblem& p) { return terms_of(p.f); })
        .def("__repr__", [](const LinearObjectiveProblem& p) {
            return "<Problem n=" + std::to_string(p.dimension()) + " terms=" + std::to_string(p.f.size()) + ">";
        });

    m.def(
        "solve",
        [](const LinearObjectiveProblem& p, std::uint64_t seed, unsigned threads, std::optional<double> tol,
           std::optional<double> real_tol) {
            SolverConfig cfg;
            cfg.seed = seed;
            cfg.threads = threads;
            if (tol) cfg.tracker.endpoint_tol = *tol;
            if (real_tol) cfg.real_tol = *real_tol;
            SolveReport r;
            {
                py::gil_scoped_release release;
                r = solve(p, cfg);
            }
            return report_dict(r);
        },
        py::arg("problem"), py::arg("seed") = 0, py::arg("threads") = 1, py::arg("tol") = py::none(),
        py::arg("real_tol") = py::none());

    m.def("random_dense_problem", [](std::size_t n, std::uint32_t d, std::uint64_t seed) {
        return random_dense_problem(n, d, seed);
    }, py::arg("n"), py::arg("d"), py::arg("seed") = 0);

    m.def("parse_problem", [](const std::string& text) {
        auto f = io::parse_problem(text);
        return py::make_tuple(f.problem, f.seed ? py::cast(*f.seed) : py::none());
    }, py::arg("text"), "Returns (problem, seed or None)");

    m.def("serialize_problem", [](const LinearObjectiveProblem& p, std::optional<std::uint64_t> seed) {
        return io::serialize_problem({p, seed});
    }, py::arg("problem"), py::arg("seed") = py::none());

    m.def("algebraic_degree", [](std::uint32_t n, std::vector<std::uint32_t> ds, std::uint32_t d0) {
        return big(degree::algebraic_degree_generic({d0, std::move(ds), n}));
    }, py::arg("n"), py::arg("degrees"), py::arg("d0") = 1);

    m.def("refined_degree", [](std::vector<std::uint32_t> ds) {
        std::sort(ds.begin(), ds.end());
        return big(degree::refined_hypersurface_degree(ds));
    }, py::arg("degrees"));

    m.def("derangement", [](std::uint32_t k) { return big(degree::derangement(k)); }, py::arg("k"));

    m.def("tropical_check", [](std::vector<std::uint32_t> ds) {
        std::sort(ds.begin(), ds.end());
        const auto sols = tropical::solve_tropical(tropical::build_tropical_system(ds, tropical::refined_lifting(ds)));
        py::list out;
        for (const auto& s : sols) {
            py::list v;
            for (const auto& q : s.values) v.append(fraction(q));
            out.append(v);
        }
        return py::make_tuple(tropical::is_unique_unit_solution(sols), out);
    }, py::arg("degrees"), "Returns (unique_unit, solutions) for the refined lifting");

    m.def("lower_hull_cells", [](const std::vector<std::pair<std::int64_t, std::string>>& points) {
        std::vector<tropical::LiftedPoint> pts;
        for (const auto& [e, w] : points) pts.push_back({e, tropical::Rational(w)});
        py::list out;
        for (const auto& c : tropical::lower_hull_cells_univariate(pts)) out.append(py::make_tuple(c.points, fraction(c.normal)));
        return out;
    }, py::arg("points"), "points: [(exponent, weight as str)]; returns [(indices, normal)]");
}
