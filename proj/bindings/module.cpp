// Python bindings for the main operations: single runs, convergence
// studies, reference table comparison, boundary geometry evaluation and
// the exact solution catalog.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csflow/io.hpp"
#include "csflow/metrics.hpp"
#include "csflow/study.hpp"

namespace py = pybind11;
using namespace csflow;

namespace {

SimConfig config_from_dict(const py::dict& options) {
    // reuse the config file vocabulary so Python and file configs match
    std::string text;
    for (const auto& item : options) {
        text += py::str(item.first).cast<std::string>() + " = " +
                py::str(item.second).cast<std::string>() + "\n";
    }
    return parse_config_text(text);
}

py::dict state_dict(const SimState& state) {
    py::dict out;
    out["step"] = state.step;
    out["t"] = state.curve.time;
    py::list nodes;
    for (const Vec2& p : state.curve.nodes) {
        nodes.append(py::make_tuple(p.x, p.y));
    }
    out["nodes"] = nodes;
    out["w"] = state.field.values;
    return out;
}

py::dict run_to_dict(const SimConfig& config) {
    const Trajectory traj = run(config);
    py::dict out;
    py::list states;
    for (const SimState& state : traj.states) {
        states.append(state_dict(state));
    }
    out["states"] = states;
    out["dt"] = config.dt();
    out["N"] = config.step_count();
    if (traj.failure) {
        py::dict failure;
        failure["step"] = traj.failure->step;
        failure["what"] = traj.failure->what;
        out["failure"] = failure;
    } else {
        out["failure"] = py::none();
    }
    py::list iterations;
    bool all_converged = true;
    for (const NewtonReport& rep : traj.reports) {
        iterations.append(rep.iterations);
        all_converged = all_converged && rep.converged;
    }
    out["newton_iterations"] = iterations;
    out["newton_converged"] = all_converged;
    return out;
}

py::dict row_dict(const EocTable& table, const EocRow& row) {
    py::dict out;
    out["J"] = row.element_count;
    out["N"] = row.step_count;
    if (row.failed) {
        out["failed"] = row.message;
        return out;
    }
    for (int index : table.error_indices) {
        out[("E" + std::to_string(index)).c_str()] = row.error[index - 1];
        const double order = row.order[index - 1];
        const auto key = "eoc" + std::to_string(index);
        if (std::isnan(order)) {
            out[key.c_str()] = py::none();
        } else {
            out[key.c_str()] = order;
        }
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "finite element curve shortening flow with orthogonal boundary "
              "contact, coupled to reaction-diffusion on the curve";
    m.attr("__version__") = "0.1.0";

    // translators run newest first, so the base class goes first
    py::register_exception<Error>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<ConfigInvalid>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "run",
        [](const py::dict& options) { return run_to_dict(config_from_dict(options)); },
        py::arg("config"),
        "Run one simulation from a config dict (same keys as the config file); "
        "returns states, time step and Newton statistics.");

    m.def(
        "run_config_file",
        [](const std::string& path) { return run_to_dict(load_config_file(path)); },
        py::arg("path"), "Run one simulation from a config file.");

    m.def(
        "convergence_study",
        [](const std::string& example, double alpha, const std::string& scheme,
           const std::vector<int>& levels, const std::string& dt_rule) {
            const SchemeKind kind =
                (scheme == "linear") ? SchemeKind::LinearDE98 : SchemeKind::Newton;
            if (scheme != "linear" && scheme != "newton") {
                throw ConfigInvalid("scheme must be \"newton\" or \"linear\"");
            }
            const EocTable table = convergence_study(parse_example(example), alpha, kind,
                                                     levels, DtRule::parse(dt_rule));
            py::list rows;
            for (const EocRow& row : table.rows) {
                rows.append(row_dict(table, row));
            }
            return rows;
        },
        py::arg("example"), py::arg("alpha") = 1.0, py::arg("scheme") = "newton",
        py::arg("levels") = std::vector<int>{10, 20, 40, 80}, py::arg("dt_rule") = "h2",
        "Refinement study for a benchmark example; returns one dict per level.");

    m.def(
        "compare",
        [](const std::string& table, double tol) {
            const CompareReport report = compare_against_reference(parse_table_id(table), tol);
            py::dict out;
            out["table"] = table_name(report.table);
            out["pass"] = report.pass;
            out["value_tolerance"] = report.value_tol;
            out["eoc_tolerance"] = report.eoc_tol;
            py::list cells;
            for (const CompareCell& cell : report.cells) {
                py::dict c;
                c["J"] = cell.element_count;
                c["quantity"] = cell.quantity;
                c["expected"] = cell.expected;
                c["computed"] = cell.computed;
                c["deviation"] = cell.deviation;
                c["pass"] = cell.pass;
                cells.append(c);
            }
            out["cells"] = cells;
            return out;
        },
        py::arg("table"), py::arg("tol") = -1.0,
        "Compare a freshly computed study against a stored reference table.");

    m.def(
        "boundary_eval",
        [](const std::string& geometry, double x, double y) {
            const auto geom = make_geometry(geometry);
            const BoundaryDerivatives bd = geom->eval_all({x, y});
            py::dict out;
            out["value"] = bd.value;
            out["grad"] = py::make_tuple(bd.grad.x, bd.grad.y);
            out["grad_perp"] = py::make_tuple(bd.grad_perp.x, bd.grad_perp.y);
            out["hess"] = py::make_tuple(bd.hess.a00, bd.hess.a01, bd.hess.a10, bd.hess.a11);
            out["d2perp"] =
                py::make_tuple(bd.d2perp.a00, bd.d2perp.a01, bd.d2perp.a10, bd.d2perp.a11);
            return out;
        },
        py::arg("geometry"), py::arg("x"), py::arg("y"),
        "Evaluate the level set function and its derivatives at a point.");

    m.def(
        "exact_curve",
        [](const std::string& example, const std::vector<double>& rhos, double t) {
            const ExactSolution& exact = exact_catalog(parse_example(example));
            std::vector<std::pair<double, double>> points;
            points.reserve(rhos.size());
            for (double rho : rhos) {
                const Vec2 p = exact.x(rho, t);
                points.emplace_back(p.x, p.y);
            }
            return points;
        },
        py::arg("example"), py::arg("rhos"), py::arg("t"),
        "Sample the exact curve of a benchmark example.");

    m.def(
        "exact_field",
        [](const std::string& example, const std::vector<double>& rhos, double t) {
            const ExactSolution& exact = exact_catalog(parse_example(example));
            if (!exact.has_field) {
                throw MissingExactField("example \"" + example + "\" has no field component");
            }
            std::vector<double> values;
            values.reserve(rhos.size());
            for (double rho : rhos) {
                values.push_back(exact.w(rho, t));
            }
            return values;
        },
        py::arg("example"), py::arg("rhos"), py::arg("t"),
        "Sample the exact on-curve field of a benchmark example.");

    m.def("eoc", &eoc, py::arg("h_prev"), py::arg("e_prev"), py::arg("h_curr"),
          py::arg("e_curr"), "Experimental order of convergence between two levels.");
}
