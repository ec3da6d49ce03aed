#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ide/attractor.hpp"
#include "ide/error.hpp"
#include "ide/scenario.hpp"

namespace py = pybind11;
using namespace ide;

namespace {

Eigen::MatrixXd stack(const std::vector<GridFunction>& states) {
    if (states.empty()) return {};
    Eigen::MatrixXd out(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(states.front().size()));
    for (std::size_t k = 0; k < states.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = states[k].values();
    return out;
}

Eigen::MatrixXd stack(const std::vector<semilinear::Vector>& states) {
    if (states.empty()) return {};
    Eigen::MatrixXd out(static_cast<Eigen::Index>(states.size()), states.front().size());
    for (std::size_t k = 0; k < states.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = states[k];
    return out;
}

struct AttractorResult {
    RunReport report;
    Eigen::MatrixXd fibers;
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    AttractorRun run;
    GridPtr grid;
};

AttractorResult attractor(const ScenarioConfig& cfg) {
    AttractorRun run;
    {
        py::gil_scoped_release release;
        run = run_attractor(cfg);
    }
    AttractorResult r;
    r.report = run.report;
    r.fibers = stack(run.fibers.states);
    r.grid = run.fibers.states.front().grid();
    r.nodes = r.grid->nodes();
    r.weights = r.grid->weights();
    r.run = std::move(run);
    return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Periodic attractors of seasonally forced integrodifference equations";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error;
            exc.attr("code") = to_string(e.code());
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    py::enum_<BoundSource>(m, "BoundSource")
        .value("CLOSED_FORM", BoundSource::ClosedForm)
        .value("NUMERIC", BoundSource::Numeric);
    py::enum_<L2Mode>(m, "L2Mode")
        .value("STATE_DEPENDENT", L2Mode::StateDependent)
        .value("UPPER_BOUND", L2Mode::UpperBound);

    py::class_<ScenarioConfig>(m, "Config")
        .def_readwrite("length", &ScenarioConfig::length)
        .def_readwrite("nodes", &ScenarioConfig::nodes)
        .def_readwrite("period", &ScenarioConfig::period)
        .def_readwrite("tol", &ScenarioConfig::tol)
        .def_readwrite("variant", &ScenarioConfig::variant)
        .def_readwrite("amplitudes", &ScenarioConfig::amplitudes)
        .def_readwrite("horizon", &ScenarioConfig::horizon)
        .def_readwrite("max_steps", &ScenarioConfig::max_steps)
        .def_readwrite("output_dir", &ScenarioConfig::output_dir)
        .def_readwrite("lambda_source", &ScenarioConfig::lambda_source)
        .def_readwrite("l2_mode", &ScenarioConfig::l2_mode)
        .def("__repr__", [](const ScenarioConfig& c) {
            return "<Config n=" + std::to_string(c.nodes) + " period=" + std::to_string(c.period) +
                   " variant=" + c.variant + ">";
        });

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));

    py::class_<ContractionCertificate>(m, "Certificate")
        .def_readonly("window", &ContractionCertificate::window)
        .def_readonly("lambdas", &ContractionCertificate::lambdas)
        .def_readonly("ell", &ContractionCertificate::ell)
        .def("valid", &ContractionCertificate::valid);

    py::class_<ErrorBudget>(m, "Budget")
        .def_readonly("ell", &ErrorBudget::ell)
        .def_readonly("tol", &ErrorBudget::tol)
        .def_readonly("window", &ErrorBudget::window)
        .def_readonly("windows", &ErrorBudget::windows)
        .def_readonly("steps", &ErrorBudget::steps)
        .def("error_estimate", &ErrorBudget::error_estimate);

    m.def("certify_contraction",
          [](const std::vector<double>& lambdas, int window) { return certify_contraction(lambdas, window); },
          py::arg("lambdas"), py::arg("window"));
    m.def("required_iterations", &required_iterations, py::arg("ell"), py::arg("l2"), py::arg("tol"),
          py::arg("window"));
    m.def("budget_for_windows", &budget_for_windows, py::arg("ell"), py::arg("l2"), py::arg("tol"),
          py::arg("window"), py::arg("windows"));

    py::class_<AttractorResult>(m, "AttractorResult")
        .def_readonly("fibers", &AttractorResult::fibers)
        .def_readonly("nodes", &AttractorResult::nodes)
        .def_readonly("weights", &AttractorResult::weights)
        .def_property_readonly("variant", [](const AttractorResult& r) { return r.report.variant; })
        .def_property_readonly("certificate", [](const AttractorResult& r) { return r.report.certificate; })
        .def_property_readonly("ell_closed_form", [](const AttractorResult& r) { return r.report.ell_closed_form; })
        .def_property_readonly("ell_numeric", [](const AttractorResult& r) { return r.report.ell_numeric; })
        .def_property_readonly("budget", [](const AttractorResult& r) { return r.report.budget; })
        .def_property_readonly("certified_error", [](const AttractorResult& r) { return r.report.certified_error; })
        .def_property_readonly("mean_total", [](const AttractorResult& r) { return r.report.mean_total; })
        .def_property_readonly("closure_gap", [](const AttractorResult& r) { return r.report.closure_gap; })
        .def_property_readonly("invariance_residual",
                               [](const AttractorResult& r) { return r.report.invariance_residual; })
        .def_property_readonly("totals",
                               [](const AttractorResult& r) {
                                   std::vector<double> out;
                                   for (const auto& f : r.report.fibers) out.push_back(f.total);
                                   return out;
                               })
        .def_property_readonly("wall_seconds", [](const AttractorResult& r) { return r.report.wall_seconds; });

    m.def("run_attractor", &attractor, py::arg("config"));
    m.def(
        "write_attractor_outputs",
        [](const AttractorResult& r, const std::filesystem::path& dir) { write_attractor_outputs(r.run, *r.grid, dir); },
        py::arg("result"), py::arg("directory"));

    py::class_<Comparison>(m, "Comparison")
        .def_property_readonly("means",
                               [](const Comparison& c) {
                                   py::dict d;
                                   for (const auto& o : c.outcomes) {
                                       if (o.run) d[py::str(o.variant)] = o.run->report.mean_total;
                                   }
                                   return d;
                               })
        .def_property_readonly("errors",
                               [](const Comparison& c) {
                                   py::dict d;
                                   for (const auto& o : c.outcomes) {
                                       if (!o.run) d[py::str(o.variant)] = o.error;
                                   }
                                   return d;
                               })
        .def_property_readonly("best",
                               [](const Comparison& c) -> py::object {
                                   if (!c.best) return py::none();
                                   return py::str(c.outcomes[*c.best].variant);
                               })
        .def("ordering", &Comparison::ordering);

    m.def(
        "compare_inhomogeneities",
        [](const ScenarioConfig& cfg) {
            py::gil_scoped_release release;
            return compare_inhomogeneities(cfg);
        },
        py::arg("config"));

    py::class_<TrajectoryRun>(m, "Simulation")
        .def_property_readonly("start", [](const TrajectoryRun& r) { return r.segment.start; })
        .def_property_readonly("states", [](const TrajectoryRun& r) { return stack(r.segment.states); })
        .def_readonly("totals", &TrajectoryRun::totals);
    m.def("run_simulation", &run_simulation, py::arg("config"));

    py::class_<LipschitzReport>(m, "LipschitzReport")
        .def_readonly("ell_closed_form", &LipschitzReport::ell_closed_form)
        .def_readonly("ell_numeric", &LipschitzReport::ell_numeric)
        .def_readonly("budget", &LipschitzReport::budget)
        .def_property_readonly("rows", [](const LipschitzReport& r) {
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict d;
                d["t"] = row.t;
                d["a"] = row.a;
                d["beta"] = row.beta;
                d["kernel_closed"] = row.closed_form_valid ? py::object(py::float_(row.kernel_closed)) : py::object(py::none());
                d["kernel_numeric"] = row.kernel_numeric;
                d["lambda_closed"] = row.closed_form_valid ? py::object(py::float_(row.lambda_closed)) : py::object(py::none());
                d["lambda_numeric"] = row.lambda_numeric;
                rows.append(d);
            }
            return rows;
        });
    m.def("run_lipschitz_report", &run_lipschitz_report, py::arg("config"));

    py::class_<SemilinearReport>(m, "SemilinearResult")
        .def_property_readonly("fibers", [](const SemilinearReport& r) { return stack(r.fibers.fibers); })
        .def_property_readonly("periods", [](const SemilinearReport& r) { return r.fibers.periods; })
        .def_property_readonly("last_change", [](const SemilinearReport& r) { return r.fibers.last_change; })
        .def_readonly("contraction_product", &SemilinearReport::contraction_product)
        .def_readonly("gamma", &SemilinearReport::gamma)
        .def_readonly("constants_estimated", &SemilinearReport::constants_estimated);
    m.def("run_semilinear", &run_semilinear, py::arg("config"));

}
