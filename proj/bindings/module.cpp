// python bindings: the grid/operator layer, both RHS forms, the runner and
// the certificate/diagnostic analyzers, all over numpy arrays.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pklab/analysis.hpp"
#include "pklab/besov.hpp"
#include "pklab/blowup.hpp"
#include "pklab/dynamics.hpp"
#include "pklab/io.hpp"
#include "pklab/peakon.hpp"
#include "pklab/version.hpp"

namespace py = pybind11;
using namespace pklab;

namespace {

Field field_from_array(const GridPtr& grid, py::array_t<double, py::array::c_style> values) {
    if (values.ndim() != 1 || static_cast<std::size_t>(values.shape(0)) != grid->n_points)
        throw std::invalid_argument("values must be a 1-D array of length grid.n_points");
    Field f = make_field(grid);
    std::copy_n(values.data(), grid->n_points, f.values.begin());
    return f;
}

std::shared_ptr<Grid> mutable_grid(const GridPtr& g) {
    return std::const_pointer_cast<Grid>(g);
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict report_to_dict(const BlowupReport& report) {
    py::dict d;
    d["b"] = report.b;
    d["t1"] = report.t1;
    d["threshold"] = report.threshold ? py::object(py::float_(*report.threshold)) : py::none();
    d["t2"] = report.t2 ? py::object(py::float_(*report.t2)) : py::none();
    d["verdict"] = std::string(to_string(report.verdict));
    py::list witnesses;
    for (const auto& w : report.witnesses) witnesses.append(py::make_tuple(w.x0, w.n0_at_x0));
    d["witnesses"] = witnesses;
    d["v_inf"] = report.norms_used.v_inf;
    d["vx_inf"] = report.norms_used.vx_inf;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudospectral laboratory for the peakon transport system";
    m.attr("__version__") = std::string(kVersion);

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_readonly("half_width", &Grid::half_width)
        .def_readonly("n_points", &Grid::n_points)
        .def_readonly("dx", &Grid::dx)
        .def_property_readonly("x", [](const Grid& g) { return to_array(g.x); })
        .def_property_readonly("wavenumber",
                               [](const Grid& g) { return to_array(g.wavenumber); });

    m.def("make_grid", [](double half_width, std::size_t n_points) {
        return mutable_grid(make_grid(half_width, n_points));
    }, py::arg("half_width"), py::arg("n_points"));

    py::class_<Field>(m, "Field")
        .def_property_readonly("grid", [](const Field& f) { return mutable_grid(f.grid); })
        .def_property_readonly("values", [](const Field& f) { return to_array(f.values); });

    m.def("field", &field_from_array, py::arg("grid"), py::arg("values"),
          "wrap a numpy array as a Field on the given grid");
    m.def("sample", [](const GridPtr& grid, const std::function<double(double)>& f) {
        return sample(grid, f);
    });

    m.def("derivative", &derivative);
    m.def("second_derivative", &second_derivative);
    m.def("upwind_derivative", &upwind_derivative);
    m.def("dealias_two_thirds", &dealias_two_thirds);
    m.def("integrate", &integrate);

    m.def("apply_p2", [](const Field& f, double beta0) { return apply_p2(f, {beta0}); });
    m.def("apply_p1", [](const Field& f, double beta0) { return apply_p1(f, {beta0}); });
    m.def("green_convolve",
          [](const Field& f, double beta0) { return green_convolve(f, {beta0}); });
    m.def("v_from_n", [](const Field& n, double beta0) { return v_from_n(n, {beta0}); });
    m.def("n_from_v", [](const Field& v, double beta0) { return n_from_v(v, {beta0}); });

    m.def("rhs_v", [](const Field& v, double beta0, bool upwind) {
        return rhs_v(StateV{0.0, v, {beta0}},
                     upwind ? DerivMode::upwind : DerivMode::spectral);
    }, py::arg("v"), py::arg("beta0"), py::arg("upwind") = false);
    m.def("rhs_n", [](const Field& n, double beta0) { return rhs_n(n, {beta0}); });
    m.def("consistency_residual",
          [](const Field& v, double beta0) { return consistency_residual(v, {beta0}); });

    m.def("bump", &bump, py::arg("x"), py::arg("center"), py::arg("scale"), py::arg("amplitude"));
    m.def("exact_peakon", [](double a1, double a2, double beta0, double t) {
        return exact_peakon({a1, a2, beta0}, t);
    }, py::arg("a1"), py::arg("a2"), py::arg("beta0"), py::arg("t"));
    m.def("crest_position", &crest_position);

    m.def("w1inf_norm", &w1inf_norm);
    m.def("h1_beta_norm_sq",
          [](const Field& v, double beta0) { return h1_beta_norm_sq(v, {beta0}); });
    m.def("gradient_bound_residual",
          [](const Field& v, double beta0) { return gradient_bound_residual(v, {beta0}); });

    m.def("compute_b", [](double v_inf, double vx_inf, double beta0) {
        return compute_b(CertificateNorms{v_inf, vx_inf}, {beta0});
    });
    m.def("compute_t1", [](double v_inf, double vx_inf, double beta0) {
        return compute_t1(CertificateNorms{v_inf, vx_inf}, {beta0});
    });
    m.def("blowup_threshold", [](double b, double t1) -> py::object {
        const auto th = blowup_threshold(b, t1);
        return th ? py::object(py::float_(*th)) : py::none();
    });
    m.def("compute_t2", &compute_t2);
    m.def("supersolution_ode", &supersolution_ode);
    m.def("check_condition", [](const Field& n0, double beta0) {
        return report_to_dict(check_condition(n0, {beta0}));
    });
    m.def("check_condition_with_bounds",
          [](const Field& n0, double beta0, double v_inf, double vx_inf) {
              return report_to_dict(
                  check_condition(n0, {beta0}, CertificateNorms{v_inf, vx_inf}));
          });

    m.def("besov_norm", [](const Field& f, double s, double p, double r) {
        return besov_norm(f, s, p, r, build_partition(f.grid));
    });
    m.def("block_energies", [](const Field& f, double s, double p) {
        return block_energies(f, s, p, build_partition(f.grid));
    });

    py::class_<SimConfig>(m, "SimConfig")
        .def_property_readonly("beta0", [](const SimConfig& c) { return c.params.beta0; })
        .def_readonly("half_width", &SimConfig::half_width)
        .def_readonly("n_points", &SimConfig::n_points)
        .def_readonly("t_end", &SimConfig::t_end)
        .def_readonly("cfl_safety", &SimConfig::cfl_safety)
        .def_readonly("blowup_factor", &SimConfig::blowup_factor)
        .def_readonly("track_crest", &SimConfig::track_crest)
        .def_property_readonly("scheme",
                               [](const SimConfig& c) { return std::string(to_string(c.scheme)); })
        .def_property_readonly("initial_data",
                               [](const SimConfig& c) { return c.initial.describe(); })
        .def("__repr__", [](const SimConfig& c) { return format_config(c); });

    m.def("parse_config", &parse_config);
    m.def("format_config", &format_config);
    m.def("seed_recipe", &seed_recipe);
    m.def("run_simulation", [](const std::string& config_text) {
        const SimConfig cfg = parse_config(config_text);
        const SimResult result = run(cfg);
        py::dict d;
        d["verdict"] = std::string(to_string(result.verdict.kind));
        d["t_low"] = result.verdict.t_low;
        d["t_high"] = result.verdict.t_high;
        d["initial_linf_n"] = result.initial_linf_n;
        py::list times, linf_n, w1inf_v, h1beta_sq, min_n;
        for (const auto& rec : result.diagnostics) {
            times.append(rec.t);
            linf_n.append(rec.linf_n);
            w1inf_v.append(rec.w1inf_v);
            h1beta_sq.append(rec.h1beta_sq);
            min_n.append(rec.min_n);
        }
        d["t"] = times;
        d["linf_n"] = linf_n;
        d["w1inf_v"] = w1inf_v;
        d["h1beta_sq"] = h1beta_sq;
        d["min_n"] = min_n;
        py::list snaps;
        for (const auto& s : result.snapshots)
            snaps.append(py::make_tuple(s.t, to_array(s.v.values), to_array(s.n.values)));
        d["snapshots"] = snaps;
        py::list crest;
        for (const auto& [t, x] : result.crest_track) crest.append(py::make_tuple(t, x));
        d["crest_track"] = crest;
        return d;
    });

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<SamplingError>(m, "SamplingError");
}
