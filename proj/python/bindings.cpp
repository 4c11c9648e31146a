#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fhr/commands.hpp"
#include "fhr/errors.hpp"
#include "fhr/kernels.hpp"
#include "fhr/run_config.hpp"
#include "fhr/solver_fd.hpp"
#include "fhr/solver_integral.hpp"
#include "fhr/waves.hpp"

namespace py = pybind11;
using namespace fhr;

namespace {

py::array_t<double> to_numpy(const SampledField& f) {
    py::array_t<double> a({f.rows(), f.cols()});
    std::copy(f.data().begin(), f.data().end(), a.mutable_data());
    return a;
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

Profile to_profile(const py::array_t<double, py::array::c_style | py::array::forcecast>& a, const Grid1D& g,
                   const char* name) {
    if (a.ndim() != 1 || a.shape(0) != g.nx) {
        throw ShapeError(std::string(name) + " must be a 1-d array of length grid.nx");
    }
    return Profile(a.data(), a.data() + a.shape(0));
}

solver::InitialData initial(const py::array_t<double, py::array::c_style | py::array::forcecast>& u0,
                            const py::object& w0, const py::object& y0, const Grid1D& g) {
    solver::InitialData d = solver::InitialData::zeros(g);
    d.u0 = to_profile(u0, g, "u0");
    if (!w0.is_none()) d.w0 = to_profile(w0.cast<py::array_t<double, py::array::forcecast>>(), g, "w0");
    if (!y0.is_none()) d.y0 = to_profile(y0.cast<py::array_t<double, py::array::forcecast>>(), g, "y0");
    return d;
}

}  // namespace

PYBIND11_MODULE(_fhr, m) {
    m.doc() = "FitzHugh-Rinzel kernels, integral and finite-difference solvers, travelling waves";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NoSolutionError>(m, "NoSolutionError", PyExc_ArithmeticError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("D", &ModelParams::D)
        .def_readwrite("a", &ModelParams::a)
        .def_readwrite("eps", &ModelParams::eps)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("c", &ModelParams::c)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("d", &ModelParams::d)
        .def_readwrite("h", &ModelParams::h)
        .def("validate", &ModelParams::validate);

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<>())
        .def(py::init([](double x_min, double x_max, int nx, double t_max, int nt) {
                 Grid1D g;
                 g.x_min = x_min;
                 g.x_max = x_max;
                 g.nx = nx;
                 g.t_max = t_max;
                 g.nt = nt;
                 return g;
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("nx"), py::arg("t_max"), py::arg("nt"))
        .def_readwrite("x_min", &Grid1D::x_min)
        .def_readwrite("x_max", &Grid1D::x_max)
        .def_readwrite("nx", &Grid1D::nx)
        .def_readwrite("t_max", &Grid1D::t_max)
        .def_readwrite("nt", &Grid1D::nt)
        .def_property_readonly("dx", &Grid1D::dx)
        .def_property_readonly("dt", &Grid1D::dt)
        .def("x", [](const Grid1D& g) {
            std::vector<double> v(g.nx);
            for (int i = 0; i < g.nx; ++i) v[i] = g.x(i);
            return to_numpy(v);
        })
        .def("t", [](const Grid1D& g) {
            std::vector<double> v(g.nt + 1);
            for (int n = 0; n <= g.nt; ++n) v[n] = g.t(n);
            return to_numpy(v);
        });

    py::enum_<kernels::KernelForm>(m, "KernelForm")
        .value("literal", kernels::KernelForm::literal)
        .value("fundamental", kernels::KernelForm::fundamental);

    m.def(
        "eval_kernels",
        [](double x, double t, const ModelParams& p, kernels::KernelForm form) {
            const auto s = kernels::eval_all(x, t, p, kernels::kKernelTolerance, form);
            py::dict d;
            d["H1"] = s.h1;
            d["H2"] = s.h2;
            d["H"] = s.h;
            d["K_eps"] = *s.k_eps;
            d["K_delta"] = *s.k_delta;
            d["err_est"] = s.err_est;
            return d;
        },
        py::arg("x"), py::arg("t"), py::arg("params") = ModelParams{},
        py::arg("form") = kernels::KernelForm::literal, "H1, H2, H, K_eps, K_delta at one point.");
    m.def("hat_H", &kernels::hat_H, py::arg("x"), py::arg("s"), py::arg("params") = ModelParams{});
    m.def("sigma", &kernels::sigma, py::arg("s"), py::arg("params") = ModelParams{});
    m.def("H2_bound", &kernels::H2_bound, py::arg("t"), py::arg("params") = ModelParams{});
    m.def(
        "mass_volterra", [](const ModelParams& p, double t_max, int nt) { return to_numpy(solver::mass_volterra(p, t_max, nt)); },
        py::arg("params"), py::arg("t_max"), py::arg("nt"));

    m.def(
        "picard_solve",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> u0, const ModelParams& p, const Grid1D& g,
           py::object w0, py::object y0, kernels::KernelForm form, double tol, int max_iter, bool nonlinear) {
            solver::PicardOptions o;
            o.form = form;
            o.tol = tol;
            o.max_iter = max_iter;
            o.nonlinear = nonlinear;
            const auto data = initial(u0, w0, y0, g);
            solver::SolveReport r;
            {
                py::gil_scoped_release release;
                r = solver::picard_solve(data, p, g, o);
            }
            py::dict d;
            d["u"] = to_numpy(r.u);
            d["w"] = to_numpy(r.w);
            d["y"] = to_numpy(r.y);
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            d["update_norms"] = r.update_norms;
            d["fixed_point_residual"] = r.fixed_point_residual;
            return d;
        },
        py::arg("u0"), py::arg("params"), py::arg("grid"), py::arg("w0") = py::none(), py::arg("y0") = py::none(),
        py::arg("form") = kernels::KernelForm::literal, py::arg("tol") = 1e-8, py::arg("max_iter") = 50,
        py::arg("nonlinear") = true, "Picard iteration of the integral equation; fields are (nt + 1, nx) arrays.");

    m.def(
        "fd_solve",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> u0, const ModelParams& p, const Grid1D& g,
           py::object w0, py::object y0, const std::string& boundary, double k, double theta, int output_stride) {
            fd::FDConfig cfg;
            cfg.grid = g;
            cfg.k = k;
            cfg.theta = theta;
            cfg.output_stride = output_stride;
            if (boundary == "fixed_value") {
                cfg.boundary = fd::Boundary::fixed_value;
            } else if (boundary != "zero_flux") {
                throw ConfigError("boundary", "expected zero_flux or fixed_value");
            }
            const auto data = initial(u0, w0, y0, g);
            fd::FDState st;
            {
                py::gil_scoped_release release;
                st = fd::fd_solve(data, p, cfg);
            }
            py::dict d;
            d["u"] = to_numpy(st.u);
            d["w"] = to_numpy(st.w);
            d["y"] = to_numpy(st.y);
            return d;
        },
        py::arg("u0"), py::arg("params"), py::arg("grid"), py::arg("w0") = py::none(), py::arg("y0") = py::none(),
        py::arg("boundary") = "zero_flux", py::arg("k") = 0.0, py::arg("theta") = 0.5, py::arg("output_stride") = 1);

    m.def(
        "family_wave",
        [](double D) {
            const auto ws = waves::solve_wave_coefficients(waves::family_params(D));
            py::dict d;
            d["A"] = ws.A;
            d["b"] = ws.b;
            d["y_ric"] = ws.y_ric;
            d["a_implied"] = ws.a_implied;
            d["source_budget"] = ws.source_budget;
            d["amplitude"] = ws.amplitude();
            return d;
        },
        py::arg("D"), "Coefficients of the tanh front of the eps beta = delta d family.");
    m.def(
        "family_profile",
        [](double D, py::array_t<double, py::array::c_style | py::array::forcecast> z) {
            const auto ws = waves::solve_wave_coefficients(waves::family_params(D));
            std::vector<double> zz(z.data(), z.data() + z.size());
            return to_numpy(waves::wave_profile(zz, ws));
        },
        py::arg("D"), py::arg("z"));
    m.def("family_amplitude", &waves::family_amplitude, py::arg("D"));
    m.def("family_admissibility_root", &waves::family_admissibility_root, py::arg("lo") = 0.01, py::arg("hi") = 0.05);

    m.def(
        "run",
        [](const std::string& command, const std::vector<std::string>& overrides) {
            cli::Settings s = cli::Settings::defaults();
            for (const auto& o : overrides) cli::apply_override(s, o);
            const auto rc = cli::resolve(cli::parse_command(command), s);
            std::ostringstream out;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run_command(rc, out);
            }
            return py::make_tuple(code, out.str());
        },
        py::arg("command"), py::arg("overrides") = std::vector<std::string>{},
        "Run a command-line command with section.key=value overrides; returns (exit_code, csv).");
}
