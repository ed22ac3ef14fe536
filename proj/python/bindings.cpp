#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavelife/config.hpp"
#include "wavelife/error.hpp"
#include "wavelife/fd_solver.hpp"
#include "wavelife/io.hpp"
#include "wavelife/lifespan.hpp"
#include "wavelife/linear_kernel.hpp"
#include "wavelife/norms.hpp"
#include "wavelife/picard.hpp"
#include "wavelife/sweep.hpp"
#include "wavelife/theory.hpp"
#include "wavelife/verify.hpp"

namespace py = pybind11;
using namespace wavelife;

namespace {

py::array_t<double> to_array(const Field& f) {
  const Grid& g = f.grid();
  const int rows = f.valid_up_to() + 1;
  py::array_t<double> out({rows, g.nx});
  auto v = f.values();
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rows) * g.nx, out.mutable_data());
  return out;
}

py::array_t<double> to_array(std::span<const double> s) {
  py::array_t<double> out(static_cast<py::ssize_t>(s.size()));
  std::copy(s.begin(), s.end(), out.mutable_data());
  return out;
}

// Fractions travel as (num, den) so Python can build fractions.Fraction exactly.
py::tuple frac(const Rational& r) { return py::make_tuple(r.num(), r.den()); }

py::dict json_to_dict(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump()).cast<py::dict>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lifespan calculus and solvers for small-data nonlinear wave equations in 1D";

  // Leaked on purpose: destroying a Python object at static teardown runs without the GIL.
  static auto* error_type = new py::exception<Error>(m, "WavelifeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(*error_type)(e.what());
      inst.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type->ptr(), inst.ptr());
    }
  });

  // -- model ---------------------------------------------------------------
  py::class_<Monomial>(m, "Monomial")
      .def(py::init([](double coeff, int a, int b, int d, std::array<bool, 3> abs) {
             return Monomial{coeff, a, b, d, abs};
           }),
           py::arg("coeff") = 1.0, py::arg("a") = 0, py::arg("b") = 0, py::arg("d") = 0,
           py::arg("abs") = std::array<bool, 3>{false, false, false})
      .def_readwrite("coeff", &Monomial::coeff)
      .def_readwrite("a", &Monomial::a)
      .def_readwrite("b", &Monomial::b)
      .def_readwrite("d", &Monomial::d)
      .def_readwrite("abs", &Monomial::abs)
      .def_property_readonly("degree", &Monomial::degree)
      .def("__call__", &Monomial::eval, py::arg("u"), py::arg("ut"), py::arg("ux"))
      .def("__repr__", &Monomial::str);

  py::class_<NonlinearitySpec>(m, "NonlinearitySpec")
      .def_static("classify", &NonlinearitySpec::classify, py::arg("force"), py::arg("b") = std::vector<Monomial>{},
                  py::arg("a0") = std::vector<Monomial>{})
      .def_static("linear", &NonlinearitySpec::linear)
      .def_property_readonly("alpha", &NonlinearitySpec::alpha)
      .def_property_readonly("beta0", &NonlinearitySpec::beta0)
      .def_property_readonly("is_linear", &NonlinearitySpec::is_linear)
      .def_property_readonly("is_quasilinear", &NonlinearitySpec::is_quasilinear)
      .def("force", &NonlinearitySpec::force, py::arg("u"), py::arg("ut"), py::arg("ux"))
      .def("__repr__", &NonlinearitySpec::str);

  py::enum_<ProfileKind>(m, "ProfileKind")
      .value("Zero", ProfileKind::Zero)
      .value("Bump", ProfileKind::Bump)
      .value("BumpDerivative", ProfileKind::BumpDerivative);

  py::class_<Profile>(m, "Profile")
      .def(py::init([](ProfileKind kind, double amp) { return Profile{kind, amp}; }), py::arg("kind"),
           py::arg("amplitude") = 1.0)
      .def_readonly("kind", &Profile::kind)
      .def_readonly("amplitude", &Profile::amplitude)
      .def("__call__", &Profile::eval, py::arg("x"), py::arg("R"), py::arg("order") = 0)
      .def("__repr__", &Profile::str);

  py::class_<InitialData>(m, "InitialData")
      .def(py::init<Profile, Profile, double>(), py::arg("f"), py::arg("g"), py::arg("R") = 1.0)
      .def_readonly("f", &InitialData::f)
      .def_readonly("g", &InitialData::g)
      .def_readonly("R", &InitialData::R)
      .def_property_readonly("g_zero_mean", &InitialData::g_zero_mean);

  py::class_<Grid>(m, "Grid")
      .def(py::init(&Grid::make), py::arg("dx"), py::arg("courant"), py::arg("t_max"), py::arg("R"))
      .def_readonly("dx", &Grid::dx)
      .def_readonly("dt", &Grid::dt)
      .def_readonly("x_min", &Grid::x_min)
      .def_readonly("x_max", &Grid::x_max)
      .def_readonly("t_max", &Grid::t_max)
      .def_readonly("nx", &Grid::nx)
      .def_readonly("nt", &Grid::nt)
      .def("x", &Grid::x)
      .def("t", &Grid::t);

  // -- theory --------------------------------------------------------------
  m.def(
      "predict",
      [](int alpha, std::optional<int> beta0, bool zero_mean) {
        const auto p = predict(alpha, beta0, zero_mean);
        py::dict d;
        d["exponent"] = frac(p.exponent);
        d["regime"] = std::string(regime_name(p.regime));
        d["conditions_used"] = p.conditions_used;
        return d;
      },
      py::arg("alpha"), py::arg("beta0") = py::none(), py::arg("zero_mean") = false);
  m.def(
      "regime_table",
      [](int alpha, std::optional<int> beta0, bool zero_mean) {
        py::list out;
        for (const auto& line : regime_table(alpha, beta0, zero_mean)) {
          py::dict d;
          d["regime"] = std::string(regime_name(line.regime));
          d["applies"] = line.applies;
          d["exponent"] = line.applies ? py::object(frac(line.exponent)) : py::object(py::none());
          out.append(d);
        }
        return out;
      },
      py::arg("alpha"), py::arg("beta0") = py::none(), py::arg("zero_mean") = false);
  m.def("combined_exponent", [](int p, int q, int r) { return frac(combined_exponent(p, q, r)); });
  m.def("improvement_margin", [](int a, int b) { return frac(improvement_margin(a, b)); });
  m.def("weight_p", [](int a, int b) { return frac(weight_p(a, b)); });
  m.def("positivity_identity_check", [](int a, int b) { return frac(positivity_identity_check(a, b)); });
  m.def("capital_r", &capital_r, py::arg("E"), py::arg("T"), py::arg("alpha"), py::arg("beta0"));
  m.def("horizon", &horizon, py::arg("c"), py::arg("eps"), py::arg("alpha"), py::arg("beta0"));

  // -- linear kernel -------------------------------------------------------
  m.def("free_solution", &free_solution, py::arg("data"), py::arg("eps"), py::arg("x"), py::arg("t"));
  m.def(
      "free_field", [](const InitialData& d, double eps, const Grid& g) { return to_array(free_field(d, eps, g)); },
      py::arg("data"), py::arg("eps"), py::arg("grid"));
  m.def("huygens_residual", &huygens_residual, py::arg("data"), py::arg("grid"));
  m.def(
      "duhamel",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> v, const Grid& g) {
        if (v.ndim() != 2 || v.shape(0) != g.nt || v.shape(1) != g.nx)
          throw Error(Errc::OutOfRange, "source must have shape (grid.nt, grid.nx)");
        Field f(g);
        std::copy(v.data(), v.data() + v.size(), f.values().begin());
        f.set_valid_up_to(g.nt - 1);
        return to_array(duhamel_slab(f));
      },
      py::arg("source"), py::arg("grid"), "L(v) over the whole slab for a source sampled on the grid.");

  // -- solvers -------------------------------------------------------------
  m.def(
      "fd_solve",
      [](const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid,
         double blowup_threshold, bool keep_field) {
        FdOptions o;
        o.blowup_threshold = blowup_threshold;
        o.store_stride = keep_field ? 1 : 0;
        FdResult r;
        {
          py::gil_scoped_release release;
          r = fd_solve(spec, data, eps, grid, o);
        }
        py::dict d;
        d["blowup_time"] = r.blowup_time ? py::object(py::float_(*r.blowup_time)) : py::object(py::none());
        d["threshold"] = r.threshold;
        d["final_time"] = r.final_time;
        d["final_row"] = to_array(r.final_row);
        d["final_ut"] = to_array(r.final_ut);
        if (keep_field) d["field"] = to_array(r.field);
        return d;
      },
      py::arg("spec"), py::arg("data"), py::arg("eps"), py::arg("grid"), py::arg("blowup_threshold") = 0.0,
      py::arg("keep_field") = false);

  m.def(
      "picard_solve",
      [](const NonlinearitySpec& spec, const InitialData& data, double eps, const Grid& grid, double tol,
         int max_iter) {
        PicardOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        PicardReport r;
        {
          py::gil_scoped_release release;
          r = picard_solve(spec, data, eps, grid, o);
        }
        py::dict d;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        d["tol"] = r.tol;
        d["sup_diffs"] = r.sup_diffs;
        d["field"] = to_array(r.final);
        return d;
      },
      py::arg("spec"), py::arg("data"), py::arg("eps"), py::arg("grid"), py::arg("tol") = 0.0,
      py::arg("max_iter") = 50);

  m.def(
      "estimate_lifespan",
      [](const NonlinearitySpec& spec, const InitialData& data, double eps, double dx, int levels, double budget,
         unsigned workers) {
        LifespanOptions o;
        o.dx = dx;
        o.levels = levels;
        o.budget = budget;
        o.workers = workers;
        LifespanRecord r;
        {
          py::gil_scoped_release release;
          r = estimate_lifespan(spec, data, eps, o);
        }
        return json_to_dict(to_json(r));
      },
      py::arg("spec"), py::arg("data"), py::arg("eps"), py::arg("dx") = 0.01, py::arg("levels") = 3,
      py::arg("budget") = 100.0, py::arg("workers") = 1);

  // -- sweeps and fits -----------------------------------------------------
  m.def(
      "fit_exponent",
      [](const std::vector<std::pair<double, double>>& eps_T) {
        const auto f = fit_exponent(eps_T);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["stderr_slope"] = f.stderr_slope;
        d["r_squared"] = f.r_squared;
        return d;
      },
      py::arg("eps_T"));
  m.def("geometric_eps", &geometric_eps, py::arg("eps_max"), py::arg("ratio"), py::arg("points"));
  m.def(
      "run_sweep",
      [](const std::string& config_text, unsigned workers) {
        const SweepConfig cfg = parse_config(config_text, "<python>").sweep_config(workers);
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(cfg);
        }
        return json_to_dict(to_json(r));
      },
      py::arg("config_json"), py::arg("workers") = 1,
      "Runs the sweep described by a JSON run document (same schema as the command-line tool).");

  m.def("verify", [] {
    py::list out;
    for (const auto& c : verify_suite()) out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });
}
