#include <cmath>
#include <limits>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thetacover/covering.hpp"
#include "thetacover/divisor.hpp"
#include "thetacover/error.hpp"
#include "thetacover/theta.hpp"
#include "thetacover/verify.hpp"

namespace py = pybind11;
using namespace thetacover;

namespace {

// The point at infinity comes back as complex(inf, inf).
Complex to_python(const Extended& e)
{
    if (e.is_infinite()) {
        const double inf = std::numeric_limits<double>::infinity();
        return {inf, inf};
    }
    return e.value();
}

py::list report_list(const VerificationReport& r)
{
    py::list out;
    for (const Check& c : r.checks()) {
        py::dict d;
        d["name"] = c.name;
        d["measured_error"] = c.measured;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        d["details"] = c.details;
        out.append(d);
    }
    return out;
}

py::dict lattice_dict(const LatticeReport& r)
{
    py::dict d;
    d["valid"] = r.valid;
    d["condition_value"] = r.condition_value;
    d["m"] = r.m;
    d["deviation"] = r.deviation;
    py::list v;
    for (const Violation& x : r.violations) v.append(py::make_tuple(x.clause, x.message));
    d["violations"] = v;
    return d;
}

} // namespace

PYBIND11_MODULE(_thetacover, m)
{
    m.doc() = "Theta-function covering maps of the disc and the annulus";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<PoleProximity>(m, "PoleProximity", base.ptr());
    py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());

    py::class_<SurfaceSpec>(m, "SurfaceSpec")
        .def_static("disc", &SurfaceSpec::disc)
        .def_static("annulus", &SurfaceSpec::annulus, py::arg("T"))
        .def_static("annulus_from_radius", &SurfaceSpec::annulus_from_radius, py::arg("r"))
        .def_property_readonly("T", &SurfaceSpec::T)
        .def_property_readonly("radius", &SurfaceSpec::radius)
        .def_property_readonly("is_annulus", &SurfaceSpec::is_annulus);

    m.def("theta1", [](Complex x, double T) { return theta1(x, ThetaParams(T)); }, py::arg("x"), py::arg("T"));
    m.def("theta1_logderiv", [](Complex x, double T) { return theta1_logderiv(x, ThetaParams(T)); },
          py::arg("x"), py::arg("T"));

    py::class_<HalfPlaneDivisor>(m, "HalfPlaneDivisor")
        .def(py::init<std::vector<Complex>, std::vector<Complex>>(), py::arg("zeros"), py::arg("poles"))
        .def_readwrite("zeros", &HalfPlaneDivisor::zeros)
        .def_readwrite("poles", &HalfPlaneDivisor::poles);
    py::class_<DiscDivisor>(m, "DiscDivisor")
        .def(py::init([](std::vector<Complex> zeros) { return DiscDivisor{std::move(zeros)}; }), py::arg("zeros"))
        .def_readwrite("zeros", &DiscDivisor::zeros)
        .def_property_readonly("poles", &DiscDivisor::poles);

    m.def("validate_halfplane", [](const HalfPlaneDivisor& d, const SurfaceSpec& s) {
        return lattice_dict(validate_halfplane(d, s));
    });
    m.def("validate_disc", [](const DiscDivisor& d, const SurfaceSpec& s) { return lattice_dict(validate_disc(d, s)); });
    m.def("random_halfplane_divisor", &random_halfplane_divisor, py::arg("seed"), py::arg("n"), py::arg("surface"));
    m.def("random_disc_divisor", &random_disc_divisor, py::arg("seed"), py::arg("n"), py::arg("surface"));

    py::class_<HalfPlaneCover>(m, "HalfPlaneCover")
        .def_static("create", &HalfPlaneCover::create, py::arg("divisor"), py::arg("surface"))
        .def("__call__", [](const HalfPlaneCover& h, Complex x) { return to_python(h.evaluate(x)); })
        .def_property_readonly("m", &HalfPlaneCover::m)
        .def_property_readonly("degree", &HalfPlaneCover::degree)
        .def_property_readonly("reference_point", &HalfPlaneCover::reference_point)
        .def("verify", [](const HalfPlaneCover& h, double tol) { return report_list(verify_map(h, tol)); },
             py::arg("tol") = 1e-8)
        .def("preimage_count", &preimage_count, py::arg("target") = Complex(0.0, 1.0));

    py::class_<DiscCover>(m, "DiscCover")
        .def_static("create", &DiscCover::create, py::arg("divisor"), py::arg("surface"), py::arg("phase") = Complex(1.0))
        .def("__call__", [](const DiscCover& h, Complex x) { return to_python(h.evaluate(x)); })
        .def_property_readonly("degree", &DiscCover::degree)
        .def("verify", [](const DiscCover& h, double tol) { return report_list(verify_map(h, tol)); },
             py::arg("tol") = 1e-8)
        .def("boundary_winding", &boundary_winding);

    py::class_<BlaschkeCover>(m, "BlaschkeCover")
        .def_static("create", &BlaschkeCover::create, py::arg("zeros"), py::arg("phase") = Complex(1.0))
        .def("__call__", [](const BlaschkeCover& b, Complex w) { return to_python(b.evaluate(w)); })
        .def_property_readonly("zeros", &BlaschkeCover::zeros)
        .def_property_readonly("phase", &BlaschkeCover::phase);

    py::class_<RationalCover>(m, "RationalCover")
        .def_static("create",
                    [](std::vector<double> zeros, std::vector<double> poles, double scale) {
                        return RationalCover::create(ClassicalDivisor::make(std::move(zeros), std::move(poles)), scale);
                    },
                    py::arg("zeros"), py::arg("poles"), py::arg("scale") = 1.0)
        .def("__call__", [](const RationalCover& r, Complex u) { return to_python(r.evaluate(u)); })
        .def_property_readonly("scale", &RationalCover::scale)
        .def("to_blaschke", &rational_to_blaschke);

    m.def("strip_to_ring", &strip_to_ring, py::arg("x"), py::arg("surface"));
    m.def("ring_to_strip", &ring_to_strip, py::arg("u"), py::arg("surface"));
}
