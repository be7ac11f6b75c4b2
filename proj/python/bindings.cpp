#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flowest/bench.hpp"
#include "flowest/circlefit.hpp"
#include "flowest/est_vg.hpp"
#include "flowest/est_xy.hpp"
#include "flowest/model.hpp"
#include "flowest/quadfit.hpp"
#include "flowest/ransac.hpp"

namespace py = pybind11;
using namespace flowest;

namespace
{

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

VelDataset vel_from(const Array& a)
{
    if (a.ndim() != 2 || a.shape(1) != 3)
        throw Error(ErrorKind::InvalidArgument, "velocity data must have shape (n, 3): xdot, ydot, psi");
    auto r = a.unchecked<2>();
    VelDataset d;
    d.samples.reserve(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
        d.samples.push_back({r(i, 0), r(i, 1), r(i, 2)});
    return d;
}

GroundSpeedDataset gs_from(const Array& a)
{
    if (a.ndim() != 2 || a.shape(1) != 2)
        throw Error(ErrorKind::InvalidArgument, "ground-speed data must have shape (n, 2): vg, psi");
    auto r = a.unchecked<2>();
    GroundSpeedDataset d;
    d.samples.reserve(static_cast<std::size_t>(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
        d.samples.push_back({r(i, 0), r(i, 1)});
    return d;
}

Array to_array(const VelDataset& d)
{
    Array out({static_cast<py::ssize_t>(d.size()), py::ssize_t{3}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        const auto k = static_cast<py::ssize_t>(i);
        w(k, 0) = d.samples[i].xdot;
        w(k, 1) = d.samples[i].ydot;
        w(k, 2) = d.samples[i].psi;
    }
    return out;
}

Array to_array(const GroundSpeedDataset& d)
{
    Array out({static_cast<py::ssize_t>(d.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        const auto k = static_cast<py::ssize_t>(i);
        w(k, 0) = d.samples[i].vg;
        w(k, 1) = d.samples[i].psi;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_flowest, m)
{
    m.doc() = "Flow-field estimation from vehicle heading-change maneuvers";

    static py::exception<Error> exc(m, "FlowestError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error& e)
        {
            py::set_error(exc, e.what());
        }
    });

    py::class_<FlowParams>(m, "FlowParams")
        .def(py::init<>())
        .def(py::init([](double v, double w, double theta) { return FlowParams{v, w, theta}; }), py::arg("v"),
             py::arg("w"), py::arg("theta"))
        .def_readwrite("v", &FlowParams::v)
        .def_readwrite("w", &FlowParams::w)
        .def_readwrite("theta", &FlowParams::theta)
        .def("__repr__", [](const FlowParams& p) {
            return "FlowParams(v=" + std::to_string(p.v) + ", w=" + std::to_string(p.w) +
                   ", theta=" + std::to_string(p.theta) + ")";
        });

    py::class_<Polytope>(m, "Polytope")
        .def(py::init([](double v_min, double v_max) { return Polytope{v_min, v_max}; }), py::arg("v_min") = 0.5,
             py::arg("v_max") = 5.0)
        .def_readwrite("v_min", &Polytope::v_min)
        .def_readwrite("v_max", &Polytope::v_max)
        .def("contains", &Polytope::contains, py::arg("p"), py::arg("tol") = 0.0);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("method", &EstimateReport::method)
        .def_readonly("params", &EstimateReport::params)
        .def_readonly("cost", &EstimateReport::cost)
        .def_readonly("converged", &EstimateReport::converged)
        .def_readonly("iterations", &EstimateReport::iterations)
        .def_readonly("n_used", &EstimateReport::n_used)
        .def_readonly("n_excluded", &EstimateReport::n_excluded)
        .def_readonly("direction_indeterminate", &EstimateReport::direction_indeterminate)
        .def_readonly("inlier_mask", &EstimateReport::inlier_mask)
        .def_readonly("inlier_threshold", &EstimateReport::inlier_threshold);

    m.def(
        "simulate",
        [](const FlowParams& p, std::size_t n, double delta_psi, double sigma, double sigma_psi, double psi0,
           std::uint64_t seed) {
            model::SimulateOptions o;
            o.n = n;
            o.delta_psi = delta_psi;
            o.sigma = sigma;
            o.sigma_psi = sigma_psi;
            o.psi0 = psi0;
            o.seed = seed;
            return to_array(model::simulate(p, o));
        },
        py::arg("params"), py::arg("n") = 100, py::arg("delta_psi") = kTwoPi, py::arg("sigma") = 0.0,
        py::arg("sigma_psi") = 0.0, py::arg("psi0") = 0.0, py::arg("seed") = 0,
        "Synthetic maneuver as an (n, 3) array of xdot, ydot, psi.");

    m.def(
        "to_ground_speed", [](const Array& vel) { return to_array(model::to_ground_speed(vel_from(vel))); },
        py::arg("vel"), "(n, 3) velocity array to (n, 2) array of vg, psi.");

    m.def(
        "circle_fit", [](const Array& vel) { return circlefit::fit(vel_from(vel)); }, py::arg("vel"));
    m.def(
        "quad_fit", [](const Array& gs, double lambda) { return quadfit::fit(gs_from(gs), lambda); },
        py::arg("gs"), py::arg("lam") = quadfit::kDefaultLambda);
    m.def(
        "estimate_xy", [](const Array& vel, const Polytope& poly) { return est_xy::estimate(vel_from(vel), poly); },
        py::arg("vel"), py::arg("poly") = Polytope{});
    m.def(
        "estimate_vg", [](const Array& gs, const Polytope& poly) { return est_vg::estimate(gs_from(gs), poly); },
        py::arg("gs"), py::arg("poly") = Polytope{});

    m.def(
        "robust_estimate",
        [](const Array& data, const Polytope& poly, std::uint64_t seed, std::size_t iterations,
           std::size_t min_sample, std::optional<double> threshold, double min_inliers_frac) {
            ransac::RansacConfig cfg;
            cfg.seed = seed;
            cfg.iterations = iterations;
            cfg.min_sample = min_sample;
            cfg.inlier_threshold = threshold;
            cfg.min_inliers_frac = min_inliers_frac;
            if (data.ndim() == 2 && data.shape(1) == 2)
                return ransac::robust_estimate(gs_from(data), cfg, poly);
            return ransac::robust_estimate(vel_from(data), cfg, poly);
        },
        py::arg("data"), py::arg("poly") = Polytope{}, py::arg("seed") = 0, py::arg("iterations") = 100,
        py::arg("min_sample") = 10, py::arg("threshold") = py::none(), py::arg("min_inliers_frac") = 0.5,
        "RANSAC around estimate_xy for (n, 3) data or estimate_vg for (n, 2) data.");

    m.def(
        "benchmark",
        [](std::vector<double> sigmas, std::vector<double> spans, std::size_t trials, std::size_t n,
           std::uint64_t seed, unsigned threads) {
            bench::BenchConfig cfg;
            cfg.sigmas = std::move(sigmas);
            cfg.spans = std::move(spans);
            cfg.trials = trials;
            cfg.n = n;
            cfg.seed = seed;
            cfg.threads = threads;
            bench::BenchResult res;
            {
                py::gil_scoped_release release;
                res = bench::run(cfg);
            }
            py::list rows;
            for (const auto& c : res.cells)
            {
                py::dict r;
                r["method"] = bench::to_string(c.method);
                r["sigma"] = c.sigma;
                r["delta_psi"] = c.span;
                r["n_ok"] = c.n_ok;
                r["n_failed"] = c.n_failed;
                r["mean_err_v"] = c.mean_err_v;
                r["mean_err_w"] = c.mean_err_w;
                r["mean_err_theta_deg"] = c.mean_err_theta_deg;
                rows.append(r);
            }
            return rows;
        },
        py::arg("sigmas") = std::vector<double>{0.01, 0.05, 0.10},
        py::arg("spans") = std::vector<double>{kTwoPi, 1.5 * std::numbers::pi, std::numbers::pi},
        py::arg("trials") = 250, py::arg("n") = 100, py::arg("seed") = 0, py::arg("threads") = 0,
        "Monte Carlo comparison; one dict per (method, sigma, span) cell.");
}
