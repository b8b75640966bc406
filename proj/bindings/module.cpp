#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqg/deterministic.hpp"
#include "sqg/ensemble.hpp"
#include "sqg/operators.hpp"
#include "sqg/runner.hpp"
#include "sqg/transform.hpp"

namespace py = pybind11;
using namespace sqg;

namespace {

Wavevector to_wavevector(std::pair<int, int> k) { return {k.first, k.second}; }

SpectralScalarField field_from_modes(int truncation,
                                     const std::map<std::pair<int, int>, double>& modes) {
    SpectralScalarField f(truncation);
    for (const auto& [k, v] : modes) f.set_coeff(to_wavevector(k), v);
    return f;
}

py::dict field_to_dict(const SpectralScalarField& f) {
    py::dict d;
    f.for_each([&](Wavevector k, double v) {
        if (v != 0.0) d[py::make_tuple(k.k1, k.k2)] = v;
    });
    return d;
}

py::dict record_to_dict(const TrajectoryRecord& rec) {
    py::dict d;
    d["times"] = py::array_t<double>(py::ssize_t(rec.times.size()), rec.times.data());
    for (const auto& fs : rec.fields) {
        d[(fs.name + "_l2").c_str()] =
            py::array_t<double>(py::ssize_t(fs.l2.size()), fs.l2.data());
        d[(fs.name + "_grad_l2").c_str()] =
            py::array_t<double>(py::ssize_t(fs.grad_l2.size()), fs.grad_l2.data());
        d[(fs.name + "_diss_integral").c_str()] = py::array_t<double>(
            py::ssize_t(fs.dissipation_integral.size()), fs.dissipation_integral.data());
    }
    py::dict obs;
    for (const auto& [id, series] : rec.observables)
        obs[id.c_str()] = py::array_t<double>(py::ssize_t(series.size()), series.data());
    d["observables"] = obs;
    return d;
}

StochasticScheme scheme_from_name(const std::string& name) {
    if (name == "ItoEulerMaruyama") return StochasticScheme::ItoEulerMaruyama;
    if (name == "StratonovichHeun") return StochasticScheme::StratonovichHeun;
    if (name == "ExponentialEM") return StochasticScheme::ExponentialEM;
    throw std::invalid_argument("unknown scheme: " + name);
}

} // namespace

PYBIND11_MODULE(_sqglab, m) {
    m.doc() = "Pseudo-spectral Galerkin solvers for stochastic SQG and 2D critical Boussinesq "
              "equations with transport noise.";
    m.attr("__version__") = kToolVersion;

    py::class_<NoiseCoefficients>(m, "NoiseCoefficients")
        .def_static("cutoff", &NoiseCoefficients::cutoff, py::arg("radius"))
        .def_static("power", &NoiseCoefficients::power, py::arg("radius"), py::arg("alpha"))
        .def("value", [](const NoiseCoefficients& t, std::pair<int, int> k) {
            return t.value(to_wavevector(k));
        })
        .def("l2_norm", &NoiseCoefficients::l2_norm)
        .def("linf_norm", &NoiseCoefficients::linf_norm)
        .def("support_radius", &NoiseCoefficients::support_radius)
        .def("support_size", [](const NoiseCoefficients& t) { return t.support().size(); });

    m.def("scaling_ratio", &scaling_ratio);
    m.def("validate_symmetry", [](const NoiseCoefficients& t) {
        const auto r = validate_symmetry(t);
        return py::make_tuple(r.ok, r.detail);
    });

    py::class_<SpectralScalarField>(m, "SpectralScalarField")
        .def(py::init(&field_from_modes), py::arg("truncation"), py::arg("modes"))
        .def("truncation", &SpectralScalarField::truncation)
        .def("coeff", [](const SpectralScalarField& f, std::pair<int, int> k) {
            return f.coeff(to_wavevector(k));
        })
        .def("l2_norm", &SpectralScalarField::l2_norm)
        .def("inner", &SpectralScalarField::inner)
        .def("modes", &field_to_dict);

    m.def("basis_eval", [](std::pair<int, int> k, double x1, double x2) {
        return basis_eval(to_wavevector(k), x1, x2);
    });
    m.def("sigma_eval", [](std::pair<int, int> k, double x1, double x2) {
        return sigma_eval(to_wavevector(k), x1, x2);
    });
    m.def("tensor_identity_sum", [](const NoiseCoefficients& theta, double x1, double x2) {
        const Matrix2 mat = tensor_identity_sum(theta, x1, x2);
        py::array_t<double> out({2, 2});
        auto r = out.mutable_unchecked<2>();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = mat[i][j];
        return out;
    });

    m.def("lambda_power", &lambda_power, py::arg("field"), py::arg("s"));
    m.def("galerkin_project", &galerkin_project, py::arg("field"), py::arg("m"));
    m.def("sobolev_norm", &sobolev_norm, py::arg("field"), py::arg("s"));
    m.def("grad_l2_norm", &grad_l2_norm);
    m.def("advect", &advect, py::arg("omega"), py::arg("scalar"));
    m.def("advect_direct", &advect_direct, py::arg("omega"), py::arg("scalar"));
    m.def("transport_mode", [](std::pair<int, int> k, const SpectralScalarField& f) {
        return transport_mode(to_wavevector(k), f);
    });
    m.def("velocity_from_scalar", [](const SpectralScalarField& omega) {
        const auto u = velocity_from_scalar(omega);
        return py::make_tuple(u.x1, u.x2);
    });
    m.def("weak_nonlinear_pairing", [](const SpectralScalarField& omega,
                                       const SpectralScalarField& phi) {
        const auto p = weak_nonlinear_pairing(omega, phi);
        return py::make_tuple(p.direct, p.commutator_form);
    });
    m.def("random_field", &random_field, py::arg("truncation"), py::arg("radius"),
          py::arg("seed"), py::arg("l2_amplitude") = 0.0);

    m.def(
        "simulate_sqg",
        [](const SpectralScalarField& omega0, int truncation, double nu,
           const NoiseCoefficients& theta, double dt, double t_final, const std::string& scheme,
           std::uint64_t seed, std::uint64_t sample_index, int record_count) {
            SdeConfig cfg;
            cfg.equation = Equation::Sqg;
            cfg.truncation = truncation;
            cfg.nu = nu;
            cfg.theta = theta;
            cfg.dt = dt;
            cfg.t_final = t_final;
            cfg.scheme = scheme_from_name(scheme);
            RecordingPlan plan;
            plan.record_count = record_count;
            plan.observables = default_observables(truncation);
            BrownianDriver driver(seed, sample_index);
            return record_to_dict(simulate(cfg, State(omega0), driver, plan));
        },
        py::arg("omega0"), py::arg("truncation"), py::arg("nu"), py::arg("theta"), py::arg("dt"),
        py::arg("t_final"), py::arg("scheme") = "ExponentialEM", py::arg("seed") = 0,
        py::arg("sample_index") = 0, py::arg("record_count") = 50);

    m.def(
        "solve_sqg",
        [](const SpectralScalarField& omega0, int truncation, double nu, double dt,
           double t_final, int record_count) {
            DeterministicConfig cfg;
            cfg.equation = Equation::Sqg;
            cfg.truncation = truncation;
            cfg.nu = nu;
            cfg.dt = dt;
            cfg.t_final = t_final;
            RecordingPlan plan;
            plan.record_count = record_count;
            plan.observables = default_observables(truncation);
            return record_to_dict(solve_sqg(omega0, cfg, plan));
        },
        py::arg("omega0"), py::arg("truncation"), py::arg("nu"), py::arg("dt"),
        py::arg("t_final"), py::arg("record_count") = 50);

    m.def(
        "solve_boussinesq",
        [](const SpectralScalarField& xi0, const SpectralScalarField& omega0, int truncation,
           double nu, double kappa, double dt, double t_final, int record_count) {
            DeterministicConfig cfg;
            cfg.equation = Equation::Boussinesq;
            cfg.truncation = truncation;
            cfg.nu = nu;
            cfg.kappa = kappa;
            cfg.dt = dt;
            cfg.t_final = t_final;
            RecordingPlan plan;
            plan.record_count = record_count;
            plan.observables = default_observables(truncation);
            return record_to_dict(solve_boussinesq(xi0, omega0, cfg, plan));
        },
        py::arg("xi0"), py::arg("omega0"), py::arg("truncation"), py::arg("nu"), py::arg("kappa"),
        py::arg("dt"), py::arg("t_final"), py::arg("record_count") = 50);
}
