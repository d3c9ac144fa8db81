// Python bindings: experiment runs from a config dict, the closed-form
// theory operations, the stepsize recurrence simulator, and a few sampling
// helpers.  Config values are stringified with str(), so booleans should be
// passed as "true"/"false" (or 1/0).

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zoseg/core.hpp"
#include "zoseg/harness.hpp"
#include "zoseg/problem.hpp"
#include "zoseg/sampling.hpp"
#include "zoseg/solver.hpp"
#include "zoseg/theory.hpp"

namespace py = pybind11;
using namespace zoseg;

namespace {

harness::Config config_from_dict(const py::dict& overrides) {
    harness::Config config = harness::Config::defaults();
    for (const auto& item : overrides) {
        config.set(py::str(item.first).cast<std::string>(),
                   py::str(item.second).cast<std::string>());
    }
    return config;
}

py::dict trajectory_to_dict(const Trajectory& t) {
    py::list points;
    for (const TrajectoryPoint& p : t.points) {
        points.append(py::make_tuple(p.iteration, p.oracle_calls,
                                     p.residual_sq, p.beta));
    }
    py::dict out;
    out["points"] = points;
    out["iterations"] = t.iterations;
    out["final_iterate"] = t.final_iterate;
    out["final_residual_sq"] = t.points.back().residual_sq;
    out["total_oracle_calls"] = t.points.back().oracle_calls;
    return out;
}

}  // namespace

PYBIND11_MODULE(pyzoseg, m) {
    m.doc() = "gradient-free same-sample extragradient workbench";

    py::enum_<SamplingKind>(m, "SamplingKind")
        .value("uniform", SamplingKind::Uniform)
        .value("importance", SamplingKind::Importance);

    py::enum_<NoiseKind>(m, "NoiseKind")
        .value("deterministic", NoiseKind::Deterministic)
        .value("stochastic", NoiseKind::Stochastic);

    py::class_<AggregateConstants>(m, "AggregateConstants")
        .def(py::init<>())
        .def_readwrite("mu_bar", &AggregateConstants::mu_bar)
        .def_readwrite("L_bar", &AggregateConstants::L_bar)
        .def_readwrite("L_max", &AggregateConstants::L_max)
        .def_readwrite("L_min", &AggregateConstants::L_min)
        .def("__repr__", [](const AggregateConstants& a) {
            return "AggregateConstants(mu_bar=" + std::to_string(a.mu_bar) +
                   ", L_bar=" + std::to_string(a.L_bar) +
                   ", L_max=" + std::to_string(a.L_max) +
                   ", L_min=" + std::to_string(a.L_min) + ")";
        });

    py::class_<BoundInputs>(m, "BoundInputs")
        .def(py::init<>())
        .def_readwrite("aggregates", &BoundInputs::aggregates)
        .def_readwrite("R0_sq", &BoundInputs::R0_sq)
        .def_readwrite("sigma_star_sq", &BoundInputs::sigma_star_sq)
        .def_readwrite("zeta", &BoundInputs::zeta)
        .def_readwrite("N", &BoundInputs::N)
        .def_readwrite("d", &BoundInputs::d)
        .def_readwrite("tau", &BoundInputs::tau)
        .def_readwrite("Delta", &BoundInputs::Delta)
        .def_readwrite("B", &BoundInputs::B)
        .def_readwrite("sampling", &BoundInputs::sampling);

    m.def("default_config", [] {
        py::dict out;
        const harness::Config defaults = harness::Config::defaults();
        for (const auto& [key, value] : defaults.entries()) {
            out[py::str(key)] = value;
        }
        return out;
    }, "built-in defaults for every config key, as a dict of strings");

    m.def("resolved_config", [](const py::dict& overrides) {
        py::dict out;
        const harness::ResolvedSetup setup =
            harness::resolve_setup(config_from_dict(overrides));
        for (const auto& [key, value] : setup.resolved_entries) {
            out[py::str(key)] = value;
        }
        return out;
    }, py::arg("config"),
       "defaults + overrides with 'auto' values replaced by what would run");

    m.def("run", [](const py::dict& overrides, const std::string& out_csv) {
        return trajectory_to_dict(
            harness::run_experiment(config_from_dict(overrides), out_csv));
    }, py::arg("config"), py::arg("out_csv") = std::string(),
       "run one experiment; writes the trajectory CSV when out_csv is given");

    m.def("compute_aggregates", &compute_aggregates, py::arg("mu"),
          py::arg("L"),
          "mu_bar (negative moduli counted four-fold) and the L statistics");

    m.def("sseg_us_bound", &sseg_us_bound, py::arg("inputs"),
          "exact-constant guarantee, uniform sampling");
    m.def("sseg_is_bound", &sseg_is_bound, py::arg("inputs"),
          "exact-constant guarantee, importance sampling");
    m.def("composed_bound", &zosseg_composed_exact_bound, py::arg("inputs"),
          "gradient-free guarantee via the estimator bias fed through the "
          "bias slot");

    m.def("rate_terms", [](const BoundInputs& inputs, NoiseKind noise) {
        py::dict out;
        for (const RateTerm& term : zosseg_rate_terms(inputs, noise)) {
            out[py::str(term.name)] = term.value;
        }
        return out;
    }, py::arg("inputs"), py::arg("noise") = NoiseKind::Deterministic,
       "order-level rate terms (absolute constants set to 1), keyed by name");

    m.def("recommend", [](double epsilon, const AggregateConstants& agg,
                          double R0_sq, double sigma_star_sq, int d,
                          NoiseKind noise) {
        const ParameterPlan plan =
            recommend_parameters(epsilon, agg, R0_sq, sigma_star_sq, d, noise);
        py::dict out;
        out["N"] = plan.N_rec;
        out["tau"] = plan.tau_rec;
        out["B"] = plan.B_rec;
        out["Delta_max"] = plan.Delta_max;
        out["T"] = plan.T_rec;
        out["N_real"] = plan.N_real;
        out["B_real"] = plan.B_real;
        return out;
    }, py::arg("epsilon"), py::arg("aggregates"), py::arg("R0_sq"),
       py::arg("sigma_star_sq"), py::arg("d"),
       py::arg("noise") = NoiseKind::Deterministic,
       "parameters achieving epsilon-accuracy; T = N * B exactly");

    m.def("simulate_recurrence",
          [](double a, double b, double c, double h, long K, double r0) {
              const StichResult r = simulate_stich_recurrence(a, b, c, h, K, r0);
              return py::make_tuple(r.r_K, r.bound);
          },
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("h"), py::arg("K"),
          py::arg("r0"),
          "(r_K, bound) for the diminishing-stepsize recurrence");

    m.def("sample_unit_sphere", [](int d, std::uint64_t seed) {
        Rng rng(seed);
        return sample_unit_sphere(d, rng);
    }, py::arg("d"), py::arg("seed"),
       "one uniform draw from the unit sphere, from a fresh stream");

    m.def("validate", [](std::uint64_t seed) {
        py::list out;
        for (const auto& check : harness::run_validation_suite(seed)) {
            py::dict row;
            row["name"] = check.name;
            row["pass"] = check.pass;
            row["detail"] = check.detail;
            out.append(row);
        }
        return out;
    }, py::arg("seed") = 0,
       "estimator Monte-Carlo suite + recurrence grid (takes a few seconds)");
}
