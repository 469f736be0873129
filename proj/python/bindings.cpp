#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cellrate/errors.hpp"
#include "cellrate/mc_oracle.hpp"
#include "cellrate/mcp_rate.hpp"
#include "cellrate/scp_rate.hpp"
#include "cellrate/sweep.hpp"

namespace py = pybind11;
using namespace cellrate;

namespace {

VirtualGainDistribution make_distribution(const std::vector<std::pair<double, double>>& atoms) {
    std::vector<VirtualGainDistribution::Atom> converted;
    converted.reserve(atoms.size());
    for (const auto& [gain, prob] : atoms) converted.push_back({gain, prob});
    return VirtualGainDistribution(std::move(converted));
}

SweepSpec preset_by_name(const std::string& name) {
    if (name == "fig3") return fig3_spec();
    if (name == "fig4") return fig4_spec();
    if (name == "fig5") return fig5_spec();
    if (name == "fig6") return fig6_spec();
    throw ConfigError("unknown preset: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Uplink throughput of a linear cellular array with dynamic user activity "
              "and cooperative base stations";

    py::register_exception<NoBracketError>(m, "NoBracketError");
    py::register_exception<NoConvergenceError>(m, "NoConvergenceError");
    py::register_exception<SupportTooLargeError>(m, "SupportTooLargeError");
    py::register_exception<NumericalFailureError>(m, "NumericalFailureError");
    py::register_exception<DegenerateTapsError>(m, "DegenerateTapsError");
    py::register_exception<DivisionByZeroError>(m, "DivisionByZeroError");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<ChannelProfile>(m, "ChannelProfile")
        .def(py::init<int, int, std::vector<std::complex<double>>>(), py::arg("l1"),
             py::arg("l2"), py::arg("taps"))
        .def_static("sho", &ChannelProfile::sho, py::arg("alpha0"), py::arg("alpha1"))
        .def_property_readonly("l1", &ChannelProfile::l1)
        .def_property_readonly("l2", &ChannelProfile::l2)
        .def_property_readonly("taps", &ChannelProfile::taps)
        .def("is_sho", &ChannelProfile::is_sho)
        .def("total_tap_power", &ChannelProfile::total_tap_power);

    py::class_<ActivityModel>(m, "ActivityModel")
        .def(py::init<int, double, double>(), py::arg("K"), py::arg("q"), py::arg("P"))
        .def_readonly("K", &ActivityModel::K)
        .def_readonly("q", &ActivityModel::q)
        .def_readonly("P", &ActivityModel::P);

    py::class_<VirtualGainDistribution>(m, "VirtualGainDistribution")
        .def(py::init(&make_distribution), py::arg("atoms"),
             "Atoms as (gain_sq, prob) pairs; merged, pruned and renormalized.")
        .def_property_readonly("atoms",
                               [](const VirtualGainDistribution& dist) {
                                   std::vector<std::pair<double, double>> atoms;
                                   for (const auto& atom : dist.atoms())
                                       atoms.emplace_back(atom.gain_sq, atom.prob);
                                   return atoms;
                               })
        .def("mean_gain", &VirtualGainDistribution::mean_gain)
        .def("variance_gain", &VirtualGainDistribution::variance_gain)
        .def("zero_mass", &VirtualGainDistribution::zero_mass);

    m.def("npc_distribution", &npc_distribution, py::arg("model"));
    m.def("apc_distribution", &apc_distribution, py::arg("model"));
    m.def("cpc_distribution", &cpc_distribution, py::arg("model"));
    m.def("mean_gain", &mean_gain, py::arg("dist"));

    m.def("psd", &psd, py::arg("profile"), py::arg("f"));
    m.def("log_integral", &log_integral, py::arg("profile"), py::arg("x"));
    m.def("resolvent_integral", &resolvent_integral, py::arg("profile"), py::arg("x"));

    py::class_<FixedPoint>(m, "FixedPoint")
        .def_readonly("beta", &FixedPoint::beta)
        .def_readonly("nu", &FixedPoint::nu);

    m.def("solve_fixed_point", &solve_fixed_point, py::arg("profile"), py::arg("dist"),
          py::arg("gamma"));
    m.def("mcp_rate_general", &mcp_rate_general, py::arg("profile"), py::arg("dist"),
          py::arg("gamma"));
    m.def("solve_beta_erasure", &solve_beta_erasure, py::arg("profile"), py::arg("q_tilde"),
          py::arg("gamma"));
    m.def("mcp_rate_erasure", &mcp_rate_erasure, py::arg("profile"), py::arg("q_tilde"),
          py::arg("gamma"));
    m.def("relative_entropy_bernoulli", &relative_entropy_bernoulli, py::arg("q_tilde"),
          py::arg("one_minus_beta"));
    m.def("sho_apc_beta_closed_form", &sho_apc_beta_closed_form, py::arg("alpha0"),
          py::arg("alpha1"), py::arg("K"), py::arg("q"), py::arg("P"));
    m.def("sho_apc_rate", &sho_apc_rate, py::arg("alpha0"), py::arg("alpha1"), py::arg("K"),
          py::arg("q"), py::arg("P"));

    m.def("scp_rate_exact", &scp_rate_exact, py::arg("profile"), py::arg("dist"));
    m.def(
        "scp_rate_mc",
        [](const ChannelProfile& profile, const VirtualGainDistribution& dist,
           std::uint64_t samples, std::uint64_t seed) {
            const McEstimate estimate = scp_rate_mc(profile, dist, samples, seed);
            return std::make_pair(estimate.mean, estimate.std_error);
        },
        py::arg("profile"), py::arg("dist"), py::arg("samples"), py::arg("seed"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<int, int, std::uint64_t>(), py::arg("M"), py::arg("trials"),
             py::arg("seed"))
        .def_readonly("M", &SimConfig::M)
        .def_readonly("trials", &SimConfig::trials)
        .def_readonly("seed", &SimConfig::seed);

    m.def("sample_throughput", &sample_throughput, py::arg("profile"), py::arg("dist"),
          py::arg("cfg"), py::arg("trial_index"));
    m.def(
        "estimate_throughput",
        [](const ChannelProfile& profile, const VirtualGainDistribution& dist,
           const SimConfig& cfg) {
            const McEstimate estimate = estimate_throughput(profile, dist, cfg);
            return std::make_pair(estimate.mean, estimate.std_error);
        },
        py::arg("profile"), py::arg("dist"), py::arg("cfg"));

    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("per_active_user", &per_active_user, py::arg("rate"), py::arg("K"), py::arg("q"));

    m.def(
        "run_figure_preset",
        [](const std::string& name) {
            const SweepResult result = run_sweep(preset_by_name(name));
            std::ostringstream csv;
            emit_csv(result, csv);
            return csv.str();
        },
        py::arg("name"), "Run a figure preset (fig3..fig6) and return its CSV text.");

    m.def("selftest", []() {
        std::ostringstream out;
        const int failures = run_selftest(out);
        return std::make_pair(failures, out.str());
    });
}
