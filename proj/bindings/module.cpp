#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "cavrep/errors.hpp"
#include "cavrep/generation.hpp"
#include "cavrep/mc.hpp"
#include "cavrep/optimizer.hpp"
#include "cavrep/rate_model.hpp"
#include "cavrep/run_config.hpp"
#include "cavrep/secret_key.hpp"
#include "cavrep/states.hpp"
#include "cavrep/waiting.hpp"

namespace py = pybind11;
using ojson = nlohmann::ordered_json;

namespace {

using namespace cavrep;

ojson analysis_to_json(const rate::Analysis& a) {
    const rate::RepeaterConfig& c = a.config;
    ojson doc;
    doc["distance_km"] = c.l_total_km;
    doc["cooperativity"] = c.link.cooperativity;
    doc["scheme"] = gen::scheme_name(c.scheme);
    doc["gate"] = gates::name(c.gate);
    doc["architecture"] = rate::architecture_name(c.architecture);
    doc["variant"] = states::variant_name(c.variant);
    doc["n"] = c.n;
    doc["j"] = c.j;
    doc["qubits_per_station"] = c.qubits_per_station;
    doc["window_s"] = c.window_s;
    doc["eps_sq"] = c.eps_sq;
    doc["p0"] = a.p0;
    doc["p_swap"] = a.p_swap;
    doc["m_slots"] = a.m_slots;
    doc["probabilistic_swap"] = a.probabilistic_swap;
    doc["tau_link_s"] = a.timing.tau_link_s;
    doc["tau_swap_s"] = a.timing.tau_swap_total_s;
    doc["distribution_time_s"] = a.timing.distribution_time_s;
    doc["distribution_rate_hz"] = a.distribution_rate_hz;
    doc["final_fidelity"] = a.final_fidelity;
    doc["secret_fraction"] = a.report.secret_fraction;
    doc["secret_key_rate_hz"] = a.report.secret_key_rate_hz;
    doc["normalized_rate_hz"] = a.report.normalized_rate_hz;
    doc["stations"] = a.report.stations;
    return doc;
}

std::string evaluate_json(const std::string& config_text) {
    const config::RunConfig rc = config::parse_run_config(config_text);
    const rate::Analysis a = rate::evaluate(rc.repeater);
    return analysis_to_json(a).dump(2);
}

std::string optimize_json(const std::string& config_text) {
    const config::RunConfig rc = config::parse_run_config(config_text);
    const std::vector<opt::OptimumRecord> records = opt::optimize_grid(rc.sweep);
    ojson rows = ojson::array();
    for (const opt::OptimumRecord& rec : records) {
        ojson row = analysis_to_json(rec.best_analysis);
        row["iterations"] = rec.best_inner.iterations;
        rows.push_back(std::move(row));
    }
    return rows.dump(2);
}

std::string validate_json(const std::string& config_text) {
    const config::RunConfig rc = config::parse_run_config(config_text);
    const config::ValidateSpec& spec = rc.validate;
    std::vector<rate::RepeaterConfig> grid;
    for (gates::GateKind gate : spec.gate_kinds) {
        for (rate::Architecture arch : spec.architectures) {
            for (int n = 0; n <= spec.n_max; ++n) {
                if (arch == rate::Architecture::Sequential && n == 0) continue;
                for (int j = 0; j <= spec.j_max; ++j) {
                    if (j >= 1 && spec.qubits_per_station < 4) continue;
                    rate::RepeaterConfig cfg = rc.repeater;
                    cfg.n = n;
                    cfg.j = j;
                    cfg.architecture = arch;
                    cfg.gate = gate;
                    cfg.qubits_per_station = spec.qubits_per_station;
                    cfg.l_total_km = spec.distance_km;
                    cfg.link.cooperativity = spec.cooperativity;
                    grid.push_back(cfg);
                }
            }
        }
    }
    const std::vector<mc::ValidationRow> rows =
        mc::validation_rows(grid, spec.trials, spec.seed, spec.band_lo, spec.band_hi);
    ojson out = ojson::array();
    for (const mc::ValidationRow& r : rows) {
        ojson row;
        row["gate"] = gates::name(r.config.gate);
        row["architecture"] = rate::architecture_name(r.config.architecture);
        row["n"] = r.config.n;
        row["j"] = r.config.j;
        row["analytic_s"] = r.analytic_s;
        row["mc_mean_s"] = r.mc_mean_s;
        row["mc_se_s"] = r.mc_std_error_s;
        row["ratio"] = r.ratio;
        row["within_band"] = r.within_band;
        out.push_back(std::move(row));
    }
    return out.dump(2);
}

py::dict single_photon_dict(double eta_d, double eta_f, double p_phot, double p_dark,
                            double eps_sq, bool corrected) {
    const gen::SinglePhotonCoefficients c =
        gen::single_photon_coefficients(eta_d, eta_f, p_phot, p_dark, eps_sq, corrected);
    py::dict d;
    d["f1"] = c.f1;
    d["a1"] = c.a1;
    d["b1"] = c.b1;
    d["at1"] = c.at1;
    d["bt1"] = c.bt1;
    d["p_click"] = c.p_click;
    d["num_sum"] = c.num_sum;
    return d;
}

py::dict two_photon_dict(double eta_d, double eta_f, double p_phot, double p_dark,
                         bool corrected) {
    const gen::TwoPhotonCoefficients c =
        gen::two_photon_coefficients(eta_d, eta_f, p_phot, p_dark, corrected);
    py::dict d;
    d["f2"] = c.f2;
    d["a2"] = c.a2;
    d["b2"] = c.b2;
    d["p_click"] = c.p_click;
    d["num_sum"] = c.num_sum;
    return d;
}

} // namespace

PYBIND11_MODULE(_cavrep, m) {
    m.doc() = "Secret-key distribution rates for cavity-based quantum repeater chains";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    m.def("binary_entropy", &secret::binary_entropy, py::arg("p"),
          "Binary entropy in bits; h(0) = h(1) = 0.");
    m.def("qber_from_fidelity", &secret::qber_from_fidelity, py::arg("fidelity"),
          "Werner-pair quantum bit error rate 2(1-F)/3.");
    m.def("secret_fraction", &secret::secret_fraction, py::arg("fidelity"),
          "Asymptotic one-way six-state secret fraction, clamped at zero.");
    m.def("threshold_fidelity", &secret::threshold_fidelity,
          "Fidelity where the six-state secret fraction reaches zero.");
    m.def("z_factor", &waiting::z_factor, py::arg("l"), py::arg("m"), py::arg("p"),
          "Expected rounds to collect l successes from m kept slots at per-slot p.");
    m.def("photon_emission_prob",
          py::overload_cast<double, double, double>(&gen::photon_emission_prob),
          py::arg("cooperativity"), py::arg("gamma_rad_s"), py::arg("window_s"),
          "Cavity-enhanced emission probability within the window.");
    m.def("single_photon_coefficients", &single_photon_dict, py::arg("eta_d"), py::arg("eta_f"),
          py::arg("p_phot"), py::arg("p_dark"), py::arg("eps_sq"), py::arg("corrected") = false,
          "Normalized weights and click probability of the single-click heralded state.");
    m.def("two_photon_coefficients", &two_photon_dict, py::arg("eta_d"), py::arg("eta_f"),
          py::arg("p_phot"), py::arg("p_dark"), py::arg("corrected") = false,
          "Normalized weights and click probability of the two-click heralded state.");

    m.def("default_config_json", [] { return config::to_json_text(config::RunConfig::defaults()); },
          "Default run configuration as a JSON document.");
    m.def("evaluate_json", &evaluate_json, py::arg("config_json"),
          "Evaluate the 'repeater' block of a configuration; returns a JSON result.");
    m.def("optimize_json", &optimize_json, py::arg("config_json"),
          "Optimize over the 'sweep' block; returns one JSON row per sweep family.");
    m.def("validate_json", &validate_json, py::arg("config_json"),
          "Monte-Carlo-check the analytic timing model per the 'validate' block.");
}
