#include "cavrep/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cavrep/errors.hpp"

namespace cavrep::config {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
    throw ConfigError("configuration key '" + path + "': " + why);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

double as_number(const ojson& v, const std::string& path) {
    if (!v.is_number()) bad(path, "expected a number");
    return v.get<double>();
}

int as_int(const ojson& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<int>();
}

long as_long(const ojson& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    return v.get<long>();
}

std::uint64_t as_uint64(const ojson& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<std::uint64_t>(v.get<long long>());
    bad(path, "expected a non-negative integer");
}

bool as_bool(const ojson& v, const std::string& path) {
    if (!v.is_boolean()) bad(path, "expected a boolean");
    return v.get<bool>();
}

std::string as_string(const ojson& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a string");
    return v.get<std::string>();
}

std::vector<double> as_number_array(const ojson& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) bad(path, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<std::string> as_string_array(const ojson& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) bad(path, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

void parse_link(const ojson& obj, const std::string& prefix, gen::LinkParams& link) {
    if (!obj.is_object()) bad(prefix, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const std::string path = join(prefix, key);
        if (key == "cooperativity") link.cooperativity = as_number(value, path);
        else if (key == "gamma_rad_per_s") link.gamma_rad_s = as_number(value, path);
        else if (key == "eta_d") link.eta_d = as_number(value, path);
        else if (key == "l_att_km") link.l_att_km = as_number(value, path);
        else if (key == "r_dark_hz") link.r_dark_hz = as_number(value, path);
        else if (key == "tau_local_s") link.tau_local_s = as_number(value, path);
        else if (key == "c_fiber_km_per_s") link.c_fiber_km_s = as_number(value, path);
        else if (key == "free_space_collection") link.free_space_collection = as_number(value, path);
        else bad(path, "unknown key");
    }
}

void parse_repeater(const ojson& obj, const std::string& prefix, rate::RepeaterConfig& cfg) {
    if (!obj.is_object()) bad(prefix, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const std::string path = join(prefix, key);
        if (key == "n") cfg.n = as_int(value, path);
        else if (key == "j") cfg.j = as_int(value, path);
        else if (key == "variant") cfg.variant = states::variant_from_name(as_string(value, path));
        else if (key == "architecture")
            cfg.architecture = rate::architecture_from_name(as_string(value, path));
        else if (key == "qubits_per_station") cfg.qubits_per_station = as_int(value, path);
        else if (key == "scheme") cfg.scheme = gen::scheme_from_name(as_string(value, path));
        else if (key == "ion_two_photon") cfg.ion_two_photon = as_bool(value, path);
        else if (key == "gate") cfg.gate = gates::gate_kind_from_name(as_string(value, path));
        else if (key == "l_total_km") cfg.l_total_km = as_number(value, path);
        else if (key == "eps_sq") cfg.eps_sq = as_number(value, path);
        else if (key == "window_s") cfg.window_s = as_number(value, path);
        else if (key == "corrected") cfg.corrected = as_bool(value, path);
        else if (key == "p_sift") cfg.p_sift = as_number(value, path);
        else if (key == "min_secret_rate_hz") cfg.min_secret_rate_hz = as_number(value, path);
        else if (key == "link") parse_link(value, path, cfg.link);
        else bad(path, "unknown key");
    }
}

void parse_sweep(const ojson& obj, const std::string& prefix, opt::SweepSpec& spec) {
    if (!obj.is_object()) bad(prefix, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const std::string path = join(prefix, key);
        if (key == "distances_km") spec.distances_km = as_number_array(value, path);
        else if (key == "cooperativities") spec.cooperativities = as_number_array(value, path);
        else if (key == "qubits_per_station") spec.qubits_per_station = as_int(value, path);
        else if (key == "schemes") {
            spec.schemes.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.schemes.push_back(gen::scheme_from_name(s));
        } else if (key == "gates") {
            spec.gate_kinds.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.gate_kinds.push_back(gates::gate_kind_from_name(s));
        } else if (key == "n_min") spec.n_min = as_int(value, path);
        else if (key == "n_max") spec.n_max = as_int(value, path);
        else if (key == "j_min") spec.j_min = as_int(value, path);
        else if (key == "j_max") spec.j_max = as_int(value, path);
        else if (key == "architectures") {
            spec.architectures.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.architectures.push_back(rate::architecture_from_name(s));
        } else if (key == "variants") {
            spec.variants.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.variants.push_back(states::variant_from_name(s));
        } else if (key == "link") parse_link(value, path, spec.link_base);
        else if (key == "corrected") spec.corrected = as_bool(value, path);
        else if (key == "p_sift") spec.p_sift = as_number(value, path);
        else if (key == "min_secret_rate_hz") spec.min_secret_rate_hz = as_number(value, path);
        else bad(path, "unknown key");
    }
}

void parse_validate(const ojson& obj, const std::string& prefix, ValidateSpec& spec) {
    if (!obj.is_object()) bad(prefix, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        const std::string path = join(prefix, key);
        if (key == "trials") spec.trials = as_long(value, path);
        else if (key == "seed") spec.seed = as_uint64(value, path);
        else if (key == "n_max") spec.n_max = as_int(value, path);
        else if (key == "j_max") spec.j_max = as_int(value, path);
        else if (key == "distance_km") spec.distance_km = as_number(value, path);
        else if (key == "cooperativity") spec.cooperativity = as_number(value, path);
        else if (key == "qubits_per_station") spec.qubits_per_station = as_int(value, path);
        else if (key == "gates") {
            spec.gate_kinds.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.gate_kinds.push_back(gates::gate_kind_from_name(s));
        } else if (key == "architectures") {
            spec.architectures.clear();
            for (const std::string& s : as_string_array(value, path))
                spec.architectures.push_back(rate::architecture_from_name(s));
        } else if (key == "band_lo") spec.band_lo = as_number(value, path);
        else if (key == "band_hi") spec.band_hi = as_number(value, path);
        else bad(path, "unknown key");
    }
}

ojson link_to_json(const gen::LinkParams& link) {
    ojson o;
    o["cooperativity"] = link.cooperativity;
    o["gamma_rad_per_s"] = link.gamma_rad_s;
    o["eta_d"] = link.eta_d;
    o["l_att_km"] = link.l_att_km;
    o["r_dark_hz"] = link.r_dark_hz;
    o["tau_local_s"] = link.tau_local_s;
    o["c_fiber_km_per_s"] = link.c_fiber_km_s;
    o["free_space_collection"] = link.free_space_collection;
    return o;
}

ojson build_json(const RunConfig& cfg) {
    ojson root;
    ojson rep;
    rep["n"] = cfg.repeater.n;
    rep["j"] = cfg.repeater.j;
    rep["variant"] = states::variant_name(cfg.repeater.variant);
    rep["architecture"] = rate::architecture_name(cfg.repeater.architecture);
    rep["qubits_per_station"] = cfg.repeater.qubits_per_station;
    rep["scheme"] = gen::scheme_name(cfg.repeater.scheme);
    rep["ion_two_photon"] = cfg.repeater.ion_two_photon;
    rep["gate"] = gates::name(cfg.repeater.gate);
    rep["l_total_km"] = cfg.repeater.l_total_km;
    rep["eps_sq"] = cfg.repeater.eps_sq;
    rep["window_s"] = cfg.repeater.window_s;
    rep["corrected"] = cfg.repeater.corrected;
    rep["p_sift"] = cfg.repeater.p_sift;
    rep["min_secret_rate_hz"] = cfg.repeater.min_secret_rate_hz;
    rep["link"] = link_to_json(cfg.repeater.link);
    root["repeater"] = std::move(rep);

    ojson sweep;
    sweep["distances_km"] = cfg.sweep.distances_km;
    sweep["cooperativities"] = cfg.sweep.cooperativities;
    sweep["qubits_per_station"] = cfg.sweep.qubits_per_station;
    {
        std::vector<std::string> v;
        for (auto s : cfg.sweep.schemes) v.push_back(gen::scheme_name(s));
        sweep["schemes"] = v;
    }
    {
        std::vector<std::string> v;
        for (auto g : cfg.sweep.gate_kinds) v.push_back(gates::name(g));
        sweep["gates"] = v;
    }
    sweep["n_min"] = cfg.sweep.n_min;
    sweep["n_max"] = cfg.sweep.n_max;
    sweep["j_min"] = cfg.sweep.j_min;
    sweep["j_max"] = cfg.sweep.j_max;
    {
        std::vector<std::string> v;
        for (auto a : cfg.sweep.architectures) v.push_back(rate::architecture_name(a));
        sweep["architectures"] = v;
    }
    {
        std::vector<std::string> v;
        for (auto p : cfg.sweep.variants) v.push_back(states::variant_name(p));
        sweep["variants"] = v;
    }
    sweep["link"] = link_to_json(cfg.sweep.link_base);
    sweep["corrected"] = cfg.sweep.corrected;
    sweep["p_sift"] = cfg.sweep.p_sift;
    sweep["min_secret_rate_hz"] = cfg.sweep.min_secret_rate_hz;
    root["sweep"] = std::move(sweep);

    ojson val;
    val["trials"] = cfg.validate.trials;
    val["seed"] = cfg.validate.seed;
    val["n_max"] = cfg.validate.n_max;
    val["j_max"] = cfg.validate.j_max;
    val["distance_km"] = cfg.validate.distance_km;
    val["cooperativity"] = cfg.validate.cooperativity;
    val["qubits_per_station"] = cfg.validate.qubits_per_station;
    {
        std::vector<std::string> v;
        for (auto g : cfg.validate.gate_kinds) v.push_back(gates::name(g));
        val["gates"] = v;
    }
    {
        std::vector<std::string> v;
        for (auto a : cfg.validate.architectures) v.push_back(rate::architecture_name(a));
        val["architectures"] = v;
    }
    val["band_lo"] = cfg.validate.band_lo;
    val["band_hi"] = cfg.validate.band_hi;
    root["validate"] = std::move(val);

    root["all_cells"] = cfg.all_cells;
    return root;
}

RunConfig parse_json(const ojson& root) {
    if (!root.is_object()) throw ConfigError("configuration root must be a JSON object");
    RunConfig cfg = RunConfig::defaults();
    for (const auto& [key, value] : root.items()) {
        if (key == "repeater") parse_repeater(value, "repeater", cfg.repeater);
        else if (key == "sweep") parse_sweep(value, "sweep", cfg.sweep);
        else if (key == "validate") parse_validate(value, "validate", cfg.validate);
        else if (key == "all_cells") cfg.all_cells = as_bool(value, "all_cells");
        else bad(key, "unknown key");
    }
    return cfg;
}

} // namespace

RunConfig RunConfig::defaults() { return RunConfig{}; }

RunConfig parse_run_config(const std::string& json_text) {
    ojson root;
    try {
        root = ojson::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return parse_json(root);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must have the form key.path=value: " + assignment);
    const std::string key_path = assignment.substr(0, eq);
    const std::string value_text = assignment.substr(eq + 1);

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = key_path.find('.', start);
        if (dot == std::string::npos) {
            parts.push_back(key_path.substr(start));
            break;
        }
        parts.push_back(key_path.substr(start, dot - start));
        start = dot + 1;
    }
    for (const std::string& p : parts)
        if (p.empty()) throw ConfigError("override key path has an empty segment: " + key_path);

    ojson doc = build_json(cfg);
    ojson* node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object() || !node->contains(parts[i]))
            bad(key_path, "unknown key");
        node = &(*node)[parts[i]];
    }
    if (!node->is_object() || !node->contains(parts.back())) bad(key_path, "unknown key");

    ojson value;
    try {
        value = ojson::parse(value_text);
    } catch (const nlohmann::json::parse_error&) {
        value = value_text; // bare words are taken as strings
    }
    (*node)[parts.back()] = value;
    cfg = parse_json(doc);
}

std::string to_json_text(const RunConfig& cfg) { return build_json(cfg).dump(2) + "\n"; }

} // namespace cavrep::config
