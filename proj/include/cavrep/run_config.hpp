#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cavrep/optimizer.hpp"
#include "cavrep/rate_model.hpp"

namespace cavrep::config {

// Monte Carlo validation settings.
struct ValidateSpec {
    long trials = 400;
    std::uint64_t seed = 12345;
    int n_max = 3;
    int j_max = 2;
    double distance_km = 200.0;
    double cooperativity = 100.0;
    int qubits_per_station = 4;
    std::vector<gates::GateKind> gate_kinds = {gates::GateKind::Perfect, gates::GateKind::Gate1};
    std::vector<rate::Architecture> architectures = {rate::Architecture::Parallel,
                                                     rate::Architecture::Sequential};
    double band_lo = 0.5;
    double band_hi = 2.0;
};

// Full run configuration: a single-point repeater config, a sweep spec, and
// validation settings, all loadable from one JSON document with strict
// unknown-key rejection and defaults for missing keys.
struct RunConfig {
    rate::RepeaterConfig repeater; // for `rate`
    opt::SweepSpec sweep;          // for `sweep` / `compare`
    ValidateSpec validate;         // for `validate`
    bool all_cells = false;

    static RunConfig defaults();
};

// Parse a JSON document (text) into a RunConfig. Unknown keys anywhere raise
// ConfigError naming the offending key path; missing keys keep defaults.
RunConfig parse_run_config(const std::string& json_text);

// Load from a file path (ConfigError on I/O or parse failure).
RunConfig load_run_config(const std::string& path);

// Apply one `key=value` override with a dot-separated key path matching the
// JSON schema (e.g. "repeater.n=3", "sweep.distances_km=[100,200]").
void apply_override(RunConfig& cfg, const std::string& assignment);

// Serialized JSON view of the effective configuration (for --json output).
std::string to_json_text(const RunConfig& cfg);

} // namespace cavrep::config
