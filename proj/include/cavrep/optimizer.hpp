#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cavrep/rate_model.hpp"

namespace cavrep::opt {

// Discrete/continuous search space for sweeps.
struct SweepSpec {
    std::vector<double> distances_km = {1000.0};
    std::vector<double> cooperativities = {100.0};
    int qubits_per_station = 4;
    std::vector<gen::Scheme> schemes = {gen::Scheme::TwoPhoton, gen::Scheme::OnePhoton};
    std::vector<gates::GateKind> gate_kinds = {gates::GateKind::Gate1, gates::GateKind::Gate2};
    int n_min = 0, n_max = 5;
    int j_min = 0, j_max = 2;
    std::vector<rate::Architecture> architectures = {rate::Architecture::Parallel,
                                                     rate::Architecture::Sequential};
    std::vector<states::PurifyVariant> variants = {states::PurifyVariant::Standard,
                                                   states::PurifyVariant::Modified};
    gen::LinkParams link_base;
    bool corrected = false;
    double p_sift = 1.0;
    double min_secret_rate_hz = 1e-6;

    void validate() const;
};

struct InnerResult {
    double window_s = 0.0;
    double eps_sq = 0.0;
    double normalized_rate_hz = 0.0;
    int iterations = 0;
};

// Continuous optimization of (T, eps^2) for a fixed discrete configuration:
// deterministic coarse log-grid scan followed by Nelder-Mead polish in log
// space. Objective = normalized secret rate, zeroed below the viability
// floor cfg.min_secret_rate_hz. Returns a zero-rate result when every probed
// point is below threshold.
InnerResult optimize_inner(const rate::RepeaterConfig& cfg);

// Saturation scale of the emission probability: optimization upper bound for T.
double window_upper_bound_s(const rate::RepeaterConfig& cfg);

struct CellResult {
    rate::RepeaterConfig config;
    InnerResult inner;
};

struct OptimumRecord {
    double distance_km = 0.0;
    double cooperativity = 0.0;
    gen::Scheme scheme = gen::Scheme::TwoPhoton;
    gates::GateKind gate = gates::GateKind::Gate1;
    rate::RepeaterConfig best_config;
    rate::Analysis best_analysis;
    InnerResult best_inner;
    std::vector<CellResult> cells; // every evaluated grid cell
};

// Exhaustive search over (n, j, variant, architecture) per
// (distance x cooperativity x scheme x gate) family. Ties break toward
// smaller n, then smaller j, then parallel architecture, then standard
// variant.
std::vector<OptimumRecord> optimize_grid(const SweepSpec& spec);

// optimize_grid plus the ion-trap and perfect-gate baseline families,
// row-ranked per (distance, cooperativity).
struct CompareRow {
    double distance_km = 0.0;
    double cooperativity = 0.0;
    std::vector<OptimumRecord> ranked; // descending normalized rate
};
std::vector<CompareRow> compare_schemes(const SweepSpec& spec);

} // namespace cavrep::opt
