#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cavrep/rate_model.hpp"

namespace cavrep::mc {

struct SimResult {
    double mean_s = 0.0;
    double std_error_s = 0.0;
    long trials = 0;
};

// Discrete-event simulation of the chain: parallel link generation with kept
// successes, pumping rounds with full restart on failure, swap levels with a
// global barrier per level, and parallel-manner restoration of a failed
// swap's inputs. Deterministic for a fixed seed.
SimResult simulate_chain(const rate::ChainModel& model, long trials, std::uint64_t seed);

// One trial with its time-ordered event log (for protocol-shape assertions).
struct TrialLog {
    double completion_time_s = 0.0;
    std::vector<std::pair<double, std::string>> events;
};
TrialLog simulate_one_logged(const rate::ChainModel& model, std::uint64_t seed);

struct ValidationRow {
    rate::RepeaterConfig config;
    double analytic_s = 0.0;
    double mc_mean_s = 0.0;
    double mc_std_error_s = 0.0;
    double ratio = 0.0; // analytic / MC
    bool within_band = false;
};

// Grid of analytic-vs-MC comparisons with the acceptance band [0.5, 2.0].
std::vector<ValidationRow> validation_rows(const std::vector<rate::RepeaterConfig>& grid,
                                           long trials, std::uint64_t seed,
                                           double band_lo = 0.5, double band_hi = 2.0);

} // namespace cavrep::mc
