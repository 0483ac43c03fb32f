#include "cavrep/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cavrep/errors.hpp"
#include "cavrep/rng.hpp"

namespace cavrep::mc {

namespace {

void validate_model(const rate::ChainModel& m) {
    if (m.n < 0) throw ConfigError("swap levels must be non-negative");
    if (!(m.p0 > 0.0 && m.p0 <= 1.0))
        throw ConfigError("per-attempt success probability must lie in (0,1]");
    if (!(m.p_swap > 0.0 && m.p_swap <= 1.0))
        throw ConfigError("swap success probability must lie in (0,1]");
    if (static_cast<int>(m.p_pur.size()) != m.j)
        throw ConfigError("pumping round probabilities do not match the round count");
    for (double p : m.p_pur)
        if (!(p > 0.0 && p <= 1.0))
            throw ConfigError("purification success probabilities must lie in (0,1]");
    if (m.j >= 1 && m.m_slots < 2)
        throw ConfigError("entanglement pumping needs at least two parallel attempt slots");
    if (m.m_slots < 1) throw ConfigError("need at least one parallel attempt slot");
}

long rounds_until(SplitMix64& rng, int need, int slots, double p) {
    int k = 0;
    long rounds = 0;
    while (k < need) {
        ++rounds;
        const int tosses = slots - k;
        for (int i = 0; i < tosses; ++i)
            if (rng.bernoulli(p)) ++k;
    }
    return rounds;
}

// Elapsed time to complete one pumped link using `slots` parallel generation
// attempts: initial two pairs from all slots, each later round's fresh pair
// from the remaining slots, full restart when a pumping round fails.
double link_time(SplitMix64& rng, const rate::ChainModel& m, int slots) {
    const double tau0 = m.durations.tau0;
    const double tau_pur = m.durations.tau_pur;
    if (m.j == 0) return static_cast<double>(rounds_until(rng, 1, slots, m.p0)) * tau0;
    double t = 0.0;
    for (;;) {
        t += static_cast<double>(rounds_until(rng, 2, slots, m.p0)) * tau0;
        bool ok = true;
        for (int r = 0; r < m.j; ++r) {
            if (r >= 1) t += static_cast<double>(rounds_until(rng, 1, slots - 1, m.p0)) * tau0;
            t += tau_pur;
            if (!rng.bernoulli(m.p_pur[r])) {
                ok = false;
                break;
            }
        }
        if (ok) return t;
    }
}

double swap_comm(const rate::ChainModel& m, int level) {
    return static_cast<double>(1 << (level - 1)) * m.durations.l0_over_c + m.durations.tau_c;
}

// Duration of rebuilding an entangled pair spanning 2^level links from
// scratch: links and child subtrees in parallel, swap retried after parallel
// restoration of both children.
double subtree_time(SplitMix64& rng, const rate::ChainModel& m, int level) {
    if (level == 0) return link_time(rng, m, m.m_slots);
    double d = std::max(subtree_time(rng, m, level - 1), subtree_time(rng, m, level - 1));
    const double comm = swap_comm(m, level);
    for (;;) {
        d += comm;
        if (rng.bernoulli(m.p_swap)) return d;
        d += std::max(subtree_time(rng, m, level - 1), subtree_time(rng, m, level - 1));
    }
}

double simulate_trial(SplitMix64& rng, const rate::ChainModel& m, TrialLog* log) {
    double t = 0.0;
    if (m.architecture == rate::Architecture::Sequential && m.n >= 1) {
        const int half = 1 << (m.n - 1);
        double first = 0.0, second = 0.0;
        for (int i = 0; i < half; ++i)
            first = std::max(first, link_time(rng, m, 2 * m.m_slots));
        for (int i = 0; i < half; ++i)
            second = std::max(second, link_time(rng, m, 2 * m.m_slots - 1));
        t = first + second;
    } else {
        const int links = 1 << m.n;
        for (int i = 0; i < links; ++i) t = std::max(t, link_time(rng, m, m.m_slots));
    }
    if (log) log->events.emplace_back(t, "links_ready");

    for (int level = 1; level <= m.n; ++level) {
        const double comm = swap_comm(m, level);
        const int swaps = 1 << (m.n - level);
        double level_done = t;
        for (int s = 0; s < swaps; ++s) {
            double ts = t; // global barrier: every swap starts when the level opens
            for (;;) {
                ts += comm;
                if (rng.bernoulli(m.p_swap)) break;
                ts += std::max(subtree_time(rng, m, level - 1),
                               subtree_time(rng, m, level - 1));
            }
            level_done = std::max(level_done, ts);
        }
        t = level_done;
        if (log) log->events.emplace_back(t, "swap_level_" + std::to_string(level) + "_done");
    }
    if (log) {
        log->events.emplace_back(t, "done");
        log->completion_time_s = t;
    }
    return t;
}

} // namespace

SimResult simulate_chain(const rate::ChainModel& model, long trials, std::uint64_t seed) {
    validate_model(model);
    if (trials < 2) throw ConfigError("need at least two trials for a standard error");
    double sum = 0.0, sum_sq = 0.0;
    for (long trial = 0; trial < trials; ++trial) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(trial));
        const double t = simulate_trial(rng, model, nullptr);
        sum += t;
        sum_sq += t * t;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = (sum_sq / n - mean * mean) * n / (n - 1.0);
    return {mean, std::sqrt(std::max(var, 0.0) / n), trials};
}

TrialLog simulate_one_logged(const rate::ChainModel& model, std::uint64_t seed) {
    validate_model(model);
    TrialLog log;
    SplitMix64 rng = SplitMix64::stream(seed, 0);
    simulate_trial(rng, model, &log);
    return log;
}

std::vector<ValidationRow> validation_rows(const std::vector<rate::RepeaterConfig>& grid,
                                           long trials, std::uint64_t seed, double band_lo,
                                           double band_hi) {
    std::vector<ValidationRow> rows;
    rows.reserve(grid.size());
    std::uint64_t row_index = 0;
    for (const rate::RepeaterConfig& cfg : grid) {
        const rate::Analysis analysis = rate::evaluate(cfg);
        const rate::ChainModel model = rate::chain_model(analysis);
        const SimResult sim = simulate_chain(model, trials, seed + row_index);
        ValidationRow row;
        row.config = cfg;
        row.analytic_s = analysis.timing.distribution_time_s;
        row.mc_mean_s = sim.mean_s;
        row.mc_std_error_s = sim.std_error_s;
        row.ratio = sim.mean_s > 0.0 ? row.analytic_s / sim.mean_s : 0.0;
        row.within_band = row.ratio >= band_lo && row.ratio <= band_hi;
        rows.push_back(row);
        ++row_index;
    }
    return rows;
}

} // namespace cavrep::mc
