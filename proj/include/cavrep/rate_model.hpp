#pragma once
#include <string>
#include <vector>

#include "cavrep/gates.hpp"
#include "cavrep/generation.hpp"
#include "cavrep/secret_key.hpp"
#include "cavrep/states.hpp"

namespace cavrep::rate {

enum class Architecture { Parallel, Sequential };
std::string architecture_name(Architecture a);
Architecture architecture_from_name(const std::string& s);

// Full description of one repeater configuration to evaluate.
struct RepeaterConfig {
    int n = 2;                      // swap levels, 0..5
    int j = 0;                      // pumping rounds, 0..2
    states::PurifyVariant variant = states::PurifyVariant::Standard;
    Architecture architecture = Architecture::Parallel;
    int qubits_per_station = 2;     // 2 or 4
    gen::Scheme scheme = gen::Scheme::TwoPhoton;
    bool ion_two_photon = true;     // detection sub-scheme for the ion-trap source
    gates::GateKind gate = gates::GateKind::Gate1;
    double l_total_km = 1000.0;
    gen::LinkParams link;           // l0_km is derived from l_total_km and n
    double eps_sq = 0.01;           // single-photon excitation probability
    double window_s = 1e-6;         // emission/detection window T
    bool corrected = false;         // appendix-bookkeeping sensitivity flag
    double p_sift = 1.0;
    double min_secret_rate_hz = 1e-6; // viability floor used by the optimizer

    void validate() const; // throws ConfigError
    double l0_km() const { return l_total_km / static_cast<double>(1 << n); }
    int stations() const { return (1 << n) + 1; }
    int parallel_attempts() const { return qubits_per_station / 2; } // m
};

// The "2j independent binomial events" decomposition of a pumped link:
// per-slot effective success p1, per-round purification-completion products
// p2[i] (i = 0..j-1) and p3[i] (i = 1..j-1), the per-round purification
// success probabilities, and the fidelity trajectory F0..Fj.
struct PumpingPlan {
    int m_slots = 1;
    int j = 0;
    double p0 = 0.0;
    double p1 = 0.0;
    std::vector<double> p2;
    std::vector<double> p3;
    std::vector<double> p_pur;
    std::vector<double> fidelities;
    states::Matrix4 pumped_state = states::maximally_mixed();
};

// Builds the pumping plan for one link with `m_slots` parallel generation
// attempts. Gate noise and heralded-gate success enter each purification
// round; a vanishing heralding probability raises InternalError, while a
// zero gate success probability simply yields zero round probabilities
// (the evaluation reports an unreachable configuration as zero rate).
PumpingPlan pumping_plan(const states::Matrix4& gen_state, double p0, int m_slots, int j,
                         const gates::GateModel& gate, states::PurifyVariant variant);

// Characteristic durations of one configuration (seconds).
struct Durations {
    double tau0 = 0.0;      // one generation attempt: l0/c + tau_local
    double tau_pur = 0.0;   // one purification round: l0/c + tau_c
    double tau_c = 0.0;     // entangling-gate time
    double l0_over_c = 0.0; // one-way classical communication over a link
};

// Expected time for `l` of `m` parallel generation attempts to all succeed.
double tau_pair(int l, int m, double p0, double l0_km, double c_fiber_km_s, double tau_local_s);

// Direct (non-binomial-decomposed) expected time of one pumped link; used as
// the crude lower-bound estimate the decomposed formula is checked against.
double tau_pumped_link_direct(const PumpingPlan& plan, const Durations& d);

// Expected time until all `links` pumped links of a parallel block are ready.
double tau_link_block(const PumpingPlan& plan, int links, const Durations& d);

// Parallel-architecture link completion time for 2^n links.
double tau_link_parallel(const PumpingPlan& plan, int n, const Durations& d);

// Deterministic-gate swap time after links are ready.
double tau_swap_deterministic(int n, double l0_km, double c_fiber_km_s, double tau_c_s);

// Nested waiting-factor ladder of the probabilistic-swap recursion.
// p_is_pswap selects the base case used when the recursion bottoms out at
// level == i (1 for the swap-ladder argument, Z(2,2,p) otherwise).
double ztilde(int level, int i, double p_swap, double p, bool p_is_pswap);

// Total expected distribution time of a parallel repeater with heralded
// (probabilistic) swaps, split into link-like and swap-communication parts.
struct ProbSwapTime {
    double link_part = 0.0;
    double swap_part = 0.0;
    double total() const { return link_part + swap_part; }
};
ProbSwapTime tau_swap_probabilistic(const PumpingPlan& plan, int n, double p_swap,
                                    const Durations& d);

// Sequential-architecture per-level swap times (heralded gates), including
// the parallel-manner restoration of failed sections.
std::vector<double> tau_swap_sequential_levels(const PumpingPlan& plan, int n, double p_swap,
                                               const Durations& d);

struct TimingBreakdown {
    double tau_link_s = 0.0;
    double tau_swap_total_s = 0.0;
    double distribution_time_s = 0.0;
    std::vector<double> per_level_swap_s;
};

// Reduced description of the chain consumed by the Monte Carlo validator.
struct ChainModel {
    int n = 0;
    int j = 0;
    double p0 = 0.0;
    int m_slots = 1;                 // parallel attempts per link (parallel arch)
    std::vector<double> p_pur;       // per-round purification success
    double p_swap = 1.0;
    Architecture architecture = Architecture::Parallel;
    Durations durations;
};

struct Analysis {
    RepeaterConfig config;
    double p0 = 0.0;
    int m_slots = 1;
    PumpingPlan pump;
    double p_swap = 1.0;
    bool probabilistic_swap = false;
    Durations durations;
    TimingBreakdown timing;
    double distribution_rate_hz = 0.0;
    double final_fidelity = 0.0;
    states::Matrix4 final_state = states::maximally_mixed();
    secret::RateReport report;
};

// Generation state + per-attempt success for the configured scheme.
gen::GenerationAttempt generation_attempt(const RepeaterConfig& cfg);

// Fidelity propagation only: generation state -> j pumping rounds -> n
// pairwise self-swaps; returns the Phi+ weight and the final state.
std::pair<double, states::Matrix4> final_fidelity(const RepeaterConfig& cfg);

// Full evaluation: timing, rates, fidelity, secret-key report.
Analysis evaluate(const RepeaterConfig& cfg);

// The chain model matching evaluate()'s timing branch, for MC validation.
ChainModel chain_model(const Analysis& analysis);

} // namespace cavrep::rate
