#pragma once
#include <cstdint>

namespace cavrep::waiting {

// Expected number of simultaneous-toss rounds needed to collect at least l
// successes from m slots, where successful slots are kept and only the
// remaining slots are re-tossed (per-slot success probability p).
//
// Computed by the absorbing-Markov-chain expectation over the number of
// successes already collected; numerically stable for any (l, m, p).
// Conventions: Z(0, m, p) = 0; Z(l, m, 1) = 1 for l >= 1.
// Throws ConfigError for invalid queries (l < 0, m < 1, l > m, p outside (0,1]).
double z_factor(int l, int m, double p);

// Closed-form rational expressions for the small cases (every (l,m) with
// m <= 4, plus the all-slots case at any m via the alternating sum). Used to
// cross-validate the Markov engine; throws ConfigError when no closed form
// is implemented for (l, m).
bool has_closed_form(int l, int m);
double z_closed_form(int l, int m, double p);

// Inclusion-exclusion alternating sum for the all-slots case Z(m, m, p).
// Exact, but numerically unstable for large m with small p; exposed for
// validation only (the engine above is the production path).
double z_all_slots_alternating(int m, double p);

struct OracleResult {
    double mean;
    double std_error;
};

// Literal keep-successes / re-toss-failures simulation of the waiting time.
// Deterministic for fixed seed; per-trial streams derived from (seed, trial).
OracleResult z_oracle(int l, int m, double p, long trials, std::uint64_t seed);

} // namespace cavrep::waiting
