#include "cavrep/waiting.hpp"

#include <cmath>
#include <vector>

#include "cavrep/errors.hpp"
#include "cavrep/rng.hpp"

namespace cavrep::waiting {

namespace {

void validate(int l, int m, double p) {
    if (l < 0) throw ConfigError("required success count must be non-negative");
    if (m < 1) throw ConfigError("slot count must be at least 1");
    if (l > m) throw ConfigError("cannot require more successes than slots");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("per-slot probability must lie in (0, 1]");
}

double binom_coeff(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

double binom_pmf(int n, int k, double p, double q) {
    return binom_coeff(n, k) * std::pow(p, k) * std::pow(q, n - k);
}

} // namespace

double z_factor(int l, int m, double p) {
    validate(l, m, p);
    if (l == 0) return 0.0;
    const double q = 1.0 - p;
    // E[k] = expected remaining rounds once k successes are already held.
    std::vector<double> E(l + 1, 0.0);
    for (int k = l - 1; k >= 0; --k) {
        const int s = m - k; // slots still being tossed
        double acc = 1.0;
        for (int j = 1; j <= s; ++j) {
            const int kk = std::min(k + j, l);
            if (kk < l) acc += binom_pmf(s, j, p, q) * E[kk];
        }
        E[k] = acc / (1.0 - std::pow(q, s));
    }
    return E[0];
}

bool has_closed_form(int l, int m) {
    if (l == 0 || l == 1 || l == m) return true;
    if (m == 3 && l == 2) return true;
    if (m == 4 && (l == 2 || l == 3)) return true;
    return false;
}

double z_closed_form(int l, int m, double p) {
    validate(l, m, p);
    const double q = 1.0 - p;
    if (l == 0) return 0.0;
    if (l == 1) return 1.0 / (1.0 - std::pow(q, m));
    if (l == m) {
        if (m == 2) return (3.0 - 2.0 * p) / (p * (2.0 - p));
        return z_all_slots_alternating(m, p);
    }
    if (m == 3 && l == 2)
        return (5.0 - (7.0 - 3.0 * p) * p) / ((2.0 - p) * p * (3.0 + (p - 3.0) * p));
    if (m == 4 && l == 2)
        return (-7.0 + p * (15.0 + p * (4.0 * p - 13.0))) /
               ((p - 2.0) * p * (3.0 + (p - 3.0) * p) * (2.0 + (p - 2.0) * p));
    if (m == 4 && l == 3)
        return (-13.0 + p * (33.0 + p * (22.0 * p - 6.0 * p * p - 37.0))) /
               ((p - 2.0) * p * (3.0 + (p - 3.0) * p) * (2.0 + (p - 2.0) * p));
    throw ConfigError("no closed form implemented for this (successes, slots) pair");
}

double z_all_slots_alternating(int m, double p) {
    validate(m, m, p);
    const double q = 1.0 - p;
    double acc = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        acc += sign * binom_coeff(m, k) / (1.0 - std::pow(q, k));
    }
    return acc;
}

OracleResult z_oracle(int l, int m, double p, long trials, std::uint64_t seed) {
    validate(l, m, p);
    if (trials < 1) throw ConfigError("oracle needs at least one trial");
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
        int k = 0;
        long rounds = 0;
        while (k < l) {
            ++rounds;
            const int s = m - k;
            for (int i = 0; i < s; ++i)
                if (rng.bernoulli(p)) ++k;
        }
        const double r = static_cast<double>(rounds);
        sum += r;
        sum_sq += r * r;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = (sum_sq / n - mean * mean) * n / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

} // namespace cavrep::waiting
