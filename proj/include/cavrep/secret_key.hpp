#pragma once

namespace cavrep::secret {

// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p); h(0) = h(1) = 0.
// Throws ConfigError for p outside [0,1].
double binary_entropy(double p);

// Werner-state QBER for a pair of fidelity F: eps = 2(1-F)/3.
double qber_from_fidelity(double fidelity);

// Asymptotic one-way six-state secret fraction for a Werner pair of fidelity
// F, clamped at zero below the positive-key threshold (which sits near
// 1 - F ~ 0.189).
double secret_fraction(double fidelity);

// Fidelity at which the secret fraction crosses zero, located by bisection;
// returned as the threshold value of F.
double threshold_fidelity();

struct RateReport {
    double final_fidelity = 0.0;
    double distribution_rate_hz = 0.0;
    double secret_fraction = 0.0;
    double secret_key_rate_hz = 0.0;
    double normalized_rate_hz = 0.0; // secret rate per repeater station
    int stations = 0;
};

// Assemble the report: secret rate = distribution rate * p_sift * fraction,
// normalized by the station count 2^n + 1.
RateReport build_report(int n_swap_levels, double fidelity, double distribution_rate_hz,
                        double p_sift = 1.0);

} // namespace cavrep::secret
