#include "cavrep/secret_key.hpp"

#include <cmath>

#include "cavrep/errors.hpp"

namespace cavrep::secret {

namespace {

// One-way six-state secret fraction before clamping at zero.
double raw_fraction(double eps) {
    const double inner = (1.0 - 1.5 * eps) / (1.0 - eps);
    return 1.0 - binary_entropy(eps) - eps - (1.0 - eps) * binary_entropy(inner);
}

} // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("entropy argument outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double qber_from_fidelity(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ConfigError("fidelity outside [0,1]");
    return 2.0 * (1.0 - fidelity) / 3.0;
}

double secret_fraction(double fidelity) {
    const double eps = qber_from_fidelity(fidelity);
    if (eps >= 2.0 / 3.0) return 0.0;
    const double f = raw_fraction(eps);
    return f > 0.0 ? f : 0.0;
}

double threshold_fidelity() {
    // raw_fraction is monotone in fidelity on this bracket: negative at the
    // low end, positive at the high end.
    double lo = 0.75, hi = 0.95;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (raw_fraction(qber_from_fidelity(mid)) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

RateReport build_report(int n_swap_levels, double fidelity, double distribution_rate_hz,
                        double p_sift) {
    if (n_swap_levels < 0) throw ConfigError("nesting level must be non-negative");
    RateReport r;
    r.final_fidelity = fidelity;
    r.distribution_rate_hz = distribution_rate_hz;
    r.secret_fraction = secret_fraction(fidelity);
    r.secret_key_rate_hz = distribution_rate_hz * p_sift * r.secret_fraction;
    r.stations = (1 << n_swap_levels) + 1;
    r.normalized_rate_hz = r.secret_key_rate_hz / static_cast<double>(r.stations);
    return r;
}

} // namespace cavrep::secret
