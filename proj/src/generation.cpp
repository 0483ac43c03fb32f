#include "cavrep/generation.hpp"

#include <cmath>

#include "cavrep/errors.hpp"

namespace cavrep::gen {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
}

} // namespace

void LinkParams::validate() const {
    require(cooperativity > 0.0, "cooperativity must be positive");
    require(gamma_rad_s > 0.0, "gamma must be positive");
    require(eta_d > 0.0 && eta_d <= 1.0, "detector efficiency must lie in (0, 1]");
    require(l0_km > 0.0, "elementary link length must be positive");
    require(l_att_km > 0.0, "attenuation length must be positive");
    require(r_dark_hz >= 0.0, "dark-count rate must be non-negative");
    require(tau_local_s >= 0.0, "local operation time must be non-negative");
    require(c_fiber_km_s > 0.0, "fiber signal speed must be positive");
    require(free_space_collection > 0.0 && free_space_collection <= 1.0,
            "free-space collection efficiency must lie in (0, 1]");
}

double LinkParams::fiber_transmission() const { return std::exp(-l0_km / (2.0 * l_att_km)); }

double LinkParams::eta() const { return eta_d * fiber_transmission(); }

double LinkParams::dark_count_prob(double window_s) const {
    return 1.0 - std::exp(-r_dark_hz * window_s);
}

double photon_emission_prob(double cooperativity, double gamma_rad_s, double window_s) {
    require(window_s > 0.0, "emission window must be positive");
    require(cooperativity > 0.0, "cooperativity must be positive");
    const double x = 4.0 * cooperativity;
    return (x / (1.0 + x)) * (1.0 - std::exp(-gamma_rad_s * (1.0 + x) * window_s));
}

double photon_emission_prob(const LinkParams& p, double window_s) {
    return photon_emission_prob(p.cooperativity, p.gamma_rad_s, window_s);
}

double ion_collection_prob(double collection, double gamma_rad_s, double window_s) {
    require(window_s > 0.0, "emission window must be positive");
    require(collection > 0.0 && collection <= 1.0, "collection efficiency must lie in (0, 1]");
    return collection * (1.0 - std::exp(-gamma_rad_s * window_s));
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::OnePhoton: return "one_photon";
        case Scheme::TwoPhoton: return "two_photon";
        case Scheme::IonTrap: return "ion_trap";
    }
    throw InternalError("unhandled scheme");
}

Scheme scheme_from_name(const std::string& s) {
    if (s == "one_photon") return Scheme::OnePhoton;
    if (s == "two_photon") return Scheme::TwoPhoton;
    if (s == "ion_trap") return Scheme::IonTrap;
    throw ConfigError("unknown generation scheme: " + s);
}

SinglePhotonCoefficients single_photon_coefficients(double ed, double ef, double P, double Pd,
                                                    double x, bool corrected) {
    require(ed > 0.0 && ed <= 1.0, "detector efficiency must lie in (0, 1]");
    require(ef > 0.0 && ef <= 1.0, "fiber transmission must lie in (0, 1]");
    require(P >= 0.0 && P <= 1.0, "emission probability must lie in [0, 1]");
    require(Pd >= 0.0 && Pd < 1.0, "dark-count probability must lie in [0, 1)");
    require(x > 0.0 && x < 1.0, "excitation probability must lie in (0, 1)");
    const double e2 = ed * ef;
    // Single-click event bookkeeping: each term is one way a lone detector
    // click can arise (signal photon, dark count, or lost-photon branches).
    const double f1n = 2.0 * e2 * P * x * (1.0 - x) * (1.0 - Pd) +
                       2.0 * ef * (1.0 - ed) * P * x * (1.0 - x) * Pd * (1.0 - Pd) +
                       0.5 * e2 * P * x * x * (1.0 - P) * (1.0 - Pd) +
                       2.0 * (1.0 - ef) * P * x * (1.0 - x) * Pd * (1.0 - Pd) +
                       (1.0 - e2) * P * x * x * (1.0 - P) * Pd * (1.0 - Pd) +
                       (1.0 - x) * x * (1.0 - P) * Pd * (1.0 - Pd) +
                       0.5 * x * (1.0 - P) * (1.0 - P) * Pd * (1.0 - Pd);
    const double a1n = 0.5 * x * (1.0 - P) * (1.0 - P) * Pd * (1.0 - Pd);
    const double b1n = 0.5 * e2 * P * x * x * (1.0 - P) * (1.0 - Pd) +
                       2.0 * (1.0 - ef) * P * x * (1.0 - x) * Pd * (1.0 - Pd) +
                       (1.0 - e2) * P * x * x * (1.0 - P) * Pd * (1.0 - Pd) +
                       (1.0 - x) * x * (1.0 - P) * Pd * (1.0 - Pd) +
                       0.5 * x * (1.0 - P) * (1.0 - P) * Pd * (1.0 - Pd) +
                       2.0 * ef * (1.0 - ed) * P * x * (1.0 - x) * Pd * (1.0 - Pd);
    const double at1n = 2.0 * (1.0 - x) * (1.0 - x) * Pd * (1.0 - Pd) +
                        2.0 * (1.0 - x) * x * (1.0 - P) * Pd * (1.0 - Pd);
    // Last term: both emitters emit and both photons are detected, which
    // still yields a single click on non-number-resolving detectors. Needed
    // for the success probability to equal the sum of event weights.
    const double bt1n = e2 * P * x * x * (1.0 - P) * (1.0 - Pd) +
                        2.0 * (1.0 - e2) * P * x * x * (1.0 - P) * Pd * (1.0 - Pd) +
                        2.0 * (1.0 - e2) * (1.0 - e2) * P * P * x * x * Pd * (1.0 - Pd) +
                        2.0 * (1.0 - e2) * e2 * P * P * x * x * (1.0 - Pd) * (1.0 - Pd) +
                        ed * ed * ef * ef * P * P * x * x * (1.0 - Pd) * (1.0 - Pd);
    const double sum = f1n + 2.0 * a1n + b1n + at1n + bt1n;
    if (sum <= 0.0) throw ConfigError("single-click probability vanished for these parameters");
    const double p1c_printed = 2.0 * e2 * P * x * (1.0 - P * x) * (1.0 - Pd) +
                               (2.0 * e2 - e2 * e2) * P * P * x * x +
                               2.0 * (1.0 - x * P) * (1.0 - x * P) * Pd * (1.0 - Pd) +
                               2.0 * (1.0 - e2) * (1.0 - e2) * P * P * x * x * Pd * (1.0 - Pd) +
                               4.0 * (1.0 - e2) * P * x * (1.0 - x * P) * Pd * (1.0 - Pd);
    SinglePhotonCoefficients c;
    c.f1 = f1n / sum;
    c.a1 = a1n / sum;
    c.b1 = b1n / sum;
    c.at1 = at1n / sum;
    c.bt1 = bt1n / sum;
    c.num_sum = sum;
    c.p_click = corrected ? sum : p1c_printed;
    return c;
}

TwoPhotonCoefficients two_photon_coefficients(double ed, double ef, double P, double Pd,
                                              bool corrected) {
    require(ed > 0.0 && ed <= 1.0, "detector efficiency must lie in (0, 1]");
    require(ef > 0.0 && ef <= 1.0, "fiber transmission must lie in (0, 1]");
    require(P >= 0.0 && P <= 1.0, "emission probability must lie in [0, 1]");
    require(Pd >= 0.0 && Pd < 1.0, "dark-count probability must lie in [0, 1)");
    const double e2 = ed * ef;
    const double f2n = 0.5 * ed * ed * ef * ef * P * P +
                       ed * (1.0 - ed) * ef * ef * Pd * P * P +
                       ef * ef * (1.0 - ed) * (1.0 - ed) * P * P * Pd * Pd +
                       Pd * Pd * (1.0 - P) * (1.0 - P) +
                       ed * (1.0 - ef) * ef * Pd * P * P + e2 * Pd * P * (1.0 - P) +
                       (1.0 - ef) * (1.0 - ef) * P * P * Pd * Pd +
                       2.0 * ef * (1.0 - ed) * (1.0 - ef) * P * P * Pd * Pd +
                       2.0 * (1.0 - e2) * P * (1.0 - P) * Pd * Pd;
    const double a2n = ed * (1.0 - ef) * ef * Pd * P * P + Pd * Pd * (1.0 - P) * (1.0 - P) +
                       e2 * Pd * P * (1.0 - P) + (1.0 - ef) * (1.0 - ef) * P * P * Pd * Pd +
                       2.0 * ef * (1.0 - ed) * (1.0 - ef) * P * P * Pd * Pd +
                       2.0 * (1.0 - e2) * P * (1.0 - P) * Pd * Pd +
                       ed * (1.0 - ed) * ef * ef * Pd * P * P +
                       ef * ef * (1.0 - ed) * (1.0 - ed) * P * P * Pd * Pd;
    const double b2n = a2n + ed * (1.0 - ed) * ef * ef * Pd * P * P +
                       ef * ef * (1.0 - ed) * (1.0 - ed) * P * P * Pd * Pd;
    const double sum = f2n + 2.0 * a2n + b2n;
    if (sum <= 0.0) throw ConfigError("two-click probability vanished for these parameters");
    const double prefactor = (1.0 - Pd) * (1.0 - Pd);
    const double bracket_printed = 0.5 * ed * ed * ef * ef * P * P +
                                   4.0 * e2 * (1.0 - e2) * Pd * P * P +
                                   4.0 * Pd * Pd * (1.0 - Pd) * (1.0 - Pd) +
                                   4.0 * e2 * Pd * P * (1.0 - P) +
                                   4.0 * (1.0 - e2) * (1.0 - e2) * P * P * Pd * Pd +
                                   8.0 * (1.0 - e2) * P * (1.0 - P) * Pd * Pd;
    TwoPhotonCoefficients c;
    c.f2 = f2n / sum;
    c.a2 = a2n / sum;
    c.b2 = b2n / sum;
    c.num_sum = sum;
    c.p_click = prefactor * (corrected ? sum : bracket_printed);
    return c;
}

namespace {

states::Matrix4 single_photon_state(const SinglePhotonCoefficients& c) {
    using namespace states;
    // After the heralding rotation the dominant component sits on Phi+; the
    // two residual classical errors land on |01><01| and |10><10|.
    Matrix4 rho = c.f1 * bell_state(Bell::PhiPlus) + c.a1 * bell_state(Bell::PsiPlus) +
                  c.a1 * bell_state(Bell::PsiMinus) + c.b1 * bell_state(Bell::PhiMinus);
    rho(1, 1) += c.at1;
    rho(2, 2) += c.bt1;
    return 0.5 * (rho + rho.adjoint());
}

states::Matrix4 two_photon_state(const TwoPhotonCoefficients& c) {
    using namespace states;
    return bell_diagonal(c.f2, c.b2, c.a2, c.a2);
}

} // namespace

GenerationAttempt generate_one_photon(const LinkParams& p, double eps_sq, double window_s,
                                      bool corrected) {
    p.validate();
    const double pphot = photon_emission_prob(p, window_s);
    const SinglePhotonCoefficients c = single_photon_coefficients(
        p.eta_d, p.fiber_transmission(), pphot, p.dark_count_prob(window_s), eps_sq, corrected);
    return {single_photon_state(c), c.p_click, window_s, eps_sq};
}

GenerationAttempt generate_two_photon(const LinkParams& p, double window_s, bool corrected) {
    p.validate();
    const double pphot = photon_emission_prob(p, window_s);
    const TwoPhotonCoefficients c = two_photon_coefficients(
        p.eta_d, p.fiber_transmission(), pphot, p.dark_count_prob(window_s), corrected);
    return {two_photon_state(c), c.p_click, window_s, 0.0};
}

GenerationAttempt generate_ion_trap(const LinkParams& p, bool two_photon, double eps_sq,
                                    double window_s, bool corrected) {
    p.validate();
    const double pphot = ion_collection_prob(p.free_space_collection, p.gamma_rad_s, window_s);
    const double pd = p.dark_count_prob(window_s);
    const double ef = p.fiber_transmission();
    if (two_photon) {
        const TwoPhotonCoefficients c = two_photon_coefficients(p.eta_d, ef, pphot, pd, corrected);
        return {two_photon_state(c), c.p_click, window_s, 0.0};
    }
    const SinglePhotonCoefficients c =
        single_photon_coefficients(p.eta_d, ef, pphot, pd, eps_sq, corrected);
    return {single_photon_state(c), c.p_click, window_s, eps_sq};
}

} // namespace cavrep::gen
