#pragma once
#include <string>

#include "cavrep/states.hpp"

namespace cavrep::gen {

// Physical parameters of one elementary link. Lengths in km, rates in Hz,
// times in seconds, gamma in rad/s.
struct LinkParams {
    double cooperativity = 100.0;
    double gamma_rad_s = 2.0 * 3.14159265358979323846 * 6e6;
    double eta_d = 0.5;          // detector + outcoupling efficiency
    double l0_km = 50.0;         // elementary link length
    double l_att_km = 22.0;      // fiber attenuation length
    double r_dark_hz = 25.0;     // dark-count rate per detector
    double tau_local_s = 10e-6;  // local operation time per attempt
    double c_fiber_km_s = 2e5;   // signal speed in fiber
    double free_space_collection = 0.10; // ion-trap photon collection efficiency

    void validate() const; // throws ConfigError
    double fiber_transmission() const; // eta_f = exp(-l0/(2*l_att))
    double eta() const;                // eta_d * eta_f
    double dark_count_prob(double window_s) const; // 1 - exp(-r_dark * T)
};

// Cavity-enhanced emission probability within window T.
double photon_emission_prob(double cooperativity, double gamma_rad_s, double window_s);
double photon_emission_prob(const LinkParams& p, double window_s);

// Free-space (ion trap) collected-emission probability within window T.
double ion_collection_prob(double collection, double gamma_rad_s, double window_s);

enum class Scheme { OnePhoton, TwoPhoton, IonTrap };
std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& s);

// Unnormalized-coefficient bookkeeping of the single-click heralded state.
// f1..bt1 are the normalized weights (they sum to exactly 1); p_click is the
// per-attempt success probability, num_sum the exact unnormalized sum.
struct SinglePhotonCoefficients {
    double f1, a1, b1, at1, bt1;
    double p_click;
    double num_sum;
};
SinglePhotonCoefficients single_photon_coefficients(double eta_d, double eta_f, double p_phot,
                                                    double p_dark, double eps_sq, bool corrected);

struct TwoPhotonCoefficients {
    double f2, a2, b2;
    double p_click;
    double num_sum;
};
TwoPhotonCoefficients two_photon_coefficients(double eta_d, double eta_f, double p_phot,
                                              double p_dark, bool corrected);

struct GenerationAttempt {
    states::Matrix4 state = states::maximally_mixed();
    double success_prob = 0.0;
    double window_s = 0.0;
    double eps_sq = 0.0; // meaningful for the single-photon scheme only
};

// Single-click scheme. The heralded state is returned after the local
// rotation that maps its dominant component onto Phi+ (so all downstream code
// targets Phi+). `corrected` switches the success probability from the
// as-published single-click expression to the self-consistent coefficient sum.
GenerationAttempt generate_one_photon(const LinkParams& p, double eps_sq, double window_s,
                                      bool corrected = false);

// Two-click scheme. With zero dark counts the heralded state is exactly Phi+
// and success = eta^2 * p_phot^2 / 2. `corrected` switches the success
// probability to the self-consistent coefficient sum (scaled by the same
// no-dark-count factor), so that success equals the sum of the unnormalized
// state weights exactly.
GenerationAttempt generate_two_photon(const LinkParams& p, double window_s,
                                      bool corrected = false);

// Ion-trap source: same click bookkeeping, but emission is collected free
// space (no cavity enhancement) with the link's free_space_collection factor.
GenerationAttempt generate_ion_trap(const LinkParams& p, bool two_photon, double eps_sq,
                                    double window_s, bool corrected = false);

} // namespace cavrep::gen
