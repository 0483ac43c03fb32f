#pragma once
#include <string>

namespace cavrep::gates {

// Effective description of the two-qubit entangling gate used for
// purification and swapping: depolarizing error weight, heralded success
// probability, and wall-clock duration.
struct GateModel {
    double error = 0.0;        // 1 - gate fidelity, in [0,1]
    double success_prob = 1.0; // heralded success probability, in (0,1] (0 allowed when clamped)
    double gate_time_s = 0.0;  // seconds

    double fidelity() const { return 1.0 - error; }
    bool deterministic() const { return success_prob >= 1.0; }
};

enum class GateKind { Gate1, Gate2, Gate3, IonTrap, Perfect };

// Heralded cavity-assisted gate: constant error floor, success and duration
// improving with cooperativity.
GateModel gate1(double cooperativity, double gamma_rad_s);

// Deterministic reflection-monitoring gate: error set by detector efficiency
// and cooperativity.
GateModel gate2(double cooperativity, double eta_d);

// Deterministic dispersive gate: error scaling with 1/sqrt(C).
GateModel gate3(double cooperativity);

GateModel ion_trap_gate();
GateModel perfect_gate();

GateModel make(GateKind kind, double cooperativity, double gamma_rad_s, double eta_d);

// True only for the heralded gate (probabilistic swap branch of the rate model).
bool is_heralded(GateKind kind);

std::string name(GateKind kind);
GateKind gate_kind_from_name(const std::string& s); // throws ConfigError on unknown name

} // namespace cavrep::gates
