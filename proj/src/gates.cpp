#include "cavrep/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavrep/errors.hpp"

namespace cavrep::gates {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

} // namespace

GateModel gate1(double cooperativity, double gamma_rad_s) {
    require_positive(cooperativity, "cooperativity");
    require_positive(gamma_rad_s, "gamma");
    GateModel g;
    g.error = 4e-5;
    g.success_prob = std::max(0.0, 1.0 - 6.0 / std::sqrt(cooperativity));
    g.gate_time_s = 377.0 / (gamma_rad_s * std::sqrt(cooperativity)) + 10e-6;
    return g;
}

GateModel gate2(double cooperativity, double eta_d) {
    require_positive(cooperativity, "cooperativity");
    require_positive(eta_d, "detector efficiency");
    GateModel g;
    g.error = std::min(1.0, 1.2 / (eta_d * cooperativity));
    g.success_prob = 1.0;
    g.gate_time_s = 10e-6;
    return g;
}

GateModel gate3(double cooperativity) {
    require_positive(cooperativity, "cooperativity");
    GateModel g;
    g.error = std::min(1.0, 3.6 / std::sqrt(cooperativity));
    g.success_prob = 1.0;
    g.gate_time_s = 10e-6;
    return g;
}

GateModel ion_trap_gate() {
    GateModel g;
    g.error = 0.007;
    g.success_prob = 1.0;
    g.gate_time_s = 50e-6;
    return g;
}

GateModel perfect_gate() {
    GateModel g;
    g.error = 0.0;
    g.success_prob = 1.0;
    g.gate_time_s = 0.0;
    return g;
}

GateModel make(GateKind kind, double cooperativity, double gamma_rad_s, double eta_d) {
    switch (kind) {
        case GateKind::Gate1: return gate1(cooperativity, gamma_rad_s);
        case GateKind::Gate2: return gate2(cooperativity, eta_d);
        case GateKind::Gate3: return gate3(cooperativity);
        case GateKind::IonTrap: return ion_trap_gate();
        case GateKind::Perfect: return perfect_gate();
    }
    throw InternalError("unhandled gate kind");
}

bool is_heralded(GateKind kind) { return kind == GateKind::Gate1; }

std::string name(GateKind kind) {
    switch (kind) {
        case GateKind::Gate1: return "gate1";
        case GateKind::Gate2: return "gate2";
        case GateKind::Gate3: return "gate3";
        case GateKind::IonTrap: return "ion";
        case GateKind::Perfect: return "perfect";
    }
    throw InternalError("unhandled gate kind");
}

GateKind gate_kind_from_name(const std::string& s) {
    if (s == "gate1") return GateKind::Gate1;
    if (s == "gate2") return GateKind::Gate2;
    if (s == "gate3") return GateKind::Gate3;
    if (s == "ion") return GateKind::IonTrap;
    if (s == "perfect") return GateKind::Perfect;
    throw ConfigError("unknown gate model: " + s);
}

} // namespace cavrep::gates
