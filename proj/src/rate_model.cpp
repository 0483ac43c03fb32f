#include "cavrep/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cavrep/errors.hpp"
#include "cavrep/waiting.hpp"

namespace cavrep::rate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The depolarizing description of gate noise is only defined down to gate
// fidelity 1/4 (fully depolarizing); worse errors are physically equivalent.
gates::GateModel state_propagation_gate(const gates::GateModel& g) {
    gates::GateModel e = g;
    e.error = std::min(e.error, 0.75);
    return e;
}

double product_from(const std::vector<double>& v, std::size_t from) {
    double p = 1.0;
    for (std::size_t i = from; i < v.size(); ++i) p *= v[i];
    return p;
}

double z_or_inf(int l, int m, double p) {
    if (!(p > 0.0)) return kInf;
    return waiting::z_factor(l, m, std::min(p, 1.0));
}

} // namespace

std::string architecture_name(Architecture a) {
    return a == Architecture::Parallel ? "parallel" : "sequential";
}

Architecture architecture_from_name(const std::string& s) {
    if (s == "parallel") return Architecture::Parallel;
    if (s == "sequential") return Architecture::Sequential;
    throw ConfigError("unknown architecture: " + s);
}

void RepeaterConfig::validate() const {
    if (n < 0 || n > 5) throw ConfigError("swap levels must lie in 0..5");
    if (j < 0 || j > 2) throw ConfigError("pumping rounds must lie in 0..2");
    if (qubits_per_station != 2 && qubits_per_station != 4)
        throw ConfigError("qubits per station must be 2 or 4");
    if (j >= 1 && qubits_per_station < 4)
        throw ConfigError("entanglement pumping needs 4 qubits per station");
    if (!(l_total_km > 0.0)) throw ConfigError("total distance must be positive");
    if (!(eps_sq > 0.0 && eps_sq < 1.0))
        throw ConfigError("excitation probability must lie in (0,1)");
    if (!(window_s > 0.0)) throw ConfigError("emission window must be positive");
    if (!(p_sift > 0.0 && p_sift <= 1.0)) throw ConfigError("sifting factor must lie in (0,1]");
    if (!(min_secret_rate_hz >= 0.0)) throw ConfigError("viability floor must be non-negative");
    gen::LinkParams derived = link;
    derived.l0_km = l0_km();
    derived.validate();
}

PumpingPlan pumping_plan(const states::Matrix4& gen_state, double p0, int m_slots, int j,
                         const gates::GateModel& gate, states::PurifyVariant variant) {
    if (m_slots < 1) throw ConfigError("need at least one parallel attempt slot");
    if (j < 0) throw ConfigError("pumping rounds must be non-negative");
    if (j >= 1 && m_slots < 2)
        throw ConfigError("entanglement pumping needs at least two parallel attempt slots");
    if (!(p0 > 0.0 && p0 <= 1.0))
        throw ConfigError("per-attempt success probability must lie in (0,1]");

    PumpingPlan plan;
    plan.m_slots = m_slots;
    plan.j = j;
    plan.p0 = p0;

    const gates::GateModel sg = state_propagation_gate(gate);
    states::Matrix4 rho = gen_state;
    plan.fidelities.push_back(states::bell_fidelity(rho, states::Bell::PhiPlus));
    for (int round = 0; round < j; ++round) {
        const states::PurifyResult pr = states::purify(rho, gen_state, sg, variant);
        rho = pr.state;
        plan.p_pur.push_back(pr.success_prob);
        plan.fidelities.push_back(states::bell_fidelity(rho, states::Bell::PhiPlus));
    }
    plan.pumped_state = rho;

    if (j == 0) {
        plan.p1 = 1.0 / waiting::z_factor(1, m_slots, p0);
    } else {
        plan.p1 = product_from(plan.p_pur, 0) / waiting::z_factor(2, m_slots, p0);
    }
    for (int i = 0; i < j; ++i) plan.p2.push_back(product_from(plan.p_pur, i));
    if (j >= 1) {
        const double z1 = waiting::z_factor(1, m_slots - 1, p0);
        plan.p3.assign(j, 0.0); // index 0 is never summed over
        for (int i = 1; i < j; ++i) plan.p3[i] = plan.p2[i] / z1;
    }
    return plan;
}

double tau_pair(int l, int m, double p0, double l0_km, double c_fiber_km_s, double tau_local_s) {
    return waiting::z_factor(l, m, p0) * (l0_km / c_fiber_km_s + tau_local_s);
}

double tau_pumped_link_direct(const PumpingPlan& plan, const Durations& d) {
    if (plan.j == 0) return waiting::z_factor(1, plan.m_slots, plan.p0) * d.tau0;
    if (plan.p2[0] <= 0.0) return kInf;
    double t = waiting::z_factor(2, plan.m_slots, plan.p0) * d.tau0 / plan.p2[0];
    for (int i = 0; i < plan.j; ++i) t += d.tau_pur / plan.p2[i];
    for (int i = 1; i < plan.j; ++i)
        t += waiting::z_factor(1, plan.m_slots - 1, plan.p0) * d.tau0 / plan.p2[i];
    return t;
}

double tau_link_block(const PumpingPlan& plan, int links, const Durations& d) {
    if (links < 1) throw ConfigError("need at least one link in a block");
    double t = z_or_inf(links, links, plan.p1) * d.tau0;
    for (int i = 0; i < plan.j; ++i) t += z_or_inf(links, links, plan.p2[i]) * d.tau_pur;
    for (int i = 1; i < plan.j; ++i) t += z_or_inf(links, links, plan.p3[i]) * d.tau0;
    return t;
}

double tau_link_parallel(const PumpingPlan& plan, int n, const Durations& d) {
    return tau_link_block(plan, 1 << n, d);
}

double tau_swap_deterministic(int n, double l0_km, double c_fiber_km_s, double tau_c_s) {
    if (n < 0) throw ConfigError("swap levels must be non-negative");
    return static_cast<double>((1 << n) - 1) * l0_km / c_fiber_km_s +
           static_cast<double>(n) * tau_c_s;
}

double ztilde(int level, int i, double p_swap, double p, bool p_is_pswap) {
    if (i < 1 || level < i) throw InternalError("waiting-ladder indices out of range");
    if (!(p_swap > 0.0 && p_swap <= 1.0))
        throw ConfigError("swap success probability must lie in (0,1]");
    if (level == i) {
        if (p_is_pswap) return 1.0;
        return waiting::z_factor(2, 2, std::min(p, 1.0));
    }
    const double below = ztilde(level - 1, i, p_swap, p, p_is_pswap);
    return waiting::z_factor(2, 2, p_swap / below);
}

ProbSwapTime tau_swap_probabilistic(const PumpingPlan& plan, int n, double p_swap,
                                    const Durations& d) {
    if (n < 1) throw ConfigError("probabilistic swap timing needs at least one swap level");
    ProbSwapTime t;
    if (!(p_swap > 0.0)) {
        t.link_part = kInf;
        t.swap_part = kInf;
        return t;
    }
    auto link_term = [&](double p, double duration) {
        if (!(p > 0.0)) return kInf;
        return ztilde(n, 1, p_swap, p, false) * duration / p_swap;
    };
    t.link_part = link_term(plan.p1, d.tau0);
    for (int i = 0; i < plan.j; ++i) t.link_part += link_term(plan.p2[i], d.tau_pur);
    for (int i = 1; i < plan.j; ++i) t.link_part += link_term(plan.p3[i], d.tau0);
    for (int i = 1; i <= n; ++i) {
        const double comm = static_cast<double>(1 << (i - 1)) * d.l0_over_c + d.tau_c;
        t.swap_part += ztilde(n, i, p_swap, p_swap, true) * comm / p_swap;
    }
    return t;
}

std::vector<double> tau_swap_sequential_levels(const PumpingPlan& plan, int n, double p_swap,
                                               const Durations& d) {
    if (n < 1) throw ConfigError("sequential swap timing needs at least one swap level");
    std::vector<double> out;
    out.reserve(n);
    if (!(p_swap > 0.0)) {
        out.assign(n, kInf);
        return out;
    }
    for (int l = 1; l <= n; ++l) {
        const int N = 1 << (n - l); // swaps attempted at this level
        const double level_comm = static_cast<double>(1 << (l - 1)) * d.l0_over_c + d.tau_c;
        double tau_l = 0.0;
        for (int i = 0; i <= N; ++i) {
            // i = number of failed swaps at this level; failed sections are
            // restored in parallel before the level is retried.
            double w = 1.0;
            for (int k = 1; k <= i; ++k)
                w *= static_cast<double>(N - k + 1) / static_cast<double>(k);
            w *= std::pow(p_swap, N - i) * std::pow(1.0 - p_swap, i);
            if (w == 0.0) continue;
            double bracket = 0.0;
            if (i == 0) {
                bracket = level_comm;
            } else {
                auto restore_term = [&](double p, double duration) {
                    if (!(p > 0.0)) return kInf;
                    const double arg = p_swap / ztilde(l, 1, p_swap, p, false);
                    return waiting::z_factor(i, i, arg) * duration;
                };
                bracket += restore_term(plan.p1, d.tau0);
                for (int k = 1; k <= l; ++k) {
                    const double arg = p_swap / ztilde(l, k, p_swap, p_swap, true);
                    const double comm = static_cast<double>(1 << (k - 1)) * d.l0_over_c + d.tau_c;
                    bracket += waiting::z_factor(i, i, arg) * comm;
                }
                for (int k = 0; k < plan.j; ++k) bracket += restore_term(plan.p2[k], d.tau_pur);
                for (int k = 1; k < plan.j; ++k) bracket += restore_term(plan.p3[k], d.tau0);
            }
            tau_l += w * bracket;
        }
        out.push_back(tau_l);
    }
    return out;
}

gen::GenerationAttempt generation_attempt(const RepeaterConfig& cfg) {
    gen::LinkParams link = cfg.link;
    link.l0_km = cfg.l0_km();
    switch (cfg.scheme) {
        case gen::Scheme::OnePhoton:
            return gen::generate_one_photon(link, cfg.eps_sq, cfg.window_s, cfg.corrected);
        case gen::Scheme::TwoPhoton:
            return gen::generate_two_photon(link, cfg.window_s, cfg.corrected);
        case gen::Scheme::IonTrap:
            return gen::generate_ion_trap(link, cfg.ion_two_photon, cfg.eps_sq, cfg.window_s,
                                          cfg.corrected);
    }
    throw InternalError("unhandled generation scheme");
}

std::pair<double, states::Matrix4> final_fidelity(const RepeaterConfig& cfg) {
    cfg.validate();
    const gen::GenerationAttempt g = generation_attempt(cfg);
    const gates::GateModel gate =
        gates::make(cfg.gate, cfg.link.cooperativity, cfg.link.gamma_rad_s, cfg.link.eta_d);
    const gates::GateModel sg = state_propagation_gate(gate);
    const PumpingPlan plan =
        pumping_plan(g.state, g.success_prob, cfg.parallel_attempts(), cfg.j, gate, cfg.variant);
    states::Matrix4 rho = plan.pumped_state;
    for (int lev = 0; lev < cfg.n; ++lev) rho = states::entanglement_swap(rho, rho, sg).state;
    return {states::bell_fidelity(rho, states::Bell::PhiPlus), rho};
}

namespace {

double sequential_link_time(const states::Matrix4& gen_state, double p0, int m, int j,
                            const gates::GateModel& gate, states::PurifyVariant variant, int n,
                            const Durations& d) {
    const int half = 1 << (n - 1);
    const PumpingPlan first = pumping_plan(gen_state, p0, 2 * m, j, gate, variant);
    const PumpingPlan second = pumping_plan(gen_state, p0, 2 * m - 1, j, gate, variant);
    return tau_link_block(first, half, d) + tau_link_block(second, half, d);
}

} // namespace

Analysis evaluate(const RepeaterConfig& cfg) {
    cfg.validate();

    Analysis a;
    a.config = cfg;
    a.config.link.l0_km = cfg.l0_km();

    const gen::GenerationAttempt g = generation_attempt(cfg);
    const gates::GateModel gate =
        gates::make(cfg.gate, cfg.link.cooperativity, cfg.link.gamma_rad_s, cfg.link.eta_d);
    const gates::GateModel sg = state_propagation_gate(gate);
    const int m = cfg.parallel_attempts();

    a.p0 = g.success_prob;
    a.m_slots = m;
    a.pump = pumping_plan(g.state, g.success_prob, m, cfg.j, gate, cfg.variant);
    a.p_swap = gate.success_prob;
    a.probabilistic_swap = gates::is_heralded(cfg.gate) && !gate.deterministic();

    const double l0 = cfg.l0_km();
    a.durations.tau0 = l0 / cfg.link.c_fiber_km_s + cfg.link.tau_local_s;
    a.durations.tau_c = gate.gate_time_s;
    a.durations.tau_pur = l0 / cfg.link.c_fiber_km_s + gate.gate_time_s;
    a.durations.l0_over_c = l0 / cfg.link.c_fiber_km_s;

    TimingBreakdown tb;
    if (cfg.n == 0) {
        tb.tau_link_s = tau_link_block(a.pump, 1, a.durations);
        tb.tau_swap_total_s = 0.0;
        tb.distribution_time_s = tb.tau_link_s;
    } else if (!a.probabilistic_swap) {
        tb.tau_link_s =
            (cfg.architecture == Architecture::Parallel)
                ? tau_link_parallel(a.pump, cfg.n, a.durations)
                : sequential_link_time(g.state, g.success_prob, m, cfg.j, gate, cfg.variant,
                                       cfg.n, a.durations);
        tb.tau_swap_total_s =
            tau_swap_deterministic(cfg.n, l0, cfg.link.c_fiber_km_s, gate.gate_time_s);
        tb.distribution_time_s = tb.tau_link_s + tb.tau_swap_total_s;
    } else if (cfg.architecture == Architecture::Parallel) {
        const ProbSwapTime pt = tau_swap_probabilistic(a.pump, cfg.n, a.p_swap, a.durations);
        tb.tau_link_s = pt.link_part;
        tb.tau_swap_total_s = pt.swap_part;
        tb.distribution_time_s = pt.total();
    } else {
        tb.tau_link_s = sequential_link_time(g.state, g.success_prob, m, cfg.j, gate,
                                             cfg.variant, cfg.n, a.durations);
        tb.per_level_swap_s = tau_swap_sequential_levels(a.pump, cfg.n, a.p_swap, a.durations);
        tb.tau_swap_total_s = 0.0;
        for (double t : tb.per_level_swap_s) tb.tau_swap_total_s += t;
        tb.distribution_time_s = tb.tau_link_s + tb.tau_swap_total_s;
    }
    a.timing = tb;
    a.distribution_rate_hz =
        (std::isfinite(tb.distribution_time_s) && tb.distribution_time_s > 0.0)
            ? 1.0 / tb.distribution_time_s
            : 0.0;

    states::Matrix4 rho = a.pump.pumped_state;
    for (int lev = 0; lev < cfg.n; ++lev) rho = states::entanglement_swap(rho, rho, sg).state;
    a.final_state = rho;
    a.final_fidelity = states::bell_fidelity(rho, states::Bell::PhiPlus);
    a.report =
        secret::build_report(cfg.n, a.final_fidelity, a.distribution_rate_hz, cfg.p_sift);
    return a;
}

ChainModel chain_model(const Analysis& analysis) {
    ChainModel m;
    m.n = analysis.config.n;
    m.j = analysis.config.j;
    m.p0 = analysis.p0;
    m.m_slots = analysis.m_slots;
    m.p_pur = analysis.pump.p_pur;
    m.p_swap = analysis.probabilistic_swap ? analysis.p_swap : 1.0;
    m.architecture = analysis.config.architecture;
    m.durations = analysis.durations;
    return m;
}

} // namespace cavrep::rate
