#include "cavrep/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cavrep/errors.hpp"

namespace cavrep::opt {

namespace {

constexpr double kEpsMin = 1e-4;
constexpr double kEpsMax = 0.5;
constexpr int kWindowGrid = 24;
constexpr int kEpsGrid = 16;
constexpr int kPolishIters = 200;
constexpr double kPolishRelTol = 1e-6;

bool uses_excitation(const rate::RepeaterConfig& cfg) {
    if (cfg.scheme == gen::Scheme::OnePhoton) return true;
    return cfg.scheme == gen::Scheme::IonTrap && !cfg.ion_two_photon;
}

// Objective: normalized secret rate, zeroed when the secret rate falls below
// the viability floor. Probe points that land outside the model's physical
// domain simply score zero instead of aborting the search.
double objective(rate::RepeaterConfig cfg, double window_s, double eps_sq, int& evals) {
    cfg.window_s = window_s;
    cfg.eps_sq = eps_sq;
    ++evals;
    try {
        const rate::Analysis a = rate::evaluate(cfg);
        if (a.report.secret_key_rate_hz < cfg.min_secret_rate_hz) return 0.0;
        return a.report.normalized_rate_hz;
    } catch (const ConfigError&) {
        return 0.0;
    } catch (const InternalError&) {
        return 0.0;
    }
}

struct Vertex {
    std::array<double, 2> x{0.0, 0.0}; // log(window), log(eps_sq)
    double f = 0.0;                    // objective value (maximized)
};

} // namespace

double window_upper_bound_s(const rate::RepeaterConfig& cfg) {
    const double gamma = cfg.link.gamma_rad_s;
    if (cfg.scheme == gen::Scheme::IonTrap) return 10.0 / gamma;
    return 10.0 / (gamma * (1.0 + 4.0 * cfg.link.cooperativity));
}

InnerResult optimize_inner(const rate::RepeaterConfig& cfg) {
    const bool has_eps = uses_excitation(cfg);
    const double t_max = window_upper_bound_s(cfg);
    const int dim = has_eps ? 2 : 1;
    int evals = 0;

    auto clamp_point = [&](const std::array<double, 2>& x) {
        const double window = std::min(std::exp(x[0]), t_max);
        const double eps = has_eps ? std::min(std::exp(x[1]), kEpsMax) : cfg.eps_sq;
        return std::pair<double, double>(window, eps);
    };
    auto score = [&](const std::array<double, 2>& x) {
        const auto [window, eps] = clamp_point(x);
        return objective(cfg, window, eps, evals);
    };

    // Deterministic coarse scan on a log grid.
    std::vector<Vertex> best;
    const int eps_points = has_eps ? kEpsGrid : 1;
    for (int i = 0; i < kWindowGrid; ++i) {
        const double ft = static_cast<double>(i) / (kWindowGrid - 1);
        const double window = t_max * std::pow(1e-4, 1.0 - ft);
        for (int k = 0; k < eps_points; ++k) {
            const double fe = eps_points == 1 ? 0.0 : static_cast<double>(k) / (eps_points - 1);
            const double eps = has_eps ? kEpsMin * std::pow(kEpsMax / kEpsMin, fe) : cfg.eps_sq;
            Vertex v;
            v.x = {std::log(window), std::log(eps)};
            v.f = objective(cfg, window, eps, evals);
            best.push_back(v);
        }
    }
    std::stable_sort(best.begin(), best.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    best.resize(static_cast<std::size_t>(dim) + 1);

    InnerResult out;
    if (best.front().f <= 0.0) {
        const auto [window, eps] = clamp_point(best.front().x);
        out.window_s = window;
        out.eps_sq = eps;
        out.normalized_rate_hz = 0.0;
        out.iterations = evals;
        return out;
    }

    // Nelder-Mead polish in log space, seeded with the best grid points;
    // degenerate simplices are opened up with a fixed log-space nudge.
    std::vector<Vertex> simplex(best.begin(), best.end());
    for (int d = 0; d < dim; ++d) {
        bool degenerate = true;
        for (int v = 1; v <= dim; ++v)
            if (std::abs(simplex[v].x[d] - simplex[0].x[d]) > 1e-12) degenerate = false;
        if (degenerate) {
            simplex[d + 1].x[d] += 0.25;
            simplex[d + 1].f = score(simplex[d + 1].x);
        }
    }
    const double alpha = 1.0, gamma_e = 2.0, rho = 0.5, sigma = 0.5;
    for (int iter = 0; iter < kPolishIters; ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
        const double spread = std::abs(simplex.front().f - simplex.back().f);
        if (spread <= kPolishRelTol * std::max(std::abs(simplex.front().f), 1e-300)) break;

        std::array<double, 2> centroid{0.0, 0.0};
        for (int v = 0; v < dim; ++v)
            for (int d = 0; d < dim; ++d) centroid[d] += simplex[v].x[d] / dim;
        Vertex& worst = simplex.back();

        auto blend = [&](double coeff) {
            std::array<double, 2> x = centroid;
            for (int d = 0; d < dim; ++d) x[d] = centroid[d] + coeff * (centroid[d] - worst.x[d]);
            return x;
        };
        Vertex reflected;
        reflected.x = blend(alpha);
        reflected.f = score(reflected.x);
        if (reflected.f > simplex.front().f) {
            Vertex expanded;
            expanded.x = blend(gamma_e);
            expanded.f = score(expanded.x);
            worst = (expanded.f > reflected.f) ? expanded : reflected;
            continue;
        }
        if (reflected.f > simplex[dim - 1].f) {
            worst = reflected;
            continue;
        }
        Vertex contracted;
        contracted.x = blend(-rho);
        contracted.f = score(contracted.x);
        if (contracted.f > worst.f) {
            worst = contracted;
            continue;
        }
        for (int v = 1; v <= dim; ++v) {
            for (int d = 0; d < dim; ++d)
                simplex[v].x[d] = simplex[0].x[d] + sigma * (simplex[v].x[d] - simplex[0].x[d]);
            simplex[v].f = score(simplex[v].x);
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f > b.f; });

    const auto [window, eps] = clamp_point(simplex.front().x);
    out.window_s = window;
    out.eps_sq = eps;
    out.normalized_rate_hz = simplex.front().f;
    out.iterations = evals;
    return out;
}

void SweepSpec::validate() const {
    if (distances_km.empty()) throw ConfigError("sweep needs at least one distance");
    for (double d : distances_km)
        if (!(d > 0.0)) throw ConfigError("sweep distances must be positive");
    if (cooperativities.empty()) throw ConfigError("sweep needs at least one cooperativity");
    for (double c : cooperativities)
        if (!(c > 0.0)) throw ConfigError("sweep cooperativities must be positive");
    if (qubits_per_station != 2 && qubits_per_station != 4)
        throw ConfigError("qubits per station must be 2 or 4");
    if (schemes.empty()) throw ConfigError("sweep needs at least one generation scheme");
    if (gate_kinds.empty()) throw ConfigError("sweep needs at least one gate model");
    if (n_min < 0 || n_max > 5 || n_min > n_max)
        throw ConfigError("swap-level range must satisfy 0 <= n_min <= n_max <= 5");
    if (j_min < 0 || j_max > 2 || j_min > j_max)
        throw ConfigError("pumping-round range must satisfy 0 <= j_min <= j_max <= 2");
    if (architectures.empty()) throw ConfigError("sweep needs at least one architecture");
    if (variants.empty()) throw ConfigError("sweep needs at least one purification variant");
    if (!(p_sift > 0.0 && p_sift <= 1.0)) throw ConfigError("sifting factor must lie in (0,1]");
    if (!(min_secret_rate_hz >= 0.0)) throw ConfigError("viability floor must be non-negative");
    link_base.validate();
}

std::vector<OptimumRecord> optimize_grid(const SweepSpec& spec) {
    spec.validate();
    std::vector<OptimumRecord> records;
    for (double distance : spec.distances_km) {
        for (double coop : spec.cooperativities) {
            for (gen::Scheme scheme : spec.schemes) {
                for (gates::GateKind gate : spec.gate_kinds) {
                    OptimumRecord rec;
                    rec.distance_km = distance;
                    rec.cooperativity = coop;
                    rec.scheme = scheme;
                    rec.gate = gate;

                    bool have_best = false;
                    // Scan order doubles as the tie-break order: smaller n,
                    // then fewer pumping rounds, then the requested
                    // architecture and variant list order.
                    for (int n = spec.n_min; n <= spec.n_max; ++n) {
                        for (int j = spec.j_min; j <= spec.j_max; ++j) {
                            if (j >= 1 && spec.qubits_per_station < 4) continue;
                            for (rate::Architecture arch : spec.architectures) {
                                // A sequential chain without swaps is the
                                // parallel chain; skip the duplicate cell.
                                if (arch == rate::Architecture::Sequential && n == 0) continue;
                                for (states::PurifyVariant variant : spec.variants) {
                                    rate::RepeaterConfig cfg;
                                    cfg.n = n;
                                    cfg.j = j;
                                    cfg.variant = variant;
                                    cfg.architecture = arch;
                                    cfg.qubits_per_station = spec.qubits_per_station;
                                    cfg.scheme = scheme;
                                    cfg.gate = gate;
                                    cfg.l_total_km = distance;
                                    cfg.link = spec.link_base;
                                    cfg.link.cooperativity = coop;
                                    cfg.corrected = spec.corrected;
                                    cfg.p_sift = spec.p_sift;
                                    cfg.min_secret_rate_hz = spec.min_secret_rate_hz;

                                    const InnerResult inner = optimize_inner(cfg);
                                    CellResult cell;
                                    cell.config = cfg;
                                    cell.config.window_s = inner.window_s;
                                    cell.config.eps_sq = inner.eps_sq;
                                    cell.inner = inner;
                                    rec.cells.push_back(cell);

                                    if (!have_best ||
                                        inner.normalized_rate_hz >
                                            rec.best_inner.normalized_rate_hz) {
                                        have_best = true;
                                        rec.best_config = cell.config;
                                        rec.best_inner = inner;
                                    }
                                }
                            }
                        }
                    }
                    if (!have_best) throw InternalError("sweep family produced no cells");
                    rec.best_analysis = rate::evaluate(rec.best_config);
                    records.push_back(std::move(rec));
                }
            }
        }
    }
    return records;
}

std::vector<CompareRow> compare_schemes(const SweepSpec& spec) {
    std::vector<OptimumRecord> all = optimize_grid(spec);

    SweepSpec ion = spec;
    ion.schemes = {gen::Scheme::IonTrap};
    ion.gate_kinds = {gates::GateKind::IonTrap};
    for (OptimumRecord& r : optimize_grid(ion)) all.push_back(std::move(r));

    SweepSpec perfect = spec;
    perfect.gate_kinds = {gates::GateKind::Perfect};
    for (OptimumRecord& r : optimize_grid(perfect)) all.push_back(std::move(r));

    std::vector<CompareRow> rows;
    for (double distance : spec.distances_km) {
        for (double coop : spec.cooperativities) {
            CompareRow row;
            row.distance_km = distance;
            row.cooperativity = coop;
            for (const OptimumRecord& r : all)
                if (r.distance_km == distance && r.cooperativity == coop) row.ranked.push_back(r);
            std::stable_sort(row.ranked.begin(), row.ranked.end(),
                             [](const OptimumRecord& a, const OptimumRecord& b) {
                                 return a.best_inner.normalized_rate_hz >
                                        b.best_inner.normalized_rate_hz;
                             });
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace cavrep::opt
