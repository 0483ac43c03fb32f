#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cavrep/errors.hpp"
#include "cavrep/optimizer.hpp"

using namespace cavrep;

namespace {

constexpr double kGamma = 2 * 3.14159265358979323846 * 6e6;

rate::RepeaterConfig easy_config() {
    rate::RepeaterConfig cfg;
    cfg.n = 1;
    cfg.j = 0;
    cfg.qubits_per_station = 2;
    cfg.scheme = gen::Scheme::TwoPhoton;
    cfg.gate = gates::GateKind::Perfect;
    cfg.l_total_km = 100.0;
    cfg.link.cooperativity = 100.0;
    return cfg;
}

opt::SweepSpec small_spec() {
    opt::SweepSpec spec;
    spec.distances_km = {200.0};
    spec.cooperativities = {100.0};
    spec.qubits_per_station = 4;
    spec.schemes = {gen::Scheme::TwoPhoton};
    spec.gate_kinds = {gates::GateKind::Gate2};
    spec.n_min = 0;
    spec.n_max = 2;
    spec.j_min = 0;
    spec.j_max = 1;
    return spec;
}

} // namespace

TEST_CASE("window upper bound tracks the emission saturation scale") {
    rate::RepeaterConfig cfg = easy_config();
    cfg.link.cooperativity = 100.0;
    CHECK(opt::window_upper_bound_s(cfg) ==
          doctest::Approx(10.0 / (kGamma * 401.0)).epsilon(1e-12));
    cfg.scheme = gen::Scheme::IonTrap;
    CHECK(opt::window_upper_bound_s(cfg) == doctest::Approx(10.0 / kGamma).epsilon(1e-12));
}

TEST_CASE("inner optimization finds a viable window for an easy configuration") {
    const rate::RepeaterConfig cfg = easy_config();
    const auto inner = opt::optimize_inner(cfg);
    CHECK(inner.normalized_rate_hz > 0.0);
    CHECK(inner.window_s > 0.0);
    CHECK(inner.window_s <= opt::window_upper_bound_s(cfg) * (1.0 + 1e-12));
    CHECK(inner.iterations > 24); // coarse scan plus at least some polish
    // Two-click scheme: the excitation probability is not a free parameter.
    CHECK(inner.eps_sq == doctest::Approx(cfg.eps_sq).epsilon(1e-14));

    // The optimum must beat (or match) every probe of a crude manual scan.
    const double t_max = opt::window_upper_bound_s(cfg);
    for (double frac : {1e-3, 1e-2, 0.1, 0.5, 1.0}) {
        rate::RepeaterConfig probe = cfg;
        probe.window_s = t_max * frac;
        const auto a = rate::evaluate(probe);
        CHECK(inner.normalized_rate_hz >= a.report.normalized_rate_hz - 1e-9);
    }
}

TEST_CASE("inner optimization tunes the excitation for the single-click scheme") {
    rate::RepeaterConfig cfg = easy_config();
    cfg.scheme = gen::Scheme::OnePhoton;
    cfg.l_total_km = 200.0;
    const auto inner = opt::optimize_inner(cfg);
    CHECK(inner.normalized_rate_hz > 0.0);
    CHECK(inner.eps_sq >= 1e-4 * (1.0 - 1e-12));
    CHECK(inner.eps_sq <= 0.5 * (1.0 + 1e-12));

    // A fixed mid-grid excitation must not beat the tuned optimum.
    rate::RepeaterConfig probe = cfg;
    probe.window_s = inner.window_s;
    probe.eps_sq = 0.01;
    const auto a = rate::evaluate(probe);
    CHECK(inner.normalized_rate_hz >= a.report.normalized_rate_hz - 1e-9);
}

TEST_CASE("inner optimization reports zero when no probe clears the floor") {
    rate::RepeaterConfig cfg = easy_config();
    cfg.gate = gates::GateKind::Gate3; // 36 percent gate error: no key survives swaps
    cfg.l_total_km = 1000.0;
    cfg.n = 3;
    const auto inner = opt::optimize_inner(cfg);
    CHECK(inner.normalized_rate_hz == 0.0);
    CHECK(inner.window_s > 0.0); // still reports the best probed point
}

TEST_CASE("inner optimization is deterministic") {
    const rate::RepeaterConfig cfg = easy_config();
    const auto a = opt::optimize_inner(cfg);
    const auto b = opt::optimize_inner(cfg);
    CHECK(a.window_s == b.window_s);
    CHECK(a.normalized_rate_hz == b.normalized_rate_hz);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("sweep parameter validation") {
    opt::SweepSpec spec = small_spec();
    CHECK_NOTHROW(spec.validate());
    { auto s = spec; s.distances_km = {}; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.distances_km = {-5.0}; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.cooperativities = {}; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.qubits_per_station = 3; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.n_min = 3; s.n_max = 1; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.j_max = 5; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.architectures = {}; CHECK_THROWS_AS(s.validate(), ConfigError); }
    { auto s = spec; s.variants = {}; CHECK_THROWS_AS(s.validate(), ConfigError); }
}

TEST_CASE("grid search enumerates every admissible cell and picks the best") {
    const opt::SweepSpec spec = small_spec();
    const auto records = opt::optimize_grid(spec);
    REQUIRE(records.size() == 1);
    const auto& rec = records[0];
    CHECK(rec.distance_km == 200.0);
    CHECK(rec.cooperativity == 100.0);
    CHECK(rec.scheme == gen::Scheme::TwoPhoton);
    CHECK(rec.gate == gates::GateKind::Gate2);

    // n in {0,1,2} x j in {0,1} x arch x variant, minus the sequential n = 0
    // duplicates: 24 - 4 = 20 cells.
    CHECK(rec.cells.size() == 20);
    for (const auto& cell : rec.cells) {
        CHECK_FALSE((cell.config.architecture == rate::Architecture::Sequential &&
                     cell.config.n == 0));
        CHECK(rec.best_inner.normalized_rate_hz >= cell.inner.normalized_rate_hz);
    }
    // Scan order starts at the smallest chain.
    CHECK(rec.cells.front().config.n == 0);
    CHECK(rec.cells.front().config.j == 0);

    // The stored best analysis is the evaluation of the stored best config.
    const auto re = rate::evaluate(rec.best_config);
    CHECK(rec.best_analysis.report.normalized_rate_hz ==
          doctest::Approx(re.report.normalized_rate_hz).epsilon(1e-12));
    CHECK(rec.best_analysis.report.normalized_rate_hz ==
          doctest::Approx(rec.best_inner.normalized_rate_hz).epsilon(1e-9));
}

TEST_CASE("grid search skips pumping when stations lack qubits") {
    opt::SweepSpec spec = small_spec();
    spec.qubits_per_station = 2;
    const auto records = opt::optimize_grid(spec);
    REQUIRE(records.size() == 1);
    // j = 0 only: 3 n-values x arch x variant minus the two sequential n = 0
    // cells (one per variant): 12 - 2 = 10.
    CHECK(records[0].cells.size() == 10);
    for (const auto& cell : records[0].cells) CHECK(cell.config.j == 0);
}

TEST_CASE("scheme comparison appends baselines and ranks by normalized rate") {
    opt::SweepSpec spec = small_spec();
    spec.n_max = 1;
    spec.j_max = 0;
    const auto rows = opt::compare_schemes(spec);
    REQUIRE(rows.size() == 1);
    const auto& row = rows[0];
    CHECK(row.distance_km == 200.0);
    // Families: two_photon x gate2, ion trap, two_photon x perfect.
    REQUIRE(row.ranked.size() == 3);
    bool saw_ion = false, saw_perfect = false;
    for (const auto& rec : row.ranked) {
        saw_ion = saw_ion || rec.scheme == gen::Scheme::IonTrap;
        saw_perfect = saw_perfect || rec.gate == gates::GateKind::Perfect;
    }
    CHECK(saw_ion);
    CHECK(saw_perfect);
    for (std::size_t i = 1; i < row.ranked.size(); ++i)
        CHECK(row.ranked[i - 1].best_inner.normalized_rate_hz >=
              row.ranked[i].best_inner.normalized_rate_hz);
    // Noiseless deterministic gates dominate every physical family.
    CHECK(row.ranked.front().gate == gates::GateKind::Perfect);
}
