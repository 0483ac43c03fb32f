#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cavrep/errors.hpp"
#include "cavrep/gates.hpp"

using namespace cavrep;

namespace {
constexpr double kGamma = 2 * 3.14159265358979323846 * 6e6;
}

TEST_CASE("heralded cavity gate: frozen table values") {
    const auto g100 = gates::gate1(100.0, kGamma);
    CHECK(g100.error == doctest::Approx(4e-5).epsilon(1e-14));
    CHECK(g100.success_prob == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(g100.gate_time_s == doctest::Approx(1.1000023559094076e-5).epsilon(1e-12));

    const auto g1000 = gates::gate1(1000.0, kGamma);
    CHECK(g1000.error == doctest::Approx(4e-5).epsilon(1e-14));
    CHECK(g1000.success_prob == doctest::Approx(0.8102633403898972).epsilon(1e-13));
    CHECK(g1000.gate_time_s == doctest::Approx(1.0316235216056528e-5).epsilon(1e-12));
}

TEST_CASE("heralded cavity gate: success clamps to zero at low cooperativity") {
    CHECK(gates::gate1(36.0, kGamma).success_prob == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gates::gate1(25.0, kGamma).success_prob == 0.0);
    CHECK(gates::gate1(37.0, kGamma).success_prob > 0.0);
}

TEST_CASE("reflection gate: error from detector efficiency and cooperativity") {
    const auto g = gates::gate2(100.0, 0.5);
    CHECK(g.error == doctest::Approx(0.024).epsilon(1e-14));
    CHECK(g.success_prob == 1.0);
    CHECK(g.gate_time_s == doctest::Approx(10e-6).epsilon(1e-14));
    CHECK(gates::gate2(1.0, 0.5).error == 1.0); // clamped
    CHECK(gates::gate2(2.4, 1.0).error == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dispersive gate: inverse-root-cooperativity error") {
    CHECK(gates::gate3(100.0).error == doctest::Approx(0.36).epsilon(1e-14));
    CHECK(gates::gate3(50.0).error == doctest::Approx(0.5091168824543142).epsilon(1e-13));
    CHECK(gates::gate3(4.0).error == 1.0); // clamped
    CHECK(gates::gate3(100.0).success_prob == 1.0);
    CHECK(gates::gate3(100.0).gate_time_s == doctest::Approx(10e-6).epsilon(1e-14));
}

TEST_CASE("ion trap and perfect gates are fixed") {
    const auto ion = gates::ion_trap_gate();
    CHECK(ion.error == doctest::Approx(0.007).epsilon(1e-14));
    CHECK(ion.success_prob == 1.0);
    CHECK(ion.gate_time_s == doctest::Approx(50e-6).epsilon(1e-14));

    const auto p = gates::perfect_gate();
    CHECK(p.error == 0.0);
    CHECK(p.success_prob == 1.0);
    CHECK(p.gate_time_s == 0.0);
    CHECK(p.fidelity() == 1.0);
    CHECK(p.deterministic());
}

TEST_CASE("make dispatches to the per-kind constructors") {
    const auto a = gates::make(gates::GateKind::Gate1, 100.0, kGamma, 0.5);
    CHECK(a.success_prob == doctest::Approx(0.4).epsilon(1e-14));
    const auto b = gates::make(gates::GateKind::Gate2, 100.0, kGamma, 0.5);
    CHECK(b.error == doctest::Approx(0.024).epsilon(1e-14));
    const auto c = gates::make(gates::GateKind::Gate3, 100.0, kGamma, 0.5);
    CHECK(c.error == doctest::Approx(0.36).epsilon(1e-14));
    const auto d = gates::make(gates::GateKind::IonTrap, 100.0, kGamma, 0.5);
    CHECK(d.gate_time_s == doctest::Approx(50e-6).epsilon(1e-14));
    const auto e = gates::make(gates::GateKind::Perfect, 100.0, kGamma, 0.5);
    CHECK(e.error == 0.0);
}

TEST_CASE("only the cavity-assisted gate is heralded") {
    CHECK(gates::is_heralded(gates::GateKind::Gate1));
    CHECK_FALSE(gates::is_heralded(gates::GateKind::Gate2));
    CHECK_FALSE(gates::is_heralded(gates::GateKind::Gate3));
    CHECK_FALSE(gates::is_heralded(gates::GateKind::IonTrap));
    CHECK_FALSE(gates::is_heralded(gates::GateKind::Perfect));
}

TEST_CASE("gate model sanity: error in [0,1], success in [0,1], time >= 0") {
    for (double c : {37.0, 50.0, 100.0, 500.0, 1000.0, 1e4}) {
        for (auto kind : {gates::GateKind::Gate1, gates::GateKind::Gate2, gates::GateKind::Gate3,
                          gates::GateKind::IonTrap, gates::GateKind::Perfect}) {
            const auto g = gates::make(kind, c, kGamma, 0.5);
            CHECK(g.error >= 0.0);
            CHECK(g.error <= 1.0);
            CHECK(g.success_prob >= 0.0);
            CHECK(g.success_prob <= 1.0);
            CHECK(g.gate_time_s >= 0.0);
        }
    }
}

TEST_CASE("invalid physical parameters are rejected") {
    CHECK_THROWS_AS(gates::gate1(0.0, kGamma), std::invalid_argument);
    CHECK_THROWS_AS(gates::gate1(100.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gates::gate2(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gates::gate2(100.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gates::gate3(-1.0), std::invalid_argument);
}

TEST_CASE("gate names round-trip; unknown names rejected") {
    CHECK(gates::name(gates::GateKind::Gate1) == "gate1");
    CHECK(gates::name(gates::GateKind::Gate2) == "gate2");
    CHECK(gates::name(gates::GateKind::Gate3) == "gate3");
    CHECK(gates::name(gates::GateKind::IonTrap) == "ion");
    CHECK(gates::name(gates::GateKind::Perfect) == "perfect");
    for (auto kind : {gates::GateKind::Gate1, gates::GateKind::Gate2, gates::GateKind::Gate3,
                      gates::GateKind::IonTrap, gates::GateKind::Perfect})
        CHECK(gates::gate_kind_from_name(gates::name(kind)) == kind);
    CHECK_THROWS_AS(gates::gate_kind_from_name("bogus"), ConfigError);
}
