"""Smoke tests for the python bindings: imports, core scalars, JSON round trips."""

import math
import sys


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    import cavrep

    # Scalar physics helpers.
    assert approx(cavrep.binary_entropy(0.5), 1.0)
    assert cavrep.binary_entropy(0.0) == 0.0
    assert approx(cavrep.qber_from_fidelity(1.0), 0.0)
    assert approx(cavrep.qber_from_fidelity(0.85), 0.1)

    threshold = cavrep.threshold_fidelity()
    assert approx(1.0 - threshold, 0.18928962491523176, tol=1e-6)
    assert cavrep.secret_fraction(threshold - 0.01) == 0.0
    assert cavrep.secret_fraction(threshold + 0.01) > 0.0

    # Waiting factor: one success from one slot takes 1/p rounds.
    assert approx(cavrep.z_factor(1, 1, 0.25), 4.0)
    assert approx(cavrep.z_factor(2, 2, 0.5), 8.0 / 3.0)
    try:
        cavrep.z_factor(3, 2, 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for l > m")

    # Emission probability saturates with long windows.
    p_long = cavrep.photon_emission_prob(100.0, 2 * math.pi * 6e6, 1.0)
    assert approx(p_long, 400.0 / 401.0)

    # Heralded-state coefficients normalize exactly.
    c1 = cavrep.single_photon_coefficients(0.5, 0.8, 0.9, 1e-5, 0.01)
    assert approx(c1["f1"] + 2 * c1["a1"] + c1["b1"] + c1["at1"] + c1["bt1"], 1.0, tol=1e-12)
    c2 = cavrep.two_photon_coefficients(0.5, 0.8, 0.9, 0.0)
    assert c2["f2"] == 1.0 and c2["a2"] == 0.0 and c2["b2"] == 0.0
    assert approx(c2["p_click"], 0.5 * (0.5 * 0.8 * 0.9) ** 2)

    # Config round trip and full evaluation.
    cfg = cavrep.default_config()
    assert "repeater" in cfg and "sweep" in cfg and "validate" in cfg
    cfg["repeater"]["n"] = 1
    cfg["repeater"]["j"] = 0
    cfg["repeater"]["qubits_per_station"] = 2
    cfg["repeater"]["gate"] = "perfect"
    cfg["repeater"]["l_total_km"] = 100.0
    result = cavrep.evaluate(cfg)
    assert result["distribution_rate_hz"] > 0.0
    assert 0.25 <= result["final_fidelity"] <= 1.0
    assert result["stations"] == 3

    # Bad configuration surfaces as ValueError.
    bad = dict(cfg)
    bad["repeater"] = dict(cfg["repeater"])
    bad["repeater"]["n"] = 9
    try:
        cavrep.evaluate(bad)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for n out of range")

    print("python smoke: all assertions passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
