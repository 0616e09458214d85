import math

import numpy as np
import pytest

import natmono


def test_closed_form_reference_value():
    assert natmono.probability(1.0, 1.0, 1.0) == pytest.approx(0.46303123440699936, abs=1e-15)


def test_rosen_zener():
    p = natmono.from_scaled(0.5, 0.0, 1.0)
    assert natmono.transition_probability(p) == pytest.approx(math.sin(0.5) ** 2 / math.cosh(1.0) ** 2)
    assert natmono.limit(p, "rosen_zener") == pytest.approx(natmono.transition_probability(p), abs=1e-15)


def test_propagation_matches_closed_form():
    p = natmono.TwoLevelParams(0.3, 0.4, 0.5, 1.0)
    r = natmono.propagate(p)
    assert abs(r["probability"] - natmono.transition_probability(p)) < 1e-6
    assert r["norm_drift"] < 1e-8
    assert np.isclose(sum(r["populations"]), 1.0)


def test_monodromy_matrices():
    p = natmono.TwoLevelParams(1 / math.pi, 1 / math.pi, 1 / math.pi, 1.0)
    m = natmono.monodromy(p)
    assert m["Rtilde"].shape == (2, 2)
    assert abs(m["a"] - complex(1.0273124927639745, -0.069558322801186486)) < 1e-12
    r = natmono.numeric_monodromy(p)
    assert abs(r[0, 0] - m["a"]) < 1e-8
    back = natmono.numeric_monodromy(p, clockwise=True)
    assert np.allclose(r @ back, np.eye(2), atol=1e-8)


def test_okubo_and_invariance():
    la, direct = natmono.okubo_lambda_independence(0.5, 1.0, [0.4, 0.3], [0.5, 0.5], [1.0, 0.0])
    assert la < 1e-6 and direct < 1e-6
    rep = natmono.class_invariance(1 / math.pi, 1 / math.pi, 1 / math.pi)
    assert rep["passed"]


def test_errors_surface_as_exceptions():
    with pytest.raises(natmono.Error):
        natmono.transition_probability(natmono.TwoLevelParams(0.5, 0.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        natmono.limit(natmono.TwoLevelParams(0.5, 1.0, 1.0, 1.0), "rosen_zener")


def test_verify_suite_report():
    rep = natmono.run_suite("assembly", 3)
    assert rep["suite"] == "assembly"
    assert rep["passed"]
    assert {"name", "status", "observed", "expected", "tolerance"} <= set(rep["cases"][0])
