import json
import os
import subprocess

import pytest

import fracam


def test_default_spectrum_is_shifted_ladder():
    levels = fracam.fam_spectrum(fracam.ModelConfig(), dim=32)
    assert len(levels) == 16
    for n, value in enumerate(levels):
        assert value == pytest.approx(0.5 + n + 0.5, abs=1e-8)


def test_dirac_bracket_in_analysis():
    cfg = fracam.ModelConfig()
    cfg.alpha = 2.0
    report = json.loads(fracam.analyze(fracam.build_model(cfg)))
    assert report["dof"] == 1
    assert report["dirac_brackets"]["x1,x2"] == "-1/2"
    assert report["theta"] == pytest.approx(0.5)


def test_expressions_and_brackets():
    x1 = fracam.PhaseExpression("x1")
    p1 = fracam.PhaseExpression("p1")
    assert str(fracam.poisson_bracket(x1, p1)) == "1"
    assert (x1 * x1 + fracam.PhaseExpression("x2^2")) == fracam.PhaseExpression("r2")
    assert fracam.PhaseExpression("x1*r2^-1").evaluate([2.0, 0.0]) == pytest.approx(0.5)


def test_integer_spectrum_and_errors():
    values = fracam.full_model_angular_spectrum(8)
    assert values == pytest.approx([-4, -3, -2, -1, 0, 1, 2, 3], abs=1e-10)
    with pytest.raises(fracam.FracamError):
        fracam.full_model_angular_spectrum(7)


def test_conservation():
    system = fracam.build_model(fracam.ModelConfig(), mode=fracam.ReductionMode.Full)
    out = fracam.integrate(system, [1.0, 0.0], [0.0, 1.5], dt=1e-3, steps=2000)
    assert out["max_drift_J"] < 1e-6
    assert out["max_drift_H"] < 1e-6


@pytest.mark.skipif("FRACAM_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_spectrum_runs():
    proc = subprocess.run([os.environ["FRACAM_CLI"], "spectrum", "--N", "16"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[1] == "n,eigenvalue,formulaValue,absError"
