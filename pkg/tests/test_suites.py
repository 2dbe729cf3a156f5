import pytest

from qbcap.suites import SUITES, run_suite, tradeoff_models


def test_eight_models():
    models = tradeoff_models()
    assert len(models) == 8
    assert {m.axis.kind for m in models} == {"longitudinal", "transverse"}


@pytest.mark.parametrize("name", [s for s in SUITES if s != "gate-identities"])
def test_small_runs_clean(name):
    res = run_suite(name, 30, seed=11)
    assert res.violations == 0, res
    assert res.first_violation_index is None and res.max_violation_magnitude == 0.0


def test_gate_identities_flags_printed_b_gate_identity():
    res = run_suite("gate-identities", 20, seed=11)
    assert res.violations == 20
    assert res.first_violation_index == 0
    assert res.max_violation_magnitude > 1e-3


def test_deterministic_across_workers():
    a = run_suite("theorem2", 40, seed=5, workers=1)
    b = run_suite("theorem2", 40, seed=5, workers=4)
    assert (a.violations, a.first_violation_index) == (b.violations, b.first_violation_index)


def test_json_keys():
    out = run_suite("cartan", 3).to_json()
    assert set(out) == {"suite", "n", "violations", "max_violation_magnitude", "seconds", "first_violation_index"}


def test_errors():
    with pytest.raises(ValueError):
        run_suite("nope", 10)
    with pytest.raises(ValueError):
        run_suite("qmp", 0)
