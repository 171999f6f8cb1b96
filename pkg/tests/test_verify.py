from fractions import Fraction

import pytest

from sptri.errors import InsufficientSamples
from sptri.families import INF
from sptri.verify import ALPHA_GRID, GAMMA_GRID, Claim, load_golden, params_for, verify_theorem


def test_golden_table_shape():
    golden = load_golden()
    assert golden["schema_version"] == 1
    assert len(golden["labels"]) == 19
    assert golden["dimension_counts"] == {"2": 5, "3": 9, "4": 4, "5": 1}
    assert len(golden["case_rows"]) == 16
    assert sum(r["image"] == "crazytau-failure" for r in golden["case_rows"]) == 2


def test_parameter_grids():
    assert params_for("alpha", 3) == [Fraction(0), INF, Fraction(1)]
    assert params_for("gamma", 2) == [Fraction(-1, 2), Fraction(-1)]
    assert params_for(None, 7) == [None]
    assert len(set(ALPHA_GRID)) == len(ALPHA_GRID) and len(set(GAMMA_GRID)) == len(GAMMA_GRID)


def test_small_grid_sweep():
    r = verify_theorem(grid=3, identity_draws=20)
    assert r.passed, [c.to_dict() for c in r.failures]
    assert len(r.reached) == 19 and r.counts() == {"2": 5, "3": 9, "4": 4, "5": 1}
    assert r.worst_residual <= 1e-9


def test_zero_tolerance_fails_cleanly():
    r = verify_theorem(grid=3, tol=0.0, identity_draws=5)
    assert not r.passed
    assert all(c.residual > 0 for c in r.failures)


def test_grid_too_small():
    with pytest.raises(InsufficientSamples):
        verify_theorem(grid=2)


def test_claim_serialisation():
    assert Claim("g", "n", True, 0.5, "d").to_dict() == {
        "group": "g", "claim": "n", "passed": True, "residual": 0.5, "detail": "d"}
