import json
from fractions import Fraction

import pytest

from realchar import verify
from realchar.verify import Report, Row, recompute_pass


def test_diagonal_small_grid():
    r = verify.verify_theorem1([10**3, 10**4])
    assert len(r.rows) == 2
    assert abs(r.rows[1].deviation) < abs(r.rows[0].deviation)
    assert r.passed


def test_diagonal_single_cell_passes():
    assert verify.verify_theorem1([10**4]).passed


@pytest.mark.parametrize("grid", [[], [10**4, 10**3], [10**6]])
def test_diagonal_grid_preconditions(grid):
    with pytest.raises(ValueError):
        verify.verify_theorem1(grid)


def test_regimes_scoring():
    r = verify.verify_regimes()
    scored = [row for row in r.rows if row.inputs["scored"]]
    assert [row.inputs["regime"] for row in scored] == ["large_x", "large_y"]
    assert all(abs(row.deviation) <= 0.05 for row in scored)
    degenerate = next(row for row in r.rows if row.inputs["regime"] == "degenerate")
    assert degenerate.observed == 5000
    assert r.passed


def test_twisted_ell_one_matches_plain_diagonal():
    t2 = verify.verify_theorem2([1], 10**4)
    t1 = verify.verify_theorem1([10**4])
    assert t2.rows[0].observed == t1.rows[0].observed


def test_twisted_diagonal_cap():
    with pytest.raises(ValueError):
        verify.verify_theorem2([3], 10**5)


def test_partial_bound_cells():
    r = verify.verify_lemma2([1, 3], [10**3, 10**4])
    assert len(r.rows) == 4
    assert r.fitted_constants["c"] == max(row.deviation for row in r.rows)
    single = verify.verify_lemma2([1], [1])
    assert len(single.rows) == 1 and single.passed
    with pytest.raises(ValueError):
        verify.verify_lemma2([2], [10])


def test_gauss_small():
    r = verify.verify_gauss(oracle_n_max=101, k_max=10, q_max=12)
    assert r.passed and r.fitted_constants["mismatches"] == 0
    row = next(x for x in r.rows if x.inputs["part"] == "vanishing" and (x.inputs["p"], x.inputs["q"]) == (3, 5))
    assert row.observed < 1e-12
    row = next(x for x in r.rows if x.inputs["part"] == "table" and (x.inputs["p"], x.inputs["q"]) == (1, 2))
    assert row.inputs["closed"] == "plus_root_half_(1+i)"


def test_slope_report_shape():
    r = verify.verify_gerver_and_classifier(q_max=10)
    kinds = {row.inputs["kind"] for row in r.rows}
    assert kinds == {"quotient", "classifier", "c_prime"}
    assert all(row.deviation == 0 for row in r.rows if row.inputs["kind"] != "quotient")
    # at h = 1e-4 the O(h^(3/2)) remainder still moves the quotient at 1/3 and 3/5
    assert r.fitted_constants["max_slope_deviation"] > 0.05
    assert not r.passed
    with pytest.raises(ValueError):
        verify.verify_gerver_and_classifier(q_max=31)


def test_slope_passes_with_smaller_step():
    r = verify.verify_gerver_and_classifier(q_max=5, h=Fraction(1, 10**6))
    assert r.passed


def test_report_round_trip_and_recompute():
    r = verify.verify_theorem1([10**3, 10**4])
    text = r.to_json()
    assert json.loads(text)["pass"] is True
    back = Report.from_json(text)
    assert back == r
    assert recompute_pass(back) == back.passed


def test_pass_depends_only_on_rows_and_thresholds():
    r = verify.verify_theorem2([3], 10**4)
    broken = Report.from_dict(r.to_dict())
    broken.rows[0] = Row(broken.rows[0].inputs, 2.0, 1.0, 1.0)
    assert not recompute_pass(broken)
    tightened = Report.from_dict(r.to_dict())
    tightened.thresholds["band_low"] = 0.999
    assert not recompute_pass(tightened)


def test_reports_are_deterministic():
    a = verify.verify_lemma2([3, 5], [10**3, 10**4])
    b = verify.verify_lemma2([3, 5], [10**3, 10**4])
    assert a.same_result(b)


def test_unknown_check():
    with pytest.raises(ValueError):
        verify.run_check("nonsense")
