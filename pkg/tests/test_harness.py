import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from aoweno import harness, problems
from aoweno.harness import CostReport, ErrorReport, ErrorRow, error_norms


# {{{ norms


def test_identical_fields():
    a = np.random.default_rng(0).normal(size=20)
    assert error_norms(a, a, (0.0, 1.0)) == (0.0, 0.0)


def test_printed_l1_convention():
    # four samples on [0, 1] carry weight 1/4 each
    assert error_norms(np.ones(4), np.zeros(4), (0.0, 1.0)) == (1.0, 1.0)


def test_single_point_error():
    e = np.zeros(10)
    e[3] = 2.0
    linf, l1 = error_norms(e, np.zeros(10), (0.0, 5.0))
    assert linf == 2.0 and l1 == pytest.approx(1.0)


def test_2d_weight_is_product():
    linf, l1 = error_norms(np.ones((4, 8)), np.zeros((4, 8)), ((0.0, 2.0), (0.0, 1.0)))
    assert l1 == pytest.approx(2.0)


@pytest.mark.parametrize("a, b, domain", [
    (np.zeros(3), np.zeros(4), (0.0, 1.0)),
    (np.zeros((3, 3)), np.zeros((3, 3)), (0.0, 1.0)),
])
def test_norm_errors(a, b, domain):
    with pytest.raises(ValueError):
        error_norms(a, b, domain)


@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=50))
def test_norms_are_nonnegative_and_ordered(values):
    e = np.array(values)
    linf, l1 = error_norms(e, np.zeros_like(e), (0.0, 1.0))
    assert 0.0 <= l1 <= linf + 1e-12


# }}}


# {{{ reports


def _report():
    rows = [ErrorRow(20, 1.3e-3, 4.1e-4, 0.5), ErrorRow(40, 4.2e-5, 1.4e-5, 1.1), ErrorRow(80, 1.3e-6, 4.4e-7, 2.3)]
    return ErrorReport("advection_smooth", "ao53", rows)


def test_orders_are_log2_ratios():
    r = _report()
    assert r.linf_orders[0] is None
    for k in (1, 2):
        assert abs(r.linf_orders[k] - math.log2(r.rows[k - 1].linf / r.rows[k].linf)) < 1e-12
        assert abs(r.l1_orders[k] - math.log2(r.rows[k - 1].l1 / r.rows[k].l1)) < 1e-12


def test_report_csv_round_trip():
    text = _report().to_csv()
    assert text.splitlines()[0] == "N,linf,linf_order,l1,l1_order,seconds"
    back = ErrorReport.from_csv(text, "advection_smooth", "ao53")
    assert back.to_csv() == text
    # the second row has no order in the first line
    assert text.splitlines()[1].split(",")[2] == ""


def test_report_rejects_foreign_csv():
    with pytest.raises(ValueError, match="header"):
        ErrorReport.from_csv("a,b\n1,2\n")


def test_cost_report_baseline():
    rep = CostReport("shock_vortex", {"js": 0.8, "ao53": 2.0, "ao543": 2.2}, 3)
    assert rep.relative["ao53"] == 1.0
    assert rep.relative["js"] == pytest.approx(0.4)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "test,js,ao53,ao543"
    assert lines[1].split(",")[2] == "1.000000"


def test_benchmark_needs_repeats():
    with pytest.raises(ValueError):
        harness.benchmark("sod", ["js"], repeats=2)


def test_benchmark_adds_baseline():
    rep = harness.benchmark("sod", ["js"], repeats=3, n=40, max_steps=2)
    assert set(rep.seconds) == {"js", "ao53"}
    assert rep.relative["ao53"] == 1.0 and rep.steps == 2


# }}}


# {{{ studies


def test_convergence_study_small():
    spec = problems.build("advection_smooth").with_(t_final=0.5)
    rep = harness.convergence_study(spec, "ao53", [20, 40])
    assert [r.n for r in rep.rows] == [20, 40]
    assert rep.linf_orders[1] > 4.0
    assert all(r.linf >= 0 and r.l1 >= 0 for r in rep.rows)


def test_convergence_needs_exact_solution():
    with pytest.raises(ValueError, match="exact"):
        harness.convergence_study("shu_osher", "js", [20])


def test_constant_data_gives_zero_shock_error():
    spec = problems.build("sod").with_(options={"right": (1.0, 0.0, 1.0)}, t_final=0.05)
    cmp = harness.shock_comparison(spec, ["js", "ao543"], 50)
    assert cmp.l1 == {"js": 0.0, "ao543": 0.0} or max(cmp.l1.values()) < 1e-13
    assert cmp.errors_csv().splitlines()[0] == "scheme,N,l1"
    assert cmp.profiles_csv().splitlines()[0] == "x,reference,js,ao543"


def test_determinism():
    a = harness.simulate("sod", "ao53", 60)
    b = harness.simulate("sod", "ao53", 60)
    assert a.steps == b.steps
    np.testing.assert_array_equal(a.u, b.u)
    buf_a, buf_b = io.StringIO(), io.StringIO()
    harness.write_columns(buf_a, harness.snapshot_columns(a.spec, a.grid, a.u))
    harness.write_columns(buf_b, harness.snapshot_columns(b.spec, b.grid, b.u))
    assert buf_a.getvalue() == buf_b.getvalue()


def test_snapshot_round_trip(tmp_path):
    res = harness.simulate("explosion", "js", (12, 10), max_steps=2)
    path = tmp_path / "snap.csv"
    harness.write_snapshot(path, res)
    cols = harness.read_columns(path)
    assert list(cols) == ["x", "y", "rho", "u", "v", "p"]
    assert cols["x"].size == 120
    again = tmp_path / "again.csv"
    harness.write_columns(again, cols)
    assert again.read_text() == path.read_text()


def test_max_steps_short_of_final_time():
    res = harness.simulate("sod", "js", 40, max_steps=3)
    assert res.steps == 3 and res.t < 0.16


# }}}
