import pytest

from fracmom.moments import IDENTITY_SUITES, BernoulliPoly, Power, Sine, SymPower
from fracmom.registry import parse_registry
from fracmom.verify import GridOptions, build_cells, classify, run_cells

OPTS = GridOptions(max_m=3, max_k=3, tol="1e-15", precision=20)


def test_build_cells():
    identities = build_cells("identities", OPTS)
    assert [name for name, _ in identities] == ["identity"] * len(IDENTITY_SUITES)
    everything = build_cells("all", OPTS)
    assert len(everything) == sum(len(build_cells(s, OPTS)) for s in ("identities", "moments", "sequences"))
    names = {name for name, _ in build_cells("moments", OPTS)}
    assert {"moment", "furdui", "zeta-sum", "decomposition", "hermite", "double"} <= names


def test_identity_cells_pass():
    records = run_cells(build_cells("identities", OPTS), OPTS)
    assert all(r["passed"] and r["status"] == "all-exact" for r in records)
    assert classify(records) == (0, 0)


def test_numeric_cells_pass():
    cells = [
        ("polygamma", (2, 3)),
        ("sequence", (2,)),
        ("trig-loggamma", ("cosine", True)),
        ("zeta-sum", (3, "k-eq-m-minus-3")),
        ("decomposition", (2, 3)),
        ("double", (1, 2)),
    ]
    records = run_cells(cells, OPTS)
    failing = [r for r in records if not r["passed"]]
    assert not failing
    assert records[0]["check"] == "polygamma-integer"
    assert records[0]["symbolic"] == "9/4 - 2*zeta(3)"


def test_moment_cell_record():
    (record,) = run_cells([("moment", (Power(1), 1))], OPTS)
    assert record["suite"] == "moments"
    assert record["check"] == "cross-check"
    assert record["passed"] is True


def test_displayed_values_are_known_discrepancies():
    records = run_cells([("displayed", (2,))], OPTS)
    by_check = {}
    for record in records:
        by_check.setdefault(record["check"], []).append(record)
    assert by_check["a0-log-sqrt-2pi"][0]["passed"]
    assert not by_check["printed-a1"][0]["passed"]
    assert by_check["printed-a1-monomial"][0]["passed"]
    assert by_check["zeta-prime-zero"][0]["passed"]
    assert all(r["passed"] for r in by_check["zeta-prime-negative-even"])
    assert not any(r["passed"] for r in by_check["printed-zeta-prime-even"])

    failed, unexplained = classify(records)
    assert (failed, unexplained) == (3, 0)
    assert by_check["printed-a1"][0]["known"] == "printed-a1"


def test_unregistered_failures_are_unexplained():
    records = run_cells([("displayed", (1,))], OPTS)
    empty = parse_registry({"format_version": "1.0", "entries": []})
    assert classify(records, empty) == (2, 2)


def test_pool_keeps_cell_order():
    cells = [("polygamma", (m, n)) for m in range(3) for n in range(1, 4)]
    serial = run_cells(cells, OPTS)
    pooled = run_cells(cells, OPTS, workers=2)
    assert pooled == serial


@pytest.mark.slow
def test_full_sequence_suite_has_only_known_failures():
    opts = GridOptions(precision=30)
    records = run_cells(build_cells("sequences", opts), opts)
    failed, unexplained = classify(records)
    assert unexplained == 0
    assert failed > 0


@pytest.mark.slow
def test_full_moment_suite_passes():
    # power and bernoulli up to 6 with k <= 12; sympower to 5 with k <= 10; trig k <= 7
    opts = GridOptions(max_m=6, max_k=12, precision=30)
    cells = build_cells("moments", opts)
    assert ("moment", (Power(6), 12)) in cells
    assert ("moment", (BernoulliPoly(6), 12)) in cells
    assert ("moment", (SymPower(5), 10)) in cells
    assert ("moment", (Sine(), 7)) in cells
    records = run_cells(cells, opts, workers=4)
    _, unexplained = classify(records)
    assert unexplained == 0
