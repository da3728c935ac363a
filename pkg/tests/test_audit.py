import numpy as np

from choiduality import audit
from choiduality.audit import CheckResult, run_audit
from choiduality.serialization import supermap_from_json


def test_props_suite_passes_and_reports():
    report = run_audit("props", 5, 42)
    d = report.to_dict()
    assert report.passed
    assert len(d["verdicts"]) == 7
    assert d["prng"] == "PCG64" and d["version"] and d["tolerances"]["psd_tol"] == 1e-9


def test_theorems_suite_passes_small():
    assert run_audit("theorems", 3, 7).passed


def test_verdicts_are_reproducible():
    a, b = run_audit("all", 2, 0), run_audit("all", 2, 0)
    assert a.verdicts == b.verdicts
    assert a.spectra == b.spectra


def test_failures_carry_seed_and_counterexample(monkeypatch):
    # break the adjoint so the check must fail
    monkeypatch.setattr(audit, "adjoint_supermap", lambda theta: theta)
    res = audit.check_adjoint_identity(3, 10)
    assert not res.passed
    fail = res.failures[0]
    assert fail["seed"] == 10
    assert supermap_from_json(fail["counterexample"]).dims == (2, 2, 2, 2)


def test_check_result_summary_truncates():
    r = CheckResult("x", 10, [{"seed": i} for i in range(8)])
    s = r.summary()
    assert not s["passed"] and s["n_failures"] == 8 and len(s["failures"]) == 5


def test_run_audit_rejects_bad_arguments():
    for kwargs in ({"suite": "props", "trials": 0, "seed": 0}, {"suite": "bogus", "trials": 1, "seed": 0}):
        try:
            run_audit(**kwargs)
        except ValueError:
            continue
        raise AssertionError(kwargs)


def test_find_cp_violation_on_transposition():
    from choiduality.maps import LinearMap, transpose_map
    from choiduality.supermaps import canonical_supermap_basis, supermap_from_action

    t = transpose_map(2)
    theta = supermap_from_action(
        [LinearMap(2, 2, t.natural @ e.natural) for e in canonical_supermap_basis(2, 2).elements], 2, 2
    )
    assert audit.find_cp_violation(theta) is not None
    assert np.isfinite(run_audit("props", 1, 0).elapsed_ms)
