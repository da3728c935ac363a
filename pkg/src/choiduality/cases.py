"""The four worked examples: bases under which the Choi correspondences break.

Each ``case_k`` rebuilds the construction, checks the expected property and
returns a plain dict suitable for a report.
"""

from __future__ import annotations

import numpy as np

from .bases import canonical_basis, pauli_basis, tilted_basis
from .maps import choi_matrix, choi_psd_verdict, identity_map
from .matrix_core import DEFAULT_TOL, Tolerances, hermiticity_defect, hermitian_eigenvalues
from .supermaps import choi_matrix_of_choi_type, choi_type, functional_basis, identity_supermap

# Columns are an orthonormal basis that is not real-orthogonal to the
# standard one: |lambda_0> = (1, i)/sqrt2, |lambda_1> = (1, -i)/sqrt2.
PHASE_HADAMARD = np.array([[1, 1], [1j, -1j]]) / np.sqrt(2)
HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def tilted_choi_of_identity(lambdas_as_columns=PHASE_HADAMARD) -> np.ndarray:
    """``sum_ij E_ij (x) E_ij`` with ``E_ij = |i><lambda_j|``."""
    lam = np.asarray(lambdas_as_columns, dtype=complex)
    basis = tilted_basis(np.eye(len(lam)), lam.T)
    return choi_matrix(identity_map(len(lam)), basis)


def case_1(tol: Tolerances = DEFAULT_TOL) -> dict:
    c = choi_matrix(identity_map(2), pauli_basis())
    w = hermitian_eigenvalues(c, tol)
    expected = np.array([-2.0, 2.0, 2.0, 2.0])
    ok = bool(np.max(np.abs(w - expected)) <= tol.equality_tol)
    return {"case": 1, "passed": ok, "spectrum": w.tolist(), "expected": expected.tolist()}


def case_2(tol: Tolerances = DEFAULT_TOL, lambdas_as_columns=PHASE_HADAMARD) -> dict:
    c = tilted_choi_of_identity(lambdas_as_columns)
    defect = hermiticity_defect(c)
    verdict = choi_psd_verdict(c, tol)
    ok = defect > 0.1 and not verdict.holds
    return {
        "case": 2,
        "passed": bool(ok),
        "hermiticity_defect": defect,
        "psd": verdict.holds,
        "reason": verdict.reason,
        "expected": "hermiticity defect > 0.1 and not PSD",
    }


def case_3(tol: Tolerances = DEFAULT_TOL) -> dict:
    basis = functional_basis(pauli_basis(), pauli_basis())
    c = choi_matrix_of_choi_type(choi_type(identity_supermap(2, 2), basis))
    w = hermitian_eigenvalues(c, tol)
    negative = w[w < -tol.psd_tol]
    positive = w[w >= -tol.psd_tol]
    ok = (
        len(negative) == 6
        and np.all(np.abs(negative + 4) <= tol.equality_tol)
        and len(positive) == 10
        and np.all(np.abs(positive - 4) <= tol.equality_tol)
    )
    return {
        "case": 3,
        "passed": bool(ok),
        "spectrum": w.tolist(),
        "negative_count": int(len(negative)),
        "expected": "six eigenvalues -4, ten eigenvalues +4",
    }


def case_4(tol: Tolerances = DEFAULT_TOL, lambdas_as_columns=PHASE_HADAMARD) -> dict:
    lam = np.asarray(lambdas_as_columns, dtype=complex)
    n = len(lam)
    basis = functional_basis(canonical_basis(n), tilted_basis(np.eye(n), lam.T))
    c = choi_matrix_of_choi_type(choi_type(identity_supermap(n, n), basis))
    defect = hermiticity_defect(c)
    verdict = choi_psd_verdict(c, tol)
    ok = defect > tol.hermiticity_tol and not verdict.holds
    return {
        "case": 4,
        "passed": bool(ok),
        "hermiticity_defect": defect,
        "psd": verdict.holds,
        "reason": verdict.reason,
        "expected": "non-Hermitian Choi matrix, not semi-definite",
    }


CASES = {1: case_1, 2: case_2, 3: case_3, 4: case_4}


def run_case(k: int, tol: Tolerances = DEFAULT_TOL) -> dict:
    if k not in CASES:
        raise ValueError(f"case must be one of {sorted(CASES)}")
    return CASES[k](tol)
