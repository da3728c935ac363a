"""Randomised property audits.

Each check runs ``trials`` independent trials; trial ``t`` draws from
``numpy.random.default_rng(seed + t)`` so results do not depend on
scheduling. A check returns a :class:`CheckResult` listing failing seeds.
"""

from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from . import __version__
from .bases import OperatorBasis, basis_validity, rank_one_basis
from .maps import (
    LinearMap,
    choi_matrix,
    conjugation_map,
    is_coi,
    is_cp,
    map_from_choi,
)
from .matrix_core import DEFAULT_TOL, Tolerances, allclose_scaled, is_psd, permute_systems
from .random_ops import (
    PRNG_ALGORITHM,
    VALID_SUPERMAP_BASIS_KINDS,
    SUPERMAP_BASIS_KINDS,
    ginibre,
    rand_basis,
    rand_ccpp,
    rand_cp_map,
    rand_invertible,
    rand_non_ccpp,
    rand_non_cp_map,
    rand_psd_choi_map,
    rand_sandwich,
    rand_supermap,
    rand_supermap_basis,
)
from .serialization import basis_to_json, map_to_json, supermap_basis_to_json, supermap_to_json
from .supermaps import (
    SuperMap,
    SuperMapBasis,
    adjoint_supermap,
    apply_supermap,
    choi_type,
    coi_supermap_action,
    compose_supermap,
    correspondence_check_basis,
    correspondence_check_G,
    is_ccpp,
    is_coi_supermap,
    map_pairing,
    pairing,
    representing_map,
    supermap_from_representing,
    swap_choi_type,
    tensor_supermap,
    theta_of_G,
)

REL_TOL = 1e-9


def rel_close(a, b, tol: float = REL_TOL) -> bool:
    return allclose_scaled(a, b, tol)


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: List[dict] = field(default_factory=list)
    spectra: List[list] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "failures": self.failures[:5],
            "n_failures": len(self.failures),
            **({"notes": self.notes} if self.notes else {}),
        }


def _run(name: str, trials: int, seed: int, trial: Callable[[np.random.Generator, int], Optional[dict]]):
    result = CheckResult(name, trials)
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        bad = trial(rng, t)
        if bad:
            result.failures.append({"seed": seed + t, **bad})
    return result


# Empirical oracles


def empirical_basis_correspondence(
    basis: OperatorBasis, rng: np.random.Generator, n_maps: int = 50, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Sample maps and test ``Phi CP <=> sum h (x) Phi(h) PSD`` directly.

    Half the samples are Kraus maps, half have a planted negative Choi
    eigenvalue. The correspondence is declared to hold when every sample
    agrees.
    """
    n = basis.dim
    for s in range(n_maps):
        if s % 2 == 0:
            phi = rand_cp_map(n, n, int(rng.integers(1, n * n + 1)), rng)
        else:
            phi = rand_non_cp_map(n, n, rng)
        if is_cp(phi, tol).holds != is_psd(choi_matrix(phi, basis), tol):
            return False
    return True


def empirical_supermap_correspondence(
    basis: SuperMapBasis, rng: np.random.Generator, n_samples: int = 30, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Compare ``is_ccpp(Theta)`` with CP-ness of ``Lambda^F_Theta`` on samples.

    Half the samples are CCPP by construction, half have a planted negative
    representing-map Choi eigenvalue.
    """
    dims = (basis.n1, basis.n2, basis.n1, basis.n2)
    for s in range(n_samples):
        theta = rand_ccpp(dims, rng) if s % 2 == 0 else rand_non_ccpp(dims, rng)
        lam = choi_type(theta, basis)
        if is_ccpp(theta, tol).holds != is_cp(lam.map, tol).holds:
            return False
    return True


def apply_with_ancilla(theta: SuperMap, phi: LinearMap, k1: int, k2: int) -> LinearMap:
    """``(id (x) Theta)(phi)`` for ``phi: B(K1 H1) -> B(K2 H2)``.

    Works blockwise on Choi matrices through the representing map, which
    avoids forming the (large) tensor super-map.
    """
    n1, n2, n3, n4 = theta.dims
    t = representing_map(theta)
    c = permute_systems(choi_matrix(phi), (k1, n1, k2, n2), (0, 2, 1, 3))
    a, d = k1 * k2, n1 * n2
    blocks = c.reshape(a, d, a, d).transpose(0, 2, 1, 3).reshape(a * a, d * d)
    out = (blocks @ t.natural.T).reshape(a, a, n3 * n4, n3 * n4)
    out = out.transpose(0, 2, 1, 3).reshape(a * n3 * n4, a * n3 * n4)
    out = permute_systems(out, (k1, k2, n3, n4), (0, 2, 1, 3))
    return map_from_choi(out, k1 * n3, k2 * n4)


def _canonical_cp_inputs(n1: int, n2: int) -> list:
    """Rank-one Choi inputs built from pairs of computational basis vectors."""
    d = n1 * n2
    inputs = []
    for a in range(d):
        for b in range(a, d):
            for phase in (1,) if a == b else (1, 1j):
                v = np.zeros(d, dtype=complex)
                v[a] += 1
                v[b] += phase
                inputs.append(map_from_choi(np.outer(v, v.conj()), n1, n2))
    return inputs


def find_cp_violation(theta: SuperMap, tol: Tolerances = DEFAULT_TOL) -> Optional[str]:
    """Search for a CP input whose image under ``id (x) Theta`` is not CP.

    Tries canonical-basis rank-one inputs without ancilla first, then the
    maximally entangled Choi input with ancilla ``K1 (x) K2 ~ H1 (x) H2``.
    Returns a description of the violating input, or ``None``.
    """
    n1, n2, _, _ = theta.dims
    for idx, phi in enumerate(_canonical_cp_inputs(n1, n2)):
        if not is_cp(apply_supermap(theta, phi), tol).holds:
            return f"canonical-input-{idx}"
    d = n1 * n2
    omega = np.eye(d).reshape(-1)
    c = permute_systems(np.outer(omega, omega), (n1, n2, n1, n2), (0, 2, 1, 3))
    phi = map_from_choi(c, n1 * n1, n2 * n2)
    if not is_cp(apply_with_ancilla(theta, phi, n1, n2), tol).holds:
        return "maximally-entangled-ancilla"
    return None


# Checks: algebraic properties


def check_self_duality(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        p = pairing(rand_ccpp(dims, rng), rand_ccpp(dims, rng))
        if p.real < -REL_TOL or abs(p.imag) > REL_TOL:
            return {"pairing": [p.real, p.imag]}

    return _run("self-duality-sampled", trials, seed, trial)


def check_pairing_symmetry(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        a, b = rand_supermap(dims, rng), rand_supermap(dims, rng)
        if not rel_close(pairing(a, b), pairing(b, a)):
            return {
                "detail": "pairing not symmetric",
                "counterexample": [supermap_to_json(a), supermap_to_json(b)],
            }

    return _run("pairing-symmetry", trials, seed, trial)


def check_tensor_factorisation(trials, seed, n=2, tol=DEFAULT_TOL):
    # Tensor super-maps on dims n*n are large; keep the factors at dims 2 when n > 2.
    m = min(n, 2)
    dims = (m, m, m, m)

    def trial(rng, t):
        t1, t2, d1, d2 = (rand_supermap(dims, rng) for _ in range(4))
        lhs = pairing(tensor_supermap(t1, t2), tensor_supermap(d1, d2))
        rhs = pairing(t1, d1) * pairing(t2, d2)
        if not rel_close(lhs, rhs):
            return {"lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag]}

    return _run("tensor-factorisation", trials, seed, trial)


def check_adjoint_identity(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        theta = rand_supermap(dims, rng)
        psi = LinearMap(n, n, ginibre(n * n, n * n, rng))
        phi = LinearMap(n, n, ginibre(n * n, n * n, rng))
        lhs = map_pairing(apply_supermap(adjoint_supermap(theta), psi), phi)
        rhs = map_pairing(psi, apply_supermap(theta, phi))
        if not rel_close(lhs, rhs):
            return {"detail": "adjoint pairing identity", "counterexample": supermap_to_json(theta)}
        if not rel_close(adjoint_supermap(adjoint_supermap(theta)).coeff, theta.coeff):
            return {"detail": "double adjoint", "counterexample": supermap_to_json(theta)}

    return _run("adjoint-is-coefficient-transpose", trials, seed, trial)


def check_choi_type_swap(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        theta = rand_supermap(dims, rng)
        lam = choi_type(theta)
        swapped = swap_choi_type(choi_type(adjoint_supermap(theta)))
        if swapped.dims != lam.dims or not rel_close(swapped.map.natural, lam.map.natural):
            return {"detail": "Lambda_Theta != Lambda'_{Theta*}", "counterexample": supermap_to_json(theta)}

    return _run("choi-type-swap", trials, seed, trial)


def check_adjoint_pairing_invariance(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        a, b = rand_supermap(dims, rng), rand_supermap(dims, rng)
        if not rel_close(pairing(adjoint_supermap(a), adjoint_supermap(b)), pairing(a, b)):
            return {
                "detail": "adjoint pairing invariance",
                "counterexample": [supermap_to_json(a), supermap_to_json(b)],
            }
        c = rand_supermap(dims, rng)
        lhs = adjoint_supermap(compose_supermap(a, c))
        rhs = compose_supermap(adjoint_supermap(c), adjoint_supermap(a))
        if not rel_close(lhs.coeff, rhs.coeff):
            return {"detail": "adjoint of composition"}

    return _run("adjoint-pairing-invariance", trials, seed, trial)


def check_representing_map_isomorphism(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        a, b = rand_supermap(dims, rng), rand_supermap(dims, rng)
        ta = representing_map(a)
        if not rel_close(supermap_from_representing(ta, dims).coeff, a.coeff):
            return {"detail": "Theta -> T -> Theta", "counterexample": supermap_to_json(a)}
        t_rand = LinearMap(n * n, n * n, ginibre(n**4, n**4, rng))
        if not rel_close(representing_map(supermap_from_representing(t_rand, dims)).natural, t_rand.natural):
            return {"detail": "T -> Theta -> T"}
        tb = representing_map(b)
        if not rel_close(representing_map(compose_supermap(a, b)).natural, ta.natural @ tb.natural):
            return {"detail": "not multiplicative"}
        alpha, beta = ginibre(1, 2, rng)[0]
        combo = SuperMap(dims, alpha * a.coeff + beta * b.coeff)
        if not rel_close(representing_map(combo).natural, alpha * ta.natural + beta * tb.natural):
            return {"detail": "not linear"}

    return _run("representing-map-isomorphism", trials, seed, trial)


# Checks: structure results


def check_cp_iff_psd_choi(trials, seed, n=2, tol=DEFAULT_TOL):
    def trial(rng, t):
        if not is_cp(rand_cp_map(n, n, int(rng.integers(1, n * n + 1)), rng), tol).holds:
            return {"detail": "Kraus map judged not CP"}
        if not is_cp(rand_psd_choi_map(n, n, rng), tol).holds:
            return {"detail": "PSD-Choi map judged not CP"}
        if is_cp(rand_non_cp_map(n, n, rng), tol).holds:
            return {"detail": "planted negative Choi judged CP"}

    return _run("cp-iff-psd-choi", trials, seed, trial)


def check_rank_one_bases(trials, seed, dims=(2, 3), tol=DEFAULT_TOL, witness_tol=1e-8):
    def trial(rng, t):
        n = dims[t % len(dims)]
        z = rand_invertible(n, rng)
        basis = rank_one_basis(z, tol)
        verdict = basis_validity(basis, tol)
        if not verdict.valid or verdict.witness is None:
            return {"n": n, "reason": verdict.reason, "counterexample": basis_to_json(basis)}
        w = verdict.witness
        rebuilt = np.einsum("ia,jb->ijab", w, w.conj()).reshape(n * n, n, n)
        err = float(np.max(np.abs(rebuilt - basis.elements)))
        if err >= witness_tol:
            return {"n": n, "witness_error": err}

    return _run("rank-one-bases-valid-with-witness", trials, seed, trial)


def check_generic_bases(trials, seed, n=2, n_maps=50, tol=DEFAULT_TOL):
    result_spectra = []

    def trial(rng, t):
        basis = rand_basis(n, "generic-gaussian", rng)
        verdict = basis_validity(basis, tol)
        empirical = empirical_basis_correspondence(basis, rng, n_maps, tol)
        if t < 3:
            result_spectra.append([float(x) for x in verdict.spectrum])
        if verdict.valid != empirical:
            return {"verdict": verdict.valid, "empirical": empirical, "counterexample": basis_to_json(basis)}

    res = _run("generic-bases-vs-empirical", trials, seed, trial)
    res.spectra = result_spectra
    return res


def check_coi_structure(trials, seed, n=2, tol=DEFAULT_TOL, k_tol=1e-8):
    def trial(rng, t):
        k0 = rand_invertible(n, rng)
        v = is_coi(conjugation_map(k0), tol)
        if not v.is_coi:
            return {
                "detail": "conjugation rejected",
                "reason": v.reason,
                "counterexample": map_to_json(conjugation_map(k0)),
            }
        phase = np.vdot(v.k_witness, k0)
        phase /= abs(phase)
        err = np.linalg.norm(v.k_witness * phase - k0) / np.linalg.norm(k0)
        if err >= k_tol:
            return {"detail": "K not recovered", "relative_error": float(err)}
        phi = rand_cp_map(n, n, int(rng.integers(2, n * n + 1)), rng)
        v2 = is_coi(phi, tol)
        if v2.is_coi or v2.reason != "choi-rank>1":
            return {
                "detail": "rank>=2 map accepted or wrong reason",
                "reason": v2.reason,
                "counterexample": map_to_json(phi),
            }

    return _run("coi-structure", trials, seed, trial)


def check_supermap_bases(trials, seed, n=2, n_samples=30, tol=DEFAULT_TOL):
    """Decision procedure vs. direct audit over a rotation of basis kinds."""
    spectra = []
    tally: Dict[str, list] = {}

    def trial(rng, t):
        kind = SUPERMAP_BASIS_KINDS[t % len(SUPERMAP_BASIS_KINDS)]
        basis = rand_supermap_basis(n, n, kind, rng)
        verdict = correspondence_check_basis(basis, tol)
        empirical = empirical_supermap_correspondence(basis, rng, n_samples, tol)
        tally.setdefault(kind, [0, 0])[int(verdict.holds)] += 1
        if t < len(SUPERMAP_BASIS_KINDS):
            spectra.append([float(x) for x in verdict.spectrum])
        if verdict.holds != empirical:
            return {
                "kind": kind,
                "verdict": verdict.holds,
                "empirical": empirical,
                "counterexample": supermap_basis_to_json(basis),
            }
        if verdict.holds != (kind in VALID_SUPERMAP_BASIS_KINDS):
            return {"kind": kind, "verdict": verdict.holds, "detail": "unexpected verdict for kind"}

    res = _run("supermap-bases-vs-empirical", trials, seed, trial)
    res.spectra = spectra
    res.notes["holds/fails by kind"] = {k: {"fails": v[0], "holds": v[1]} for k, v in tally.items()}
    return res


def check_generator_correspondence(trials, seed, n=2, tol=DEFAULT_TOL):
    dims = (n, n, n, n)

    def trial(rng, t):
        theta0 = rand_supermap(dims, rng)
        g = choi_type(theta0)
        if not rel_close(theta_of_G(g).coeff, theta0.coeff):
            return {"detail": "Theta^G did not recover Theta0"}
        sandwich, _, _ = rand_sandwich(dims, rng)
        if not correspondence_check_G(choi_type(sandwich), tol).holds:
            return {"detail": "COI-generated G rejected"}
        if correspondence_check_G(g, tol).holds:
            return {"detail": "generic G accepted"}

    return _run("generator-correspondence", trials, seed, trial)


def check_ccpp_iff_t_cp(trials, seed, n=2, tol=DEFAULT_TOL, n_inputs=20):
    dims = (n, n, n, n)

    def trial(rng, t):
        theta = rand_ccpp(dims, rng)
        if not is_ccpp(theta, tol).holds:
            return {"detail": "CP-T super-map judged not CCPP", "counterexample": supermap_to_json(theta)}
        for _ in range(n_inputs):
            phi = rand_cp_map(n, n, int(rng.integers(1, n * n + 1)), rng)
            if not is_cp(apply_supermap(theta, phi), tol).holds:
                return {"detail": "CCPP super-map broke CP"}
        big = rand_cp_map(n * n, n * n, int(rng.integers(1, 5)), rng)
        if not is_cp(apply_with_ancilla(theta, big, n, n), tol).holds:
            return {"detail": "id (x) Theta broke CP"}
        bad = rand_non_ccpp(dims, rng)
        if is_ccpp(bad, tol).holds:
            return {"detail": "planted-negative T judged CCPP"}
        if find_cp_violation(bad, tol) is None:
            return {"detail": "no CP violation found for non-CP T", "counterexample": supermap_to_json(bad)}

    return _run("ccpp-iff-T-cp", trials, seed, trial)


def check_coi_supermap_structure(trials, seed, n=2, tol=DEFAULT_TOL, n_pairs=10):
    dims = (n, n, n, n)

    def trial(rng, t):
        theta, pre, post = rand_sandwich(dims, rng)
        v = is_coi_supermap(theta, tol)
        if not v.is_coi:
            return {"detail": "sandwich rejected", "reason": v.reason, "counterexample": supermap_to_json(theta)}
        for _ in range(n_pairs):
            phi = LinearMap(n, n, ginibre(n * n, n * n, rng))
            a = ginibre(n, n, rng)
            expected = apply_supermap(theta, phi)(a)
            got = coi_supermap_action(v.k_witness, phi, a, n)
            if not rel_close(got, expected):
                return {"detail": "K does not reproduce Theta"}
        mixed = rand_ccpp(dims, rng, k_kraus=2)
        v2 = is_coi_supermap(mixed, tol)
        if v2.is_coi or v2.reason != "choi-rank>1":
            return {"detail": "rank-2 representing map accepted", "reason": v2.reason}

    return _run("coi-supermap-structure", trials, seed, trial)


PROPERTY_CHECKS = [
    check_self_duality,
    check_pairing_symmetry,
    check_tensor_factorisation,
    check_adjoint_identity,
    check_choi_type_swap,
    check_adjoint_pairing_invariance,
    check_representing_map_isomorphism,
]


def _theorem_checks(trials, seed, n, tol):
    return [
        check_cp_iff_psd_choi(trials, seed, n, tol),
        check_rank_one_bases(trials, seed, tol=tol),
        check_generic_bases(trials, seed, n, tol=tol),
        check_coi_structure(trials, seed, n, tol),
        check_supermap_bases(trials, seed, n, tol=tol),
        check_generator_correspondence(trials, seed, n, tol),
        check_ccpp_iff_t_cp(trials, seed, n, tol),
        check_coi_supermap_structure(trials, seed, n, tol),
    ]


@dataclass
class AuditReport:
    command: str
    seed: int
    trials: int
    verdicts: list
    spectra: list
    elapsed_ms: int
    tolerances: Tolerances
    version: str = __version__
    prng: str = PRNG_ALGORITHM

    @property
    def passed(self) -> bool:
        return all(v.get("passed", v.get("holds", v.get("valid", False))) for v in self.verdicts)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["tolerances"] = self.tolerances.as_dict()
        d["passed"] = self.passed
        return d


def run_audit(suite: str, trials: int, seed: int, n: int = 2, tol: Tolerances = DEFAULT_TOL) -> AuditReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if suite not in ("props", "theorems", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    results: List[CheckResult] = []
    if suite in ("props", "all"):
        results += [check(trials, seed, n, tol) for check in PROPERTY_CHECKS]
    if suite in ("theorems", "all"):
        results += _theorem_checks(trials, seed, n, tol)
    elapsed = int((time.perf_counter() - start) * 1000)
    spectra = [s for r in results for s in r.spectra]
    return AuditReport(
        f"audit --suite {suite}", seed, trials, [r.summary() for r in results], spectra, elapsed, tol
    )
