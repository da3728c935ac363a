"""Choi-type dualities for quantum channels and super-maps under arbitrary bases."""

__version__ = "0.1.0"

from .matrix_core import (
    DEFAULT_TOL,
    DimensionError,
    NotHermitianError,
    Tolerances,
    hermitian_eigenvalues,
    is_psd,
    kron,
    matrix_rank,
    partial_trace,
    unvec,
    unvec_cols,
    vec,
    vec_cols,
)
from .verdicts import BasisVerdict, CoiVerdict, Verdict
from .maps import (
    LinearMap,
    apply,
    choi_matrix,
    compose_map,
    identity_map,
    is_coi,
    is_cp,
    map_from_action,
    map_from_choi,
    map_from_kraus,
    tensor_map,
    transpose_map,
)
from .bases import (
    BasisError,
    OperatorBasis,
    basis_validity,
    canonical_basis,
    change_of_basis_W,
    m_superoperator,
    pauli_basis,
    rank_one_basis,
    tilted_basis,
)
from .supermaps import (
    ChoiType,
    SuperMap,
    SuperMapBasis,
    adjoint_supermap,
    apply_supermap,
    canonical_supermap_basis,
    choi_matrix_of_choi_type,
    choi_type,
    compose_supermap,
    correspondence_check_basis,
    correspondence_check_G,
    functional_basis,
    identity_supermap,
    is_ccpp,
    is_coi_supermap,
    pairing,
    representing_map,
    sandwich_supermap,
    supermap_from_action,
    supermap_from_representing,
    tensor_supermap,
    theta_of_basis,
    theta_of_G,
)
