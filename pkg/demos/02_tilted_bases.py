# Tilted bases |i><lambda_j| mix one orthonormal family with another.
# Whether that breaks the Choi criterion depends on lambda being real or not.

# %%
import numpy as np

from choiduality import basis_validity, choi_matrix, identity_map, tilted_basis
from choiduality.cases import HADAMARD, PHASE_HADAMARD
from choiduality.matrix_core import hermiticity_defect

np.set_printoptions(precision=4, suppress=True)

# %% real Hadamard rotation: sum_j lambda_j (x) lambda_j is unchanged by a real
# orthogonal matrix, so the Choi matrix of the identity is still |Omega><Omega|
c_real = choi_matrix(identity_map(2), tilted_basis(np.eye(2), HADAMARD.T))
print("real lambda, defect:", hermiticity_defect(c_real))
print("eigenvalues:", np.linalg.eigvalsh(c_real))

# %% complex rotation lambda = (1, +-i)/sqrt2
c_cplx = choi_matrix(identity_map(2), tilted_basis(np.eye(2), PHASE_HADAMARD.T))
print("complex lambda, Choi matrix:\n", c_cplx)
print("max |C - C^dagger|:", hermiticity_defect(c_cplx))

# %% the basis verdict agrees: M = W W^t is X -> X diag(1, -1), not a conjugation
for name, lam in [("real", HADAMARD), ("complex", PHASE_HADAMARD)]:
    v = basis_validity(tilted_basis(np.eye(2), lam.T))
    print(f"{name:8s} valid={v.valid}  reason={v.reason}")
