# One level up: super-maps send maps to maps. The Choi-type object
# sum_b F_b (x) Theta(F_b) plays the role of the Choi matrix, and again the
# basis matters.

# %%
import numpy as np

from choiduality import (
    canonical_supermap_basis,
    choi_matrix_of_choi_type,
    choi_type,
    correspondence_check_basis,
    functional_basis,
    identity_supermap,
    pauli_basis,
)
from choiduality.matrix_core import hermitian_eigenvalues

np.set_printoptions(precision=3, suppress=True)
theta = identity_supermap(2, 2)

# %% canonical basis: the identity super-map has a positive Choi-type matrix
w = hermitian_eigenvalues(choi_matrix_of_choi_type(choi_type(theta)))
print("canonical:", w)

# %% functional Pauli basis F_ij(X) = tr(sigma_i X) sigma_j
pauli_f = functional_basis(pauli_basis(), pauli_basis())
w = hermitian_eigenvalues(choi_matrix_of_choi_type(choi_type(theta, pauli_f)))
print("Pauli functional:", w)
print("negative eigenvalues:", int(np.sum(w < -1e-9)))  # six, each -4

# %% the decision procedure reaches the same conclusion without sampling
for name, basis in [("canonical", canonical_supermap_basis(2, 2)), ("pauli", pauli_f)]:
    print(name, correspondence_check_basis(basis).summary()["holds"])
