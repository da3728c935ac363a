# Choi's test for complete positivity depends on the basis you sum over.
# Here we use the identity channel, the most positive map there is, and check it
# in two bases.

# %%
import numpy as np

from choiduality import choi_matrix, hermitian_eigenvalues, identity_map, is_cp, pauli_basis

np.set_printoptions(precision=4, suppress=True)

ident = identity_map(2)

# %% matrix units: sum_ij e_ij (x) e_ij is |Omega><Omega|
c = choi_matrix(ident)
print("canonical Choi matrix of the identity:\n", c.real)
print("spectrum:", hermitian_eigenvalues(c))
print("is_cp:", is_cp(ident).summary()["holds"])

# %% same map, Pauli basis {I, X, Y, Z}
c_pauli = choi_matrix(ident, pauli_basis())
print("Pauli-basis Choi matrix:\n", c_pauli)
print("spectrum:", hermitian_eigenvalues(c_pauli))  # one eigenvalue is -2

# The Pauli sum equals twice the swap operator. It is not positive even though
# the identity channel is CP, so the criterion fails in this basis.
swap = np.eye(4)[[0, 2, 1, 3]]
print("equals 2 * SWAP:", np.allclose(c_pauli, 2 * swap))
