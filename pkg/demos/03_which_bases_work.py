# A basis keeps "CP <=> positive Choi matrix" exactly when M = W W^t is a
# congruence X -> K X K^dagger. Rank-one bases |zeta_i><zeta_j| are the
# standard example. We compare the verdict with brute-force sampling.

# %%
import numpy as np

from choiduality import basis_validity, rank_one_basis
from choiduality.audit import empirical_basis_correspondence
from choiduality.random_ops import BASIS_KINDS, rand_basis, rand_invertible

rng = np.random.default_rng(7)

# %% a random rank-one basis, and the zeta the checker recovers
z = rand_invertible(3, rng)
v = basis_validity(rank_one_basis(z))
phase = np.vdot(v.witness, z)
print("valid:", v.valid, " zeta error:", np.abs(v.witness * phase / abs(phase) - z).max())

# %% verdict vs sampling, over each kind of random basis
for kind in BASIS_KINDS:
    agree = 0
    valid = 0
    for _ in range(20):
        b = rand_basis(2, kind, rng)
        verdict = basis_validity(b).valid
        valid += verdict
        agree += verdict == empirical_basis_correspondence(b, rng, n_maps=20)
    print(f"{kind:18s} valid {valid:2d}/20   agrees with sampling {agree:2d}/20")
