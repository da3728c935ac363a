# A super-map is completely CP-preserving exactly when its representing map
# T (acting on Choi matrices) is CP. The invertible ones whose inverse is also
# CCPP are sandwiches: Theta(Phi) = U Phi(V^dagger . V) U^dagger.

# %%
import numpy as np

from choiduality import is_ccpp, is_coi_supermap, representing_map, sandwich_supermap
from choiduality.audit import find_cp_violation
from choiduality.random_ops import rand_ccpp, rand_cp_map, rand_invertible, rand_non_ccpp, rand_unitary
from choiduality.supermaps import coi_supermap_action

dims = (2, 2, 2, 2)

# %% CP representing map <=> CCPP
good, bad = rand_ccpp(dims, 0), rand_non_ccpp(dims, 0)
print("random CP-T super-map CCPP:", bool(is_ccpp(good)))
print("planted negative T CCPP:", bool(is_ccpp(bad)), "| violated by:", find_cp_violation(bad))

# %% a sandwich and its Kraus-like witness K
u, v = rand_unitary(2, 1), rand_invertible(2, 2)
theta = sandwich_supermap(v.conj().T, u)
verdict = is_coi_supermap(theta)
k = verdict.k_witness
phase = np.vdot(k, np.kron(v.conj(), u))
print("T is conjugation by K:", verdict.reason, "| K ~ conj(V) (x) U:",
      np.allclose(k * phase / abs(phase), np.kron(v.conj(), u)))
print("T is a single conjugation, natural matrix K (x) conj(K):",
      np.allclose(representing_map(theta).natural, np.kron(k, k.conj())))

# %% K reproduces the super-map through tr_3[(A^t (x) I) K C_Phi K^dagger]
rng = np.random.default_rng(3)
phi = rand_cp_map(2, 2, 2, rng)
a = rng.standard_normal((2, 2))
print("K reproduces Theta:", np.allclose(coi_supermap_action(k, phi, a, 2), theta(phi)(a)))
