# %% [markdown]
# Haar averages as Toeplitz determinants
#
# The average of prod_j g(theta_j) over the eigenphases of a Haar-random
# U(N) equals det(g_{j-k}).  Check it for g = sign(cos theta).

# %%
import numpy as np

from fermichain import JumpSet, sign_symbol_fourier, sign_symbol_values
from fermichain.rmt import heine_szego_check, haar_unitary_sample, make_stream, eigenphases

jumps = JumpSet((np.pi / 2,))
print("g_k, k = 0..5:", np.round(sign_symbol_fourier(jumps, np.arange(6)), 6))

# %%
for N in (2, 3, 4, 5):
    c = heine_szego_check(lambda t: sign_symbol_values(jumps, t),
                          lambda k: float(sign_symbol_fourier(jumps, k)), N, samples=100_000, seed=1)
    print(f"N={N}  Monte Carlo {c.mc_mean.real:+.4f} +- {c.stderr:.4f}  determinant {c.determinant.real:+.4f}  z={c.z:+.2f}")

# %%
# level repulsion: small gaps are rare compared with independent phases
theta = np.sort(eigenphases(haar_unitary_sample(10, make_stream(0), 5000)), axis=-1)
gaps = np.diff(np.concatenate([theta, theta[:, :1] + 2 * np.pi], axis=1), axis=1) * 10 / (2 * np.pi)
print(f"fraction of gaps below 0.1 mean spacing: {np.mean(gaps < 0.1):.4f} (Poisson: {1 - np.exp(-0.1):.4f})")
