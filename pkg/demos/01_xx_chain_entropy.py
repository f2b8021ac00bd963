# %% [markdown]
# XX chain: entanglement entropy of a block
#
# Build the periodic XX chain, check the free-fermion pipeline against brute
# force on 10 sites, then watch the entropy grow like (1/3) log2 N at large N.

# %%
import numpy as np

from fermichain import xx_model, t_matrix_finite, truncate, entanglement_entropy
from fermichain.oracle import build_hamiltonian_dense, ground_state, reduced_density_entropy

spec = xx_model(alpha=2.0, M=10)
print(spec.to_json())

# %%
# brute force on 2^10 states versus the 10 x 10 correlation matrix
state, gap = ground_state(build_hamiltonian_dense(spec))
T = t_matrix_finite(spec)
print(f"many-body gap {gap:.4f}")
for n in range(1, 6):
    exact = reduced_density_entropy(state, n)
    fast = entanglement_entropy(truncate(T, n))
    print(f"N={n}  exact {exact:.12f}  correlation matrix {fast:.12f}")

# %%
# longer chain; the Fermi point sits at cos(theta) = -1/alpha
from fermichain import entropy_curve, fit_entropy, predict, find_jumps, symbol_from_model

N = [32, 45, 64, 90, 128, 181, 256]
curve = entropy_curve(spec, N, M_factor=8, doublings=2)
for n, e, err in zip(curve.N, curve.E, curve.error):
    print(f"{n:4d}  {e:.6f}  (change on doubling M: {err:.1e})")

# %%
jumps = find_jumps(symbol_from_model(spec))
pred = predict(spec.cls, jumps)
fit = fit_entropy(curve)
print("jump at theta =", np.round(jumps.theta, 6))
print(f"kappa: fit {fit.kappa_fit:.4f}, predicted {float(pred.kappa):.4f}")
print(f"kappa_tilde: fit {fit.kappa_tilde_fit:.4f}, predicted {pred.kappa_tilde:.4f}")
