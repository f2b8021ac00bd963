# %% [markdown]
# Open ends: the orthogonal and symplectic classes
#
# Reflecting boundaries turn the coupling matrix into Toeplitz plus Hankel.
# The slope halves compared with the ring and the constant becomes
# kappa_tilde_U / 2 + R / 6.  This takes a few minutes (dense 4096 x 4096 solves).

# %%
import numpy as np

from fermichain import CouplingLaw, ModelSpec, SymmetryClass, TrigSymbol
from fermichain import entropy_curve, find_jumps, fit_entropy, predict

law = CouplingLaw.from_halves({1: 0.5})  # Lambda = cos(theta)
jumps = find_jumps(TrigSymbol.from_cosines({1: 1.0}))
N = sorted({int(round(n)) for n in np.geomspace(32, 256, 12)})

# %%
for cls in SymmetryClass:
    spec = ModelSpec(1.0, 0.0, law, cls, 8 * N[-1])
    curve = entropy_curve(spec, N, M_factor=8, doublings=2)
    fit = fit_entropy(curve)
    pred = predict(cls, jumps)
    print(f"{cls.value:20s} kappa {fit.kappa_fit:.4f} ({float(pred.kappa):.4f})"
          f"  kappa_tilde {fit.kappa_tilde_fit:.4f} ({pred.kappa_tilde:.4f})"
          f"  doubling change {np.nanmax(curve.error):.1e}")
