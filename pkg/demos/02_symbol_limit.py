# %% [markdown]
# Entropy straight from the dispersion
#
# For an isotropic chain the N x N block of T tends to the Toeplitz matrix of
# sign(Lambda).  No chain length is involved, so N = 1024 takes a second.

# %%
import numpy as np

from fermichain import TrigSymbol, find_jumps, entropy_curve, fit_entropy, predict, SymmetryClass

symbols = {
    "cos t": TrigSymbol.from_cosines({1: 1.0}),
    "cos 2t": TrigSymbol.from_cosines({2: 1.0}),
    "cos t - 0.3": TrigSymbol.from_cosines({0: -0.3, 1: 1.0}),
    "cos t + 2 (gapped)": TrigSymbol.from_cosines({0: 2.0, 1: 1.0}),
}
N = [64, 128, 256, 512, 1024]

# %%
for name, sym in symbols.items():
    jumps = find_jumps(sym)
    curve = entropy_curve(sym, N)
    fit = fit_entropy(curve, N_min=64)
    pred = predict(SymmetryClass.UNITARY, jumps)
    kt = "n/a" if pred.kappa_tilde is None else f"{pred.kappa_tilde:.4f}"
    print(f"{name:20s} R={jumps.R}  kappa {fit.kappa_fit:.4f} ({float(pred.kappa):.4f})"
          f"  kappa_tilde {fit.kappa_tilde_fit:.4f} ({kt})")

# %%
# off criticality the entropy stops growing
curve = entropy_curve(symbols["cos t + 2 (gapped)"], N)
print(np.diff(curve.E))
